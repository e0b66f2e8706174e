#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bec/errors.hpp"
#include "bec/gp/gp.hpp"
#include "bec/manybody/condensate.hpp"
#include "bec/manybody/fock_basis.hpp"
#include "bec/manybody/ground_state.hpp"
#include "bec/manybody/hamiltonian.hpp"
#include "bec/manybody/interaction.hpp"
#include "bec/manybody/lanczos.hpp"
#include "bec/manybody/localization.hpp"
#include "bec/manybody/mode_basis.hpp"
#include "bec/manybody/momentum.hpp"
#include "bec/manybody/sweep.hpp"
#include "bec/scattering/scattering.hpp"
#include "oracles/oracles.hpp"

using namespace bec;
using namespace bec::manybody;
using model::Grid;
using model::PairPotential;
using model::TrapSpec;

namespace {

const TrapSpec kHarmonic = TrapSpec::harmonic({1.0, 1.0, 1.0});

const ModeBasis& small_modes() {
  static const ModeBasis b = build_mode_basis(kHarmonic, Grid::centered(3, 13.0, 48), 1);
  return b;
}

const ModeBasis& medium_modes() {
  static const ModeBasis b = build_mode_basis(kHarmonic, Grid::centered(3, 13.0, 48), 2);
  return b;
}

ModeBasis truncate(const ModeBasis& b, int m) {
  ModeBasis t = b;
  t.quanta.resize(m);
  t.energies.resize(m);
  t.values = b.values.topRows(m);
  return t;
}

}  // namespace

TEST_CASE("Hermite functions are orthonormal") {
  const int nmax = 6;
  const double h = 0.01;
  std::vector<std::vector<double>> rows(nmax + 1);
  for (double y = -12.0; y <= 12.0; y += h) {
    const auto v = hermite_functions(nmax, y);
    for (int n = 0; n <= nmax; ++n) rows[n].push_back(v[n]);
  }
  for (int i = 0; i <= nmax; ++i)
    for (int j = 0; j <= nmax; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < rows[i].size(); ++p) s += rows[i][p] * rows[j][p] * h;
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
    }
}

TEST_CASE("mode basis counts, ordering and energies") {
  CHECK(harmonic_mode_count(0) == 1);
  CHECK(harmonic_mode_count(3) == 20);
  const auto& b = medium_modes();
  REQUIRE(b.size() == 10);
  CHECK(b.energies[0] == doctest::Approx(3.0));
  CHECK(b.energies[1] == doctest::Approx(5.0));
  CHECK(b.energies[9] == doctest::Approx(7.0));
  for (int i = 1; i < b.size(); ++i) CHECK(b.energies[i] >= b.energies[i - 1]);
  CHECK(b.gram_error < 1e-8);
  const auto v = b.trap_matrix();
  // <V> = E / 2 for oscillator eigenstates.
  for (int i = 0; i < b.size(); ++i) CHECK(v(i, i) == doctest::Approx(0.5 * b.energies[i]).epsilon(1e-8));
}

TEST_CASE("anisotropic and box mode bases") {
  const auto a = build_mode_basis(TrapSpec::harmonic({1.0, 4.0, 9.0}), Grid::centered(3, 12.0, 48), 1);
  CHECK(a.energies[0] == doctest::Approx(1.0 + 2.0 + 3.0));
  CHECK(a.energies[1] == doctest::Approx(8.0));
  const auto b = build_mode_basis(TrapSpec::box(3, 1.0), Grid(3, {0, 0, 0}, {1, 1, 1}, {32, 32, 32}), 1);
  CHECK(b.size() == 4);
  CHECK(b.energies[0] == doctest::Approx(3.0 * std::numbers::pi * std::numbers::pi));
  CHECK(b.energies[1] == doctest::Approx(6.0 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("tabulated trap reproduces the harmonic spectrum") {
  const auto grid = Grid::centered(3, 12.0, 40);
  const auto table = TrapSpec::tabulated(grid, kHarmonic.sample(grid));
  const auto b = build_mode_basis(table, grid, 1);
  REQUIRE(b.size() == 4);
  CHECK(b.energies[0] == doctest::Approx(3.0).epsilon(5e-3));
  for (int i = 1; i < 4; ++i) CHECK(b.energies[i] == doctest::Approx(5.0).epsilon(5e-3));
}

TEST_CASE("Fock basis ranks and dimensions") {
  CHECK(fock_dimension(6, 20) == 177100);
  CHECK(fock_dimension(2, 2) == 3);
  CHECK(fock_dimension(0, 5) == 1);
  FockBasis b(4, 5);
  CHECK(b.size() == 70);
  CHECK(b.occupation(0, 0) == 4);
  for (std::size_t s = 0; s < b.size(); ++s) {
    int total = 0;
    for (int m = 0; m < 5; ++m) total += b.occupation(s, m);
    CHECK(total == 4);
    CHECK(b.rank(b.state(s)) == s);
    if (s > 0) CHECK(std::lexicographical_compare(b.state(s), b.state(s) + 5, b.state(s - 1), b.state(s - 1) + 5));
  }
}

TEST_CASE("ground-mode interaction element against the Gaussian pair density") {
  const auto& b = small_modes();
  for (auto v : {PairPotential::soft_sphere(0.7, 1.0), PairPotential::soft_sphere(4.0, 0.4),
                 PairPotential::tabulated_radial({0.0, 0.5, 1.5}, {2.0, 1.0, 0.0})}) {
    const auto t = interaction_tensor(b, v);
    const double ref = oracle::gaussian_pair_element([&](double s) { return v(s); }, v.range());
    CHECK(t(0, 0, 0, 0) == doctest::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("short-range interaction approaches the contact limit") {
  const auto& b = small_modes();
  const auto v = model::scale_pair_potential(PairPotential::soft_sphere(1.0, 1.0), 0.05);
  const auto t = interaction_tensor(b, v);
  const double integral = v.integral();
  // Contact overlaps of oscillator modes: int phi0^4 = (2 pi)^{-3/2}; int phi0^2 phi1^2 = half that.
  const double c0 = std::pow(2.0 * std::numbers::pi, -1.5);
  CHECK(t(0, 0, 0, 0) == doctest::Approx(integral * c0).epsilon(2e-3));
  CHECK(t(0, 1, 0, 1) == doctest::Approx(0.5 * integral * c0).epsilon(2e-3));
  CHECK(t(1, 1, 0, 0) == doctest::Approx(0.5 * integral * c0).epsilon(2e-3));
}

TEST_CASE("interaction tensor symmetries") {
  const auto& b = medium_modes();
  const auto t = interaction_tensor(b, PairPotential::soft_sphere(1.0, 1.5));
  CHECK(t.asymmetry < 1e-12);
  CHECK(t.nyquist_weight < 1e-8);
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      for (int k = 0; k < b.size(); ++k)
        for (int l = 0; l < b.size(); ++l) {
          CHECK(t(i, j, k, l) == doctest::Approx(t(j, i, l, k)));
          CHECK(t(i, j, k, l) == doctest::Approx(t(k, l, i, j)));
        }
  // parity: an odd total quantum count on one axis vanishes
  CHECK(std::abs(t(0, 0, 0, 1)) < 1e-12);
}

TEST_CASE("Lanczos finds the lowest eigenvalue of a random symmetric matrix") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  const int n = 300;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = nd(rng);
  const LinearOperator op = [&](const double* x, double* y) {
    Eigen::Map<Eigen::VectorXd>(y, n) = a * Eigen::Map<const Eigen::VectorXd>(x, n);
  };
  std::vector<double> start(n, 1.0);
  const auto e = lowest_eigenpair(op, n, start, {60, 2000, 1e-10});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  CHECK(e.value == doctest::Approx(es.eigenvalues()[0]).epsilon(1e-10));
  CHECK(e.residual <= 1e-10);
}

TEST_CASE("matrix-free Hamiltonian matches the dense oracle") {
  const auto v = PairPotential::soft_sphere(2.0, 0.8);
  SUBCASE("two bosons in two modes") {
    const auto b = truncate(small_modes(), 2);
    const auto t = interaction_tensor(b, v);
    const auto dense = oracle::dense_ground(b.energies, t, 2);
    CHECK(dense.dimension == 3);
    const auto g = ground_state(b, t, 2, {.tol = 1e-11});
    CHECK(std::abs(g.energy - dense.energy) <= 1e-10);
    CHECK((g.gamma - dense.gamma).cwiseAbs().maxCoeff() <= 1e-8);
  }
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    const auto& b = n == 4 ? small_modes() : medium_modes();
    const auto t = interaction_tensor(b, v);
    const auto dense = oracle::dense_ground(b.energies, t, n);
    const auto g = ground_state(b, t, n, {.tol = 1e-11});
    CHECK(g.dimension == dense.dimension);
    CHECK(std::abs(g.energy - dense.energy) <= 1e-9);
    CHECK((g.gamma - dense.gamma).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(g.gamma.trace() == doctest::Approx(n).epsilon(1e-12));
  }
}

TEST_CASE("Hamiltonian application is symmetric") {
  const auto& b = medium_modes();
  const auto t = interaction_tensor(b, PairPotential::soft_sphere(1.0, 1.0));
  const FockBasis f(3, b.size());
  const Hamiltonian h(f, b.energies, t);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  std::vector<double> x(f.size()), y(f.size()), hx(f.size()), hy(f.size());
  for (auto& v : x) v = nd(rng);
  for (auto& v : y) v = nd(rng);
  h.apply(x.data(), hx.data());
  h.apply(y.data(), hy.data());
  double a = 0.0, c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    a += y[i] * hx[i];
    c += x[i] * hy[i];
  }
  CHECK(a == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("non-interacting bosons condense exactly") {
  const auto& b = medium_modes();
  const auto t = interaction_tensor(b, PairPotential::soft_sphere(0.0, 1.0));
  const auto g = ground_state(b, t, 3);
  CHECK(g.energy == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(g.gamma(0, 0) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("dimension cap") {
  const auto& b = medium_modes();
  const auto t = interaction_tensor(b, PairPotential::soft_sphere(1.0, 1.0));
  CHECK_THROWS_AS(ground_state(b, t, 6, {.dimension_cap = 1000}), CapacityError);
}

TEST_CASE("analytic Hermite transforms match direct quadrature") {
  for (double k : {1.0, 4.0}) {
    const auto b = build_mode_basis(TrapSpec::harmonic({k, k, k}), Grid::centered(3, 12.0, 40), 2);
    const auto m = mode_momentum(b, {9, 0.0});
    REQUIRE(m.analytic);
    const double ell = std::pow(k, -0.25);
    for (std::size_t p : {std::size_t{0}, std::size_t{100}, std::size_t{364}, std::size_t{500}}) {
      for (int i = 0; i < b.size(); ++i) {
        std::complex<double> ref = 1.0;
        for (int axis = 0; axis < 3; ++axis)
          ref *= std::sqrt(ell) * oracle::hermite_ft_quadrature(b.quanta[i][axis], m.k[p][axis] * ell);
        CHECK(std::abs(m.amplitudes(p, i) - ref) <= 1e-9);
      }
    }
  }
}

TEST_CASE("momentum densities carry the particle number") {
  const auto& b = medium_modes();
  const auto m = mode_momentum(b);
  const auto rho = momentum_density(m, Eigen::MatrixXd::Identity(b.size(), b.size()) / b.size());
  double total = 0.0;
  for (std::size_t p = 0; p < rho.size(); ++p) total += m.weight[p] * rho[p];
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("box traps use the discrete transform") {
  const auto b = build_mode_basis(TrapSpec::box(3, 1.0), Grid(3, {0, 0, 0}, {1, 1, 1}, {24, 24, 24}), 1);
  const auto m = mode_momentum(b);
  CHECK_FALSE(m.analytic);
  const auto rho = momentum_density(m, Eigen::MatrixXd::Identity(b.size(), b.size()));
  double total = 0.0;
  for (std::size_t p = 0; p < rho.size(); ++p) total += m.weight[p] * rho[p];
  CHECK(total == doctest::Approx(b.size()).epsilon(1e-10));
}

TEST_CASE("condensate metrics on a weakly interacting instance") {
  const auto grid = Grid::centered(3, 13.0, 48);
  const auto& modes = medium_modes();
  const auto v1 = normalize_pair_potential(PairPotential::soft_sphere(0.5, 1.0));
  const auto momentum = mode_momentum(modes);
  const double g = 1.0;
  const auto state = gp::minimize_gp(kHarmonic, g, grid, 3000, 1e-9);
  const auto proj = project_gp(modes, state.phi);
  CHECK(proj.truncation_weight > 0.999);
  for (int n : {2, 3}) {
    CAPTURE(n);
    const double a = g / (4.0 * std::numbers::pi * n);
    const auto r = analyze_instance(modes, momentum, state, proj, v1, n, a, {});
    const auto& c = r.condensate;
    CHECK(c.condensate_fraction <= 1.0 + 1e-12);
    CHECK(c.gp_overlap <= c.condensate_fraction + 1e-12);
    CHECK(c.momentum_l1 <= c.trace_distance + 1e-6);
    CHECK(c.pair_moment <= 1.0 + 1e-10);
    CHECK(c.pair_moment >= c.pair_moment_lower_bound);
    CHECK(r.hartree.via_fock_state == doctest::Approx(r.hartree.via_formula).epsilon(1e-10));
    CHECK(r.ground.energy / n <= r.hartree.via_fock_state + 1e-12);
    CHECK(r.split.kinetic + r.split.potential + r.split.interaction == doctest::Approx(r.ground.energy / n).epsilon(1e-12));
    CHECK(c.occupations.sum() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("pair moment of a product state") {
  const FockBasis f(4, 3);
  std::vector<double> x(f.size(), 0.0);
  x[0] = 1.0;  // |4, 0, 0>
  Eigen::VectorXd c = Eigen::VectorXd::Zero(3);
  c[0] = 1.0;
  CHECK(pair_moment(f, x, c) == doctest::Approx(4.0 * 3.0 / 16.0));
  const auto gamma = one_body_density(f, x);
  CHECK(gamma(0, 0) == doctest::Approx(4.0));
}

TEST_CASE("hard cores are softened with the same scattering length") {
  const auto hard = PairPotential::hard_sphere(0.5);
  const auto soft = soften_hard_core(hard);
  const auto sol = scattering::solve_zero_energy(soft, 4.0 * soft.range(), 1e-12);
  CHECK(sol.a == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(*sol.s >= 0.99);
  const auto n = normalize_pair_potential(hard);
  CHECK(n.substituted);
  CHECK_FALSE(n.note.empty());
  CHECK(scattering::scattering_length(n.potential) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("localization is not applicable without interaction") {
  const auto& modes = medium_modes();
  const auto grid = Grid::centered(3, 13.0, 48);
  const auto state = gp::minimize_gp(kHarmonic, 0.0, grid, 3000, 1e-10);
  const auto proj = project_gp(modes, state.phi);
  const auto t = interaction_tensor(modes, PairPotential::soft_sphere(0.0, 1.0));
  const auto g = ground_state(modes, t, 2);
  const auto p = localization_profile(g, proj, modes, {.samples = 8});
  CHECK_FALSE(p.applicable);
  CHECK(p.relative_gradient_energy < 1e-6);
}

TEST_CASE("localization fractions are monotone in the radius") {
  const auto& modes = medium_modes();
  const auto grid = Grid::centered(3, 13.0, 48);
  const double g = 1.0, a = g / (8.0 * std::numbers::pi);
  const auto state = gp::minimize_gp(kHarmonic, g, grid, 3000, 1e-9);
  const auto proj = project_gp(modes, state.phi);
  const auto v1 = normalize_pair_potential(PairPotential::soft_sphere(0.5, 1.0));
  const auto t = interaction_tensor(modes, model::scale_pair_potential(v1.potential, a));
  const auto gs = ground_state(modes, t, 2);
  LocalizationOptions o;
  o.samples = 16;
  o.seed = 5;
  const auto p = localization_profile(gs, proj, modes, o);
  CHECK(p.applicable);
  for (std::size_t i = 1; i < p.fractions.size(); ++i) CHECK(p.fractions[i] >= p.fractions[i - 1] - 1e-12);
  const auto q = localization_profile(gs, proj, modes, o);
  CHECK(q.fractions == p.fractions);
  CHECK_THROWS_AS(localization_profile(ground_state(modes, t, 3), proj, modes, o), InvalidParameter);
}

TEST_CASE("sweep CSV contract") {
  SweepRow r;
  r.n = 2;
  r.a = 0.1;
  const auto csv = sweep_csv({r});
  CHECK(csv.rfind("N,a,g,E_qm_per_N,E_gp,gp_overlap,trace_distance,momentum_l1,kin,pot,int,kin_pred,pot_pred,int_pred,s\n", 0) == 0);
  CHECK(csv.find(",nan\n") != std::string::npos);
}
