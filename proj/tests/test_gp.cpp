#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "bec/errors.hpp"
#include "bec/gp/dump.hpp"
#include "bec/gp/gp.hpp"
#include "bec/gp/kinetic.hpp"
#include "oracles/oracles.hpp"

using namespace bec;
using model::Grid;
using model::TrapSpec;

namespace {

const TrapSpec kHarmonic = TrapSpec::harmonic({1.0, 1.0, 1.0});

}  // namespace

TEST_CASE("sine-series kinetic operator on a single mode") {
  const auto grid = Grid(3, {0, 0, 0}, {2.0, 3.0, 1.5}, {17, 21, 13});
  for (auto scheme : {gp::LaplacianScheme::second_order, gp::LaplacianScheme::fourth_order, gp::LaplacianScheme::spectral}) {
    gp::DirichletKinetic t(grid, scheme);
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto x = grid.node(i);
      f[i] = std::sin(std::numbers::pi * x[0] / 2.0) * std::sin(2 * std::numbers::pi * x[1] / 3.0) *
             std::sin(std::numbers::pi * x[2] / 1.5);
    }
    const auto in = t.restrict_to_interior(f);
    std::vector<double> out(in.size()), back(in.size());
    t.apply(in, out);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double exact = pi2 / 4.0 + 4.0 * pi2 / 9.0 + pi2 / 2.25;
    double ratio = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i)
      if (std::abs(in[i]) > 0.5) ratio = out[i] / in[i];
    if (scheme == gp::LaplacianScheme::spectral) CHECK(ratio == doctest::Approx(exact).epsilon(1e-12));
    else CHECK(ratio == doctest::Approx(exact).epsilon(2e-2));
    t.solve_shifted(out, back, 0.0);
    for (std::size_t i = 0; i < in.size(); ++i) CHECK(back[i] == doctest::Approx(in[i]).epsilon(1e-10));
  }
}

TEST_CASE("non-interacting harmonic ground state") {
  const auto s = gp::minimize_gp(kHarmonic, 0.0, Grid::centered(3, 14.0, 40), 2000, 1e-9);
  CHECK(std::abs(s.energy_total - 3.0) <= 2e-3);
  CHECK(s.residual <= 1e-8);
  CHECK(s.norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("anisotropic and two-dimensional harmonic traps") {
  const auto s = gp::minimize_gp(TrapSpec::harmonic({1.0, 4.0, 0.25}), 0.0, Grid::centered(3, 20.0, 64), 3000, 1e-9);
  CHECK(s.energy_total == doctest::Approx(1.0 + 2.0 + 0.5).epsilon(1e-6));
  const auto s2 = gp::minimize_gp(TrapSpec::harmonic({1.0, 1.0}), 0.0, Grid::centered(2, 14.0, 64), 2000, 1e-10);
  CHECK(s2.energy_total == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(s2.dimension == 2);
}

TEST_CASE("unit box ground state") {
  const auto s = gp::minimize_gp(TrapSpec::box(3, 1.0), 0.0, Grid(3, {0, 0, 0}, {1, 1, 1}, {32, 32, 32}), 100, 1e-10);
  CHECK(std::abs(s.energy_total - 3.0 * std::numbers::pi * std::numbers::pi) <= 0.05);
}

TEST_CASE("interacting ground state against the radial oracle") {
  const auto s = gp::minimize_gp(kHarmonic, 10.0, Grid::centered(3, 13.0, 64), 2000, 1e-9);
  const auto ref = oracle::radial_gp(10.0, 1.0, 9.0, 8000);
  CHECK(std::abs(s.energy_total - ref.energy) <= 1e-4 * ref.energy);
  CHECK(s.mu == doctest::Approx(ref.mu).epsilon(1e-4));
  CHECK(std::abs(gp::virial_defect(s)) <= 1e-6 * s.energy_total);
  const auto c = gp::gp_energy_components(s);
  CHECK(c.total() == doctest::Approx(s.energy_total).epsilon(1e-12));
  CHECK(c.interaction == doctest::Approx(10.0 * s.quartic).epsilon(1e-12));
  CHECK(s.mu == doctest::Approx(c.kinetic + c.potential + 2.0 * c.interaction).epsilon(1e-12));
  for (std::size_t i = 1; i < s.energy_history.size(); ++i)
    CHECK(s.energy_history[i] <= s.energy_history[i - 1] + 1e-13 * s.energy_history[i - 1]);
  for (double p : s.phi) CHECK(p >= 0.0);
}

TEST_CASE("minimizer is independent of the starting function") {
  const auto grid = Grid::centered(3, 14.0, 32);
  gp::GPOptions o;
  std::vector<double> start(grid.size());
  for (std::size_t i = 0; i < start.size(); ++i) {
    const auto x = grid.node(i);
    start[i] = std::exp(-0.1 * (x[0] - 1) * (x[0] - 1) - 0.3 * x[1] * x[1] - 0.2 * (x[2] + 0.5) * (x[2] + 0.5));
  }
  o.initial = start;
  const auto a = gp::minimize_gp(kHarmonic, 5.0, grid, 3000, 1e-9);
  const auto b = gp::minimize_gp(kHarmonic, 5.0, grid, 3000, 1e-9, o);
  CHECK(a.energy_total == doctest::Approx(b.energy_total).epsilon(1e-12));
  double diff = 0.0;
  for (std::size_t i = 0; i < a.phi.size(); ++i) diff = std::max(diff, std::abs(a.phi[i] - b.phi[i]));
  CHECK(diff < 1e-6);
}

TEST_CASE("energy grows with g") {
  const auto grid = Grid::centered(3, 16.0, 36);
  double prev = 0.0;
  for (double g : {0.0, 1.0, 5.0, 20.0}) {
    const auto s = gp::minimize_gp(kHarmonic, g, grid, 3000, 1e-9);
    CHECK(s.energy_total > prev);
    prev = s.energy_total;
  }
}

TEST_CASE("second-order differences converge at second order") {
  std::vector<double> err;
  for (int n : {17, 33, 65}) {
    gp::GPOptions o;
    o.laplacian = gp::LaplacianScheme::second_order;
    const auto s = gp::minimize_gp(TrapSpec::box(3, 1.0), 0.0, Grid(3, {0, 0, 0}, {1, 1, 1}, {n, n, n}), 100, 1e-10, o);
    err.push_back(std::abs(s.energy_total - 3.0 * std::numbers::pi * std::numbers::pi));
  }
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.05));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("a grid that clips the state is rejected") {
  CHECK_THROWS_AS(gp::minimize_gp(kHarmonic, 0.0, Grid::centered(3, 4.0, 24), 2000, 1e-9), DomainTooSmall);
}

TEST_CASE("predicted components") {
  const auto s = gp::minimize_gp(kHarmonic, 3.0, Grid::centered(3, 14.0, 32), 3000, 1e-9);
  for (double frac : {1.0, 0.6513989049, 0.05}) {
    const auto p = gp::predict_components(s, frac);
    CHECK(std::abs(p.total() - s.energy_total) <= 1e-12 * s.energy_total);
    CHECK(std::abs(p.interaction_qm / (s.g * s.quartic) - (1.0 - frac)) <= 1e-12);
    CHECK(p.potential_qm == s.energy_potential);
  }
  CHECK_THROWS_AS(gp::predict_components(s, 0.0), InvalidParameter);
  CHECK_THROWS_AS(gp::predict_components(s, 1.5), InvalidParameter);
}

TEST_CASE("coupling rules") {
  CHECK(gp::coupling_3d(100, 0.01) == doctest::Approx(4.0 * std::numbers::pi));
  CHECK(gp::coupling_2d(100, 0.01) == doctest::Approx(4.0 * std::numbers::pi * 100 / std::abs(std::log(0.01))));
  CHECK_THROWS_AS(gp::coupling_2d(100, 0.5), OutOfRegime);
  CHECK_THROWS_AS(gp::coupling_3d(0.5, 0.1), InvalidParameter);
}

TEST_CASE("phi dump round trip") {
  gp::GPOptions o;
  o.check_boundary = false;
  const auto s = gp::minimize_gp(kHarmonic, 1.0, Grid::centered(3, 12.0, 20), 3000, 1e-9, o);
  const auto dir = std::filesystem::temp_directory_path() / "bec_dump_test";
  std::filesystem::create_directories(dir);
  gp::write_phi_dump(dir / "phi", s);
  const auto d = gp::read_phi_dump(dir / "phi.json");
  CHECK(d.grid == s.grid);
  CHECK(d.g == 1.0);
  CHECK(d.phi == s.phi);
  std::filesystem::resize_file(dir / "phi.bin", 100);
  CHECK_THROWS_AS(gp::read_phi_dump(dir / "phi.bin"), IntegrityError);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(gp::read_phi_dump(dir / "phi.json"), IntegrityError);
}
