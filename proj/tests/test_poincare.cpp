#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bec/errors.hpp"
#include "bec/poincare/poincare.hpp"
#include "bec/poincare/region.hpp"
#include "oracles/oracles.hpp"

using namespace bec;
using namespace bec::poincare;

namespace {

TrialOptions classical() {
  TrialOptions o;
  o.subsets = {SubsetFamily::full, SubsetFamily::empty};
  return o;
}

}  // namespace

TEST_CASE("regions") {
  const Region box(RegionShape::box, 2, 2.0, 10);
  CHECK(box.interior_count() == 100);
  CHECK(box.volume() == doctest::Approx(4.0));
  const Region ball(RegionShape::ball, 3, 1.0, 40);
  CHECK(ball.volume() == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(2e-2));
  const auto s = ball.scaled(2.0);
  CHECK(s.volume() == doctest::Approx(8.0 * ball.volume()));
  CHECK(parse_region_shape("ball") == RegionShape::ball);
  CHECK_THROWS_AS(parse_region_shape("torus"), ConfigError);
}

TEST_CASE("cell gradient energy of a linear function") {
  const Region box(RegionShape::box, 2, 1.0, 8);
  std::vector<double> f(box.cell_count());
  for (std::size_t c = 0; c < f.size(); ++c) f[c] = 3.0 * box.center(c)[0];
  const auto e = cell_gradient_energy(box, f);
  double total = 0.0;
  for (double x : e) total += x;
  // 7 interior edges per row out of 8 cells: the missing half-cells at the walls.
  CHECK(total == doctest::Approx(9.0 * 7.0 / 8.0));
}

TEST_CASE("classical constant on a box matches the discrete Neumann eigenvalue") {
  for (int m : {2, 3}) {
    CAPTURE(m);
    const int n = m == 2 ? 32 : 16;
    const Region box(RegionShape::box, m, 1.5, n);
    const auto est = estimate_constant(box, uniform_weight(box), 60, 7, classical());
    const double lambda = oracle::discrete_neumann_eigenvalue(1.5, n);
    CHECK(est.c_star <= 1.0 / lambda * (1.0 + 1e-9));
    CHECK(est.c_star == doctest::Approx(1.0 / lambda).epsilon(2e-2));
    CHECK(1.0 / lambda == doctest::Approx(1.5 * 1.5 / (std::numbers::pi * std::numbers::pi)).epsilon(2e-2));
  }
}

TEST_CASE("the run's own constant validates every trial") {
  for (auto shape : {RegionShape::box, RegionShape::ball}) {
    const Region k(shape, 2, 1.0, 24);
    const auto est = estimate_constant(k, uniform_weight(k), 200, 3);
    CHECK(est.holds_at_c_star == est.trials);
    CHECK(est.worst_trial >= 0);
    CHECK_FALSE(est.worst_description.empty());
    CHECK(est.c_constructed == doctest::Approx(2.0 * std::pow(k.volume(), 1.0) * est.c_tilde));
  }
}

TEST_CASE("constant scales with the square of the length") {
  const Region k(RegionShape::box, 2, 1.0, 16);
  const auto s = k.scaled(3.0);
  const auto a = estimate_constant(k, uniform_weight(k), 40, 1);
  const auto b = estimate_constant(s, uniform_weight(s), 40, 1);
  CHECK(b.c_star == doctest::Approx(9.0 * a.c_star).epsilon(1e-10));
}

TEST_CASE("trials are reproducible from the seed") {
  const Region k(RegionShape::ball, 3, 1.0, 12);
  const auto h = uniform_weight(k);
  const auto a = generate_trial(k, h, 42, 17);
  const auto b = generate_trial(k, h, 42, 17);
  CHECK(a.f == b.f);
  CHECK(a.omega == b.omega);
  CHECK(a.description == b.description);
  CHECK(weighted_mean(k, h, a.f) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("shrinking the subset moves energy into the complement term") {
  const Region k(RegionShape::box, 2, 1.0, 20);
  const auto h = uniform_weight(k);
  for (int i = 0; i < 30; ++i) {
    const auto t = generate_trial(k, h, 99, i);
    Mask smaller = t.omega;
    for (std::size_t c = 0; c < smaller.size(); c += 3) smaller[c] = 0;
    const auto big = check_inequality(k, t.f, t.omega, 1.0);
    const auto small = check_inequality(k, t.f, smaller, 1.0);
    double removed = 0.0;
    const auto e = cell_gradient_energy(k, t.f);
    for (std::size_t c = 0; c < e.size(); ++c)
      if (t.omega[c] && !smaller[c] && k.inside(c)) removed += e[c];
    CHECK(small.lhs + removed >= big.lhs - 1e-12);
  }
}

TEST_CASE("omega_x masks") {
  const Region k(RegionShape::box, 2, 1.0, 20);
  const auto mask = omega_x_mask({{0.5, 0.5, 0.0}}, 0.2, k);
  std::size_t excluded = 0;
  for (std::size_t c = 0; c < mask.size(); ++c)
    if (!mask[c]) ++excluded;
  CHECK(excluded * k.cell_volume() == doctest::Approx(std::numbers::pi * 0.04).epsilon(0.15));
  CHECK_THROWS_AS(omega_x_mask({{0.5, 0.5, 0.0}}, 0.01, k), InvalidParameter);
}

TEST_CASE("weighted check") {
  const Region k(RegionShape::ball, 2, 1.0, 20);
  const auto h = uniform_weight(k);
  const auto t = generate_trial(k, h, 5, 0);
  std::vector<double> ones(k.cell_count(), 1.0);
  const auto plain = check_inequality(k, t.f, t.omega, 0.3);
  const auto weighted = weighted_check(k, t.f, t.omega, ones, 0.3);
  CHECK(plain.lhs == doctest::Approx(weighted.lhs));
  CHECK(plain.rhs == doctest::Approx(weighted.rhs));
  std::vector<double> bad = ones;
  for (std::size_t c = 0; c < bad.size(); ++c)
    if (k.inside(c)) {
      bad[c] = 0.0;
      break;
    }
  CHECK_THROWS_AS(weighted_check(k, t.f, t.omega, bad, 0.3), InvalidParameter);
}

TEST_CASE("weighted suite holds at the sandwich constant") {
  const Region k(RegionShape::ball, 2, 1.0, 20);
  const auto est = estimate_constant(k, uniform_weight(k), 100, 2);
  std::vector<double> w(k.cell_count(), 0.0);
  for (std::size_t c = 0; c < w.size(); ++c) {
    const auto x = k.center(c);
    w[c] = std::exp(-(x[0] * x[0] + x[1] * x[1]));
  }
  const auto s = weighted_suite(k, w, est.c_star, 100, 2);
  CHECK(s.holds == s.trials);
  CHECK(s.weight_ratio > 1.0);
  CHECK(s.c_weighted <= s.c_sandwich);
}

TEST_CASE("weight sampling interpolates linear data exactly") {
  const Region k(RegionShape::box, 2, 1.0, 10);
  const auto grid = model::Grid(2, {-0.5, -0.5, 0.0}, {2.0, 2.0, 0.0}, {11, 11, 1});
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto x = grid.node(i);
    values[i] = 1.0 + x[0] - 2.0 * x[1];
  }
  const auto w = sample_weight(k, grid, values);
  for (std::size_t c = 0; c < w.size(); ++c) {
    const auto x = k.center(c);
    CHECK(w[c] == doctest::Approx(1.0 + x[0] - 2.0 * x[1]));
  }
  const Region far(RegionShape::box, 2, 3.0, 10);
  CHECK_THROWS_AS(sample_weight(far, grid, values), OutOfDomain);
}
