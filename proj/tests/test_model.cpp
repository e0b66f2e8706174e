#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bec/errors.hpp"
#include "bec/model/grid.hpp"
#include "bec/model/pair_potential.hpp"
#include "bec/model/problem.hpp"
#include "bec/model/trap.hpp"

using namespace bec;
using namespace bec::model;
using nlohmann::json;

TEST_CASE("grid geometry and quadrature") {
  const auto g = Grid::centered(3, 4.0, 9);
  CHECK(g.size() == 729);
  CHECK(g.spacing(0) == doctest::Approx(0.5));
  CHECK(g.coordinate(1, 0) == doctest::Approx(-2.0));
  CHECK(g.coordinate(1, 8) == doctest::Approx(2.0));
  const auto w = g.quadrature_weights();
  double total = 0.0;
  for (double x : w) total += x;
  CHECK(total == doctest::Approx(64.0).epsilon(1e-13));
  const auto idx = g.unravel(g.flat(3, 4, 5));
  CHECK(idx == std::array<int, 3>{3, 4, 5});
  CHECK(g.on_boundary(g.flat(0, 4, 4)));
  CHECK_FALSE(g.on_boundary(g.flat(4, 4, 4)));
  CHECK(g.isotropic());
}

TEST_CASE("trap sampling") {
  const auto g = Grid::centered(3, 2.0, 5);
  const auto t = TrapSpec::harmonic({1.0, 2.0, 3.0});
  const auto v = t.sample(g);
  const auto x = g.node(g.flat(4, 0, 2));
  CHECK(v[g.flat(4, 0, 2)] == doctest::Approx(x[0] * x[0] + 2 * x[1] * x[1] + 3 * x[2] * x[2]));
  CHECK_FALSE(t.isotropic_harmonic());
  CHECK(TrapSpec::harmonic({2.0, 2.0, 2.0}).isotropic_harmonic());
  CHECK_THROWS_AS(TrapSpec::harmonic({1.0, -1.0, 1.0}), ConfigError);

  const auto box = TrapSpec::box(3, 1.0);
  const double inside[3] = {0.5, 0.5, 0.5};
  const double outside[3] = {1.5, 0.5, 0.5};
  CHECK(evaluate_trap(box, inside) == 0.0);
  CHECK(std::isinf(evaluate_trap(box, outside)));
}

TEST_CASE("tabulated trap interpolates multilinearly") {
  const auto g = Grid::centered(2, 2.0, 3);
  std::vector<double> values(g.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto x = g.node(i);
    values[i] = 1.0 + 2.0 * x[0] - x[1];
  }
  const auto t = TrapSpec::tabulated(g, values);
  const double p[2] = {0.3, -0.7};
  CHECK(evaluate_trap(t, p) == doctest::Approx(1.0 + 0.6 + 0.7));
  const double far[2] = {3.0, 0.0};
  CHECK_THROWS_AS(evaluate_trap(t, far), OutOfDomain);
}

TEST_CASE("pair potential shapes") {
  const auto s = PairPotential::soft_sphere(3.0, 2.0);
  CHECK(s(1.0) == 3.0);
  CHECK(s(2.5) == 0.0);
  CHECK(s.range() == 2.0);
  const auto h = PairPotential::hard_sphere(1.0);
  CHECK(std::isinf(h(0.5)));
  CHECK(h(1.5) == 0.0);
  CHECK(PairPotential::soft_sphere(0.0, 1.0).is_zero());
  CHECK_THROWS_AS(h.fourier_transform(1.0), InvalidParameter);
  CHECK_THROWS_AS(PairPotential::soft_sphere(-1.0, 1.0), ConfigError);
}

TEST_CASE("soft sphere Fourier transform matches closed form") {
  const double v0 = 2.5, radius = 1.3;
  const auto s = PairPotential::soft_sphere(v0, radius);
  for (double q : {0.0, 0.3, 1.7, 6.0}) {
    const double exact = q == 0.0 ? 4.0 * std::numbers::pi * v0 * radius * radius * radius / 3.0
                                  : 4.0 * std::numbers::pi * v0 *
                                        (std::sin(q * radius) - q * radius * std::cos(q * radius)) / (q * q * q);
    CHECK(s.fourier_transform(q) == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("tabulated radial potential transform agrees with the equivalent soft sphere") {
  const auto t = PairPotential::tabulated_radial({0.0, 0.5, 1.0}, {2.0, 2.0, 2.0});
  const auto s = PairPotential::soft_sphere(2.0, 1.0);
  CHECK(t.range() == doctest::Approx(1.0));
  for (double q : {0.0, 1.0, 4.0}) CHECK(t.fourier_transform(q) == doctest::Approx(s.fourier_transform(q)).epsilon(1e-8));
}

TEST_CASE("scale_pair_potential follows v(r / a) / a^2") {
  const auto base = PairPotential::soft_sphere(4.0, 1.0);
  const auto v = scale_pair_potential(base, 0.25);
  CHECK(v.range() == doctest::Approx(0.25));
  CHECK(v(0.1) == doctest::Approx(base(0.4) / 0.0625));
  const auto hard = scale_pair_potential(PairPotential::hard_sphere(2.0), 3.0);
  CHECK(hard.radius() == doctest::Approx(6.0));
}

TEST_CASE("strict parsing reports the field path") {
  json doc = {{"trap", {{"kind", "harmonic"}, {"dimension", 3}, {"stiffness", 1.0}, {"stifness", 2.0}}}};
  try {
    parse_problem(doc);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("trap.stifness") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_problem(json{{"grid", {{"dimension", 4}, {"extent", 1.0}, {"points", 8}}}}), ConfigError);
  CHECK_THROWS_AS(parse_problem(json{{"unknown", 1}}), ConfigError);
}

TEST_CASE("problem documents round-trip through JSON") {
  json doc = {{"trap", {{"kind", "harmonic"}, {"dimension", 3}, {"stiffness", {1.0, 2.0, 3.0}}}},
              {"pair_potential", {{"kind", "soft_sphere"}, {"height", 1.5}, {"radius", 0.5}}},
              {"grid", {{"dimension", 3}, {"extent", 8.0}, {"points", 17}}}};
  const auto p = parse_problem(doc);
  const json back = {{"trap", to_json(*p.trap)}, {"pair_potential", to_json(*p.pair_potential)}, {"grid", to_json(*p.grid)}};
  const auto q = parse_problem(back);
  CHECK(q.trap->stiffness() == p.trap->stiffness());
  CHECK(*q.grid == *p.grid);
  CHECK(q.pair_potential->height() == p.pair_potential->height());
}
