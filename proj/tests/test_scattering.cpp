#include <doctest.h>

#include <cmath>

#include "bec/errors.hpp"
#include "bec/model/pair_potential.hpp"
#include "bec/scattering/scattering.hpp"
#include "oracles/oracles.hpp"

using namespace bec;
using model::PairPotential;

TEST_CASE("hard sphere is exact") {
  const auto sol = scattering::solve_zero_energy(PairPotential::hard_sphere(1.0), 4.0, 1e-12);
  CHECK(sol.a == 1.0);
  REQUIRE(sol.s);
  CHECK(*sol.s == 1.0);
  for (std::size_t i = 0; i < sol.r_grid.size(); ++i)
    if (sol.r_grid[i] >= 1.0) CHECK(sol.phi1[i] == doctest::Approx(1.0 - 1.0 / sol.r_grid[i]));
}

TEST_CASE("soft sphere matches the closed form") {
  for (auto [v0, radius] : {std::pair{10.0, 1.0}, std::pair{0.5, 1.0}, std::pair{3.0, 2.0}, std::pair{200.0, 0.3}}) {
    const auto sol = scattering::solve_zero_energy(PairPotential::soft_sphere(v0, radius), 4.0 * radius, 1e-12);
    const double a = oracle::soft_sphere_length(v0, radius);
    CHECK(std::abs(sol.a - a) <= 1e-9 * a);
    REQUIRE(sol.s);
    CHECK(*sol.s == doctest::Approx(oracle::soft_sphere_fraction(v0, radius)).epsilon(1e-8));
  }
}

TEST_CASE("zero potential has no kinetic fraction") {
  const auto sol = scattering::solve_zero_energy(PairPotential::soft_sphere(0.0, 1.0), 2.0, 1e-10);
  CHECK(sol.a == 0.0);
  CHECK_FALSE(sol.s);
  for (double p : sol.phi1) CHECK(p == 1.0);
}

TEST_CASE("scattering length scales with the potential") {
  const std::vector<PairPotential> potentials{
      PairPotential::soft_sphere(10.0, 1.0), PairPotential::soft_sphere(0.5, 1.0), PairPotential::soft_sphere(50.0, 0.7),
      PairPotential::tabulated_radial({0.0, 0.5, 1.0, 1.5}, {8.0, 4.0, 1.0, 0.0}), PairPotential::hard_sphere(0.8)};
  for (const auto& v : potentials) {
    const double a1 = scattering::scattering_length(v);
    for (double a0 : {0.01, 0.3, 7.0}) {
      const double a = scattering::scattering_length(model::scale_pair_potential(v, a0));
      CHECK(std::abs(a - a0 * a1) <= 1e-8 * a0 * a1);
    }
  }
}

TEST_CASE("kinetic fraction is scale invariant and bounded") {
  const auto v = PairPotential::tabulated_radial({0.0, 1.0, 2.0}, {3.0, 1.0, 0.0});
  const auto s1 = scattering::solve_zero_energy(v, 8.0, 1e-12).s;
  const auto s2 = scattering::solve_zero_energy(model::scale_pair_potential(v, 0.1), 0.8, 1e-13).s;
  REQUIRE(s1);
  REQUIRE(s2);
  CHECK(*s1 > 0.0);
  CHECK(*s1 < 1.0);
  CHECK(*s1 == doctest::Approx(*s2).epsilon(1e-8));
}

TEST_CASE("matching radius must exceed the range") {
  CHECK_THROWS_AS(scattering::solve_zero_energy(PairPotential::soft_sphere(1.0, 2.0), 1.5, 1e-10), ConfigError);
  CHECK_THROWS_AS(scattering::solve_zero_energy(PairPotential::soft_sphere(1.0, 2.0), 4.0, 0.0), InvalidParameter);
}

TEST_CASE("phi1 is increasing and continuous at the range") {
  const auto sol = scattering::solve_zero_energy(PairPotential::soft_sphere(4.0, 1.0), 4.0, 1e-12);
  for (std::size_t i = 2; i < sol.phi1.size(); ++i) CHECK(sol.phi1[i] >= sol.phi1[i - 1] - 1e-14);
  CHECK(sol.phi1.front() > 0.0);
  CHECK(sol.phi1.back() == doctest::Approx(1.0 - sol.a / 4.0));
}
