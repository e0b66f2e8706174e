#pragma once

#include <optional>
#include <vector>

#include "bec/model/pair_potential.hpp"

namespace bec::scattering {

/// Zero-energy two-body scattering solution of -Lap(phi) + v phi / 2 = 0 with
/// phi -> 1 at infinity; outside the potential phi = 1 - a/r.
struct ScatteringSolution {
  std::vector<double> r_grid;
  std::vector<double> phi1;
  double a = 0.0;
  /// Kinetic fraction int |grad phi|^2 / (4 pi a); empty when a = 0.
  std::optional<double> s;
  double r_max = 0.0;
  /// ODE steps per unit length at the accepted refinement level (0 when
  /// the solution is analytic).
  double steps_per_length = 0.0;
  int refinements = 0;
};

/// Integrates u'' = v u / 2 for u = r phi outward from u(0) = 0, u'(0) = 1
/// with classical RK4, halving the step until `a` moves by less than `tol`.
/// Hard cores are handled in closed form.
ScatteringSolution solve_zero_energy(const model::PairPotential& potential, double r_max,
                                     double tol);

/// Convenience accessor for the scattering length alone.
double scattering_length(const model::PairPotential& potential, double tol = 1e-12);

}  // namespace bec::scattering
