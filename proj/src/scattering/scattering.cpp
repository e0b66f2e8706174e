#include "bec/scattering/scattering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "bec/errors.hpp"

namespace bec::scattering {

using model::PairPotential;

namespace {

constexpr int kMaxRefinements = 22;
constexpr std::size_t kInsideSamples = 400;
constexpr std::size_t kOutsideSamples = 200;

// State: u, u', and the running kinetic integral int (u' r - u)^2 / r^2 dr.
using State = std::array<double, 3>;

State derivative(const PairPotential& v, double r, const State& y) {
  const double w = y[1] * r - y[0];
  const double kinetic = r > 0.0 ? (w * w) / (r * r) : 0.0;
  return {y[1], 0.5 * v(r) * y[0], kinetic};
}

struct Trajectory {
  std::vector<double> r;
  std::vector<double> u;
  State end{};
};

Trajectory integrate(const PairPotential& v, const std::vector<double>& breakpoints,
                     double step) {
  Trajectory traj;
  State y{0.0, 1.0, 0.0};
  double left = 0.0;
  traj.r.push_back(0.0);
  traj.u.push_back(0.0);
  for (double right : breakpoints) {
    const int n = std::max(1, static_cast<int>(std::ceil((right - left) / step)));
    const double h = (right - left) / n;
    for (int i = 0; i < n; ++i) {
      // Evaluate strictly inside [left, right] so a jump at `right` belongs to this segment.
      const double r0 = left + i * h;
      const double r1 = (i + 1 == n) ? right : left + (i + 1) * h;
      const double rm = 0.5 * (r0 + r1);
      const State k1 = derivative(v, r0, y);
      State t{};
      for (int c = 0; c < 3; ++c) t[c] = y[c] + 0.5 * h * k1[c];
      const State k2 = derivative(v, rm, t);
      for (int c = 0; c < 3; ++c) t[c] = y[c] + 0.5 * h * k2[c];
      const State k3 = derivative(v, rm, t);
      for (int c = 0; c < 3; ++c) t[c] = y[c] + h * k3[c];
      const State k4 = derivative(v, r1, t);
      for (int c = 0; c < 3; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
      traj.r.push_back(r1);
      traj.u.push_back(y[0]);
    }
    left = right;
  }
  traj.end = y;
  return traj;
}

// Scattering length from the exact linear continuation u = u_R + u'_R (r - R)
// evaluated at r_max and max(r_max / 2, R).
double fit_length(double range, const State& end, double r_max) {
  const auto u_at = [&](double r) { return end[0] + end[1] * (r - range); };
  const double r2 = std::max(0.5 * r_max, range);
  const double slope = (u_at(r_max) - u_at(r2)) / (r_max - r2);
  return r_max - u_at(r_max) / slope;
}

}  // namespace

ScatteringSolution solve_zero_energy(const PairPotential& potential, double r_max, double tol) {
  if (!(tol > 0.0)) throw InvalidParameter("scattering tolerance must be positive");
  const double range = potential.range();
  if (!(r_max > range) || !std::isfinite(r_max)) {
    std::ostringstream msg;
    msg << "potential range " << range << " must be below the matching radius " << r_max;
    throw ConfigError(msg.str());
  }

  ScatteringSolution sol;
  sol.r_max = r_max;

  if (potential.is_zero()) {
    sol.a = 0.0;
    for (std::size_t i = 0; i <= kOutsideSamples; ++i) {
      sol.r_grid.push_back(r_max * static_cast<double>(i) / kOutsideSamples);
      sol.phi1.push_back(1.0);
    }
    return sol;
  }

  if (potential.has_hard_core()) {
    const double c = potential.radius();
    sol.a = c;
    sol.s = 1.0;  // int_c^inf r^2 (c / r^2)^2 dr / c
    sol.r_grid.push_back(0.0);
    sol.phi1.push_back(0.0);
    for (std::size_t i = 0; i <= kOutsideSamples; ++i) {
      const double r = c + (r_max - c) * static_cast<double>(i) / kOutsideSamples;
      sol.r_grid.push_back(r);
      sol.phi1.push_back(1.0 - c / r);
    }
    return sol;
  }

  const auto breakpoints = potential.breakpoints();
  double step = range / 32.0;
  Trajectory traj = integrate(potential, breakpoints, step);
  double a = fit_length(range, traj.end, r_max);
  double change = 0.0;
  bool converged = false;
  int level = 0;
  for (level = 1; level <= kMaxRefinements; ++level) {
    step *= 0.5;
    Trajectory finer = integrate(potential, breakpoints, step);
    const double a_fine = fit_length(range, finer.end, r_max);
    change = std::abs(a_fine - a);
    traj = std::move(finer);
    a = a_fine;
    if (change < tol) {
      converged = true;
      break;
    }
  }
  if (!converged || !std::isfinite(a)) {
    std::ostringstream msg;
    msg << "zero-energy integration did not converge: last change in a = " << change
        << " after " << kMaxRefinements << " refinements (tol " << tol << ")";
    throw SolverFailure(msg.str());
  }

  const State& end = traj.end;
  const double slope = end[1];
  sol.a = a;
  sol.steps_per_length = 1.0 / step;
  sol.refinements = level;

  if (a > 0.0) {
    // Inside: S(R) / c^2. Outside: phi' = a / r^2 exactly, contributing a^2 / R.
    const double kinetic = end[2] / (slope * slope) + a * a / range;
    sol.s = kinetic / a;
  }

  const std::size_t stride = std::max<std::size_t>(1, traj.r.size() / kInsideSamples);
  for (std::size_t i = 0; i < traj.r.size(); i += stride) {
    const double r = traj.r[i];
    sol.r_grid.push_back(r);
    sol.phi1.push_back(r > 0.0 ? traj.u[i] / (slope * r) : 1.0 / slope);
  }
  for (std::size_t i = 1; i <= kOutsideSamples; ++i) {
    const double r = range + (r_max - range) * static_cast<double>(i) / kOutsideSamples;
    sol.r_grid.push_back(r);
    sol.phi1.push_back(1.0 - a / r);
  }
  return sol;
}

double scattering_length(const PairPotential& potential, double tol) {
  const double range = potential.range();
  const double r_max = range > 0.0 ? 4.0 * range : 1.0;
  return solve_zero_energy(potential, r_max, tol).a;
}

}  // namespace bec::scattering
