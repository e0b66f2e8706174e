#include "bec/gp/gp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>

#include "bec/errors.hpp"

namespace bec::gp {

using model::Grid;
using model::TrapKind;
using model::TrapSpec;

namespace {

constexpr int kRefreshKineticEvery = 25;

double dot(const std::vector<double>& x, const std::vector<double>& y, double w) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s * w;
}

void require_box_grid(const TrapSpec& trap, const Grid& grid) {
  for (int axis = 0; axis < trap.dimension(); ++axis) {
    if (std::abs(grid.lower(axis)) > 1e-12 * trap.side() ||
        std::abs(grid.extent(axis) - trap.side()) > 1e-12 * trap.side()) {
      throw InvalidParameter("a box trap needs the grid to span exactly [0, side] on every axis");
    }
  }
}

std::vector<double> initial_guess(const TrapSpec& trap, const Grid& grid,
                                  const std::vector<double>& potential) {
  const int dim = grid.dimension();
  std::vector<double> phi(grid.size());
  switch (trap.kind()) {
    case TrapKind::harmonic:
      for (std::size_t k = 0; k < phi.size(); ++k) {
        const auto r = grid.node(k);
        double e = 0.0;
        for (int axis = 0; axis < dim; ++axis) e += std::sqrt(trap.stiffness()[axis]) * r[axis] * r[axis];
        phi[k] = std::exp(-0.5 * e);
      }
      break;
    case TrapKind::box:
      for (std::size_t k = 0; k < phi.size(); ++k) {
        const auto r = grid.node(k);
        double p = 1.0;
        for (int axis = 0; axis < dim; ++axis) p *= std::sin(std::numbers::pi * r[axis] / trap.side());
        phi[k] = std::abs(p);
      }
      break;
    case TrapKind::tabulated: {
      // Gaussian at the interior minimum of V, width from the local curvature.
      std::size_t best = 0;
      double vmin = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < potential.size(); ++k) {
        if (!grid.on_boundary(k) && potential[k] < vmin) {
          vmin = potential[k];
          best = k;
        }
      }
      const auto centre_idx = grid.unravel(best);
      const auto centre = grid.node(best);
      std::array<double, 3> width{};
      for (int axis = 0; axis < dim; ++axis) {
        auto lo = centre_idx, hi = centre_idx;
        lo[axis] -= 1;
        hi[axis] += 1;
        const double h = grid.spacing(axis);
        const double curvature = (potential[grid.flat(lo[0], lo[1], lo[2])] +
                                  potential[grid.flat(hi[0], hi[1], hi[2])] - 2.0 * vmin) /
                                 (2.0 * h * h);
        width[axis] = curvature > 0.0 ? std::pow(curvature, -0.25) : grid.extent(axis) / 8.0;
      }
      for (std::size_t k = 0; k < phi.size(); ++k) {
        const auto r = grid.node(k);
        double e = 0.0;
        for (int axis = 0; axis < dim; ++axis) {
          const double x = (r[axis] - centre[axis]) / width[axis];
          e += x * x;
        }
        phi[k] = std::exp(-0.5 * e);
      }
      break;
    }
  }
  return phi;
}

// Coefficient of int (l1)(l2)(l3)(l4) for linear forms l = alpha phi + beta d,
// expressed through the moments m[j] = int phi^(4-j) d^j.
double quartic_form(const std::array<std::array<double, 2>, 4>& forms,
                    const std::array<double, 5>& m) {
  std::array<double, 5> poly{1.0, 0.0, 0.0, 0.0, 0.0};
  for (const auto& f : forms) {
    std::array<double, 5> next{};
    for (int j = 0; j < 5; ++j) {
      if (poly[j] == 0.0) continue;
      next[j] += poly[j] * f[0];
      if (j + 1 < 5) next[j + 1] += poly[j] * f[1];
    }
    poly = next;
  }
  double s = 0.0;
  for (int j = 0; j < 5; ++j) s += poly[j] * m[j];
  return s;
}

// Energy along the great circle phi(theta) = cos(theta) phi + sin(theta) d.
struct GreatCircle {
  double quad_phi;   // <phi,(T+V)phi>
  double quad_mix;   // <d,(T+V)phi>
  double quad_dir;   // <d,(T+V)d>
  double g;
  std::array<double, 5> moments;

  std::array<double, 3> derivatives(double theta) const {
    const double c = std::cos(theta), s = std::sin(theta);
    const std::array<double, 2> psi{c, s};
    const std::array<double, 2> chi{-s, c};
    const double q = c * c * quad_phi + 2.0 * c * s * quad_mix + s * s * quad_dir;
    const double dq = 2.0 * c * s * (quad_dir - quad_phi) + 2.0 * (c * c - s * s) * quad_mix;
    const double ddq = 2.0 * (c * c - s * s) * (quad_dir - quad_phi) - 8.0 * c * s * quad_mix;
    const double p4 = quartic_form({psi, psi, psi, psi}, moments);
    const double p31 = quartic_form({psi, psi, psi, chi}, moments);
    const double p22 = quartic_form({psi, psi, chi, chi}, moments);
    return {q + g * p4, dq + 4.0 * g * p31, ddq + g * (12.0 * p22 - 4.0 * p4)};
  }

  // Minimizer on [0, pi/2] of a function that decreases at theta = 0.
  double minimize() const {
    const auto at0 = derivatives(0.0);
    double lo = 0.0;
    double hi = std::numbers::pi / 2.0;
    double theta = at0[2] > 0.0 ? -at0[1] / at0[2] : 1e-3;
    theta = std::clamp(theta, 0.0, hi);
    // Bracket a sign change of the derivative.
    double probe = std::max(theta, 1e-12);
    while (probe < hi && derivatives(probe)[1] < 0.0) {
      lo = probe;
      probe *= 2.0;
    }
    hi = std::min(probe, std::numbers::pi / 2.0);
    if (derivatives(hi)[1] < 0.0) return hi;
    theta = std::clamp(theta, lo, hi);
    for (int it = 0; it < 100; ++it) {
      const auto d = derivatives(theta);
      if (d[1] < 0.0) lo = theta; else hi = theta;
      double next = d[2] > 0.0 ? theta - d[1] / d[2] : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - theta) <= 1e-15 * std::max(1.0, theta)) {
        theta = next;
        break;
      }
      theta = next;
    }
    return theta;
  }
};

struct Workspace {
  const DirichletKinetic& kinetic;
  std::vector<double> potential;  // interior
  double g;
  double w;  // cell volume
};

struct Evaluation {
  double kinetic, potential, quartic, mu, energy, residual;
};

Evaluation evaluate(const Workspace& ws, const std::vector<double>& phi,
                    const std::vector<double>& t_phi, std::vector<double>* residual_out) {
  Evaluation e{};
  const std::size_t n = phi.size();
  double kin = 0.0, pot = 0.0, quart = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double p2 = phi[k] * phi[k];
    kin += phi[k] * t_phi[k];
    pot += ws.potential[k] * p2;
    quart += p2 * p2;
  }
  e.kinetic = kin * ws.w;
  e.potential = pot * ws.w;
  e.quartic = quart * ws.w;
  e.energy = e.kinetic + e.potential + ws.g * e.quartic;
  e.mu = e.kinetic + e.potential + 2.0 * ws.g * e.quartic;
  double r2 = 0.0, mu2 = 0.0;
  if (residual_out) residual_out->resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double h_phi = t_phi[k] + (ws.potential[k] + 2.0 * ws.g * phi[k] * phi[k]) * phi[k];
    const double r = h_phi - e.mu * phi[k];
    if (residual_out) (*residual_out)[k] = r;
    r2 += r * r;
    mu2 += e.mu * e.mu * phi[k] * phi[k];
  }
  e.residual = mu2 > 0.0 ? std::sqrt(r2 / mu2) : std::sqrt(r2);
  return e;
}

void normalize(std::vector<double>& x, double w) {
  const double nrm = std::sqrt(dot(x, x, w));
  for (double& v : x) v /= nrm;
}

double boundary_ratio(const Grid& grid, const std::vector<double>& phi) {
  // Largest amplitude on the outermost interior layer relative to the peak.
  double peak = 0.0, edge = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    peak = std::max(peak, std::abs(phi[k]));
    if (grid.on_boundary(k)) continue;
    const auto idx = grid.unravel(k);
    for (int axis = 0; axis < grid.dimension(); ++axis) {
      if (idx[axis] == 1 || idx[axis] == grid.points(axis) - 2) {
        edge = std::max(edge, std::abs(phi[k]));
        break;
      }
    }
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

}  // namespace

GPState minimize_gp(const TrapSpec& trap, double g, const Grid& grid, int max_iter, double tol,
                    const GPOptions& options) {
  if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidParameter("coupling g must be >= 0");
  if (!(tol > 0.0)) throw InvalidParameter("GP tolerance must be positive");
  if (max_iter < 1) throw InvalidParameter("max_iter must be >= 1");
  if (trap.dimension() != grid.dimension()) {
    throw InvalidParameter("trap and grid dimensions differ");
  }
  if (trap.kind() == TrapKind::box) require_box_grid(trap, grid);

  std::vector<double> potential_full = trap.sample(grid);
  const DirichletKinetic kinetic(grid, options.laplacian);
  Workspace ws{kinetic, kinetic.restrict_to_interior(potential_full), g, grid.cell_volume()};

  std::vector<double> start = options.initial ? *options.initial : initial_guess(trap, grid, potential_full);
  if (start.size() != grid.size()) throw InvalidParameter("initial state has the wrong size");
  std::vector<double> phi = kinetic.restrict_to_interior(start);
  normalize(phi, ws.w);

  const std::size_t n = phi.size();
  std::vector<double> t_phi(n), residual(n), precond(n), direction(n), prev_precond(n),
      prev_residual(n), t_dir(n), unit_dir(n);
  kinetic.apply(phi, t_phi);

  GPState state;
  state.grid = grid;
  state.dimension = grid.dimension();
  state.g = g;
  state.laplacian = options.laplacian;

  bool converged = false;
  bool have_previous = false;
  Evaluation ev{};
  int it = 0;
  for (;; ++it) {
    ev = evaluate(ws, phi, t_phi, &residual);
    state.energy_history.push_back(ev.energy);
    if (ev.residual <= tol) {
      converged = true;
      break;
    }
    if (it >= max_iter) break;

    // Semi-implicit kinetic smoothing of the gradient, projected on the tangent space.
    kinetic.solve_shifted(residual, precond, std::max(ev.mu, 1.0));
    const double along = dot(phi, precond, ws.w);
    for (std::size_t k = 0; k < n; ++k) precond[k] -= along * phi[k];

    double beta = 0.0;
    if (have_previous) {
      double num = 0.0, den = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        num += precond[k] * (residual[k] - prev_residual[k]);
        den += prev_precond[k] * prev_residual[k];
      }
      beta = den != 0.0 ? std::max(0.0, num / den) : 0.0;
    }
    for (std::size_t k = 0; k < n; ++k) direction[k] = -precond[k] + beta * direction[k];
    const double tangential = dot(phi, direction, ws.w);
    for (std::size_t k = 0; k < n; ++k) direction[k] -= tangential * phi[k];
    if (dot(direction, residual, ws.w) >= 0.0) {
      for (std::size_t k = 0; k < n; ++k) direction[k] = -precond[k];
    }
    prev_precond = precond;
    prev_residual = residual;
    have_previous = true;

    const double dnorm = std::sqrt(dot(direction, direction, ws.w));
    if (!(dnorm > 0.0)) break;
    for (std::size_t k = 0; k < n; ++k) unit_dir[k] = direction[k] / dnorm;
    kinetic.apply(unit_dir, t_dir);

    GreatCircle circle{};
    circle.g = g;
    double mix = 0.0, quad = 0.0;
    std::array<double, 5> m{};
    for (std::size_t k = 0; k < n; ++k) {
      const double p = phi[k], d = unit_dir[k];
      mix += d * (t_phi[k] + ws.potential[k] * p);
      quad += d * (t_dir[k] + ws.potential[k] * d);
      const double p2 = p * p, d2 = d * d;
      m[0] += p2 * p2;
      m[1] += p2 * p * d;
      m[2] += p2 * d2;
      m[3] += p * d2 * d;
      m[4] += d2 * d2;
    }
    circle.quad_phi = ev.kinetic + ev.potential;
    circle.quad_mix = mix * ws.w;
    circle.quad_dir = quad * ws.w;
    for (double& v : m) v *= ws.w;
    circle.moments = m;
    if (circle.derivatives(0.0)[1] >= 0.0) break;  // no descent left at round-off level
    const double theta = circle.minimize();
    const double c = std::cos(theta), s = std::sin(theta);
    for (std::size_t k = 0; k < n; ++k) {
      // Transport the search direction along the circle before moving phi.
      direction[k] = dnorm * (-s * phi[k] + c * unit_dir[k]);
      phi[k] = c * phi[k] + s * unit_dir[k];
      t_phi[k] = c * t_phi[k] + s * t_dir[k];
    }
    const double nrm = std::sqrt(dot(phi, phi, ws.w));
    for (std::size_t k = 0; k < n; ++k) {
      phi[k] /= nrm;
      t_phi[k] /= nrm;
    }
    if ((it + 1) % kRefreshKineticEvery == 0) kinetic.apply(phi, t_phi);
  }

  // The minimizer is positive; fix the global sign and clear round-off signs in the tails.
  double sum = 0.0;
  for (double v : phi) sum += v;
  for (double& v : phi) v = std::abs(sum < 0.0 ? -v : v);
  kinetic.apply(phi, t_phi);
  ev = evaluate(ws, phi, t_phi, nullptr);

  state.phi = kinetic.extend_to_full(phi);
  state.potential = std::move(potential_full);
  state.energy_kinetic = ev.kinetic;
  state.energy_potential = ev.potential;
  state.quartic = ev.quartic;
  state.energy_interaction = g * ev.quartic;
  state.energy_total = ev.kinetic + ev.potential + g * ev.quartic;
  state.mu = ev.mu;
  state.residual = ev.residual;
  state.norm = dot(phi, phi, ws.w);
  state.iterations = it;
  if (state.energy_history.empty() || state.energy_history.back() != state.energy_total) {
    state.energy_history.push_back(state.energy_total);
  }
  state.boundary_ratio = boundary_ratio(grid, state.phi);

  if (!converged && ev.residual > tol) {
    std::ostringstream msg;
    msg << "GP minimization did not converge after " << it << " iterations; residual "
        << ev.residual << " > tol " << tol;
    throw SolverFailure(msg.str());
  }
  if (options.check_boundary && trap.kind() != TrapKind::box &&
      state.boundary_ratio >= options.boundary_ratio_limit) {
    std::ostringstream msg;
    msg << "GP state has not decayed at the grid edge: boundary/peak = " << state.boundary_ratio
        << " (limit " << options.boundary_ratio_limit << "); enlarge the grid extent";
    throw DomainTooSmall(msg.str());
  }
  return state;
}

double gp_residual(const GPState& state) {
  const DirichletKinetic kinetic(state.grid, state.laplacian);
  Workspace ws{kinetic, kinetic.restrict_to_interior(state.potential), state.g,
               state.grid.cell_volume()};
  const auto phi = kinetic.restrict_to_interior(state.phi);
  std::vector<double> t_phi(phi.size());
  kinetic.apply(phi, t_phi);
  return evaluate(ws, phi, t_phi, nullptr).residual;
}

EnergyComponents gp_energy_components(const GPState& state) {
  const DirichletKinetic kinetic(state.grid, state.laplacian);
  const auto phi = kinetic.restrict_to_interior(state.phi);
  const auto potential = kinetic.restrict_to_interior(state.potential);
  std::vector<double> t_phi(phi.size());
  kinetic.apply(phi, t_phi);
  const double w = state.grid.cell_volume();
  EnergyComponents c;
  double quart = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const double p2 = phi[k] * phi[k];
    c.kinetic += phi[k] * t_phi[k];
    c.potential += potential[k] * p2;
    quart += p2 * p2;
  }
  c.kinetic *= w;
  c.potential *= w;
  c.interaction = state.g == 0.0 ? 0.0 : state.g * quart * w;
  return c;
}

EnergyComponentPrediction predict_components(const GPState& state, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw InvalidParameter("kinetic fraction s must lie in (0, 1]");
  const double interaction = state.g * state.quartic;
  EnergyComponentPrediction p;
  p.s = s;
  p.kinetic_qm = state.energy_kinetic + s * interaction;
  p.potential_qm = state.energy_potential;
  p.interaction_qm = (1.0 - s) * interaction;
  return p;
}

double coupling_3d(double particles, double a) {
  if (!(particles >= 1.0)) throw InvalidParameter("particle number must be >= 1");
  if (!(a >= 0.0)) throw InvalidParameter("scattering length must be >= 0");
  return 4.0 * std::numbers::pi * particles * a;
}

double coupling_2d(double particles, double a) {
  if (!(particles >= 1.0)) throw InvalidParameter("particle number must be >= 1");
  if (!(a > 0.0)) throw InvalidParameter("scattering length must be positive");
  const double x = a * a * particles;
  if (!(x < 1.0)) {
    std::ostringstream msg;
    msg << "a^2 N = " << x << " is outside the dilute regime a^2 N < 1";
    throw OutOfRegime(msg.str());
  }
  return 4.0 * std::numbers::pi * particles / std::abs(std::log(x));
}

double virial_defect(const GPState& state) {
  return 2.0 * state.energy_kinetic - 2.0 * state.energy_potential +
         state.dimension * state.energy_interaction;
}

}  // namespace bec::gp
