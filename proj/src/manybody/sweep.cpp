#include "bec/manybody/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "bec/errors.hpp"
#include "bec/scattering/scattering.hpp"

namespace bec::manybody {

using model::PairPotential;

PairPotential soften_hard_core(const PairPotential& v, double s_min) {
  if (!v.has_hard_core()) return v;
  const double c = v.radius();
  for (double x = 4.0; x < 1e5; x *= 1.25) {
    const double radius = c / (1.0 - std::tanh(x) / x);
    const double height = 2.0 * x * x / (radius * radius);
    const auto soft = PairPotential::soft_sphere(height, radius);
    const auto sol = scattering::solve_zero_energy(soft, 4.0 * radius, 1e-10 * c);
    if (sol.s && *sol.s >= s_min) return soft;
  }
  throw SolverFailure("no soft sphere with the hard core's scattering length reached the kinetic fraction target");
}

NormalizedPotential normalize_pair_potential(const PairPotential& v1, double tol) {
  NormalizedPotential out;
  PairPotential v = v1;
  if (v1.has_hard_core()) {
    v = soften_hard_core(v1);
    out.substituted = true;
    std::ostringstream note;
    note.precision(17);
    note << "hard core of radius " << v1.radius() << " replaced by a soft sphere of height "
         << v.height() << " and radius " << v.radius() << " with the same scattering length";
    out.note = note.str();
  }
  if (v.is_zero()) {
    out.potential = v;
    out.original_length = 0.0;
    return out;
  }
  const auto sol = scattering::solve_zero_energy(v, 4.0 * v.range(), tol);
  out.original_length = sol.a;
  out.s = sol.s;
  out.potential = model::scale_pair_potential(v, 1.0 / sol.a);
  return out;
}

InstanceResult analyze_instance(const ModeBasis& modes, const ModeMomentum& momentum,
                                const gp::GPState& gp_state, const GPProjection& projection,
                                const NormalizedPotential& v1, int particles, double a,
                                const ManyBodyOptions& options) {
  InstanceResult r;
  r.particles = particles;
  r.a = a;
  r.g = gp_state.g;
  r.s = v1.s;

  PairPotential v = v1.potential;
  if (a > 0.0) {
    if (v.is_zero()) throw InvalidParameter("the zero potential cannot have a positive scattering length");
    v = model::scale_pair_potential(v1.potential, a);
  } else {
    v = PairPotential::soft_sphere(0.0, 1.0);
  }
  const auto tensor = interaction_tensor(modes, v);
  r.tensor_asymmetry = tensor.asymmetry;
  r.ground = ground_state(modes, tensor, particles, options);
  r.ground.a = a;
  r.ground.g = gp_state.g;
  r.condensate = condensate_metrics(r.ground, projection, modes, momentum);
  r.split = energy_split(r.ground, modes);
  r.hartree = hartree_energy(modes, tensor, projection.coefficients, particles);
  r.e_gp = gp_state.energy_total;
  r.prediction = gp::predict_components(gp_state, r.s.value_or(1.0));
  if (!r.s) r.prediction.s = 0.0;
  return r;
}

SweepRow make_row(const InstanceResult& r) {
  SweepRow row;
  row.n = r.particles;
  row.a = r.a;
  row.g = r.g;
  row.e_qm_per_n = r.ground.energy / r.particles;
  row.e_gp = r.e_gp;
  row.gp_overlap = r.condensate.gp_overlap;
  row.trace_distance = r.condensate.trace_distance;
  row.momentum_l1 = r.condensate.momentum_l1;
  row.kin = r.split.kinetic;
  row.pot = r.split.potential;
  row.inter = r.split.interaction;
  row.kin_pred = r.prediction.kinetic_qm;
  row.pot_pred = r.prediction.potential_qm;
  row.int_pred = r.prediction.interaction_qm;
  row.s = r.s;
  row.condensate_fraction = r.condensate.condensate_fraction;
  row.pair_moment = r.condensate.pair_moment;
  row.pair_moment_lower_bound = r.condensate.pair_moment_lower_bound;
  row.hartree_per_n = r.hartree.via_fock_state;
  row.hartree_formula_per_n = r.hartree.via_formula;
  row.residual = r.ground.residual;
  row.dimension = r.ground.dimension;
  row.truncation_weight = r.condensate.truncation_weight;
  row.momentum_coverage = r.condensate.momentum_coverage;
  return row;
}

SweepResult gp_limit_sweep(const SweepSettings& settings) {
  if (settings.particles.empty()) throw InvalidParameter("the sweep needs at least one particle number");
  if (!(settings.g >= 0.0)) throw InvalidParameter("coupling g must be >= 0");
  for (int n : settings.particles)
    if (n < 1) throw InvalidParameter("particle numbers must be >= 1");

  SweepResult result;
  result.v1 = normalize_pair_potential(settings.v1, settings.scattering_tol);
  if (settings.g > 0.0 && result.v1.potential.is_zero()) {
    throw InvalidParameter("g > 0 needs a pair potential with a positive scattering length");
  }

  const auto modes = build_mode_basis(settings.trap, settings.grid, settings.max_quanta);
  result.modes = modes.size();
  result.gram_error = modes.gram_error;
  result.mode_energy_error = modes.energy_error;
  const auto momentum = mode_momentum(modes, settings.momentum);

  gp::GPOptions gp_options;
  gp_options.laplacian = settings.laplacian;
  result.gp = gp::minimize_gp(settings.trap, settings.g, settings.grid, settings.gp_max_iter,
                              settings.gp_tol, gp_options);
  const auto projection = project_gp(modes, result.gp.phi);

  for (int n : settings.particles) {
    const double a = settings.g / (4.0 * std::numbers::pi * n);
    const auto instance = analyze_instance(modes, momentum, result.gp, projection, result.v1, n, a,
                                           settings.manybody);
    result.rows.push_back(make_row(instance));
  }
  return result;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "N,a,g,E_qm_per_N,E_gp,gp_overlap,trace_distance,momentum_l1,kin,pot,int,kin_pred,pot_pred,int_pred,s\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    out += std::to_string(r.n);
    for (double v : {r.a, r.g, r.e_qm_per_n, r.e_gp, r.gp_overlap, r.trace_distance, r.momentum_l1,
                     r.kin, r.pot, r.inter, r.kin_pred, r.pot_pred, r.int_pred}) {
      out += ',' + num(v);
    }
    out += ',' + (r.s ? num(*r.s) : std::string("nan"));
    out += '\n';
  }
  return out;
}

}  // namespace bec::manybody
