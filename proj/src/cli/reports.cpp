#include "bec/cli/reports.hpp"

#include <cmath>
#include <numbers>

#include "bec/errors.hpp"
#include "bec/gp/dump.hpp"
#include "bec/manybody/localization.hpp"
#include "bec/manybody/sweep.hpp"
#include "bec/poincare/poincare.hpp"
#include "bec/scattering/scattering.hpp"

namespace bec::cli {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

json prediction_json(const gp::EnergyComponentPrediction& p) {
  return {{"kinetic_qm", p.kinetic_qm}, {"potential_qm", p.potential_qm},
          {"interaction_qm", p.interaction_qm}, {"s", p.s}, {"total", p.total()}};
}

json gp_options_json(const GPSection& s) {
  return {{"max_iter", s.max_iter}, {"tol", s.tol}, {"laplacian", gp::to_string(s.laplacian)}};
}

gp::GPOptions gp_options(const GPSection& s) {
  gp::GPOptions o;
  o.laplacian = s.laplacian;
  o.boundary_ratio_limit = s.boundary_ratio_limit;
  return o;
}

json scattering_results(const ExperimentConfig& config) {
  const auto& v = *config.problem.pair_potential;
  const double range = v.range();
  const double r_max = config.scattering.r_max.value_or(range > 0.0 ? 4.0 * range : 1.0);
  const auto sol = scattering::solve_zero_energy(v, r_max, config.scattering.tol);
  return {{"potential", model::to_json(v)},
          {"a", sol.a},
          {"s", optional_number(sol.s)},
          {"r_max", sol.r_max},
          {"tol", config.scattering.tol},
          {"refinements", sol.refinements},
          {"steps_per_length", sol.steps_per_length},
          {"phi1_samples", {{"r", sol.r_grid}, {"phi1", sol.phi1}}}};
}

double gp_coupling(const ExperimentConfig& config) {
  const auto& s = config.gp;
  if (s.g) return *s.g;
  const int dim = config.problem.grid->dimension();
  if (dim == 3) return gp::coupling_3d(*s.particles, *s.a);
  if (dim == 2) return gp::coupling_2d(*s.particles, *s.a);
  throw ConfigError("gp: one-dimensional runs take g directly");
}

json gp_results(const ExperimentConfig& config, gp::GPState& state) {
  const auto& trap = *config.problem.trap;
  const auto& grid = *config.problem.grid;
  if (trap.dimension() != grid.dimension()) throw ConfigError("trap and grid dimensions differ");
  const double g = gp_coupling(config);
  state = gp::minimize_gp(trap, g, grid, config.gp.max_iter, config.gp.tol, gp_options(config.gp));
  json r = {{"trap", model::to_json(trap)},
            {"grid", model::to_json(grid)},
            {"solver", gp_options_json(config.gp)},
            {"g", g},
            {"particles", optional_number(config.gp.particles)},
            {"a", optional_number(config.gp.a)},
            {"dimension", state.dimension},
            {"E_GP", state.energy_total},
            {"components",
             {{"kinetic", state.energy_kinetic},
              {"potential", state.energy_potential},
              {"interaction", state.energy_interaction}}},
            {"quartic", state.quartic},
            {"mu", state.mu},
            {"residual", state.residual},
            {"norm", state.norm},
            {"boundary_ratio", state.boundary_ratio},
            {"iterations", state.iterations},
            {"energy_history", state.energy_history},
            {"virial_defect", nullptr},
            {"prediction", nullptr},
            {"phi_dump", "phi.json"}};
  if (trap.kind() == model::TrapKind::harmonic) r["virial_defect"] = gp::virial_defect(state);
  if (config.problem.pair_potential && state.dimension == 3) {
    const auto& v = *config.problem.pair_potential;
    if (!v.is_zero()) {
      std::optional<double> s = 1.0;
      if (!v.has_hard_core()) s = scattering::solve_zero_energy(v, 4.0 * v.range(), config.scattering.tol).s;
      if (s) r["prediction"] = prediction_json(gp::predict_components(state, *s));
    }
  }
  return r;
}

json potential_json(const manybody::NormalizedPotential& v1) {
  return {{"normalized", model::to_json(v1.potential)},
          {"original_length", v1.original_length},
          {"s", optional_number(v1.s)},
          {"substituted", v1.substituted},
          {"note", v1.note}};
}

json condensate_json(const manybody::CondensateReport& c) {
  return {{"condensate_fraction", c.condensate_fraction},
          {"gp_overlap", c.gp_overlap},
          {"trace_distance", c.trace_distance},
          {"momentum_l1", c.momentum_l1},
          {"momentum_coverage", c.momentum_coverage},
          {"coverage_warning", c.coverage_warning},
          {"pair_moment", c.pair_moment},
          {"pair_moment_lower_bound", c.pair_moment_lower_bound},
          {"pair_moment_constant", c.pair_moment_constant},
          {"truncation_weight", c.truncation_weight},
          {"occupations", vector_json(c.occupations)}};
}

json localization_json(const manybody::LocalizationProfile& p) {
  json points = json::array();
  for (const auto& x : p.sample_points) points.push_back({x[0], x[1], x[2]});
  return {{"radii", p.radii},
          {"fractions", p.fractions},
          {"applicable", p.applicable},
          {"relative_gradient_energy", p.relative_gradient_energy},
          {"cutoff_radius", p.cutoff_radius},
          {"samples", p.samples},
          {"seed", p.seed},
          {"excluded_points", p.excluded_points},
          {"sample_points", points}};
}

manybody::ManyBodyOptions manybody_options(std::size_t cap, double tol, std::uint64_t seed) {
  manybody::ManyBodyOptions o;
  o.dimension_cap = cap;
  o.tol = tol;
  o.seed = seed;
  return o;
}

json manybody_results(const ExperimentConfig& config) {
  const auto& mb = config.manybody;
  const auto& trap = *config.problem.trap;
  const auto& grid = *config.problem.grid;
  const auto v1 = manybody::normalize_pair_potential(*config.problem.pair_potential, config.scattering.tol);
  const int n = mb.particles;
  const double a = mb.a ? *mb.a : *mb.g / (4.0 * std::numbers::pi * n);
  const double g = gp::coupling_3d(n, a);
  if (a > 0.0 && v1.potential.is_zero()) throw InvalidParameter("manybody: a > 0 needs a nonzero pair potential");

  const auto modes = manybody::build_mode_basis(trap, grid, mb.max_quanta);
  const auto momentum = manybody::mode_momentum(modes, mb.momentum);
  const auto state = gp::minimize_gp(trap, g, grid, config.gp.max_iter, config.gp.tol, gp_options(config.gp));
  const auto projection = manybody::project_gp(modes, state.phi);
  const auto r = manybody::analyze_instance(modes, momentum, state, projection, v1, n, a,
                                            manybody_options(mb.dimension_cap, mb.tol, config.seed));
  json out = {{"trap", model::to_json(trap)},
              {"grid", model::to_json(grid)},
              {"potential", potential_json(v1)},
              {"particles", n},
              {"a", a},
              {"g", g},
              {"max_quanta", mb.max_quanta},
              {"modes", modes.size()},
              {"mode_energies", modes.energies},
              {"gram_error", modes.gram_error},
              {"mode_energy_error", modes.energy_error},
              {"dimension", r.ground.dimension},
              {"E_qm", r.ground.energy},
              {"E_qm_per_N", r.ground.energy / n},
              {"E_gp", r.e_gp},
              {"residual", r.ground.residual},
              {"matvecs", r.ground.matvecs},
              {"tensor_asymmetry", r.tensor_asymmetry},
              {"condensate", condensate_json(r.condensate)},
              {"split", {{"kinetic", r.split.kinetic}, {"potential", r.split.potential}, {"interaction", r.split.interaction}}},
              {"prediction", r.s ? prediction_json(r.prediction) : json(nullptr)},
              {"hartree", {{"via_fock_state", r.hartree.via_fock_state}, {"via_formula", r.hartree.via_formula}}},
              {"gamma", matrix_json(r.ground.gamma)},
              {"localization", nullptr}};
  if (n == 2) {
    auto options = mb.localization;
    options.seed = config.seed;
    out["localization"] = localization_json(manybody::localization_profile(r.ground, projection, modes, options));
  }
  return out;
}

json row_json(const manybody::SweepRow& r) {
  return {{"N", r.n},
          {"a", r.a},
          {"g", r.g},
          {"E_qm_per_N", r.e_qm_per_n},
          {"E_gp", r.e_gp},
          {"gp_overlap", r.gp_overlap},
          {"trace_distance", r.trace_distance},
          {"momentum_l1", r.momentum_l1},
          {"kin", r.kin},
          {"pot", r.pot},
          {"int", r.inter},
          {"kin_pred", r.kin_pred},
          {"pot_pred", r.pot_pred},
          {"int_pred", r.int_pred},
          {"s", optional_number(r.s)},
          {"condensate_fraction", r.condensate_fraction},
          {"pair_moment", r.pair_moment},
          {"pair_moment_lower_bound", r.pair_moment_lower_bound},
          {"hartree_per_N", r.hartree_per_n},
          {"hartree_formula_per_N", r.hartree_formula_per_n},
          {"residual", r.residual},
          {"dimension", r.dimension},
          {"truncation_weight", r.truncation_weight},
          {"momentum_coverage", r.momentum_coverage}};
}

json sweep_results(const ExperimentConfig& config, std::string& csv) {
  const auto& sw = config.sweep;
  manybody::SweepSettings settings;
  settings.trap = *config.problem.trap;
  settings.v1 = *config.problem.pair_potential;
  settings.grid = *config.problem.grid;
  settings.g = sw.g;
  settings.particles = sw.particles;
  settings.max_quanta = sw.max_quanta;
  settings.manybody = manybody_options(sw.dimension_cap, sw.tol, config.seed);
  settings.momentum = sw.momentum;
  settings.gp_tol = config.gp.tol;
  settings.gp_max_iter = config.gp.max_iter;
  settings.laplacian = config.gp.laplacian;
  settings.scattering_tol = config.scattering.tol;
  const auto result = manybody::gp_limit_sweep(settings);
  csv = manybody::sweep_csv(result.rows);
  json rows = json::array();
  for (const auto& r : result.rows) rows.push_back(row_json(r));
  return {{"trap", model::to_json(settings.trap)},
          {"grid", model::to_json(settings.grid)},
          {"potential", potential_json(result.v1)},
          {"g", sw.g},
          {"max_quanta", sw.max_quanta},
          {"modes", result.modes},
          {"gram_error", result.gram_error},
          {"mode_energy_error", result.mode_energy_error},
          {"E_gp", result.gp.energy_total},
          {"gp_residual", result.gp.residual},
          {"csv", "sweep.csv"},
          {"rows", rows}};
}

json poincare_results(const ExperimentConfig& config) {
  const auto& p = config.poincare;
  const poincare::Region k(p.region, p.dimension, p.size, p.cells);
  const auto h = poincare::uniform_weight(k);
  const auto est = poincare::estimate_constant(k, h, p.trials, config.seed);
  json r = {{"region", poincare::to_string(p.region)},
            {"dimension", p.dimension},
            {"size", p.size},
            {"cells", p.cells},
            {"volume", k.volume()},
            {"trials", est.trials},
            {"seed", est.seed},
            {"C_star", est.c_star},
            {"worst_trial", est.worst_trial},
            {"worst_description", est.worst_description},
            {"holds_at_c_star", est.holds_at_c_star},
            {"holds_all", est.holds_at_c_star == est.trials},
            {"c_tilde", est.c_tilde},
            {"c_constructed", est.c_constructed},
            {"holds_at_constructed", est.holds_at_constructed},
            {"weighted", nullptr}};
  if (p.weight_dump) {
    const auto dump = gp::read_phi_dump(*p.weight_dump);
    std::vector<double> density(dump.phi.size());
    for (std::size_t i = 0; i < density.size(); ++i) density[i] = dump.phi[i] * dump.phi[i];
    const auto w = poincare::sample_weight(k, dump.grid, density);
    const auto ws = poincare::weighted_suite(k, w, est.c_star, p.trials, config.seed);
    r["weighted"] = {{"source", p.weight_dump->filename().string()},
                     {"g", dump.g},
                     {"weight_ratio", ws.weight_ratio},
                     {"c_sandwich", ws.c_sandwich},
                     {"c_weighted", ws.c_weighted},
                     {"worst_trial", ws.worst_trial},
                     {"holds", ws.holds},
                     {"trials", ws.trials},
                     {"holds_all", ws.holds == ws.trials}};
  }
  return r;
}

}  // namespace

json descriptions(Experiment experiment) {
  switch (experiment) {
    case Experiment::scattering:
      return {{"a", "scattering length: phi1 = 1 - a/r outside the potential"},
              {"s", "kinetic fraction int |grad phi1|^2 / (4 pi a); null for the zero potential"},
              {"phi1_samples", "zero-energy solution sampled on [0, r_max]"},
              {"refinements", "step halvings until a moved by less than tol"}};
    case Experiment::gp:
      return {{"E_GP", "minimum of the GP functional over normalized phi"},
              {"components", "kinetic, trap and interaction parts of E_GP"},
              {"mu", "chemical potential, K + P + 2 g int phi^4"},
              {"residual", "relative norm of the stationarity residual"},
              {"virial_defect", "2K - 2P + dI; zero at the minimizer in a harmonic trap"},
              {"energy_history", "energy before each descent step"},
              {"prediction", "large-N per-particle kinetic, trap and interaction energies from E_GP and s"},
              {"phi_dump", "sidecar of the float64 dump of phi"}};
    case Experiment::manybody:
      return {{"E_qm", "lowest eigenvalue of the N-boson Hamiltonian in the truncated mode basis"},
              {"E_gp", "GP energy at g = 4 pi N a"},
              {"condensate", "one-body density matrix against the projected GP state"},
              {"split", "per-particle kinetic, trap and interaction energy of the ground state"},
              {"prediction", "per-particle components predicted from the GP state and s"},
              {"hartree", "per-particle energy of the GP product state, two routes; an upper bound on E_qm / N"},
              {"gamma", "one-body density matrix in the mode basis, trace N"},
              {"localization", "share of the weighted gradient energy of f = Psi / phi_GP near the second particle (N = 2)"}};
    case Experiment::sweep:
      return {{"rows", "one instance per N at fixed g, a = g / (4 pi N)"},
              {"trace_distance", "trace norm of gamma / N - |phi_GP><phi_GP|"},
              {"momentum_l1", "L1 distance of the momentum densities, bounded by trace_distance"},
              {"pair_moment", "<a*^2 a^2> / N^2 in the GP mode, at least gp_overlap^2 - 2/N"},
              {"hartree_per_N", "product-state energy per particle, an upper bound on E_qm_per_N"}};
    case Experiment::poincare:
      return {{"C_star", "smallest constant valid for every trial: max int f^2 / lhs"},
              {"holds_all", "inequality holds for all trials at C_star"},
              {"c_constructed", "2 |K|^(2/m) times the largest Sobolev-type ratio seen"},
              {"weighted", "weighted variant with density |phi|^2 from a GP dump, checked at C_star (max w / min w)^2"}};
  }
  return json::object();
}

Artifacts compute_artifacts(const ExperimentConfig& config, const std::string& hash) {
  Artifacts a;
  json results;
  switch (config.experiment) {
    case Experiment::scattering:
      results = scattering_results(config);
      break;
    case Experiment::gp: {
      gp::GPState state;
      results = gp_results(config, state);
      a.phi = std::move(state);
      break;
    }
    case Experiment::manybody:
      results = manybody_results(config);
      break;
    case Experiment::sweep: {
      std::string csv;
      results = sweep_results(config, csv);
      a.csv = std::move(csv);
      break;
    }
    case Experiment::poincare:
      results = poincare_results(config);
      break;
  }
  a.report = {{"artifact_version", kArtifactVersion},
              {"experiment", to_string(config.experiment)},
              {"config_hash", hash},
              {"seed", config.seed},
              {"reproducible", config.reproducible},
              {"config", config.canonical},
              {"results", std::move(results)},
              {"descriptions", descriptions(config.experiment)}};
  return a;
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

}  // namespace bec::cli
