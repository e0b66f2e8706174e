#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bec/gp/gp.hpp"
#include "bec/manybody/condensate.hpp"
#include "bec/manybody/ground_state.hpp"
#include "bec/manybody/interaction.hpp"
#include "bec/manybody/mode_basis.hpp"
#include "bec/manybody/momentum.hpp"
#include "bec/model/pair_potential.hpp"

namespace bec::manybody {

/// v1 rescaled so that its scattering length is exactly 1.
struct NormalizedPotential {
  model::PairPotential potential;
  /// Scattering length of the potential as given.
  double original_length = 0.0;
  /// Kinetic fraction (scale invariant); empty for the zero potential.
  std::optional<double> s;
  /// Set when a hard core was replaced by a soft sphere of equal length.
  bool substituted = false;
  std::string note;
};

/// Soft sphere with the scattering length of the hard core and kinetic
/// fraction >= s_min; hard cores have no finite mode matrix elements.
model::PairPotential soften_hard_core(const model::PairPotential& v, double s_min = 0.99);

/// Applies soften_hard_core when needed, then rescales to unit scattering length.
NormalizedPotential normalize_pair_potential(const model::PairPotential& v1, double tol = 1e-10);

/// Everything measured on one many-body instance.
struct InstanceResult {
  int particles = 0;
  double a = 0.0;
  double g = 0.0;
  ManyBodyGround ground;
  CondensateReport condensate;
  EnergySplit split;
  HartreeEnergy hartree;
  double e_gp = 0.0;
  gp::EnergyComponentPrediction prediction;
  std::optional<double> s;
  double tensor_asymmetry = 0.0;
};

/// Solves the instance N, a with the potential v1 (unit scattering length)
/// rescaled to a, and compares it with the GP state.
InstanceResult analyze_instance(const ModeBasis& modes, const ModeMomentum& momentum,
                                const gp::GPState& gp_state, const GPProjection& projection,
                                const NormalizedPotential& v1, int particles, double a,
                                const ManyBodyOptions& options);

struct SweepSettings {
  model::TrapSpec trap = model::TrapSpec::harmonic({1.0, 1.0, 1.0});
  model::PairPotential v1 = model::PairPotential::soft_sphere(0.0, 1.0);
  model::Grid grid;
  double g = 0.0;
  std::vector<int> particles{2, 3, 4, 5, 6};
  int max_quanta = 3;
  ManyBodyOptions manybody;
  MomentumGrid momentum;
  double gp_tol = 1e-9;
  int gp_max_iter = 5000;
  gp::LaplacianScheme laplacian = gp::LaplacianScheme::spectral;
  double scattering_tol = 1e-10;
};

struct SweepRow {
  int n = 0;
  double a = 0.0, g = 0.0;
  double e_qm_per_n = 0.0, e_gp = 0.0;
  double gp_overlap = 0.0, trace_distance = 0.0, momentum_l1 = 0.0;
  double kin = 0.0, pot = 0.0, inter = 0.0;
  double kin_pred = 0.0, pot_pred = 0.0, int_pred = 0.0;
  std::optional<double> s;
  // Beyond the CSV contract.
  double condensate_fraction = 0.0;
  double pair_moment = 0.0;
  double pair_moment_lower_bound = 0.0;
  double hartree_per_n = 0.0;
  double hartree_formula_per_n = 0.0;
  double residual = 0.0;
  std::size_t dimension = 0;
  double truncation_weight = 0.0;
  double momentum_coverage = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  NormalizedPotential v1;
  gp::GPState gp;
  int modes = 0;
  double gram_error = 0.0;
  double mode_energy_error = 0.0;
};

SweepRow make_row(const InstanceResult& r);

/// For each N: a = g / (4 pi N), v = v1(r / a) / a^2, ground state in the
/// truncated basis and its comparison with the GP minimizer at g.
SweepResult gp_limit_sweep(const SweepSettings& settings);

/// Header N,a,g,E_qm_per_N,E_gp,gp_overlap,trace_distance,momentum_l1,
/// kin,pot,int,kin_pred,pot_pred,int_pred,s and one line per row.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace bec::manybody
