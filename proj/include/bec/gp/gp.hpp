#pragma once

#include <optional>
#include <vector>

#include "bec/gp/kinetic.hpp"
#include "bec/model/grid.hpp"
#include "bec/model/trap.hpp"

namespace bec::gp {

struct GPOptions {
  LaplacianScheme laplacian = LaplacianScheme::spectral;
  /// Starting function on the full grid; a trap-matched Gaussian (or the
  /// box ground mode) when empty.
  std::optional<std::vector<double>> initial;
  /// Post-hoc check that the minimizer has decayed at the grid edge.
  bool check_boundary = true;
  double boundary_ratio_limit = 1e-8;
};

/// Normalized minimizer of
///   E[phi] = int |grad phi|^2 + V |phi|^2 + g |phi|^4
/// on a grid, with its energy decomposition and chemical potential.
struct GPState {
  model::Grid grid;
  int dimension = 3;
  double g = 0.0;
  LaplacianScheme laplacian = LaplacianScheme::spectral;
  /// Full-grid samples, zero on the boundary nodes.
  std::vector<double> phi;
  std::vector<double> potential;

  double energy_total = 0.0;
  double energy_kinetic = 0.0;
  double energy_potential = 0.0;
  double energy_interaction = 0.0;
  /// int |phi|^4
  double quartic = 0.0;
  double mu = 0.0;
  double residual = 0.0;
  double norm = 0.0;
  double boundary_ratio = 0.0;
  int iterations = 0;
  /// Energy before every descent step, ending with the accepted state.
  std::vector<double> energy_history;
};

struct EnergyComponents {
  double kinetic = 0.0;
  double potential = 0.0;
  double interaction = 0.0;
  double total() const { return kinetic + potential + interaction; }
};

/// Large-N per-particle energy components predicted from the GP minimizer
/// and the kinetic fraction s of the pair potential.
struct EnergyComponentPrediction {
  double kinetic_qm = 0.0;
  double potential_qm = 0.0;
  double interaction_qm = 0.0;
  double s = 0.0;
  double total() const { return kinetic_qm + potential_qm + interaction_qm; }
};

/// Riemannian preconditioned descent on the unit sphere: the search
/// direction is the residual smoothed by (-Lap + mu)^{-1} (a semi-implicit
/// kinetic step), combined with the previous direction, and the step is an
/// exact line minimization along the great circle, so every iteration lowers
/// the energy. Throws SolverFailure after max_iter iterations and
/// DomainTooSmall when the state has not decayed at the grid edge.
GPState minimize_gp(const model::TrapSpec& trap, double g, const model::Grid& grid, int max_iter,
                    double tol, const GPOptions& options = {});

/// Recomputes kinetic, potential and interaction energies from the state.
EnergyComponents gp_energy_components(const GPState& state);

EnergyComponentPrediction predict_components(const GPState& state, double s);

/// g = 4 pi N a.
double coupling_3d(double particles, double a);
/// g = 4 pi N / |ln(a^2 N)|, valid for a^2 N < 1.
double coupling_2d(double particles, double a);

/// 2 K - 2 P + d I, which vanishes for the minimizer in an isotropic or
/// anisotropic harmonic trap.
double virial_defect(const GPState& state);

/// Residual ||(-Lap + V + 2 g phi^2 - mu) phi|| / ||mu phi|| of a full-grid state.
double gp_residual(const GPState& state);

}  // namespace bec::gp
