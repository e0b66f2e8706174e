#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bec/manybody/fock_basis.hpp"
#include "bec/manybody/ground_state.hpp"
#include "bec/manybody/interaction.hpp"
#include "bec/manybody/mode_basis.hpp"
#include "bec/manybody/momentum.hpp"

namespace bec::manybody {

/// phi^GP expanded in the modes and renormalized within their span.
struct GPProjection {
  Eigen::VectorXd coefficients;
  /// sum_i <phi_i, phi^GP>^2 before renormalization.
  double truncation_weight = 0.0;
};

/// Throws BasisInsufficient when the truncation weight is below `minimum`.
GPProjection project_gp(const ModeBasis& basis, const std::vector<double>& phi_gp,
                        double minimum = 0.99);

struct CondensateReport {
  double condensate_fraction = 0.0;
  double gp_overlap = 0.0;
  double trace_distance = 0.0;
  double momentum_l1 = 0.0;
  /// int rho^/N d^3k/(2 pi)^3 on the k-grid; 1 when the grid holds all the mass.
  double momentum_coverage = 0.0;
  bool coverage_warning = false;
  double pair_moment = 0.0;
  /// gp_overlap^2 - c / N with c = pair_moment_constant.
  double pair_moment_lower_bound = 0.0;
  double pair_moment_constant = 2.0;
  double truncation_weight = 0.0;
  Eigen::VectorXd occupations;  // eigenvalues of gamma / N, descending
};

CondensateReport condensate_metrics(const ManyBodyGround& ground, const GPProjection& gp,
                                    const ModeBasis& basis, const ModeMomentum& momentum);

/// <(a*)^2 a^2> / N^2 for the mode a = sum_i c_i a_i (c normalized).
double pair_moment(const FockBasis& basis, const std::vector<double>& x, const Eigen::VectorXd& c);

/// Per-particle energy of the product state with every particle in the mode
/// c, evaluated two ways: through its Fock coefficients and the matrix-free
/// Hamiltonian, and through N c'ec + N(N - 1)/2 sum V c c c c.
struct HartreeEnergy {
  double via_fock_state = 0.0;
  double via_formula = 0.0;
};

HartreeEnergy hartree_energy(const ModeBasis& basis, const InteractionTensor& tensor,
                             const Eigen::VectorXd& c, int particles);

/// Per-particle kinetic, trap and interaction energy of a ground state:
/// tr(gamma (e - V)), tr(gamma V) and E - tr(gamma e), each divided by N.
struct EnergySplit {
  double kinetic = 0.0;
  double potential = 0.0;
  double interaction = 0.0;
};

EnergySplit energy_split(const ManyBodyGround& ground, const ModeBasis& basis);

}  // namespace bec::manybody
