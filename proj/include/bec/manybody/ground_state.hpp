#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bec/manybody/fock_basis.hpp"
#include "bec/manybody/interaction.hpp"
#include "bec/manybody/mode_basis.hpp"

namespace bec::manybody {

struct ManyBodyOptions {
  std::size_t dimension_cap = 200000;
  double tol = 1e-9;
  int krylov_dimension = 40;
  int max_restarts = 400;
  /// Seeds the small random admixture of the Lanczos start vector.
  std::uint64_t seed = 0;
};

struct ManyBodyGround {
  int particles = 0;
  double a = 0.0;
  double g = 0.0;
  double energy = 0.0;
  std::vector<double> coefficients;
  /// gamma[i, j] = <a*_j a_i>, trace N.
  Eigen::MatrixXd gamma;
  double residual = 0.0;
  std::size_t dimension = 0;
  int matvecs = 0;
};

/// Lowest eigenpair of the second-quantized Hamiltonian on the Fock basis of
/// N bosons in the given modes. Throws CapacityError above the dimension cap.
ManyBodyGround ground_state(const ModeBasis& modes, const InteractionTensor& tensor, int particles,
                            const ManyBodyOptions& options = {});

/// gamma[i, j] = <x| a*_j a_i |x> for a unit vector on the N-particle basis.
Eigen::MatrixXd one_body_density(const FockBasis& basis, const std::vector<double>& x);

}  // namespace bec::manybody
