#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bec/manybody/fock_basis.hpp"
#include "bec/manybody/interaction.hpp"

namespace bec::manybody {

/// Map from the (N - k)-particle basis back to N particles by creating one
/// particle (k = 1, column = mode) or a pair (k = 2, column = pair index).
/// Entry (m, c) holds the N-particle rank and the ladder amplitude
/// sqrt((m_i + 1)(m_j + 1 + delta_ij)).
struct Ladder {
  FockBasis lower;
  int columns = 0;
  std::vector<std::uint32_t> target;
  std::vector<double> amplitude;
};

Ladder single_ladder(const FockBasis& basis);
Ladder pair_ladder(const FockBasis& basis);

/// Pair-space couplings W with H_int = sum_{P,Q} W[P,Q] A*_P A_Q, where
/// A_{kl} = a_l a_k over unordered pairs k <= l. Symmetric.
Eigen::MatrixXd pair_couplings(const InteractionTensor& tensor);

/// H = sum_i e_i a*_i a_i + 1/2 sum V[i,j,k,l] a*_i a*_j a_l a_k, applied
/// without storing a matrix: a pair is annihilated into the (N - 2)-particle
/// space, mixed by W there, and created again.
class Hamiltonian {
 public:
  Hamiltonian(const FockBasis& basis, std::vector<double> mode_energies,
              const InteractionTensor& tensor);

  std::size_t dimension() const { return basis_.size(); }
  const FockBasis& basis() const { return basis_; }
  void apply(const double* x, double* y) const;
  double expectation(const std::vector<double>& x) const;

 private:
  FockBasis basis_;
  std::vector<double> diagonal_;
  Eigen::MatrixXd couplings_;
  bool interacting_ = false;
  Ladder ladder_;
  mutable Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> y_, z_;
};

}  // namespace bec::manybody
