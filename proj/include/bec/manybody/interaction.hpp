#pragma once

#include <Eigen/Dense>

#include "bec/manybody/mode_basis.hpp"
#include "bec/model/pair_potential.hpp"

namespace bec::manybody {

/// Index of the unordered pair {i, k} (i <= k) among M modes.
inline int pair_index(int i, int k, int m) {
  if (i > k) std::swap(i, k);
  return i * m - i * (i - 1) / 2 + (k - i);
}

/// Two-body matrix elements
///   V[i,j,k,l] = int int phi_i(r) phi_j(r') v(r - r') phi_k(r) phi_l(r')
/// stored as the symmetric pair matrix T[{i,k}, {j,l}].
struct InteractionTensor {
  int modes = 0;
  Eigen::MatrixXd pair_matrix;
  /// max |T - T^T| before symmetrization.
  double asymmetry = 0.0;
  /// Largest relative spectral weight of a mode product at the grid's
  /// Nyquist shell; large values mean the products are under-resolved.
  double nyquist_weight = 0.0;
  /// Fourier points kept after discarding negligible product weight.
  std::size_t retained_wavevectors = 0;

  double operator()(int i, int j, int k, int l) const {
    return pair_matrix(pair_index(i, k, modes), pair_index(j, l, modes));
  }
};

/// Evaluates the convolution in Fourier space: every mode product is
/// transformed once and paired with the analytic transform of v, so the
/// potential's range need not be resolved by the grid, only the products.
/// Throws ResolutionError when the products carry more than 1e-8 of their
/// spectral weight at the Nyquist shell, and InvalidParameter for hard cores.
InteractionTensor interaction_tensor(const ModeBasis& basis, const model::PairPotential& v);

}  // namespace bec::manybody
