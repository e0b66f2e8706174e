#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "bec/manybody/mode_basis.hpp"

namespace bec::manybody {

/// Symmetric k-grid per axis: `points` (odd) samples on [-k_max, k_max].
/// Zero values pick defaults from the trap's length scale.
struct MomentumGrid {
  int points = 0;
  double k_max = 0.0;
};

/// Fourier amplitudes phi^_i(k) = int phi_i(r) exp(-i k.r) d^3r of every mode
/// on a set of wavevectors, with quadrature weights for d^3k / (2 pi)^3.
struct ModeMomentum {
  bool analytic = false;
  std::vector<std::array<double, 3>> k;
  std::vector<double> weight;
  /// Row p, column i: phi^_i(k_p).
  Eigen::MatrixXcd amplitudes;
};

/// Harmonic modes use the closed-form transform of Hermite functions on the
/// requested grid; other traps use the discrete transform of the sampled
/// modes on the reciprocal lattice of the mode grid (the requested grid is
/// then ignored).
ModeMomentum mode_momentum(const ModeBasis& basis, const MomentumGrid& grid = {});

/// rho^(k_p) = sum_ij D[i,j] phi^_i(k_p) conj(phi^_j(k_p)) for a real
/// symmetric matrix D over the modes.
std::vector<double> momentum_density(const ModeMomentum& momentum, const Eigen::MatrixXd& density);

/// Sum over the grid of weight * |values|.
double momentum_l1_norm(const ModeMomentum& momentum, const std::vector<double>& values);

}  // namespace bec::manybody
