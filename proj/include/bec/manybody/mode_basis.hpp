#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "bec/model/grid.hpp"
#include "bec/model/trap.hpp"

namespace bec::manybody {

/// Orthonormal single-particle trap eigenfunctions sampled on a grid.
///
/// harmonic:  products of Hermite functions, length k^{-1/4} and energy
///            sqrt(k)(2n + 1) per axis.
/// box:       products of sin(pi (n + 1) x / side).
/// tabulated: lowest eigenvectors of the discretized -Lap + V.
/// Modes are ordered by energy, ties by quantum numbers; the truncation keeps
/// every mode with total quanta <= max_quanta (tabulated: the lowest
/// C(q + d, d) eigenvectors, labelled by their index).
struct ModeBasis {
  model::TrapSpec trap;
  model::Grid grid;
  int max_quanta = 0;
  std::vector<std::array<int, 3>> quanta;
  std::vector<double> energies;
  /// Row i holds mode i on every grid node.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> values;
  /// Largest |Gram - 1| entry under grid quadrature.
  double gram_error = 0.0;
  /// Largest relative deviation between the grid energy expectation and the
  /// nominal energy.
  double energy_error = 0.0;

  int size() const { return static_cast<int>(energies.size()); }
  /// Quadrature weight of one node (cell volume).
  double weight() const { return grid.cell_volume(); }
  /// Coefficients <phi_i, f> of a full-grid function.
  Eigen::VectorXd project(const std::vector<double>& f) const;
  /// <phi_i, V phi_j>.
  Eigen::MatrixXd trap_matrix() const;
};

/// Number of modes with total quanta <= q in three dimensions.
int harmonic_mode_count(int q);

/// 1D orthonormal Hermite functions h_0..h_nmax at y (unit length scale).
std::vector<double> hermite_functions(int nmax, double y);

/// Throws ResolutionError when a mode's grid energy is off by more than 1%
/// or the Gram matrix deviates from the identity by more than 1e-8.
ModeBasis build_mode_basis(const model::TrapSpec& trap, const model::Grid& grid, int max_quanta);

}  // namespace bec::manybody
