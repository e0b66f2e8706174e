#pragma once

#include <array>
#include <span>
#include <vector>

#include "bec/model/grid.hpp"

namespace bec::model {

enum class TrapKind { harmonic, box, tabulated };

/// External potential V(r).
///
/// harmonic:  V = sum_i k_i r_i^2, confining in every direction.
/// box:       V = 0 on [0, side]^d with infinite walls (Dirichlet boundary).
/// tabulated: samples on a grid, multilinear interpolation between nodes.
class TrapSpec {
 public:
  static TrapSpec harmonic(std::vector<double> stiffness);
  static TrapSpec box(int dimension, double side);
  static TrapSpec tabulated(Grid grid, std::vector<double> values);

  TrapKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  const std::vector<double>& stiffness() const { return stiffness_; }
  double side() const { return side_; }
  const Grid& table_grid() const { return table_grid_; }
  const std::vector<double>& table_values() const { return table_values_; }

  /// True for a harmonic trap with equal stiffness on every axis.
  bool isotropic_harmonic() const;

  /// Samples V on every node of `grid`.
  std::vector<double> sample(const Grid& grid) const;

 private:
  TrapKind kind_ = TrapKind::harmonic;
  int dimension_ = 3;
  std::vector<double> stiffness_;
  double side_ = 0.0;
  Grid table_grid_;
  std::vector<double> table_values_;
};

/// Returns V(point). Box traps return +infinity outside the box; tabulated
/// traps throw OutOfDomain outside their table.
double evaluate_trap(const TrapSpec& trap, std::span<const double> point);

}  // namespace bec::model
