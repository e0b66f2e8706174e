#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace bec::model {

/// Energies are measured in units where hbar^2/2m = 1, so an energy is an
/// inverse length squared and the one-body operator is -Laplacian + V.
inline constexpr double kHbarSquaredOver2m = 1.0;

/// Uniform tensor grid of nodes including both end points of every axis.
/// Functions are stored row-major with axis 0 varying slowest. Axes beyond
/// `dimension` have a single node and unit weight.
class Grid {
 public:
  Grid() = default;
  Grid(int dimension, std::array<double, 3> lower, std::array<double, 3> extent,
       std::array<int, 3> points);

  /// Grid centred on the origin with the same extent and node count per axis.
  static Grid centered(int dimension, double extent, int points);

  int dimension() const { return dimension_; }
  double lower(int axis) const { return lower_[axis]; }
  double extent(int axis) const { return extent_[axis]; }
  int points(int axis) const { return points_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  const std::array<int, 3>& shape() const { return points_; }

  std::size_t size() const;
  double coordinate(int axis, int i) const { return lower_[axis] + i * spacing_[axis]; }
  std::array<double, 3> node(std::size_t flat) const;
  std::array<int, 3> unravel(std::size_t flat) const;
  std::size_t flat(int i0, int i1, int i2) const {
    return (static_cast<std::size_t>(i0) * points_[1] + i1) * points_[2] + i2;
  }

  /// Product of spacings over the active axes.
  double cell_volume() const;
  double volume() const;
  bool on_boundary(std::size_t flat) const;
  /// True when all active axes share one spacing within 1e-12 relative.
  bool isotropic() const;

  /// Trapezoidal weights; they sum to volume().
  std::vector<double> quadrature_weights() const;
  double integrate(const std::vector<double>& values) const;

  bool operator==(const Grid&) const = default;

 private:
  int dimension_ = 3;
  std::array<double, 3> lower_{};
  std::array<double, 3> extent_{};
  std::array<int, 3> points_{1, 1, 1};
  std::array<double, 3> spacing_{1.0, 1.0, 1.0};
};

}  // namespace bec::model
