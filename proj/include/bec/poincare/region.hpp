#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace bec::poincare {

enum class RegionShape { box, ball };

RegionShape parse_region_shape(const std::string& name);
std::string to_string(RegionShape shape);

/// Cell-centred discretization of a box [0, size]^m or a ball of radius
/// `size` about the origin. Functions live on every cell of the bounding
/// grid (row-major, axis 0 slowest); cells outside the region are ignored.
class Region {
 public:
  Region(RegionShape shape, int dimension, double size, int cells_per_axis);

  RegionShape shape() const { return shape_; }
  int dimension() const { return dimension_; }
  double size() const { return size_; }
  int cells_per_axis() const { return n_; }
  double spacing() const { return h_; }
  double cell_volume() const;
  std::size_t cell_count() const { return inside_.size(); }
  std::size_t interior_count() const { return interior_; }
  /// Discrete |K|: interior cells times the cell volume.
  double volume() const { return static_cast<double>(interior_) * cell_volume(); }

  bool inside(std::size_t cell) const { return inside_[cell] != 0; }
  const std::vector<std::uint8_t>& mask() const { return inside_; }
  std::array<double, 3> center(std::size_t cell) const;
  std::array<int, 3> index(std::size_t cell) const;
  std::size_t flat(const std::array<int, 3>& idx) const;

  /// Same region with every length multiplied by lambda.
  Region scaled(double lambda) const;

 private:
  RegionShape shape_;
  int dimension_;
  double size_;
  int n_;
  double h_;
  double origin_;
  std::size_t interior_ = 0;
  std::vector<std::uint8_t> inside_;
};

}  // namespace bec::poincare
