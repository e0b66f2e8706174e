#include "bec/poincare/region.hpp"

#include <cmath>

#include "bec/errors.hpp"

namespace bec::poincare {

RegionShape parse_region_shape(const std::string& name) {
  if (name == "box") return RegionShape::box;
  if (name == "ball") return RegionShape::ball;
  throw ConfigError("unknown region '" + name + "' (expected box or ball)");
}

std::string to_string(RegionShape shape) { return shape == RegionShape::box ? "box" : "ball"; }

Region::Region(RegionShape shape, int dimension, double size, int cells_per_axis)
    : shape_(shape), dimension_(dimension), size_(size), n_(cells_per_axis) {
  if (dimension != 2 && dimension != 3) throw InvalidParameter("region dimension must be 2 or 3");
  if (!(size > 0.0) || !std::isfinite(size)) throw InvalidParameter("region size must be positive");
  if (cells_per_axis < 4) throw InvalidParameter("at least 4 cells per axis are required");
  const double span = shape == RegionShape::box ? size : 2.0 * size;
  h_ = span / n_;
  origin_ = shape == RegionShape::box ? 0.0 : -size;
  std::size_t total = 1;
  for (int d = 0; d < dimension; ++d) total *= static_cast<std::size_t>(n_);
  inside_.assign(total, 1);
  if (shape == RegionShape::ball) {
    for (std::size_t c = 0; c < total; ++c) {
      const auto r = center(c);
      double r2 = 0.0;
      for (int d = 0; d < dimension; ++d) r2 += r[d] * r[d];
      inside_[c] = r2 <= size * size ? 1 : 0;
    }
  }
  for (auto v : inside_) interior_ += v;
}

double Region::cell_volume() const { return std::pow(h_, dimension_); }

std::array<int, 3> Region::index(std::size_t cell) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = dimension_ - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(cell % n_);
    cell /= n_;
  }
  return idx;
}

std::size_t Region::flat(const std::array<int, 3>& idx) const {
  std::size_t c = 0;
  for (int d = 0; d < dimension_; ++d) c = c * n_ + idx[d];
  return c;
}

std::array<double, 3> Region::center(std::size_t cell) const {
  const auto idx = index(cell);
  std::array<double, 3> r{0.0, 0.0, 0.0};
  for (int d = 0; d < dimension_; ++d) r[d] = origin_ + (idx[d] + 0.5) * h_;
  return r;
}

Region Region::scaled(double lambda) const { return Region(shape_, dimension_, size_ * lambda, n_); }

}  // namespace bec::poincare
