#include "bec/model/grid.hpp"

#include <cmath>
#include <string>

#include "bec/errors.hpp"

namespace bec::model {

Grid::Grid(int dimension, std::array<double, 3> lower, std::array<double, 3> extent,
           std::array<int, 3> points)
    : dimension_(dimension), lower_(lower), extent_(extent), points_(points) {
  if (dimension != 2 && dimension != 3) {
    throw InvalidParameter("grid dimension must be 2 or 3, got " + std::to_string(dimension));
  }
  for (int axis = 0; axis < 3; ++axis) {
    if (axis >= dimension) {
      lower_[axis] = 0.0;
      extent_[axis] = 0.0;
      points_[axis] = 1;
      spacing_[axis] = 1.0;
      continue;
    }
    if (points_[axis] < 3) {
      throw InvalidParameter("grid needs at least 3 points per axis");
    }
    if (!(extent_[axis] > 0.0) || !std::isfinite(extent_[axis]) || !std::isfinite(lower_[axis])) {
      throw InvalidParameter("grid extent must be finite and positive");
    }
    spacing_[axis] = extent_[axis] / (points_[axis] - 1);
  }
}

Grid Grid::centered(int dimension, double extent, int points) {
  return Grid(dimension, {-extent / 2, -extent / 2, -extent / 2}, {extent, extent, extent},
              {points, points, points});
}

std::size_t Grid::size() const {
  return static_cast<std::size_t>(points_[0]) * points_[1] * points_[2];
}

std::array<int, 3> Grid::unravel(std::size_t flat) const {
  std::array<int, 3> idx{};
  idx[2] = static_cast<int>(flat % points_[2]);
  flat /= points_[2];
  idx[1] = static_cast<int>(flat % points_[1]);
  idx[0] = static_cast<int>(flat / points_[1]);
  return idx;
}

std::array<double, 3> Grid::node(std::size_t flat) const {
  const auto idx = unravel(flat);
  std::array<double, 3> r{};
  for (int axis = 0; axis < dimension_; ++axis) r[axis] = coordinate(axis, idx[axis]);
  return r;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int axis = 0; axis < dimension_; ++axis) v *= spacing_[axis];
  return v;
}

double Grid::volume() const {
  double v = 1.0;
  for (int axis = 0; axis < dimension_; ++axis) v *= extent_[axis];
  return v;
}

bool Grid::on_boundary(std::size_t flat) const {
  const auto idx = unravel(flat);
  for (int axis = 0; axis < dimension_; ++axis) {
    if (idx[axis] == 0 || idx[axis] == points_[axis] - 1) return true;
  }
  return false;
}

bool Grid::isotropic() const {
  for (int axis = 1; axis < dimension_; ++axis) {
    if (std::abs(spacing_[axis] - spacing_[0]) > 1e-12 * spacing_[0]) return false;
  }
  return true;
}

std::vector<double> Grid::quadrature_weights() const {
  std::array<std::vector<double>, 3> axis_weights;
  for (int axis = 0; axis < 3; ++axis) {
    auto& w = axis_weights[axis];
    w.assign(points_[axis], axis < dimension_ ? spacing_[axis] : 1.0);
    if (axis < dimension_) {
      w.front() *= 0.5;
      w.back() *= 0.5;
    }
  }
  std::vector<double> weights(size());
  std::size_t k = 0;
  for (int i0 = 0; i0 < points_[0]; ++i0)
    for (int i1 = 0; i1 < points_[1]; ++i1)
      for (int i2 = 0; i2 < points_[2]; ++i2)
        weights[k++] = axis_weights[0][i0] * axis_weights[1][i1] * axis_weights[2][i2];
  return weights;
}

double Grid::integrate(const std::vector<double>& values) const {
  const auto w = quadrature_weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) sum += w[k] * values[k];
  return sum;
}

}  // namespace bec::model
