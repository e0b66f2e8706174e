#include "bec/model/trap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bec/errors.hpp"

namespace bec::model {

TrapSpec TrapSpec::harmonic(std::vector<double> stiffness) {
  const int dim = static_cast<int>(stiffness.size());
  if (dim != 2 && dim != 3) throw InvalidParameter("trap dimension must be 2 or 3");
  for (double k : stiffness) {
    if (!(k > 0.0) || !std::isfinite(k)) {
      throw InvalidParameter("harmonic stiffness must be positive and finite");
    }
  }
  TrapSpec trap;
  trap.kind_ = TrapKind::harmonic;
  trap.dimension_ = dim;
  trap.stiffness_ = std::move(stiffness);
  return trap;
}

TrapSpec TrapSpec::box(int dimension, double side) {
  if (dimension != 2 && dimension != 3) throw InvalidParameter("trap dimension must be 2 or 3");
  if (!(side > 0.0) || !std::isfinite(side)) throw InvalidParameter("box side must be positive");
  TrapSpec trap;
  trap.kind_ = TrapKind::box;
  trap.dimension_ = dimension;
  trap.side_ = side;
  return trap;
}

TrapSpec TrapSpec::tabulated(Grid grid, std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw InvalidParameter("tabulated trap needs " + std::to_string(grid.size()) +
                           " values, got " + std::to_string(values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidParameter("tabulated trap values must be finite");
  }
  TrapSpec trap;
  trap.kind_ = TrapKind::tabulated;
  trap.dimension_ = grid.dimension();
  trap.table_grid_ = std::move(grid);
  trap.table_values_ = std::move(values);
  return trap;
}

bool TrapSpec::isotropic_harmonic() const {
  if (kind_ != TrapKind::harmonic) return false;
  return std::all_of(stiffness_.begin(), stiffness_.end(),
                     [&](double k) { return k == stiffness_.front(); });
}

namespace {

double interpolate_table(const Grid& grid, const std::vector<double>& values,
                         std::span<const double> point) {
  std::array<int, 3> base{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int axis = 0; axis < grid.dimension(); ++axis) {
    const double t = (point[axis] - grid.lower(axis)) / grid.spacing(axis);
    const int last = grid.points(axis) - 1;
    if (t < -1e-12 || t > last + 1e-12) {
      throw OutOfDomain("tabulated trap evaluated outside its table on axis " +
                        std::to_string(axis));
    }
    int i = std::clamp(static_cast<int>(std::floor(t)), 0, last - 1);
    base[axis] = i;
    frac[axis] = std::clamp(t - i, 0.0, 1.0);
  }
  double result = 0.0;
  const int corners = 1 << grid.dimension();
  for (int c = 0; c < corners; ++c) {
    std::array<int, 3> idx{0, 0, 0};
    double w = 1.0;
    for (int axis = 0; axis < grid.dimension(); ++axis) {
      const int bit = (c >> axis) & 1;
      idx[axis] = base[axis] + bit;
      w *= bit ? frac[axis] : 1.0 - frac[axis];
    }
    if (w != 0.0) result += w * values[grid.flat(idx[0], idx[1], idx[2])];
  }
  return result;
}

}  // namespace

double evaluate_trap(const TrapSpec& trap, std::span<const double> point) {
  if (static_cast<int>(point.size()) < trap.dimension()) {
    throw InvalidParameter("point has fewer coordinates than the trap dimension");
  }
  switch (trap.kind()) {
    case TrapKind::harmonic: {
      double v = 0.0;
      for (int axis = 0; axis < trap.dimension(); ++axis) {
        v += trap.stiffness()[axis] * point[axis] * point[axis];
      }
      return v;
    }
    case TrapKind::box: {
      for (int axis = 0; axis < trap.dimension(); ++axis) {
        if (point[axis] < 0.0 || point[axis] > trap.side()) {
          return std::numeric_limits<double>::infinity();
        }
      }
      return 0.0;
    }
    case TrapKind::tabulated:
      return interpolate_table(trap.table_grid(), trap.table_values(), point);
  }
  return 0.0;
}

std::vector<double> TrapSpec::sample(const Grid& grid) const {
  std::vector<double> v(grid.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto r = grid.node(k);
    v[k] = evaluate_trap(*this, std::span<const double>(r.data(), 3));
  }
  return v;
}

}  // namespace bec::model
