#include "bec/model/pair_potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "bec/errors.hpp"

namespace bec::model {

namespace {

constexpr double kPi = std::numbers::pi;

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 4> kGaussNodes{0.1834346424956498, 0.5255324099163290,
                                            0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGaussWeights{0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  return std::sin(x) / x;
}

}  // namespace

PairPotential PairPotential::hard_sphere(double core_radius) {
  if (!(core_radius > 0.0) || !std::isfinite(core_radius)) {
    throw InvalidParameter("hard-sphere core radius must be positive");
  }
  PairPotential v;
  v.shape_ = PairShape::hard_sphere;
  v.radius_ = core_radius;
  return v;
}

PairPotential PairPotential::soft_sphere(double height, double radius) {
  if (!(height >= 0.0) || !std::isfinite(height)) {
    throw InvalidParameter("soft-sphere height must be nonnegative");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidParameter("soft-sphere radius must be positive");
  }
  PairPotential v;
  v.shape_ = PairShape::soft_sphere;
  v.height_ = height;
  v.radius_ = radius;
  return v;
}

PairPotential PairPotential::tabulated_radial(std::vector<double> r, std::vector<double> values) {
  if (r.size() != values.size() || r.size() < 2) {
    throw InvalidParameter("tabulated pair potential needs at least two (r, value) samples");
  }
  if (r.front() < 0.0) throw InvalidParameter("tabulated pair potential radii must be >= 0");
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1])) {
      throw InvalidParameter("tabulated pair potential radii must be strictly increasing");
    }
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidParameter("pair potential values must be finite and nonnegative");
    }
  }
  PairPotential v;
  v.shape_ = PairShape::tabulated_radial;
  v.table_r_ = std::move(r);
  v.table_values_ = std::move(values);
  return v;
}

double PairPotential::operator()(double r) const {
  switch (shape_) {
    case PairShape::hard_sphere:
      return r < radius_ ? std::numeric_limits<double>::infinity() : 0.0;
    case PairShape::soft_sphere:
      return r <= radius_ ? height_ : 0.0;
    case PairShape::tabulated_radial: {
      if (r <= table_r_.front()) return table_values_.front();
      if (r > table_r_.back()) return 0.0;
      auto it = std::upper_bound(table_r_.begin(), table_r_.end(), r);
      const std::size_t i = static_cast<std::size_t>(it - table_r_.begin());
      const std::size_t j = std::min(i, table_r_.size() - 1);
      const double r0 = table_r_[j - 1], r1 = table_r_[j];
      const double t = (r - r0) / (r1 - r0);
      return (1.0 - t) * table_values_[j - 1] + t * table_values_[j];
    }
  }
  return 0.0;
}

double PairPotential::range() const {
  switch (shape_) {
    case PairShape::hard_sphere:
      return radius_;
    case PairShape::soft_sphere:
      return height_ > 0.0 ? radius_ : 0.0;
    case PairShape::tabulated_radial: {
      std::size_t last = table_values_.size();
      while (last > 0 && table_values_[last - 1] == 0.0) --last;
      if (last == 0) return 0.0;
      // v falls linearly to the next (zero) sample, or jumps at the table end.
      return last < table_r_.size() ? table_r_[last] : table_r_.back();
    }
  }
  return 0.0;
}

bool PairPotential::is_zero() const { return range() == 0.0; }

std::vector<double> PairPotential::breakpoints() const {
  const double end = range();
  if (end == 0.0) return {};
  if (shape_ != PairShape::tabulated_radial) return {end};
  std::vector<double> points;
  for (double r : table_r_) {
    if (r > 0.0 && r <= end) points.push_back(r);
  }
  if (points.empty() || points.back() < end) points.push_back(end);
  return points;
}

double PairPotential::fourier_transform(double q) const {
  q = std::abs(q);
  switch (shape_) {
    case PairShape::hard_sphere:
      throw InvalidParameter("a hard core has no Fourier transform");
    case PairShape::soft_sphere: {
      const double x = q * radius_;
      const double r3 = radius_ * radius_ * radius_;
      if (x < 1e-2) {
        const double x2 = x * x;
        return 4.0 * kPi * height_ * r3 * (1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0);
      }
      return 4.0 * kPi * height_ * (std::sin(x) - x * std::cos(x)) / (q * q * q);
    }
    case PairShape::tabulated_radial: {
      double total = 0.0;
      double left = 0.0;
      for (double right : breakpoints()) {
        const double length = right - left;
        int pieces = 1;
        if (q > 0.0) pieces = std::max(1, static_cast<int>(std::ceil(length * q / 0.5)));
        const double step = length / pieces;
        for (int p = 0; p < pieces; ++p) {
          const double a = left + p * step;
          const double mid = a + 0.5 * step;
          const double half = 0.5 * step;
          for (std::size_t n = 0; n < kGaussNodes.size(); ++n) {
            for (double sign : {-1.0, 1.0}) {
              // Nudge inside the interval so jumps at breakpoints are taken from the left.
              const double r = mid + sign * half * kGaussNodes[n];
              total += half * kGaussWeights[n] * (*this)(r) * r * r * sinc(q * r);
            }
          }
        }
        left = right;
      }
      return 4.0 * kPi * total;
    }
  }
  return 0.0;
}

PairPotential scale_pair_potential(const PairPotential& base, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidParameter("scattering length scale must be positive");
  }
  switch (base.shape()) {
    case PairShape::hard_sphere:
      return PairPotential::hard_sphere(base.radius() * a);
    case PairShape::soft_sphere:
      return PairPotential::soft_sphere(base.height() / (a * a), base.radius() * a);
    case PairShape::tabulated_radial: {
      std::vector<double> r = base.table_r();
      std::vector<double> values = base.table_values();
      for (double& x : r) x *= a;
      for (double& v : values) v /= a * a;
      return PairPotential::tabulated_radial(std::move(r), std::move(values));
    }
  }
  return base;
}

}  // namespace bec::model
