#pragma once

#include <vector>

namespace bec::model {

enum class PairShape { hard_sphere, soft_sphere, tabulated_radial };

/// Repulsive, spherically symmetric pair potential v(|r|).
class PairPotential {
 public:
  static PairPotential hard_sphere(double core_radius);
  static PairPotential soft_sphere(double height, double radius);
  /// Linear interpolation between (r, value) samples; the first value
  /// extends down to r = 0 and the potential vanishes beyond the last sample.
  static PairPotential tabulated_radial(std::vector<double> r, std::vector<double> values);

  PairShape shape() const { return shape_; }
  double radius() const { return radius_; }
  double height() const { return height_; }
  const std::vector<double>& table_r() const { return table_r_; }
  const std::vector<double>& table_values() const { return table_values_; }

  /// v(r); +infinity inside a hard core.
  double operator()(double r) const;
  /// Smallest radius beyond which v vanishes identically.
  double range() const;
  bool is_zero() const;
  bool has_hard_core() const { return shape_ == PairShape::hard_sphere; }

  /// Three-dimensional Fourier transform 4 pi int v(r) r^2 sin(qr)/(qr) dr.
  /// Undefined for hard cores (throws InvalidParameter).
  double fourier_transform(double q) const;
  /// Integral of v over R^3, equal to fourier_transform(0).
  double integral() const { return fourier_transform(0.0); }

  /// Radial breakpoints where v or its derivative may jump, ascending,
  /// ending at range().
  std::vector<double> breakpoints() const;

 private:
  PairShape shape_ = PairShape::soft_sphere;
  double radius_ = 0.0;
  double height_ = 0.0;
  std::vector<double> table_r_;
  std::vector<double> table_values_;
};

/// v(r) = base(r / a) / a^2.
PairPotential scale_pair_potential(const PairPotential& base, double a);

}  // namespace bec::model
