#pragma once

// Test-only reference values. None of these call into the library's solvers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Soft sphere of height V0 and radius R under u'' = V0 u / 2 inside.
inline double soft_sphere_length(double v0, double radius) {
  const double x = std::sqrt(0.5 * v0) * radius;
  return radius * (1.0 - std::tanh(x) / x);
}

// int |grad phi1|^2 / (4 pi a) for the same soft sphere, by direct integration
// of the closed-form inside solution phi1 = c sinh(k r) / r, c = (R - a)/sinh(kR).
inline double soft_sphere_fraction(double v0, double radius) {
  const double k = std::sqrt(0.5 * v0);
  const double a = soft_sphere_length(v0, radius);
  const double c = (radius - a) / std::sinh(k * radius);
  const int n = 200000;
  const double h = radius / n;
  double inside = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = i * h;
    double d;
    if (r == 0.0) {
      d = 0.0;
    } else {
      const double phi_prime = c * (k * r * std::cosh(k * r) - std::sinh(k * r)) / (r * r);
      d = r * r * phi_prime * phi_prime;
    }
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    inside += w * d;
  }
  inside *= h / 3.0;
  return (inside + a * a / radius) / a;
}

// Lowest nonzero Neumann eigenvalue of -Lap on [0, L]^m under the
// cell-centred five-point stencil with n cells per axis.
inline double discrete_neumann_eigenvalue(double side, int cells) {
  const double h = side / cells;
  return (2.0 - 2.0 * std::cos(std::numbers::pi / cells)) / (h * h);
}

// Fourier transform int h_n(x) e^{-ikx} dx of the orthonormal Hermite function
// by composite Simpson quadrature on [-L, L].
inline std::complex<double> hermite_ft_quadrature(int n, double k, double half_width = 14.0, int steps = 8000) {
  auto hermite = [n](double x) {
    double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) return h0;
    double h1 = std::sqrt(2.0) * x * h0;
    for (int m = 2; m <= n; ++m) {
      const double h2 = std::sqrt(2.0 / m) * x * h1 - std::sqrt((m - 1.0) / m) * h0;
      h0 = h1;
      h1 = h2;
    }
    return h1;
  };
  const double dx = 2.0 * half_width / steps;
  std::complex<double> sum = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double x = -half_width + i * dx;
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * hermite(x) * std::exp(std::complex<double>(0.0, -k * x));
  }
  return sum * dx / 3.0;
}

// <00|v|00> for the unit-length oscillator ground state: the pair density of
// two Gaussians is (2 pi)^{-3/2} exp(-s^2 / 2) in the relative coordinate.
template <class V>
inline double gaussian_pair_element(V&& v, double r_max, int steps = 200000) {
  const double h = r_max / steps;
  double sum = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double s = i * h;
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * 4.0 * std::numbers::pi * s * s * v(s) * std::pow(2.0 * std::numbers::pi, -1.5) * std::exp(-0.5 * s * s);
  }
  return sum * h / 3.0;
}

struct RadialGP {
  double energy = 0.0;
  double mu = 0.0;
  int iterations = 0;
};

// Isotropic harmonic trap V = k r^2 in 3D, radial reduction u = sqrt(4 pi) r phi:
//   -u'' + k r^2 u + (g / 2 pi) u^3 / r^2 = mu u,  int u^2 = 1,
// on (0, r_max] with second-order differences, solved self-consistently by
// inverse iteration of the frozen linear problem.
RadialGP radial_gp(double g, double k, double r_max = 9.0, int n = 6000);

struct DenseGround {
  double energy = 0.0;
  Eigen::MatrixXd gamma;
  std::size_t dimension = 0;
};

// Builds H = sum e_i a*_i a_i + 1/2 sum_{ijkl} V(i,j,k,l) a*_i a*_j a_l a_k term
// by term on an explicitly enumerated occupation basis and diagonalizes it.
template <class Tensor>
DenseGround dense_ground(const std::vector<double>& energies, const Tensor& v, int particles);

}  // namespace oracle

#include "dense_fock.ipp"
