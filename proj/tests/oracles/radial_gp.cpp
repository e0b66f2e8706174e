#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

namespace {

// Solves the tridiagonal system (diag, off) x = b by the Thomas algorithm.
std::vector<double> thomas(const std::vector<double>& diag, double off, std::vector<double> b) {
  const std::size_t n = diag.size();
  std::vector<double> c(n, 0.0), d(n);
  double denom = diag[0];
  c[0] = off / denom;
  d[0] = b[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - off * c[i - 1];
    c[i] = off / denom;
    d[i] = (b[i] - off * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
  return d;
}

}  // namespace

RadialGP radial_gp(double g, double k, double r_max, int n) {
  const double h = r_max / (n + 1);
  std::vector<double> r(n), u(n);
  for (int i = 0; i < n; ++i) {
    r[i] = (i + 1) * h;
    u[i] = r[i] * std::exp(-0.5 * std::sqrt(k) * r[i] * r[i]);
  }
  auto normalize = [&](std::vector<double>& w) {
    double s = 0.0;
    for (double x : w) s += x * x;
    s = std::sqrt(s * h);
    for (double& x : w) x /= s;
  };
  normalize(u);
  const double off = -1.0 / (h * h);
  RadialGP out;
  double mu_prev = 0.0;
  for (int it = 0; it < 5000; ++it) {
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = 2.0 / (h * h) + k * r[i] * r[i] + g / (2.0 * std::numbers::pi) * u[i] * u[i] / (r[i] * r[i]);
    // Rayleigh quotient of the frozen operator as the chemical potential.
    double num = 0.0;
    for (int i = 0; i < n; ++i) {
      double hu = diag[i] * u[i];
      if (i > 0) hu += off * u[i - 1];
      if (i + 1 < n) hu += off * u[i + 1];
      num += u[i] * hu * h;
    }
    out.mu = num;
    std::vector<double> next = thomas(diag, off, u);
    normalize(next);
    for (int i = 0; i < n; ++i) u[i] = 0.5 * u[i] + 0.5 * next[i];
    normalize(u);
    out.iterations = it + 1;
    if (it > 10 && std::abs(out.mu - mu_prev) < 1e-13) break;
    mu_prev = out.mu;
  }
  double e = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double left = i > 0 ? u[i - 1] : 0.0;
    const double right = i < n ? u[i] : 0.0;
    e += (right - left) * (right - left) / h;
  }
  for (int i = 0; i < n; ++i) {
    e += k * r[i] * r[i] * u[i] * u[i] * h;
    e += g / (4.0 * std::numbers::pi) * std::pow(u[i], 4) / (r[i] * r[i]) * h;
  }
  out.energy = e;
  return out;
}

}  // namespace oracle
