#include "bec/manybody/localization.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bec/errors.hpp"
#include "bec/manybody/fock_basis.hpp"

namespace bec::manybody {

namespace {

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0, f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

// Index of the first cumulative entry >= u * total.
int invert(const std::vector<double>& cumulative, double u) {
  const double target = u * cumulative.back();
  const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), target);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative.begin(), cumulative.size() - 1));
}

}  // namespace

LocalizationProfile localization_profile(const ManyBodyGround& ground, const GPProjection& gp,
                                         const ModeBasis& basis, const LocalizationOptions& options) {
  if (ground.particles != 2) throw InvalidParameter("the localization profile needs N = 2");
  if (options.samples < 1) throw InvalidParameter("at least one r2 sample is required");
  const int m = basis.size();
  const auto& grid = basis.grid;
  const std::array<int, 3> n{grid.points(0), grid.points(1), grid.points(2)};
  const std::size_t total = grid.size();

  LocalizationProfile out;
  out.seed = options.seed;
  out.cutoff_radius = std::pow(2.0, -7.0 / 17.0);
  out.radii = options.radii;
  if (options.include_cutoff_radius) out.radii.push_back(out.cutoff_radius);
  std::sort(out.radii.begin(), out.radii.end());
  out.radii.erase(std::unique(out.radii.begin(), out.radii.end()), out.radii.end());
  out.fractions.assign(out.radii.size(), 0.0);

  // Psi(r, r2) = sum_ij C_ij phi_i(r) phi_j(r2).
  const FockBasis fock(2, m);
  Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t idx = 0; idx < fock.size(); ++idx) {
    int first = -1, second = -1;
    for (int i = 0; i < m; ++i) {
      const int ni = fock.occupation(idx, i);
      if (ni == 2) first = second = i;
      else if (ni == 1) (first < 0 ? first : second) = i;
    }
    const double x = ground.coefficients[idx];
    if (first == second) coeff(first, first) = x;
    else coeff(first, second) = coeff(second, first) = x / std::sqrt(2.0);
  }

  const Eigen::VectorXd phi = basis.values.transpose() * gp.coefficients;
  const double peak = phi.maxCoeff();
  std::vector<bool> valid(total);
  for (std::size_t k = 0; k < total; ++k) {
    valid[k] = phi(static_cast<Eigen::Index>(k)) >= options.exclusion * peak;
    if (!valid[k]) ++out.excluded_points;
  }

  // Density of one particle on the nodes, for the r2 draws.
  const Eigen::VectorXd density = (basis.values.transpose() * (ground.gamma / 2.0)).cwiseProduct(basis.values.transpose()).rowwise().sum();
  auto rho = [&](int a, int b, int c) { return std::max(0.0, density(static_cast<Eigen::Index>(grid.flat(a, b, c)))); };

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const std::array<double, 3> rotation{uniform(rng), uniform(rng), uniform(rng)};

  std::vector<double> f(total), energy(total);
  double f_energy_total = 0.0, psi_energy_total = 0.0;
  int used = 0;
  for (int s = 0; s < options.samples; ++s) {
    std::array<double, 3> u{};
    const unsigned bases[3] = {2, 3, 5};
    for (int d = 0; d < 3; ++d) u[d] = std::fmod(radical_inverse(s + 1, bases[d]) + rotation[d], 1.0);
    // Sequential conditional inversion: axis 0 marginal, then axis 1, then axis 2.
    std::vector<double> cum(n[0]);
    double acc = 0.0;
    for (int a = 0; a < n[0]; ++a) {
      for (int b = 0; b < n[1]; ++b)
        for (int c = 0; c < n[2]; ++c) acc += rho(a, b, c);
      cum[a] = acc;
    }
    const int ia = invert(cum, u[0]);
    cum.assign(n[1], 0.0);
    acc = 0.0;
    for (int b = 0; b < n[1]; ++b) {
      for (int c = 0; c < n[2]; ++c) acc += rho(ia, b, c);
      cum[b] = acc;
    }
    const int ib = invert(cum, u[1]);
    cum.assign(n[2], 0.0);
    acc = 0.0;
    for (int c = 0; c < n[2]; ++c) {
      acc += rho(ia, ib, c);
      cum[c] = acc;
    }
    const int ic = invert(cum, u[2]);
    const std::size_t node = grid.flat(ia, ib, ic);
    const std::array<double, 3> r2 = grid.node(node);
    out.sample_points.push_back(r2);

    const Eigen::VectorXd b = coeff * basis.values.col(static_cast<Eigen::Index>(node));
    const Eigen::VectorXd psi = basis.values.transpose() * b;
    for (std::size_t k = 0; k < total; ++k) f[k] = valid[k] ? psi(static_cast<Eigen::Index>(k)) / phi(static_cast<Eigen::Index>(k)) : 0.0;

    double f_energy = 0.0, psi_energy = 0.0;
    std::fill(energy.begin(), energy.end(), 0.0);
    for (int a = 1; a + 1 < n[0]; ++a)
      for (int bb = 1; bb + 1 < n[1]; ++bb)
        for (int c = 1; c + 1 < n[2]; ++c) {
          const std::size_t k = grid.flat(a, bb, c);
          const std::array<std::size_t, 6> nb{grid.flat(a - 1, bb, c), grid.flat(a + 1, bb, c),
                                               grid.flat(a, bb - 1, c), grid.flat(a, bb + 1, c),
                                               grid.flat(a, bb, c - 1), grid.flat(a, bb, c + 1)};
          double grad_f = 0.0, grad_psi = 0.0;
          for (int d = 0; d < 3; ++d) {
            const double h2 = 2.0 * grid.spacing(d);
            const double dp = (psi(static_cast<Eigen::Index>(nb[2 * d + 1])) - psi(static_cast<Eigen::Index>(nb[2 * d]))) / h2;
            grad_psi += dp * dp;
            if (valid[k] && valid[nb[2 * d]] && valid[nb[2 * d + 1]]) {
              const double df = (f[nb[2 * d + 1]] - f[nb[2 * d]]) / h2;
              grad_f += df * df;
            }
          }
          const double p = phi(static_cast<Eigen::Index>(k));
          energy[k] = valid[k] ? p * p * grad_f : 0.0;
          f_energy += energy[k];
          psi_energy += grad_psi;
        }
    f_energy_total += f_energy;
    psi_energy_total += psi_energy;
    if (!(f_energy > 0.0)) continue;
    ++used;
    std::vector<double> inside(out.radii.size(), 0.0);
    for (std::size_t k = 0; k < total; ++k) {
      if (energy[k] == 0.0) continue;
      const auto r = grid.node(k);
      const double dx = r[0] - r2[0], dy = r[1] - r2[1], dz = r[2] - r2[2];
      const double d2 = dx * dx + dy * dy + dz * dz;
      for (std::size_t ri = 0; ri < out.radii.size(); ++ri)
        if (d2 <= out.radii[ri] * out.radii[ri]) inside[ri] += energy[k];
    }
    for (std::size_t ri = 0; ri < out.radii.size(); ++ri) out.fractions[ri] += inside[ri] / f_energy;
  }
  out.samples = used;
  out.relative_gradient_energy = psi_energy_total > 0.0 ? f_energy_total / psi_energy_total : 0.0;
  out.applicable = used > 0 && out.relative_gradient_energy >= options.applicability;
  if (!out.applicable) {
    std::fill(out.fractions.begin(), out.fractions.end(), 0.0);
    return out;
  }
  for (double& v : out.fractions) v /= used;
  return out;
}

}  // namespace bec::manybody
