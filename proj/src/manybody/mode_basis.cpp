#include "bec/manybody/mode_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bec/errors.hpp"
#include "bec/gp/kinetic.hpp"
#include "bec/manybody/lanczos.hpp"

namespace bec::manybody {

using model::Grid;
using model::TrapKind;
using model::TrapSpec;

int harmonic_mode_count(int q) { return (q + 1) * (q + 2) * (q + 3) / 6; }

std::vector<double> hermite_functions(int nmax, double y) {
  std::vector<double> h(nmax + 1);
  h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
  if (nmax >= 1) h[1] = std::sqrt(2.0) * y * h[0];
  for (int n = 1; n < nmax; ++n) {
    h[n + 1] = std::sqrt(2.0 / (n + 1)) * y * h[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * h[n - 1];
  }
  return h;
}

namespace {

struct Label {
  std::array<int, 3> quanta;
  double energy;
};

std::vector<Label> analytic_labels(const TrapSpec& trap, int q) {
  std::vector<Label> labels;
  for (int a = 0; a <= q; ++a)
    for (int b = 0; a + b <= q; ++b)
      for (int c = 0; a + b + c <= q; ++c) {
        const std::array<int, 3> n{a, b, c};
        double e = 0.0;
        for (int axis = 0; axis < 3; ++axis) {
          if (trap.kind() == TrapKind::harmonic) {
            e += std::sqrt(trap.stiffness()[axis]) * (2 * n[axis] + 1);
          } else {
            const double wave = std::numbers::pi * (n[axis] + 1) / trap.side();
            e += wave * wave;
          }
        }
        labels.push_back({n, e});
      }
  // Energies of degenerate modes agree only to round-off; compare with a tolerance.
  std::stable_sort(labels.begin(), labels.end(), [](const Label& x, const Label& y) {
    const double scale = std::max(std::abs(x.energy), std::abs(y.energy));
    if (std::abs(x.energy - y.energy) > 1e-12 * scale) return x.energy < y.energy;
    return x.quanta < y.quanta;
  });
  return labels;
}

// Per-axis 1D factor of an analytic mode on the grid nodes.
std::vector<double> axis_factor(const TrapSpec& trap, const Grid& grid, int axis, int n) {
  std::vector<double> f(grid.points(axis));
  for (int i = 0; i < grid.points(axis); ++i) {
    const double x = grid.coordinate(axis, i);
    if (trap.kind() == TrapKind::harmonic) {
      const double scale = std::pow(trap.stiffness()[axis], 0.25);  // inverse length
      f[i] = std::sqrt(scale) * hermite_functions(n, scale * x)[n];
    } else {
      const double side = trap.side();
      f[i] = std::sqrt(2.0 / side) * std::sin(std::numbers::pi * (n + 1) * x / side);
    }
  }
  return f;
}

void check_quality(ModeBasis& basis) {
  const int m = basis.size();
  const double w = basis.weight();
  const Eigen::MatrixXd gram = w * basis.values * basis.values.transpose();
  basis.gram_error = (gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();

  const gp::DirichletKinetic kinetic(basis.grid, gp::LaplacianScheme::spectral);
  const auto potential = kinetic.restrict_to_interior(basis.trap.sample(basis.grid));
  std::vector<double> full(basis.grid.size()), t_phi(kinetic.interior_size());
  basis.energy_error = 0.0;
  for (int i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < full.size(); ++k) full[k] = basis.values(i, static_cast<Eigen::Index>(k));
    const auto phi = kinetic.restrict_to_interior(full);
    kinetic.apply(phi, t_phi);
    double e = 0.0, nrm = 0.0;
    for (std::size_t k = 0; k < phi.size(); ++k) {
      e += phi[k] * (t_phi[k] + potential[k] * phi[k]);
      nrm += phi[k] * phi[k];
    }
    const double rel = std::abs(e / nrm - basis.energies[i]) / std::abs(basis.energies[i]);
    basis.energy_error = std::max(basis.energy_error, rel);
  }
  if (basis.energy_error > 1e-2) {
    std::ostringstream msg;
    msg << "grid does not resolve the mode basis: relative energy error " << basis.energy_error
        << " exceeds 1%";
    throw ResolutionError(msg.str());
  }
  if (basis.gram_error > 1e-8) {
    std::ostringstream msg;
    msg << "mode basis is not orthonormal on the grid (max |Gram - I| = " << basis.gram_error
        << "); enlarge the extent or refine the grid";
    throw ResolutionError(msg.str());
  }
}

void tabulated_modes(ModeBasis& basis, int count) {
  const gp::DirichletKinetic kinetic(basis.grid, gp::LaplacianScheme::spectral);
  const auto potential = kinetic.restrict_to_interior(basis.trap.sample(basis.grid));
  const std::size_t n = kinetic.interior_size();
  const LinearOperator op = [&](const double* x, double* y) {
    kinetic.apply(std::span<const double>(x, n), std::span<double>(y, n));
    for (std::size_t k = 0; k < n; ++k) y[k] += potential[k] * x[k];
  };
  std::vector<std::vector<double>> found;
  LanczosOptions options;
  options.krylov_dimension = 80;
  options.max_restarts = 2000;
  options.tol = 1e-7;
  basis.values.resize(count, static_cast<Eigen::Index>(basis.grid.size()));
  const double w = basis.weight();
  const double vmin = *std::min_element(potential.begin(), potential.end());
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> jitter(0.5, 1.5);
  for (int i = 0; i < count; ++i) {
    std::vector<double> start(n);
    for (std::size_t k = 0; k < n; ++k) start[k] = std::exp(-0.5 * (potential[k] - vmin)) * jitter(rng);
    auto pair = lowest_eigenpair(op, n, start, options, found);
    found.push_back(pair.vector);
    basis.energies.push_back(pair.value);
    basis.quanta.push_back({i, 0, 0});
    auto full = kinetic.extend_to_full(pair.vector);
    double sum = 0.0;
    for (double v : full) sum += v;
    const double sign = sum < 0.0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < full.size(); ++k)
      basis.values(i, static_cast<Eigen::Index>(k)) = sign * full[k] / std::sqrt(w);
  }
}

}  // namespace

Eigen::VectorXd ModeBasis::project(const std::vector<double>& f) const {
  if (f.size() != grid.size()) throw InvalidParameter("function does not live on the mode grid");
  const Eigen::Map<const Eigen::VectorXd> v(f.data(), static_cast<Eigen::Index>(f.size()));
  return weight() * (values * v);
}

Eigen::MatrixXd ModeBasis::trap_matrix() const {
  const auto v = trap.sample(grid);
  const Eigen::Map<const Eigen::VectorXd> pot(v.data(), static_cast<Eigen::Index>(v.size()));
  Eigen::MatrixXd scaled = values;
  for (Eigen::Index k = 0; k < scaled.cols(); ++k) scaled.col(k) *= pot(k);
  Eigen::MatrixXd out = weight() * (scaled * values.transpose());
  return 0.5 * (out + out.transpose());
}

ModeBasis build_mode_basis(const TrapSpec& trap, const Grid& grid, int max_quanta) {
  if (grid.dimension() != 3 || trap.dimension() != 3) {
    throw InvalidParameter("many-body runs are three-dimensional");
  }
  if (max_quanta < 0) throw InvalidParameter("max_quanta must be >= 0");
  ModeBasis basis;
  basis.trap = trap;
  basis.grid = grid;
  basis.max_quanta = max_quanta;

  if (trap.kind() == TrapKind::tabulated) {
    tabulated_modes(basis, harmonic_mode_count(max_quanta));
  } else {
    if (trap.kind() == TrapKind::box) {
      for (int axis = 0; axis < 3; ++axis) {
        if (std::abs(grid.lower(axis)) > 1e-12 * trap.side() ||
            std::abs(grid.extent(axis) - trap.side()) > 1e-12 * trap.side()) {
          throw InvalidParameter("a box trap needs the grid to span exactly [0, side] on every axis");
        }
      }
    }
    const auto labels = analytic_labels(trap, max_quanta);
    const int m = static_cast<int>(labels.size());
    basis.values.resize(m, static_cast<Eigen::Index>(grid.size()));
    for (int i = 0; i < m; ++i) {
      basis.quanta.push_back(labels[i].quanta);
      basis.energies.push_back(labels[i].energy);
      std::array<std::vector<double>, 3> f;
      for (int axis = 0; axis < 3; ++axis) f[axis] = axis_factor(trap, grid, axis, labels[i].quanta[axis]);
      Eigen::Index k = 0;
      for (int i0 = 0; i0 < grid.points(0); ++i0)
        for (int i1 = 0; i1 < grid.points(1); ++i1)
          for (int i2 = 0; i2 < grid.points(2); ++i2) basis.values(i, k++) = f[0][i0] * f[1][i1] * f[2][i2];
    }
  }
  check_quality(basis);
  return basis;
}

}  // namespace bec::manybody
