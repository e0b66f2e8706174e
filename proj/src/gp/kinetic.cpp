#include "bec/gp/kinetic.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

#include "bec/errors.hpp"

namespace bec::gp {

LaplacianScheme parse_laplacian_scheme(const std::string& name) {
  if (name == "second_order") return LaplacianScheme::second_order;
  if (name == "fourth_order") return LaplacianScheme::fourth_order;
  if (name == "spectral") return LaplacianScheme::spectral;
  throw ConfigError("unknown laplacian scheme '" + name + "'");
}

std::string to_string(LaplacianScheme scheme) {
  switch (scheme) {
    case LaplacianScheme::second_order:
      return "second_order";
    case LaplacianScheme::fourth_order:
      return "fourth_order";
    case LaplacianScheme::spectral:
      return "spectral";
  }
  return "unknown";
}

// In-place DST-I over the interior block. The transform is its own inverse
// up to the product of 2 (n_axis + 1).
struct DirichletKinetic::Plan {
  double* buffer = nullptr;
  fftw_plan plan = nullptr;
  ~Plan() {
    if (plan) fftw_destroy_plan(plan);
    if (buffer) fftw_free(buffer);
  }
};

DirichletKinetic::DirichletKinetic(const model::Grid& grid, LaplacianScheme scheme)
    : grid_(grid) {
  const int dim = grid.dimension();
  std::array<int, 3> n{1, 1, 1};
  std::array<fftw_r2r_kind, 3> kinds{FFTW_RODFT00, FFTW_RODFT00, FFTW_RODFT00};
  std::size_t total = 1;
  for (int axis = 0; axis < dim; ++axis) {
    n[axis] = grid.points(axis) - 2;
    total *= static_cast<std::size_t>(n[axis]);
    normalization_ *= 2.0 * (n[axis] + 1);
  }
  shape_ = n;

  std::array<std::vector<double>, 3> axis_symbol;
  for (int axis = 0; axis < 3; ++axis) {
    if (axis >= dim) {
      axis_symbol[axis] = {0.0};
      continue;
    }
    const double h = grid.spacing(axis);
    const double length = grid.extent(axis);
    for (int k = 1; k <= n[axis]; ++k) {
      const double theta = std::numbers::pi * k / (n[axis] + 1);
      double value = 0.0;
      switch (scheme) {
        case LaplacianScheme::second_order:
          value = (2.0 - 2.0 * std::cos(theta)) / (h * h);
          break;
        case LaplacianScheme::fourth_order:
          value = (2.5 - (8.0 / 3.0) * std::cos(theta) + std::cos(2.0 * theta) / 6.0) / (h * h);
          break;
        case LaplacianScheme::spectral: {
          const double wave = std::numbers::pi * k / length;
          value = wave * wave;
          break;
        }
      }
      axis_symbol[axis].push_back(value);
    }
  }
  symbol_.resize(total);
  std::size_t idx = 0;
  for (int i0 = 0; i0 < n[0]; ++i0)
    for (int i1 = 0; i1 < n[1]; ++i1)
      for (int i2 = 0; i2 < n[2]; ++i2)
        symbol_[idx++] = axis_symbol[0][i0] + axis_symbol[1][i1] + axis_symbol[2][i2];

  plan_ = std::make_unique<Plan>();
  plan_->buffer = fftw_alloc_real(total);
  plan_->plan = fftw_plan_r2r(dim, n.data(), plan_->buffer, plan_->buffer, kinds.data(),
                              FFTW_ESTIMATE);
  if (!plan_->plan) throw SolverFailure("could not create sine-transform plan");
}

DirichletKinetic::~DirichletKinetic() = default;
DirichletKinetic::DirichletKinetic(DirichletKinetic&&) noexcept = default;
DirichletKinetic& DirichletKinetic::operator=(DirichletKinetic&&) noexcept = default;

template <class Fn>
void DirichletKinetic::spectral_map(std::span<const double> in, std::span<double> out,
                                    Fn&& scale) const {
  const std::size_t n = symbol_.size();
  double* buf = plan_->buffer;
  std::copy(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(n), buf);
  fftw_execute(plan_->plan);
  for (std::size_t k = 0; k < n; ++k) buf[k] *= scale(symbol_[k]) / normalization_;
  fftw_execute(plan_->plan);
  std::copy(buf, buf + n, out.begin());
}

void DirichletKinetic::apply(std::span<const double> in, std::span<double> out) const {
  spectral_map(in, out, [](double lambda) { return lambda; });
}

void DirichletKinetic::solve_shifted(std::span<const double> in, std::span<double> out,
                                     double shift) const {
  spectral_map(in, out, [shift](double lambda) { return 1.0 / (lambda + shift); });
}

std::vector<double> DirichletKinetic::restrict_to_interior(const std::vector<double>& full) const {
  std::vector<double> interior(symbol_.size());
  std::size_t k = 0;
  const int o1 = grid_.dimension() >= 2 ? 1 : 0;
  const int o2 = grid_.dimension() >= 3 ? 1 : 0;
  for (int i0 = 0; i0 < shape_[0]; ++i0)
    for (int i1 = 0; i1 < shape_[1]; ++i1)
      for (int i2 = 0; i2 < shape_[2]; ++i2)
        interior[k++] = full[grid_.flat(i0 + 1, i1 + o1, i2 + o2)];
  return interior;
}

std::vector<double> DirichletKinetic::extend_to_full(const std::vector<double>& interior) const {
  std::vector<double> full(grid_.size(), 0.0);
  std::size_t k = 0;
  const int o1 = grid_.dimension() >= 2 ? 1 : 0;
  const int o2 = grid_.dimension() >= 3 ? 1 : 0;
  for (int i0 = 0; i0 < shape_[0]; ++i0)
    for (int i1 = 0; i1 < shape_[1]; ++i1)
      for (int i2 = 0; i2 < shape_[2]; ++i2)
        full[grid_.flat(i0 + 1, i1 + o1, i2 + o2)] = interior[k++];
  return full;
}

}  // namespace bec::gp
