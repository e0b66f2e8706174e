#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bec/model/grid.hpp"

namespace bec::gp {

/// Discretization of -Laplacian on the interior nodes of a grid with
/// homogeneous Dirichlet data on its boundary nodes. All three schemes are
/// diagonal in the discrete sine basis and share the same transform.
enum class LaplacianScheme {
  second_order,  // 3-point central differences
  fourth_order,  // 5-point central differences, odd reflection at the walls
  spectral,      // exact sine-series symbol (pi k / L)^2
};

LaplacianScheme parse_laplacian_scheme(const std::string& name);
std::string to_string(LaplacianScheme scheme);

class DirichletKinetic {
 public:
  DirichletKinetic(const model::Grid& grid, LaplacianScheme scheme);
  ~DirichletKinetic();
  DirichletKinetic(const DirichletKinetic&) = delete;
  DirichletKinetic& operator=(const DirichletKinetic&) = delete;
  DirichletKinetic(DirichletKinetic&&) noexcept;
  DirichletKinetic& operator=(DirichletKinetic&&) noexcept;

  std::size_t interior_size() const { return symbol_.size(); }
  const std::array<int, 3>& interior_shape() const { return shape_; }
  const std::vector<double>& symbol() const { return symbol_; }

  /// out = -Lap(in) on interior arrays.
  void apply(std::span<const double> in, std::span<double> out) const;
  /// out = (-Lap + shift)^{-1} in; requires shift > -min(symbol).
  void solve_shifted(std::span<const double> in, std::span<double> out, double shift) const;

  /// Copies interior nodes out of / into a full-grid array (boundary left at zero).
  std::vector<double> restrict_to_interior(const std::vector<double>& full) const;
  std::vector<double> extend_to_full(const std::vector<double>& interior) const;

 private:
  template <class Fn>
  void spectral_map(std::span<const double> in, std::span<double> out, Fn&& scale) const;

  struct Plan;
  model::Grid grid_;
  std::array<int, 3> shape_{1, 1, 1};
  std::vector<double> symbol_;
  double normalization_ = 1.0;
  std::unique_ptr<Plan> plan_;
};

}  // namespace bec::gp
