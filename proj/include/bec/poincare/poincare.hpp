#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bec/model/grid.hpp"
#include "bec/poincare/region.hpp"

namespace bec::poincare {

using Mask = std::vector<std::uint8_t>;

/// Per-cell share of the discrete Dirichlet energy: every edge between two
/// region cells contributes (df / h)^2 h^m, split evenly between its ends.
std::vector<double> cell_gradient_energy(const Region& k, const std::vector<double>& f);

/// f -= (int f h) / (int h) over the region.
void project_mean_zero(const Region& k, const std::vector<double>& h, std::vector<double>& f);
double weighted_mean(const Region& k, const std::vector<double>& h, const std::vector<double>& f);

/// Uniform weight with int_K h = 1.
std::vector<double> uniform_weight(const Region& k);

struct CheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  double gradient_omega = 0.0;   // int_Omega |grad f|^2
  double gradient_total = 0.0;   // int_K |grad f|^2
  double complement_ratio = 0.0; // |Omega^c| / |K|
  double norm = 0.0;             // int_K f^2
};

/// lhs = int_Omega |grad f|^2 + (|Omega^c| / |K|)^{2/m} int_K |grad f|^2,
/// rhs = int_K f^2 / C, holds when lhs >= rhs - 1e-12 max(1, rhs). Omega is restricted
/// to the region; a cell belongs to Omega when its centre does.
CheckResult check_inequality(const Region& k, const std::vector<double>& f, const Mask& omega, double c);

/// Same functional with the density w (normalized to mean 1 over K) in all
/// three integrals. Throws InvalidParameter when min w <= 0 on K.
CheckResult weighted_check(const Region& k, const std::vector<double>& f, const Mask& omega,
                           const std::vector<double>& w, double c);

/// Cells of K whose centre is at distance >= radius from every point.
Mask omega_x_mask(const std::vector<std::array<double, 3>>& points, double radius, const Region& k);

enum class FunctionFamily { cosines, bumps, neumann_mode };
enum class SubsetFamily {
  full,
  empty,
  random_cells,
  stripes,
  checkerboard,
  ball_complement,  // omega_x_mask of N random centres, radius N^{-7/17} times the region size
  fractal,
  adversarial,      // K minus the cells carrying the most gradient energy
};

struct TrialOptions {
  std::vector<FunctionFamily> functions{FunctionFamily::cosines, FunctionFamily::bumps,
                                        FunctionFamily::neumann_mode};
  std::vector<SubsetFamily> subsets{SubsetFamily::full,         SubsetFamily::empty,
                                    SubsetFamily::random_cells, SubsetFamily::stripes,
                                    SubsetFamily::checkerboard, SubsetFamily::ball_complement,
                                    SubsetFamily::fractal,      SubsetFamily::adversarial};
};

struct Trial {
  std::vector<double> f;
  Mask omega;
  std::string description;
};

/// Trial i is drawn from its own generator seeded with seed + i, so any
/// prefix of a run reproduces exactly.
Trial generate_trial(const Region& k, const std::vector<double>& h, std::uint64_t seed, int index,
                     const TrialOptions& options = {});

struct ConstantEstimate {
  /// max over trials of int f^2 / lhs.
  double c_star = 0.0;
  int worst_trial = -1;
  std::string worst_description;
  /// max over trials of int f^2 / ||grad f||^2_{L^p}, p = 2m/(m+2).
  double c_tilde = 0.0;
  /// 2 |K|^{2/m} c_tilde.
  double c_constructed = 0.0;
  /// Number of trials where the inequality holds at c_star and at c_constructed.
  int holds_at_c_star = 0;
  int holds_at_constructed = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> ratios;
};

ConstantEstimate estimate_constant(const Region& k, const std::vector<double>& h, int trials,
                                   std::uint64_t seed, const TrialOptions& options = {});

/// int f^2 / ||grad f||^2_{L^p(K)}.
double sobolev_ratio(const Region& k, const std::vector<double>& f);

/// Multilinear interpolation of nodal samples (e.g. |phi|^2 on a GP grid)
/// onto the region's cell centres. Throws OutOfDomain when a region cell
/// lies outside the grid.
std::vector<double> sample_weight(const Region& k, const model::Grid& grid, const std::vector<double>& values);

struct WeightedSuite {
  /// C* (max w / min w)^2 over K.
  double c_sandwich = 0.0;
  double weight_ratio = 0.0;
  /// max over trials of int w f^2 / weighted lhs.
  double c_weighted = 0.0;
  int holds = 0;
  int trials = 0;
  int worst_trial = -1;
};

/// Trials drawn as in estimate_constant with f projected to zero w-mean,
/// checked with weighted_check at the sandwich constant.
WeightedSuite weighted_suite(const Region& k, const std::vector<double>& w, double c_star, int trials,
                             std::uint64_t seed, const TrialOptions& options = {});

/// cos(pi order (x_axis - lower) / span) on the region's cells.
std::vector<double> neumann_mode(const Region& k, int axis, int order);

}  // namespace bec::poincare
