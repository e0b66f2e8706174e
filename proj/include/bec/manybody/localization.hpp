#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bec/manybody/condensate.hpp"
#include "bec/manybody/ground_state.hpp"
#include "bec/manybody/mode_basis.hpp"

namespace bec::manybody {

struct LocalizationOptions {
  std::vector<double> radii{0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
  /// Adds N^{-7/17} to the radii.
  bool include_cutoff_radius = true;
  int samples = 64;
  std::uint64_t seed = 0;
  /// Nodes where phi^GP < exclusion * peak are left out of every integral.
  double exclusion = 1e-12;
  /// Below this ratio of weighted f-gradient energy to the gradient energy
  /// of Psi itself the profile is reported as not applicable.
  double applicability = 1e-6;
};

/// For a two-particle ground state Psi(r, r2) and sampled positions r2,
/// f(r) = Psi(r, r2) / phi^GP(r) and e(r) = phi^GP(r)^2 |grad f(r)|^2. Each
/// entry of `fractions` is the share of int e carried by |r - r2| <= radius,
/// averaged over the samples.
struct LocalizationProfile {
  std::vector<double> radii;
  std::vector<double> fractions;
  bool applicable = false;
  double relative_gradient_energy = 0.0;
  double cutoff_radius = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::size_t excluded_points = 0;
  std::vector<std::array<double, 3>> sample_points;
};

LocalizationProfile localization_profile(const ManyBodyGround& ground, const GPProjection& gp,
                                         const ModeBasis& basis, const LocalizationOptions& options = {});

}  // namespace bec::manybody
