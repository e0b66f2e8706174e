#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bec/gp/kinetic.hpp"
#include "bec/manybody/localization.hpp"
#include "bec/manybody/momentum.hpp"
#include "bec/model/problem.hpp"
#include "bec/poincare/region.hpp"

namespace bec::cli {

enum class Experiment { scattering, gp, manybody, sweep, poincare };

Experiment parse_experiment(const std::string& name);
std::string to_string(Experiment experiment);

struct ScatteringSection {
  std::optional<double> r_max;  // default 4 x range
  double tol = 1e-10;
};

struct GPSection {
  std::optional<double> g;
  std::optional<double> particles;  // with a: g from the coupling rule
  std::optional<double> a;
  int max_iter = 5000;
  double tol = 1e-9;
  gp::LaplacianScheme laplacian = gp::LaplacianScheme::spectral;
  double boundary_ratio_limit = 1e-8;
};

struct ManyBodySection {
  int particles = 2;
  std::optional<double> a;
  std::optional<double> g;
  int max_quanta = 3;
  std::size_t dimension_cap = 200000;
  double tol = 1e-9;
  manybody::MomentumGrid momentum;
  manybody::LocalizationOptions localization;
};

struct SweepSection {
  double g = 0.0;
  std::vector<int> particles{2, 3, 4, 5, 6};
  int max_quanta = 3;
  std::size_t dimension_cap = 200000;
  double tol = 1e-9;
  manybody::MomentumGrid momentum;
};

struct PoincareSection {
  poincare::RegionShape region = poincare::RegionShape::ball;
  int dimension = 3;
  double size = 1.0;
  int cells = 24;
  int trials = 1000;
  /// Empty: uniform h. Otherwise the path of a phi dump whose |phi|^2 is the
  /// weight of the weighted variant.
  std::optional<std::filesystem::path> weight_dump;
};

/// A parsed, validated configuration document. `canonical` is the document
/// after command-line overrides, in the form that is hashed.
struct ExperimentConfig {
  Experiment experiment = Experiment::gp;
  model::ProblemDefinition problem;
  ScatteringSection scattering;
  GPSection gp;
  ManyBodySection manybody;
  SweepSection sweep;
  PoincareSection poincare;
  std::uint64_t seed = 0;
  bool reproducible = false;
  nlohmann::json canonical;
  std::filesystem::path source_dir;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  bool reproducible = false;
};

/// Strict parse: unknown fields anywhere are errors carrying their dotted path.
ExperimentConfig parse_config(const nlohmann::json& document, Experiment experiment,
                              const Overrides& overrides = {});
ExperimentConfig load_config(const std::filesystem::path& path, Experiment experiment,
                             const Overrides& overrides = {});

/// Hex SHA-256 of the compact dump of {"experiment", "config"}.
std::string config_hash(const ExperimentConfig& config);
std::string config_hash(const std::string& experiment, const nlohmann::json& canonical);

}  // namespace bec::cli
