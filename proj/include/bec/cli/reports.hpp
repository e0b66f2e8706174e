#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "bec/cli/config.hpp"
#include "bec/gp/gp.hpp"

namespace bec::cli {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Everything a run produces besides the manifest. Reports hold no timing so
/// that equal configurations give equal bytes.
struct Artifacts {
  nlohmann::json report;
  std::optional<std::string> csv;
  std::optional<gp::GPState> phi;
};

Artifacts compute_artifacts(const ExperimentConfig& config, const std::string& hash);

/// Short plain-language description of every reported quantity.
nlohmann::json descriptions(Experiment experiment);

/// Pretty-printed report text, newline terminated.
std::string render(const nlohmann::json& report);

}  // namespace bec::cli
