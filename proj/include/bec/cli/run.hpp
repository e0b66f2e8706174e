#pragma once

#include <filesystem>
#include <string>

#include "bec/cli/config.hpp"

namespace bec::cli {

struct RunOptions {
  std::filesystem::path out = "out";
  bool force = false;
};

struct RunOutcome {
  std::filesystem::path report;
  std::string hash;
  bool cached = false;
};

/// Runs the experiment into <out>/<hash>/ unless a complete result is
/// already there. Holds an exclusive lock on <out>/.lock for the duration.
RunOutcome run(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace bec::cli
