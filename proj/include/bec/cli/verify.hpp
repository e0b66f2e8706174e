#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace bec::cli {

struct InvariantCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerifyResult {
  std::filesystem::path report;
  std::string experiment;
  std::vector<InvariantCheck> checks;
  bool passed() const;
};

/// Re-evaluates the invariants of a stored report. Throws IntegrityError when
/// the report is missing, unreadable, from another artifact version or lacks
/// a required field.
VerifyResult verify_report(const nlohmann::json& report);
/// Accepts a report file or a run directory holding report.json.
VerifyResult verify_path(const std::filesystem::path& path);

}  // namespace bec::cli
