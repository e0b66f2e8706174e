#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "bec/model/grid.hpp"
#include "bec/model/pair_potential.hpp"
#include "bec/model/trap.hpp"

namespace bec::model {

/// Read-once view of a JSON object. Every accessor records the key; finish()
/// rejects whatever was not consumed. Errors carry the dotted field path.
class StrictObject {
 public:
  StrictObject(const nlohmann::json& json, std::string path);

  bool has(const std::string& key) const;
  const nlohmann::json& raw(const std::string& key);
  StrictObject object(const std::string& key);
  std::string string(const std::string& key);
  double number(const std::string& key);
  std::int64_t integer(const std::string& key);
  bool boolean(const std::string& key);
  std::vector<double> numbers(const std::string& key);
  std::vector<std::int64_t> integers(const std::string& key);
  /// Accepts either a scalar (broadcast to `count` entries) or a list of `count`.
  std::vector<double> per_axis(const std::string& key, int count);

  std::optional<double> optional_number(const std::string& key);
  std::optional<std::int64_t> optional_integer(const std::string& key);
  std::optional<bool> optional_boolean(const std::string& key);
  std::optional<std::string> optional_string(const std::string& key);

  std::string field(const std::string& key) const;
  const std::string& path() const { return path_; }
  void finish() const;

 private:
  const nlohmann::json& json_;
  std::string path_;
  std::set<std::string> used_;
};

/// The physical problem: any subset of trap, pair potential and grid.
struct ProblemDefinition {
  std::optional<TrapSpec> trap;
  std::optional<PairPotential> pair_potential;
  std::optional<Grid> grid;
};

Grid parse_grid(StrictObject object);
TrapSpec parse_trap(StrictObject object);
PairPotential parse_pair_potential(StrictObject object);

nlohmann::json to_json(const Grid& grid);
nlohmann::json to_json(const TrapSpec& trap);
nlohmann::json to_json(const PairPotential& potential);

/// Parses a document whose only keys are "trap", "pair_potential", "grid".
ProblemDefinition parse_problem(const nlohmann::json& document);

}  // namespace bec::model
