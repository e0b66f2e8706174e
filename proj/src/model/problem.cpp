#include "bec/model/problem.hpp"

#include <cmath>

#include "bec/errors.hpp"

namespace bec::model {

using nlohmann::json;

StrictObject::StrictObject(const json& json, std::string path)
    : json_(json), path_(std::move(path)) {
  if (!json_.is_object()) throw ConfigError(path_ + ": expected an object");
}

bool StrictObject::has(const std::string& key) const { return json_.contains(key); }

std::string StrictObject::field(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

const json& StrictObject::raw(const std::string& key) {
  if (!json_.contains(key)) throw ConfigError(field(key) + ": missing required field");
  used_.insert(key);
  return json_.at(key);
}

StrictObject StrictObject::object(const std::string& key) { return {raw(key), field(key)}; }

std::string StrictObject::string(const std::string& key) {
  const auto& v = raw(key);
  if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
  return v.get<std::string>();
}

double StrictObject::number(const std::string& key) {
  const auto& v = raw(key);
  if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
  return v.get<double>();
}

std::int64_t StrictObject::integer(const std::string& key) {
  const auto& v = raw(key);
  if (!v.is_number_integer()) throw ConfigError(field(key) + ": expected an integer");
  return v.get<std::int64_t>();
}

bool StrictObject::boolean(const std::string& key) {
  const auto& v = raw(key);
  if (!v.is_boolean()) throw ConfigError(field(key) + ": expected a boolean");
  return v.get<bool>();
}

std::vector<double> StrictObject::numbers(const std::string& key) {
  const auto& v = raw(key);
  if (!v.is_array()) throw ConfigError(field(key) + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ConfigError(field(key) + "[" + std::to_string(i) + "]: expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<std::int64_t> StrictObject::integers(const std::string& key) {
  const auto& v = raw(key);
  if (!v.is_array()) throw ConfigError(field(key) + ": expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) {
      throw ConfigError(field(key) + "[" + std::to_string(i) + "]: expected an integer");
    }
    out.push_back(v[i].get<std::int64_t>());
  }
  return out;
}

std::vector<double> StrictObject::per_axis(const std::string& key, int count) {
  const auto& v = raw(key);
  if (v.is_number()) return std::vector<double>(count, v.get<double>());
  auto values = numbers(key);
  if (static_cast<int>(values.size()) != count) {
    throw ConfigError(field(key) + ": expected " + std::to_string(count) + " entries");
  }
  return values;
}

std::optional<double> StrictObject::optional_number(const std::string& key) {
  if (!has(key)) return std::nullopt;
  return number(key);
}

std::optional<std::int64_t> StrictObject::optional_integer(const std::string& key) {
  if (!has(key)) return std::nullopt;
  return integer(key);
}

std::optional<bool> StrictObject::optional_boolean(const std::string& key) {
  if (!has(key)) return std::nullopt;
  return boolean(key);
}

std::optional<std::string> StrictObject::optional_string(const std::string& key) {
  if (!has(key)) return std::nullopt;
  return string(key);
}

void StrictObject::finish() const {
  for (const auto& item : json_.items()) {
    if (!used_.contains(item.key())) throw ConfigError(field(item.key()) + ": unknown field");
  }
}

Grid parse_grid(StrictObject object) {
  const auto dim = object.integer("dimension");
  if (dim != 2 && dim != 3) throw ConfigError(object.field("dimension") + ": must be 2 or 3");
  const int d = static_cast<int>(dim);
  const auto extent = object.per_axis("extent", d);
  const auto points = object.per_axis("points", d);
  std::vector<double> lower(d);
  if (object.has("lower")) {
    lower = object.per_axis("lower", d);
  } else {
    for (int axis = 0; axis < d; ++axis) lower[axis] = -0.5 * extent[axis];
  }
  object.finish();
  std::array<double, 3> lo{}, ex{};
  std::array<int, 3> pts{1, 1, 1};
  for (int axis = 0; axis < d; ++axis) {
    if (points[axis] != std::floor(points[axis])) {
      throw ConfigError(object.field("points") + ": must be integers");
    }
    lo[axis] = lower[axis];
    ex[axis] = extent[axis];
    pts[axis] = static_cast<int>(points[axis]);
  }
  try {
    return Grid(d, lo, ex, pts);
  } catch (const InvalidParameter& e) {
    throw ConfigError(object.path() + ": " + e.what());
  }
}

TrapSpec parse_trap(StrictObject object) {
  const auto kind = object.string("kind");
  const auto dim = object.integer("dimension");
  if (dim != 2 && dim != 3) throw ConfigError(object.field("dimension") + ": must be 2 or 3");
  const int d = static_cast<int>(dim);
  try {
    if (kind == "harmonic") {
      auto k = object.per_axis("stiffness", d);
      object.finish();
      return TrapSpec::harmonic(std::move(k));
    }
    if (kind == "box") {
      const double side = object.number("side");
      object.finish();
      return TrapSpec::box(d, side);
    }
    if (kind == "tabulated") {
      auto grid = parse_grid(object.object("grid"));
      auto values = object.numbers("values");
      object.finish();
      if (grid.dimension() != d) throw ConfigError(object.field("grid") + ": dimension mismatch");
      return TrapSpec::tabulated(std::move(grid), std::move(values));
    }
  } catch (const InvalidParameter& e) {
    throw ConfigError(object.path() + ": " + e.what());
  }
  throw ConfigError(object.field("kind") + ": unknown trap kind '" + kind + "'");
}

PairPotential parse_pair_potential(StrictObject object) {
  const auto kind = object.string("kind");
  try {
    if (kind == "hard_sphere") {
      const double radius = object.number("radius");
      object.finish();
      return PairPotential::hard_sphere(radius);
    }
    if (kind == "soft_sphere") {
      const double height = object.number("height");
      const double radius = object.number("radius");
      object.finish();
      return PairPotential::soft_sphere(height, radius);
    }
    if (kind == "tabulated_radial") {
      auto r = object.numbers("r");
      auto values = object.numbers("values");
      object.finish();
      return PairPotential::tabulated_radial(std::move(r), std::move(values));
    }
  } catch (const InvalidParameter& e) {
    throw ConfigError(object.path() + ": " + e.what());
  }
  throw ConfigError(object.field("kind") + ": unknown pair potential kind '" + kind + "'");
}

json to_json(const Grid& grid) {
  json lower = json::array(), extent = json::array(), points = json::array();
  for (int axis = 0; axis < grid.dimension(); ++axis) {
    lower.push_back(grid.lower(axis));
    extent.push_back(grid.extent(axis));
    points.push_back(grid.points(axis));
  }
  return {{"dimension", grid.dimension()}, {"lower", lower}, {"extent", extent}, {"points", points}};
}

json to_json(const TrapSpec& trap) {
  switch (trap.kind()) {
    case TrapKind::harmonic:
      return {{"kind", "harmonic"}, {"dimension", trap.dimension()}, {"stiffness", trap.stiffness()}};
    case TrapKind::box:
      return {{"kind", "box"}, {"dimension", trap.dimension()}, {"side", trap.side()}};
    case TrapKind::tabulated:
      return {{"kind", "tabulated"},
              {"dimension", trap.dimension()},
              {"grid", to_json(trap.table_grid())},
              {"values", trap.table_values()}};
  }
  return {};
}

json to_json(const PairPotential& v) {
  switch (v.shape()) {
    case PairShape::hard_sphere:
      return {{"kind", "hard_sphere"}, {"radius", v.radius()}};
    case PairShape::soft_sphere:
      return {{"kind", "soft_sphere"}, {"height", v.height()}, {"radius", v.radius()}};
    case PairShape::tabulated_radial:
      return {{"kind", "tabulated_radial"}, {"r", v.table_r()}, {"values", v.table_values()}};
  }
  return {};
}

ProblemDefinition parse_problem(const json& document) {
  StrictObject root(document, "");
  ProblemDefinition problem;
  if (root.has("trap")) problem.trap = parse_trap(root.object("trap"));
  if (root.has("pair_potential")) {
    problem.pair_potential = parse_pair_potential(root.object("pair_potential"));
  }
  if (root.has("grid")) problem.grid = parse_grid(root.object("grid"));
  root.finish();
  if (problem.trap && problem.grid && problem.trap->dimension() != problem.grid->dimension()) {
    throw ConfigError("grid: dimension does not match trap dimension");
  }
  return problem;
}

}  // namespace bec::model
