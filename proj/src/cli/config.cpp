#include "bec/cli/config.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "bec/errors.hpp"

namespace bec::cli {

using nlohmann::json;
using model::StrictObject;

Experiment parse_experiment(const std::string& name) {
  if (name == "scattering") return Experiment::scattering;
  if (name == "gp") return Experiment::gp;
  if (name == "manybody") return Experiment::manybody;
  if (name == "sweep") return Experiment::sweep;
  if (name == "poincare") return Experiment::poincare;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string to_string(Experiment experiment) {
  switch (experiment) {
    case Experiment::scattering: return "scattering";
    case Experiment::gp: return "gp";
    case Experiment::manybody: return "manybody";
    case Experiment::sweep: return "sweep";
    case Experiment::poincare: return "poincare";
  }
  return "unknown";
}

namespace {

int positive_int(StrictObject& o, const std::string& key, std::int64_t lo = 1) {
  const auto v = o.integer(key);
  if (v < lo || v > 1'000'000'000) throw ConfigError(o.field(key) + ": out of range");
  return static_cast<int>(v);
}

double positive(StrictObject& o, const std::string& key) {
  const double v = o.number(key);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(o.field(key) + ": must be positive");
  return v;
}

manybody::MomentumGrid parse_momentum(StrictObject o) {
  manybody::MomentumGrid m;
  if (o.has("points")) m.points = positive_int(o, "points", 3);
  if (o.has("k_max")) m.k_max = positive(o, "k_max");
  o.finish();
  if (m.points != 0 && m.points % 2 == 0) throw ConfigError(o.field("points") + ": must be odd");
  return m;
}

ScatteringSection parse_scattering(StrictObject o) {
  ScatteringSection s;
  if (o.has("r_max")) s.r_max = positive(o, "r_max");
  if (o.has("tol")) s.tol = positive(o, "tol");
  o.finish();
  return s;
}

GPSection parse_gp(StrictObject o) {
  GPSection s;
  if (o.has("g")) {
    s.g = o.number("g");
    if (!(*s.g >= 0.0)) throw ConfigError(o.field("g") + ": must be >= 0");
  }
  if (o.has("particles")) s.particles = positive(o, "particles");
  if (o.has("a")) s.a = positive(o, "a");
  if (s.g && (s.particles || s.a)) throw ConfigError(o.path() + ": give either g or particles and a");
  if (!s.g && !(s.particles && s.a)) throw ConfigError(o.path() + ": needs g, or particles and a");
  if (o.has("max_iter")) s.max_iter = positive_int(o, "max_iter");
  if (o.has("tol")) s.tol = positive(o, "tol");
  if (o.has("laplacian")) {
    try {
      s.laplacian = gp::parse_laplacian_scheme(o.string("laplacian"));
    } catch (const ConfigError& e) {
      throw ConfigError(o.field("laplacian") + ": " + e.what());
    }
  }
  if (o.has("boundary_ratio_limit")) s.boundary_ratio_limit = positive(o, "boundary_ratio_limit");
  o.finish();
  return s;
}

ManyBodySection parse_manybody(StrictObject o) {
  ManyBodySection s;
  s.particles = positive_int(o, "particles");
  if (o.has("a")) s.a = positive(o, "a");
  if (o.has("g")) {
    s.g = o.number("g");
    if (!(*s.g >= 0.0)) throw ConfigError(o.field("g") + ": must be >= 0");
  }
  if (s.a && s.g) throw ConfigError(o.path() + ": give either a or g");
  if (!s.a && !s.g) throw ConfigError(o.path() + ": needs a or g");
  if (o.has("max_quanta")) s.max_quanta = positive_int(o, "max_quanta", 0);
  if (o.has("dimension_cap")) s.dimension_cap = static_cast<std::size_t>(positive_int(o, "dimension_cap"));
  if (o.has("tol")) s.tol = positive(o, "tol");
  if (o.has("momentum")) s.momentum = parse_momentum(o.object("momentum"));
  if (o.has("localization")) {
    auto l = o.object("localization");
    if (l.has("radii")) {
      s.localization.radii = l.numbers("radii");
      for (double r : s.localization.radii)
        if (!(r > 0.0)) throw ConfigError(l.field("radii") + ": radii must be positive");
    }
    if (l.has("samples")) s.localization.samples = positive_int(l, "samples");
    l.finish();
  }
  o.finish();
  return s;
}

SweepSection parse_sweep(StrictObject o) {
  SweepSection s;
  s.g = o.number("g");
  if (!(s.g >= 0.0)) throw ConfigError(o.field("g") + ": must be >= 0");
  if (o.has("particles")) {
    s.particles.clear();
    for (auto n : o.integers("particles")) {
      if (n < 1 || n > 255) throw ConfigError(o.field("particles") + ": entries must lie in [1, 255]");
      s.particles.push_back(static_cast<int>(n));
    }
    if (s.particles.empty()) throw ConfigError(o.field("particles") + ": must not be empty");
  }
  if (o.has("max_quanta")) s.max_quanta = positive_int(o, "max_quanta", 0);
  if (o.has("dimension_cap")) s.dimension_cap = static_cast<std::size_t>(positive_int(o, "dimension_cap"));
  if (o.has("tol")) s.tol = positive(o, "tol");
  if (o.has("momentum")) s.momentum = parse_momentum(o.object("momentum"));
  o.finish();
  return s;
}

PoincareSection parse_poincare(StrictObject o, const std::filesystem::path& base) {
  PoincareSection s;
  try {
    if (o.has("region")) s.region = poincare::parse_region_shape(o.string("region"));
  } catch (const ConfigError& e) {
    throw ConfigError(o.field("region") + ": " + e.what());
  }
  if (o.has("dimension")) {
    s.dimension = positive_int(o, "dimension");
    if (s.dimension != 2 && s.dimension != 3) throw ConfigError(o.field("dimension") + ": must be 2 or 3");
  }
  if (o.has("size")) s.size = positive(o, "size");
  if (o.has("cells")) s.cells = positive_int(o, "cells", 4);
  if (o.has("trials")) s.trials = positive_int(o, "trials");
  if (o.has("weight")) {
    const auto& w = o.raw("weight");
    if (w.is_string() && w.get<std::string>() == "constant") {
      // uniform weight
    } else if (w.is_object()) {
      StrictObject wo(w, o.field("weight"));
      std::filesystem::path p = wo.string("dump");
      wo.finish();
      s.weight_dump = p.is_absolute() ? p : base / p;
    } else {
      throw ConfigError(o.field("weight") + ": expected \"constant\" or {\"dump\": path}");
    }
  }
  o.finish();
  return s;
}

}  // namespace

ExperimentConfig parse_config(const json& document, Experiment experiment, const Overrides& overrides) {
  if (!document.is_object()) throw ConfigError("configuration must be a JSON object");
  ExperimentConfig config;
  config.experiment = experiment;
  config.canonical = document;
  if (overrides.seed) config.canonical["seed"] = *overrides.seed;
  if (overrides.reproducible) config.canonical["reproducible"] = true;

  StrictObject root(config.canonical, "");
  json problem_doc = json::object();
  for (const char* key : {"trap", "pair_potential", "grid"}) {
    if (root.has(key)) problem_doc[key] = root.raw(key);
  }
  config.problem = model::parse_problem(problem_doc);
  if (root.has("scattering")) config.scattering = parse_scattering(root.object("scattering"));
  if (root.has("gp")) config.gp = parse_gp(root.object("gp"));
  if (root.has("manybody")) config.manybody = parse_manybody(root.object("manybody"));
  if (root.has("sweep")) config.sweep = parse_sweep(root.object("sweep"));
  if (root.has("poincare")) config.poincare = parse_poincare(root.object("poincare"), config.source_dir);
  if (root.has("seed")) {
    const auto& s = root.raw("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      throw ConfigError("seed: expected a nonnegative integer");
    }
    config.seed = s.get<std::uint64_t>();
  }
  if (root.has("reproducible")) config.reproducible = root.boolean("reproducible");
  root.finish();

  auto require = [&](const char* key) {
    if (!config.canonical.contains(key)) {
      throw ConfigError(std::string(key) + ": missing required field for the " + to_string(experiment) + " experiment");
    }
  };
  switch (experiment) {
    case Experiment::scattering:
      require("pair_potential");
      break;
    case Experiment::gp:
      require("trap");
      require("grid");
      require("gp");
      break;
    case Experiment::manybody:
      require("trap");
      require("pair_potential");
      require("grid");
      require("manybody");
      break;
    case Experiment::sweep:
      require("trap");
      require("pair_potential");
      require("grid");
      require("sweep");
      break;
    case Experiment::poincare:
      require("poincare");
      break;
  }
  if ((experiment == Experiment::manybody || experiment == Experiment::sweep) &&
      config.problem.grid->dimension() != 3) {
    throw ConfigError("grid.dimension: many-body runs are three-dimensional");
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path, Experiment experiment, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration " + path.string());
  json document;
  try {
    in >> document;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  // Relative paths inside the document resolve against its directory.
  json probe = document;
  ExperimentConfig config;
  const auto base = std::filesystem::absolute(path).parent_path();
  if (document.is_object() && document.contains("poincare") && document["poincare"].is_object() &&
      document["poincare"].contains("weight") && document["poincare"]["weight"].is_object() &&
      document["poincare"]["weight"].contains("dump") && document["poincare"]["weight"]["dump"].is_string()) {
    std::filesystem::path p = document["poincare"]["weight"]["dump"].get<std::string>();
    if (p.is_relative()) document["poincare"]["weight"]["dump"] = (base / p).lexically_normal().string();
  }
  config = parse_config(document, experiment, overrides);
  config.source_dir = base;
  return config;
}

std::string config_hash(const ExperimentConfig& config) {
  return config_hash(to_string(config.experiment), config.canonical);
}

std::string config_hash(const std::string& experiment, const json& canonical) {
  const json doc = {{"experiment", experiment}, {"config", canonical}};
  const std::string text = doc.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw SolverFailure("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

}  // namespace bec::cli
