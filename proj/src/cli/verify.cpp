#include "bec/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bec/cli/config.hpp"
#include "bec/cli/reports.hpp"
#include "bec/errors.hpp"
#include "bec/model/problem.hpp"

namespace bec::cli {

namespace fs = std::filesystem;
using nlohmann::json;

bool VerifyResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed; });
}

namespace {

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw IntegrityError("report lacks field " + where + key);
  return j.at(key);
}

double number(const json& j, const std::string& key, const std::string& where = "") {
  const auto& v = field(j, key, where);
  if (!v.is_number()) throw IntegrityError("report field " + where + key + " is not a number");
  return v.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& key, const std::string& where = "") {
  const auto& v = field(j, key, where);
  if (!v.is_array()) throw IntegrityError("report field " + where + key + " is not an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw IntegrityError("report field " + where + key + " holds a non-number");
    out.push_back(x.get<double>());
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

bool close(double x, double y, double rel) { return std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)}); }

class Checks {
 public:
  explicit Checks(std::vector<InvariantCheck>& out) : out_(out) {}
  void add(const std::string& name, bool ok, const std::string& detail) { out_.push_back({name, ok, detail}); }

 private:
  std::vector<InvariantCheck>& out_;
};

void check_scattering(const json& r, Checks& c) {
  const double a = number(r, "a");
  const auto v = model::parse_pair_potential(model::StrictObject(field(r, "potential", ""), "potential"));
  c.add("scattering_length_nonnegative", std::isfinite(a) && a >= 0.0, "a = " + fmt(a));
  c.add("scattering_length_within_range", a <= v.range() * (1.0 + 1e-12), "a = " + fmt(a) + ", range = " + fmt(v.range()));
  const auto& s = field(r, "s", "");
  if (a == 0.0) {
    c.add("kinetic_fraction_range", s.is_null(), "s must be absent when a = 0");
  } else {
    const bool ok = s.is_number() && s.get<double>() > 0.0 && s.get<double>() <= 1.0 + 1e-9;
    c.add("kinetic_fraction_range", ok, "s = " + s.dump());
  }
  const auto& samples = field(r, "phi1_samples", "");
  const auto rs = numbers(samples, "r", "phi1_samples.");
  const auto phi = numbers(samples, "phi1", "phi1_samples.");
  bool monotone = rs.size() == phi.size();
  bool bounded = monotone;
  bool exterior = monotone;
  double worst = 0.0;
  for (std::size_t i = 0; monotone && i < phi.size(); ++i) {
    if (phi[i] < -1e-12 || phi[i] > 1.0 + 1e-12) bounded = false;
    if (i > 0 && rs[i] > 0.0 && rs[i - 1] > 0.0 && phi[i] < phi[i - 1] - 1e-12) monotone = false;
    if (rs[i] >= v.range() && rs[i] > 0.0) {
      const double d = std::abs(phi[i] - (1.0 - a / rs[i]));
      worst = std::max(worst, d);
      if (d > 1e-10) exterior = false;
    }
  }
  c.add("phi1_bounded", bounded, "0 <= phi1 <= 1");
  c.add("phi1_monotone", monotone, "phi1 nondecreasing in r");
  c.add("phi1_exterior_form", exterior, "max |phi1 - (1 - a/r)| outside = " + fmt(worst));
}

void check_prediction(const json& p, double e_gp, double interaction, Checks& c) {
  if (p.is_null()) return;
  const double total = number(p, "kinetic_qm", "prediction.") + number(p, "potential_qm", "prediction.") +
                       number(p, "interaction_qm", "prediction.");
  c.add("prediction_sum", close(total, e_gp, 1e-12), "sum = " + fmt(total) + ", E_GP = " + fmt(e_gp));
  if (interaction >= 0.0) {
    const double s = number(p, "s", "prediction.");
    const double iq = number(p, "interaction_qm", "prediction.");
    c.add("prediction_interaction_share", close(iq, (1.0 - s) * interaction, 1e-12),
          "interaction_qm = " + fmt(iq) + ", (1 - s) g int phi^4 = " + fmt((1.0 - s) * interaction));
  }
}

void check_gp(const json& r, Checks& c) {
  const double e = number(r, "E_GP");
  const auto& comp = field(r, "components", "");
  const double k = number(comp, "kinetic", "components.");
  const double p = number(comp, "potential", "components.");
  const double i = number(comp, "interaction", "components.");
  const double g = number(r, "g");
  const double norm = number(r, "norm");
  c.add("normalization", std::abs(norm - 1.0) <= 1e-10, "norm = " + fmt(norm));
  c.add("component_sum", close(k + p + i, e, 1e-12), "K + P + I = " + fmt(k + p + i) + ", E_GP = " + fmt(e));
  c.add("components_nonnegative", k >= 0.0 && p >= 0.0 && i >= 0.0, "K, P, I >= 0");
  c.add("interaction_quartic", close(i, g * number(r, "quartic"), 1e-12), "I = g int phi^4");
  const double mu = number(r, "mu");
  c.add("chemical_potential", close(mu, k + p + 2.0 * i, 1e-10), "mu = " + fmt(mu) + ", K + P + 2I = " + fmt(k + p + 2.0 * i));
  const double tol = number(field(r, "solver", ""), "tol", "solver.");
  const double res = number(r, "residual");
  c.add("residual", res <= tol, "residual = " + fmt(res) + ", tol = " + fmt(tol));
  const auto history = numbers(r, "energy_history");
  bool monotone = true;
  for (std::size_t n = 1; n < history.size(); ++n)
    if (history[n] > history[n - 1] + 1e-12 * std::max(1.0, std::abs(history[n - 1]))) monotone = false;
  c.add("energy_monotone", monotone, std::to_string(history.size()) + " recorded energies");
  const auto& virial = field(r, "virial_defect", "");
  if (!virial.is_null()) {
    const double v = virial.get<double>();
    c.add("virial", std::abs(v) <= 5e-3 * std::abs(e), "|2K - 2P + dI| = " + fmt(std::abs(v)));
  }
  check_prediction(field(r, "prediction", ""), e, i, c);
}

struct InstanceView {
  std::string label;
  double cf, overlap, trace, momentum, pair, pair_lower, e_per_n, hartree, hartree_formula, kin, pot, inter;
};

void check_instance(const InstanceView& v, Checks& c) {
  const std::string at = v.label.empty() ? "" : " (" + v.label + ")";
  c.add("condensate_fraction_range", v.cf >= -1e-12 && v.cf <= 1.0 + 1e-10, "condensate_fraction = " + fmt(v.cf) + at);
  c.add("gp_overlap_range", v.overlap >= -1e-12 && v.overlap <= v.cf + 1e-10, "gp_overlap = " + fmt(v.overlap) + at);
  c.add("trace_distance_range", v.trace >= 0.0 && v.trace <= 2.0 + 1e-12, "trace_distance = " + fmt(v.trace) + at);
  c.add("momentum_bound", v.momentum <= v.trace + 1e-6,
        "momentum_l1 = " + fmt(v.momentum) + ", trace_distance = " + fmt(v.trace) + at);
  c.add("pair_moment_chain", v.pair <= 1.0 + 1e-10 && v.pair >= v.pair_lower - 1e-10,
        "pair_moment = " + fmt(v.pair) + ", lower bound = " + fmt(v.pair_lower) + at);
  c.add("variational_bound", v.e_per_n <= v.hartree + 1e-10 * std::max(1.0, std::abs(v.hartree)),
        "E_qm/N = " + fmt(v.e_per_n) + ", product state = " + fmt(v.hartree) + at);
  c.add("hartree_routes", close(v.hartree, v.hartree_formula, 1e-9),
        fmt(v.hartree) + " vs " + fmt(v.hartree_formula) + at);
  c.add("energy_split_sum", close(v.kin + v.pot + v.inter, v.e_per_n, 1e-10),
        "kin + pot + int = " + fmt(v.kin + v.pot + v.inter) + at);
}

void check_manybody(const json& r, Checks& c) {
  const auto& cond = field(r, "condensate", "");
  const auto& split = field(r, "split", "");
  const auto& hartree = field(r, "hartree", "");
  const int n = static_cast<int>(number(r, "particles"));
  InstanceView v{"",
                 number(cond, "condensate_fraction", "condensate."),
                 number(cond, "gp_overlap", "condensate."),
                 number(cond, "trace_distance", "condensate."),
                 number(cond, "momentum_l1", "condensate."),
                 number(cond, "pair_moment", "condensate."),
                 number(cond, "pair_moment_lower_bound", "condensate."),
                 number(r, "E_qm_per_N"),
                 number(hartree, "via_fock_state", "hartree."),
                 number(hartree, "via_formula", "hartree."),
                 number(split, "kinetic", "split."),
                 number(split, "potential", "split."),
                 number(split, "interaction", "split.")};
  check_instance(v, c);
  c.add("energy_per_particle", close(number(r, "E_qm") / n, v.e_per_n, 1e-14), "E_qm / N");

  const auto occ = numbers(cond, "occupations", "condensate.");
  double sum = 0.0;
  bool ordered = true;
  for (std::size_t k = 0; k < occ.size(); ++k) {
    sum += occ[k];
    if (occ[k] < -1e-10 || (k > 0 && occ[k] > occ[k - 1] + 1e-12)) ordered = false;
  }
  c.add("occupations", ordered && std::abs(sum - 1.0) <= 1e-8 && !occ.empty() && std::abs(occ[0] - v.cf) <= 1e-12,
        "sum = " + fmt(sum));

  const auto& gamma = field(r, "gamma", "");
  if (!gamma.is_array()) throw IntegrityError("report field gamma is not a matrix");
  double trace = 0.0, asym = 0.0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (!gamma[i].is_array() || gamma[i].size() != gamma.size()) throw IntegrityError("report field gamma is not square");
    trace += gamma[i][i].get<double>();
    for (std::size_t j = 0; j < i; ++j) asym = std::max(asym, std::abs(gamma[i][j].get<double>() - gamma[j][i].get<double>()));
  }
  c.add("gamma_trace", std::abs(trace - n) <= 1e-8 * n, "tr gamma = " + fmt(trace));
  c.add("gamma_symmetric", asym <= 1e-12, "max asymmetry = " + fmt(asym));

  if (!field(r, "prediction", "").is_null()) check_prediction(r.at("prediction"), number(r, "E_gp"), -1.0, c);

  const auto& loc = field(r, "localization", "");
  if (!loc.is_null()) {
    const auto radii = numbers(loc, "radii", "localization.");
    const auto fr = numbers(loc, "fractions", "localization.");
    bool ok = radii.size() == fr.size();
    std::vector<std::size_t> order(radii.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return radii[x] < radii[y]; });
    bool bounded = true;
    for (std::size_t k = 0; ok && k < order.size(); ++k) {
      if (fr[order[k]] < -1e-12 || fr[order[k]] > 1.0 + 1e-12) bounded = false;
      if (k > 0 && fr[order[k]] < fr[order[k - 1]] - 1e-12) ok = false;
    }
    c.add("localization_fractions_range", bounded, "fractions in [0, 1]");
    c.add("localization_monotone", ok, "fractions nondecreasing in radius");
  }
}

void check_sweep(const json& r, Checks& c) {
  const auto& rows = field(r, "rows", "");
  if (!rows.is_array() || rows.empty()) throw IntegrityError("report field rows is empty");
  const double g = number(r, "g");
  const double e_gp = number(r, "E_gp");
  bool consistent = true;
  for (const auto& row : rows) {
    const int n = static_cast<int>(number(row, "N", "rows[]."));
    InstanceView v{"N = " + std::to_string(n),
                   number(row, "condensate_fraction", "rows[]."),
                   number(row, "gp_overlap", "rows[]."),
                   number(row, "trace_distance", "rows[]."),
                   number(row, "momentum_l1", "rows[]."),
                   number(row, "pair_moment", "rows[]."),
                   number(row, "pair_moment_lower_bound", "rows[]."),
                   number(row, "E_qm_per_N", "rows[]."),
                   number(row, "hartree_per_N", "rows[]."),
                   number(row, "hartree_formula_per_N", "rows[]."),
                   number(row, "kin", "rows[]."),
                   number(row, "pot", "rows[]."),
                   number(row, "int", "rows[].")};
    check_instance(v, c);
    const double pred = number(row, "kin_pred", "rows[].") + number(row, "pot_pred", "rows[].") + number(row, "int_pred", "rows[].");
    c.add("prediction_sum", close(pred, e_gp, 1e-12), "predicted total = " + fmt(pred) + " (" + v.label + ")");
    if (!close(number(row, "a", "rows[]."), g / (4.0 * std::numbers::pi * n), 1e-12) ||
        !close(number(row, "g", "rows[]."), g, 1e-15) || !close(number(row, "E_gp", "rows[]."), e_gp, 1e-15)) {
      consistent = false;
    }
  }
  c.add("rows_consistent", consistent, "a = g / (4 pi N) and shared g, E_gp on every row");
}

void check_poincare(const json& r, Checks& c) {
  const int trials = static_cast<int>(number(r, "trials"));
  const double c_star = number(r, "C_star");
  const int holds = static_cast<int>(number(r, "holds_at_c_star"));
  const auto& all = field(r, "holds_all", "");
  c.add("c_star_positive", c_star > 0.0 && std::isfinite(c_star), "C_star = " + fmt(c_star));
  c.add("holds_all", all.is_boolean() && all.get<bool>() && holds == trials,
        std::to_string(holds) + " of " + std::to_string(trials) + " trials hold");
  const int worst = static_cast<int>(number(r, "worst_trial"));
  c.add("worst_trial_range", worst >= 0 && worst < trials, "worst_trial = " + std::to_string(worst));
  const double m = number(r, "dimension");
  const double constructed = 2.0 * std::pow(number(r, "volume"), 2.0 / m) * number(r, "c_tilde");
  c.add("constructed_constant", close(constructed, number(r, "c_constructed"), 1e-12), "2 |K|^(2/m) c_tilde");
  const auto& w = field(r, "weighted", "");
  if (!w.is_null()) {
    const double ratio = number(w, "weight_ratio", "weighted.");
    const double cs = number(w, "c_sandwich", "weighted.");
    c.add("sandwich_constant", ratio >= 1.0 && close(cs, c_star * ratio * ratio, 1e-12),
          "c_sandwich = " + fmt(cs) + ", C_star (max/min)^2 = " + fmt(c_star * ratio * ratio));
    const int wh = static_cast<int>(number(w, "holds", "weighted."));
    const int wt = static_cast<int>(number(w, "trials", "weighted."));
    c.add("weighted_holds_all", wh == wt, std::to_string(wh) + " of " + std::to_string(wt) + " weighted trials hold");
  }
}

}  // namespace

VerifyResult verify_report(const json& report) {
  VerifyResult out;
  const auto& version = field(report, "artifact_version", "");
  if (!version.is_string() || version.get<std::string>() != kArtifactVersion) {
    throw IntegrityError("report was written by artifact version " + version.dump() + ", expected " + kArtifactVersion);
  }
  const auto& experiment = field(report, "experiment", "");
  if (!experiment.is_string()) throw IntegrityError("report field experiment is not a string");
  out.experiment = experiment.get<std::string>();
  Experiment kind;
  try {
    kind = parse_experiment(out.experiment);
  } catch (const ConfigError&) {
    throw IntegrityError("report names unknown experiment " + out.experiment);
  }
  const auto& results = field(report, "results", "");
  Checks c(out.checks);
  const auto& stored = field(report, "config_hash", "");
  const std::string hash = config_hash(out.experiment, field(report, "config", ""));
  c.add("config_hash", stored.is_string() && stored.get<std::string>() == hash, "stored hash matches the embedded config");
  try {
    switch (kind) {
      case Experiment::scattering: check_scattering(results, c); break;
      case Experiment::gp: check_gp(results, c); break;
      case Experiment::manybody: check_manybody(results, c); break;
      case Experiment::sweep: check_sweep(results, c); break;
      case Experiment::poincare: check_poincare(results, c); break;
    }
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("malformed report: ") + e.what());
  } catch (const ConfigError& e) {
    throw IntegrityError(std::string("malformed report: ") + e.what());
  }
  return out;
}

VerifyResult verify_path(const fs::path& path) {
  fs::path file = fs::is_directory(path) ? path / "report.json" : path;
  std::ifstream in(file);
  if (!in) throw IntegrityError("missing report " + file.string());
  json report;
  try {
    in >> report;
  } catch (const json::exception& e) {
    throw IntegrityError("corrupt report " + file.string() + ": " + e.what());
  }
  VerifyResult out = verify_report(report);
  out.report = file;
  if (out.experiment == "sweep") {
    const auto csv = file.parent_path() / report["results"].value("csv", "sweep.csv");
    std::ifstream cs(csv);
    std::size_t lines = 0;
    std::string line, header;
    if (cs && std::getline(cs, header)) {
      while (std::getline(cs, line))
        if (!line.empty()) ++lines;
    }
    const bool ok = header == "N,a,g,E_qm_per_N,E_gp,gp_overlap,trace_distance,momentum_l1,kin,pot,int,kin_pred,pot_pred,int_pred,s" &&
                    lines == report["results"]["rows"].size();
    out.checks.push_back({"csv_rows", ok, csv.filename().string() + " has the contract header and one line per row"});
  }
  return out;
}

}  // namespace bec::cli
