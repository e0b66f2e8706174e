#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "bec/cli/config.hpp"
#include "bec/cli/run.hpp"
#include "bec/cli/verify.hpp"
#include "bec/errors.hpp"

namespace {

struct Flags {
  std::string config;
  bool force = false;
  bool reproducible = false;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::vector<std::string> reports;
};

int run_experiment(const std::string& name, const Flags& flags) {
  using namespace bec::cli;
  Overrides overrides;
  overrides.seed = flags.seed;
  overrides.reproducible = flags.reproducible;
  const auto config = load_config(flags.config, parse_experiment(name), overrides);
  const auto outcome = run(config, {flags.out, flags.force});
  std::cerr << (outcome.cached ? "cached " : "computed ") << outcome.hash << '\n';
  std::cout << outcome.report.string() << '\n';
  return 0;
}

int run_verify(const Flags& flags) {
  std::vector<std::string> paths = flags.reports;
  if (!flags.config.empty()) paths.insert(paths.begin(), flags.config);
  if (paths.empty()) throw bec::ConfigError("verify needs at least one report path");
  bool ok = true;
  for (const auto& p : paths) {
    const auto result = bec::cli::verify_path(p);
    for (const auto& c : result.checks) {
      if (!c.passed) std::cout << "FAIL " << result.report.string() << ' ' << c.name << ": " << c.detail << '\n';
    }
    std::cout << (result.passed() ? "PASS " : "FAIL ") << result.report.string() << " (" << result.experiment << ", "
              << result.checks.size() << " checks)\n";
    ok = ok && result.passed();
  }
  return ok ? 0 : static_cast<int>(bec::ExitCode::verification_failure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trapped-boson ground states: scattering, GP, many-body and Poincare experiments"};
  app.require_subcommand(1);
  Flags flags;
  for (const char* name : {"scattering", "gp", "manybody", "sweep", "poincare"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", flags.config, "JSON configuration")->required();
    sub->add_flag("--force", flags.force, "recompute even when a cached result exists");
    sub->add_flag("--reproducible", flags.reproducible, "record the reproducible flag in the config");
    sub->add_option("--seed", flags.seed, "seed override");
    sub->add_option("--out", flags.out, "output directory")->capture_default_str();
  }
  auto* verify = app.add_subcommand("verify", "re-check the invariants of stored reports");
  verify->add_option("--config", flags.config, "report file or run directory");
  verify->add_option("reports", flags.reports, "more report files or run directories");
  verify->add_flag("--force", flags.force, "ignored");
  verify->add_flag("--reproducible", flags.reproducible, "ignored");
  verify->add_option("--seed", flags.seed, "ignored");
  verify->add_option("--out", flags.out, "ignored");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(bec::ExitCode::config_error);
  }

  try {
    for (auto* sub : app.get_subcommands()) {
      if (sub->get_name() == "verify") return run_verify(flags);
      return run_experiment(sub->get_name(), flags);
    }
  } catch (const bec::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(bec::ExitCode::solver_failure);
  }
  return 0;
}
