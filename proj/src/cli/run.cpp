#include "bec/cli/run.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <Eigen/Core>
#include <fftw3.h>
#include <openssl/crypto.h>

#include <chrono>
#include <fstream>

#include "bec/cli/reports.hpp"
#include "bec/errors.hpp"
#include "bec/gp/dump.hpp"

namespace bec::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class DirectoryLock {
 public:
  explicit DirectoryLock(const fs::path& file) {
    fd_ = ::open(file.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw ConfigError("cannot open lock file " + file.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw SolverFailure("cannot lock " + file.string());
    }
  }
  ~DirectoryLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  int fd_ = -1;
};

void write_atomic(const fs::path& target, const std::string& text) {
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw SolverFailure("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

json versions() {
  return {{"artifact", kArtifactVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"fftw", std::string(fftw_version)},
          {"openssl", std::string(OpenSSL_version(OPENSSL_VERSION))},
          {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                       "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

}  // namespace

RunOutcome run(const ExperimentConfig& config, const RunOptions& options) {
  RunOutcome outcome;
  outcome.hash = config_hash(config);
  std::error_code ec;
  fs::create_directories(options.out, ec);
  if (ec) throw ConfigError("cannot create output directory " + options.out.string() + ": " + ec.message());
  DirectoryLock lock(options.out / ".lock");

  const fs::path dir = options.out / outcome.hash;
  outcome.report = dir / "report.json";
  // The manifest is written last, so its presence marks a complete run.
  if (!options.force && fs::exists(dir / "manifest.json") && fs::exists(outcome.report)) {
    outcome.cached = true;
    return outcome;
  }
  fs::create_directories(dir);
  fs::remove(dir / "manifest.json", ec);

  const auto start = std::chrono::steady_clock::now();
  const Artifacts artifacts = compute_artifacts(config, outcome.hash);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (artifacts.phi) gp::write_phi_dump(dir / "phi", *artifacts.phi);
  if (artifacts.csv) write_atomic(dir / "sweep.csv", *artifacts.csv);
  write_atomic(outcome.report, render(artifacts.report));
  const json manifest = {{"config_hash", outcome.hash},
                         {"experiment", to_string(config.experiment)},
                         {"seed", config.seed},
                         {"reproducible", config.reproducible},
                         {"wall_time", wall},
                         {"artifact_version", kArtifactVersion},
                         {"versions", versions()}};
  write_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  return outcome;
}

}  // namespace bec::cli
