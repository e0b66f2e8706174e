#pragma once

#include <filesystem>
#include <vector>

#include "bec/gp/gp.hpp"
#include "bec/model/grid.hpp"

namespace bec::gp {

/// Grid samples of a stored minimizer.
struct PhiDump {
  model::Grid grid;
  double g = 0.0;
  std::vector<double> phi;
};

/// Writes `<stem>.bin` (little-endian float64, row-major, axis 0 slowest)
/// and `<stem>.json` describing the grid.
void write_phi_dump(const std::filesystem::path& stem, const GPState& state);

/// Accepts either file of the pair. Throws IntegrityError on a size mismatch
/// or unreadable file.
PhiDump read_phi_dump(const std::filesystem::path& path);

}  // namespace bec::gp
