#include "bec/gp/dump.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "bec/errors.hpp"
#include "bec/model/problem.hpp"

namespace bec::gp {

namespace {

static_assert(std::endian::native == std::endian::little, "dump format assumes a little-endian host");

std::filesystem::path with_ext(std::filesystem::path p, const char* ext) {
  p.replace_extension(ext);
  return p;
}

}  // namespace

void write_phi_dump(const std::filesystem::path& stem, const GPState& state) {
  const auto bin = with_ext(stem, ".bin");
  std::ofstream out(bin, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(state.phi.data()),
            static_cast<std::streamsize>(state.phi.size() * sizeof(double)));
  if (!out) throw IntegrityError("could not write " + bin.string());

  nlohmann::json meta;
  meta["format"] = "float64-le row-major, axis 0 slowest";
  meta["grid"] = model::to_json(state.grid);
  meta["g"] = state.g;
  meta["count"] = state.phi.size();
  meta["data"] = bin.filename().string();
  std::ofstream side(with_ext(stem, ".json"), std::ios::trunc);
  side << meta.dump(2) << '\n';
  if (!side) throw IntegrityError("could not write the dump sidecar for " + stem.string());
}

PhiDump read_phi_dump(const std::filesystem::path& path) {
  const auto json_path = with_ext(path, ".json");
  std::ifstream side(json_path);
  if (!side) throw IntegrityError("missing dump sidecar " + json_path.string());
  nlohmann::json meta;
  try {
    side >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError("corrupt dump sidecar " + json_path.string() + ": " + e.what());
  }

  PhiDump dump;
  try {
    dump.grid = model::parse_grid(model::StrictObject(meta.at("grid"), "grid"));
    dump.g = meta.at("g").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError("corrupt dump sidecar " + json_path.string() + ": " + e.what());
  } catch (const ConfigError& e) {
    throw IntegrityError("corrupt dump sidecar " + json_path.string() + ": " + e.what());
  }

  const auto bin = json_path.parent_path() / meta.value("data", with_ext(path, ".bin").filename().string());
  std::ifstream in(bin, std::ios::binary | std::ios::ate);
  if (!in) throw IntegrityError("missing dump data " + bin.string());
  const auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes != dump.grid.size() * sizeof(double)) {
    throw IntegrityError("dump " + bin.string() + " holds " + std::to_string(bytes) +
                         " bytes, expected " + std::to_string(dump.grid.size() * sizeof(double)));
  }
  dump.phi.resize(dump.grid.size());
  in.seekg(0);
  in.read(reinterpret_cast<char*>(dump.phi.data()), static_cast<std::streamsize>(bytes));
  return dump;
}

}  // namespace bec::gp
