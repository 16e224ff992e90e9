#ifndef TLPS_MANIFEST_HPP
#define TLPS_MANIFEST_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace tlps {

// 64-bit FNV-1a over the file contents, hex-encoded.
std::string file_digest(const std::string& path);

// One manifest per CLI run: what ran, on which inputs, producing what.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::json config;
  std::vector<std::pair<std::string, std::string>> inputs;  // path -> digest
  std::uint64_t seed = 0;
  std::vector<std::string> artifacts;
  double wall_ms = 0.0;
  std::size_t peak_memory_kb = 0;
  bool stable_timings = false;  // zero out wall_ms/peak for byte-stable output

  void add_input(const std::string& path) { inputs.emplace_back(path, file_digest(path)); }
  nlohmann::json to_json() const;
  void write(const std::string& path) const;
};

std::size_t current_peak_memory_kb();

}  // namespace tlps

#endif
