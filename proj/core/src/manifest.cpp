#include "tlps/manifest.hpp"

#include <sys/resource.h>

#include <cstdio>
#include <fstream>

#include "tlps/errors.hpp"

namespace tlps {

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
    if (got < static_cast<std::streamsize>(sizeof(buf))) break;
  }
  char hex[19];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + hex;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["argv"] = argv;
  j["config"] = config;
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [path, digest] : inputs) in[path] = digest;
  j["inputs"] = in;
  j["seed"] = seed;
  j["artifacts"] = artifacts;
  j["wall_ms"] = stable_timings ? 0.0 : wall_ms;
  j["peak_memory_kb"] = stable_timings ? 0 : peak_memory_kb;
  return j;
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << to_json().dump(2) << '\n';
}

std::size_t current_peak_memory_kb() {
  struct rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return static_cast<std::size_t>(ru.ru_maxrss);
}

}  // namespace tlps
