#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace confdop {

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct ManifestOutput {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  nlohmann::json config;  // canonical form of the effective config
  std::string config_digest;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::string rng_algorithm;
  std::vector<ManifestOutput> outputs;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

// Digest of config.dump() (sorted keys, no whitespace).
std::string config_digest(const nlohmann::json& config);

struct ManifestCheck {
  bool ok = true;
  std::vector<std::string> problems;
};

// Recomputes the config digest and every output digest. Relative output
// paths resolve against base_dir.
ManifestCheck verify_manifest(const RunManifest& manifest, const std::filesystem::path& base_dir);

}  // namespace confdop
