#include "confdop/manifest.hpp"

#include <array>
#include <fstream>
#include <iterator>
#include <memory>

#include <openssl/evp.h>

#include "confdop/errors.hpp"

namespace confdop {

namespace {

std::string hex(const unsigned char* data, unsigned int len) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kDigits[data[i] >> 4]);
    out.push_back(kDigits[data[i] & 0xF]);
  }
  return out;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  return hex(digest.data(), len);
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot read " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

std::string config_digest(const nlohmann::json& config) { return sha256_hex(config.dump()); }

nlohmann::json RunManifest::to_json() const {
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& o : outputs) outs.push_back({{"path", o.path}, {"sha256", o.sha256}});
  return {{"command", command},
          {"config", config},
          {"config_digest", config_digest},
          {"seed", seed},
          {"tool_version", tool_version},
          {"rng_algorithm", rng_algorithm},
          {"outputs", outs}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config");
    m.config_digest = j.at("config_digest").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.rng_algorithm = j.at("rng_algorithm").get<std::string>();
    for (const auto& o : j.at("outputs")) {
      m.outputs.push_back({o.at("path").get<std::string>(), o.at("sha256").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("manifest: ") + e.what());
  }
  return m;
}

ManifestCheck verify_manifest(const RunManifest& manifest, const std::filesystem::path& base_dir) {
  ManifestCheck check;
  const auto fail = [&](std::string msg) {
    check.ok = false;
    check.problems.push_back(std::move(msg));
  };
  if (config_digest(manifest.config) != manifest.config_digest) fail("config digest mismatch");
  if (manifest.outputs.empty()) fail("manifest lists no outputs");
  for (const auto& o : manifest.outputs) {
    std::filesystem::path p(o.path);
    if (p.is_relative()) p = base_dir / p;
    if (!std::filesystem::exists(p)) {
      fail("missing output " + o.path);
      continue;
    }
    if (sha256_file(p) != o.sha256) fail("digest mismatch for " + o.path);
  }
  return check;
}

}  // namespace confdop
