#include "omav/cli/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <openssl/evp.h>

namespace omav::cli {

namespace fs = std::filesystem;

std::string gitBlobHash(std::string_view content) {
  const std::string header = fmt::format("blob {}", content.size());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw std::runtime_error("EVP_MD_CTX_new failed");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size() + 1) == 1 &&  // with '\0'
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("SHA-1 digest failed");
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

OutputSet::OutputSet(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

void OutputSet::write(const std::string& name, const std::string& content) {
  const bool taken = std::any_of(files_.begin(), files_.end(),
                                 [&](const OutputFile& f) { return f.path == name; });
  if (taken) throw std::logic_error("output written twice: " + name);
  std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
  out << content;
  out.close();
  if (!out) throw std::runtime_error("write failed: " + (dir_ / name).string());
  files_.push_back({name, gitBlobHash(content), content.size()});
}

std::string dumpJson(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json makeManifest(const std::string& command, const std::string& status,
                            std::uint64_t seed, const nlohmann::json& config,
                            const std::vector<OutputFile>& outputs) {
  const std::string config_hash = gitBlobHash(config.dump());
  std::string combined = config_hash;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : outputs) {
    files.push_back({{"path", f.path}, {"hash", f.hash}, {"bytes", f.bytes}});
    combined += "\n" + f.path + " " + f.hash;
  }
  return {{"schema_version", kManifestSchemaVersion},
          {"tool_version", kToolVersion},
          {"command", command},
          {"status", status},
          {"seed", seed},
          {"config", config},
          {"config_hash", config_hash},
          {"outputs", files},
          {"content_hash", gitBlobHash(combined)}};
}

fs::path writeManifest(const OutputSet& outputs, const nlohmann::json& manifest) {
  const fs::path path =
      outputs.dir() / ("manifest_" + manifest.at("command").get<std::string>() + ".json");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dumpJson(manifest);
  return path;
}

}  // namespace omav::cli
