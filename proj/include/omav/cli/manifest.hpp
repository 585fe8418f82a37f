#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace omav::cli {

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// SHA-1 of "blob <size>\0<content>", lowercase hex (same as `git hash-object`).
std::string gitBlobHash(std::string_view content);

struct OutputFile {
  std::string path;  // relative to the output directory
  std::string hash;
  std::size_t bytes = 0;
};

/// Collects the files of one command run and writes them with their manifest.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);

  /// Writes `content` to dir/name and records its hash. Names must be unique.
  void write(const std::string& name, const std::string& content);

  const std::vector<OutputFile>& files() const { return files_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<OutputFile> files_;
};

/// {schema_version, tool_version, command, status, seed, config, config_hash,
///  outputs: [{path, hash, bytes}], content_hash}. The content hash covers the
/// config hash and every output hash in order. No wall-clock fields, so identical
/// runs give identical manifests.
nlohmann::json makeManifest(const std::string& command, const std::string& status,
                            std::uint64_t seed, const nlohmann::json& config,
                            const std::vector<OutputFile>& outputs);

/// Writes manifest_<command>.json into the output directory; returns its path.
std::filesystem::path writeManifest(const OutputSet& outputs, const nlohmann::json& manifest);

/// Pretty JSON text with a trailing newline.
std::string dumpJson(const nlohmann::json& j);

}  // namespace omav::cli
