#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace wavebreak::cli {

struct Artifact {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

std::string sha256_hex(std::string_view data);

/// %.17g: reads back bit-identical.
std::string csv_number(double v);

/// Writes `content` to `path` through a temporary file and a rename.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Collects the files one command writes and the manifest that lists them.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  void write_text(const std::string& relative, const std::string& content);
  void write_json(const std::string& relative, const nlohmann::json& j);
  void write_csv(const std::string& relative, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);
  /// Columns given as equally long vectors.
  void write_columns(const std::string& relative, const std::vector<std::string>& header,
                     const std::vector<const std::vector<double>*>& columns);

  /// Lists a file another writer already produced under the root.
  void record(const std::string& relative);

  const std::vector<Artifact>& artifacts() const { return artifacts_; }

  /// manifest.json: `info` plus the artifact list. The manifest is not
  /// listed in itself.
  void write_manifest(nlohmann::json info);

 private:
  std::filesystem::path root_;
  std::vector<Artifact> artifacts_;
};

/// Library and compiler versions recorded in manifests.
nlohmann::json version_info();

}  // namespace wavebreak::cli
