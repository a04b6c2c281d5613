#include "wavebreak_cli/output.hpp"

#include <fftw3.h>
#include <openssl/crypto.h>
#include <openssl/evp.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <thread>

#ifndef WAVEBREAK_VERSION
#define WAVEBREAK_VERSION "unknown"
#endif

namespace wavebreak::cli {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  static std::atomic<unsigned long> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
}

void OutputDir::write_text(const std::string& relative, const std::string& content) {
  write_atomic(root_ / relative, content);
  artifacts_.push_back({relative, sha256_hex(content), content.size()});
}

void OutputDir::record(const std::string& relative) {
  std::ifstream in(root_ / relative, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + (root_ / relative).string());
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  artifacts_.push_back({relative, sha256_hex(content), content.size()});
}

void OutputDir::write_json(const std::string& relative, const nlohmann::json& j) {
  write_text(relative, j.dump(2) + "\n");
}

void OutputDir::write_csv(const std::string& relative, const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_number(row[i]);
    }
    out += '\n';
  }
  write_text(relative, out);
}

void OutputDir::write_columns(const std::string& relative, const std::vector<std::string>& header,
                              const std::vector<const std::vector<double>*>& columns) {
  const std::size_t n = columns.empty() ? 0 : columns.front()->size();
  std::vector<std::vector<double>> rows(n, std::vector<double>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c]->size() != n) throw std::logic_error("ragged columns for " + relative);
    for (std::size_t r = 0; r < n; ++r) rows[r][c] = (*columns[c])[r];
  }
  write_csv(relative, header, rows);
}

void OutputDir::write_manifest(nlohmann::json info) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& a : artifacts_) list.push_back({{"path", a.path}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  info["artifacts"] = std::move(list);
  write_atomic(root_ / "manifest.json", info.dump(2) + "\n");
}

nlohmann::json version_info() {
  return {{"wavebreak", WAVEBREAK_VERSION},
          {"fftw", std::string(fftw_version)},
          {"openssl", OpenSSL_version(OPENSSL_VERSION)},
          {"compiler", __VERSION__},
          {"cxx_standard", static_cast<long>(__cplusplus)}};
}

}  // namespace wavebreak::cli
