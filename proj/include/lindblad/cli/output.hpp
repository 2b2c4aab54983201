// Copyright 2026 The lindblad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lindblad/types.hpp"

namespace lindblad::cli {

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr int kCsvSchemaVersion = 1;

/// Filesystem trouble while writing artifacts (reported as a numerical/run failure).
class OutputError : public Error {
 public:
  using Error::Error;
};

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw OutputError("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

/// 15 significant digits, scientific; identical input gives identical bytes.
inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

/// Column-major table written as CSV.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)), cols_(header_.size()) {}

  void row(const std::vector<double>& values) {
    if (values.size() != header_.size()) throw OutputError("CsvTable: row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i) cols_[i].push_back(values[i]);
  }

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return cols_.empty() ? 0 : cols_[0].size(); }
  const std::vector<double>& column(std::size_t i) const { return cols_.at(i); }
  const std::vector<double>& column(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
      if (header_[i] == name) return cols_[i];
    throw OutputError("CsvTable: no column '" + name + "'");
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
    out += '\n';
    for (std::size_t r = 0; r < rows(); ++r) {
      for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += format_value(cols_[i][r]);
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> cols_;
};

/// Writes to `path.tmp` then renames, so readers never see partial files.
inline void write_atomic(const std::filesystem::path& path, const std::string& data) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot open '" + tmp.string() + "' for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw OutputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw OutputError("rename to '" + path.string() + "' failed: " + ec.message());
}

/// Collects artifacts of one run and the manifest describing them.
class ArtifactSink {
 public:
  explicit ArtifactSink(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw OutputError("cannot create output directory '" + dir_.string() + "': " + ec.message());
  }

  const std::filesystem::path& dir() const { return dir_; }

  void csv(const std::string& name, const CsvTable& t, const std::string& description = {}) {
    const std::string body = t.str();
    write_atomic(dir_ / name, body);
    nlohmann::ordered_json e;
    e["kind"] = "csv";
    e["sha256"] = sha256_hex(body);
    e["rows"] = t.rows();
    e["columns"] = t.header();
    if (!description.empty()) e["description"] = description;
    files_[name] = e;
  }

  void text(const std::string& name, const std::string& body, const std::string& kind) {
    write_atomic(dir_ / name, body);
    nlohmann::ordered_json e;
    e["kind"] = kind;
    e["sha256"] = sha256_hex(body);
    files_[name] = e;
  }

  const std::map<std::string, nlohmann::ordered_json>& files() const { return files_; }

  /// Manifest without wall-clock fields, so reruns write the same bytes.
  void manifest(const nlohmann::ordered_json& header) {
    nlohmann::ordered_json m = header;
    m["schema_version"] = kManifestSchemaVersion;
    m["csv_schema_version"] = kCsvSchemaVersion;
    nlohmann::ordered_json f = nlohmann::ordered_json::object();
    for (const auto& [k, v] : files_) f[k] = v;
    m["files"] = f;
    write_atomic(dir_ / "manifest.json", m.dump(2) + "\n");
  }

 private:
  std::filesystem::path dir_;
  std::map<std::string, nlohmann::ordered_json> files_;
};

}  // namespace lindblad::cli
