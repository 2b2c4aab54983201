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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lindblad/types.hpp"

extern char** environ;

namespace lindblad::cli {

/// Bad or incomplete configuration (exit code 1).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline constexpr const char* kEnvPrefix = "LINDBLAD_";

struct KeySpec {
  std::string key;
  std::string default_value;  // empty + required => must be supplied
  std::string help;
  bool required = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline bool valid_key(const std::string& k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  return std::all_of(k.begin(), k.end(), [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '.'; });
}

}  // namespace detail

/**
 * Flat `key = value` text. `#` starts a comment, `[section]` prefixes the
 * following keys with `section.`. Duplicate keys are errors.
 */
inline std::map<std::string, std::string> parse_config_text(std::istream& in, const std::string& origin) {
  std::map<std::string, std::string> out;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + why);
    };
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      if (!section.empty() && !detail::valid_key(section)) fail("invalid section name '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    std::string key = detail::lower(detail::trim(line.substr(0, eq)));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (!section.empty()) key = section + "." + key;
    if (!detail::valid_key(key)) fail("invalid key '" + key + "'");
    if (out.count(key)) fail("duplicate key '" + key + "'");
    out[key] = value;
  }
  return out;
}

inline std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config_text(in, path);
}

/// LINDBLAD_PARAMS__OMEGA_A=1.7 -> params.omega_a = 1.7 ("__" separates sections).
inline std::string env_name_to_key(const std::string& name) {
  std::string rest = name.substr(std::string(kEnvPrefix).size());
  std::string key;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i] == '_' && i + 1 < rest.size() && rest[i + 1] == '_') {
      key += '.';
      ++i;
    } else {
      key += static_cast<char>(std::tolower(static_cast<unsigned char>(rest[i])));
    }
  }
  return key;
}

inline std::string key_to_env_name(const std::string& key) {
  std::string out = kEnvPrefix;
  for (char c : key) {
    if (c == '.') out += "__";
    else out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

inline std::map<std::string, std::string> environment_overrides() {
  std::map<std::string, std::string> out;
  const std::string prefix = kEnvPrefix;
  for (char** e = environ; e && *e; ++e) {
    const std::string kv = *e;
    if (kv.rfind(prefix, 0) != 0) continue;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    out[env_name_to_key(kv.substr(0, eq))] = kv.substr(eq + 1);
  }
  return out;
}

/// Resolved configuration: schema defaults < file < environment < command-line flags.
class Config {
 public:
  Config() = default;
  Config(std::map<std::string, std::string> values, std::map<std::string, std::string> sources)
      : values_(std::move(values)), sources_(std::move(sources)) {}

  const std::map<std::string, std::string>& values() const { return values_; }
  const std::map<std::string, std::string>& sources() const { return sources_; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& str(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing configuration key '" + key + "'");
    return it->second;
  }

  double real(const std::string& key) const { return parse_real(key, str(key)); }

  int integer(const std::string& key) const {
    const double v = real(key);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("'" + key + "' must be an integer");
    return static_cast<int>(v);
  }

  bool boolean(const std::string& key) const { return parse_bool(key, str(key)); }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    const std::string& s = str(key);
    if (detail::trim(s).empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(key, detail::trim(item)));
    return out;
  }

  static double parse_real(const std::string& key, const std::string& s) {
    const std::string t = detail::lower(detail::trim(s));
    if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || std::isnan(v))
      throw ConfigError("'" + key + "': cannot parse '" + s + "' as a number");
    return v;
  }

  static bool parse_bool(const std::string& key, const std::string& s) {
    const std::string t = detail::lower(detail::trim(s));
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError("'" + key + "': expected a boolean, got '" + s + "'");
  }

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> sources_;
};

/**
 * Merges the layers against a schema. Keys outside the schema are rejected in
 * every layer; required keys without a value are reported together.
 */
inline Config resolve_config(const std::vector<KeySpec>& schema, const std::map<std::string, std::string>& file,
                             const std::map<std::string, std::string>& env,
                             const std::map<std::string, std::string>& flags) {
  std::map<std::string, std::string> values, sources;
  std::map<std::string, const KeySpec*> known;
  for (const auto& k : schema) known[k.key] = &k;
  for (const auto& k : schema)
    if (!k.required) {
      values[k.key] = k.default_value;
      sources[k.key] = "default";
    }
  auto layer = [&](const std::map<std::string, std::string>& m, const std::string& name) {
    for (const auto& [k, v] : m) {
      if (!known.count(k)) {
        std::string msg = "unknown configuration key '" + k + "' (from " + name + ")";
        if (name == "environment") msg += " via " + key_to_env_name(k);
        throw ConfigError(msg);
      }
      values[k] = v;
      sources[k] = name;
    }
  };
  layer(file, "file");
  layer(env, "environment");
  layer(flags, "command line");
  std::vector<std::string> missing;
  for (const auto& k : schema)
    if (k.required && !values.count(k.key)) missing.push_back(k.key);
  if (!missing.empty()) {
    std::string msg = "missing required configuration key(s):";
    for (const auto& m : missing) msg += " " + m;
    throw ConfigError(msg);
  }
  return Config(std::move(values), std::move(sources));
}

}  // namespace lindblad::cli
