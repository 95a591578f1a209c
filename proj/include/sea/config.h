// Copyright 2026 The sea-oco Authors.
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

#ifndef SEA_CONFIG_H_
#define SEA_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sea/geometry.h"

namespace sea {

// Experiment configuration: an INI-style file with sections [env],
// [learner] and [run], flattened into dotted keys ("env.sigma").
//
// Grammar:
//   file    := { section | assignment | comment | blank }
//   section := "[" ("env" | "learner" | "run") "]"
//   assign  := key "=" value          ; value is the rest of the line
//   comment := ("#" | ";") text
// Vectors are comma separated ("1,0"); lists of vectors separate the
// vectors with ";" ("1,0; -1,0"). Keys are validated against the presets
// chosen by env.preset and learner.preset; an unknown key raises
// UnknownKeyError. Overrides (Set) are applied after parsing, last wins.
class ExperimentConfig {
 public:
  ExperimentConfig() = default;

  // Throws ConfigError when the file is missing or malformed.
  static ExperimentConfig FromFile(const std::filesystem::path& path);
  static ExperimentConfig FromString(const std::string& text);

  // "section.key" = value. Validation happens in Validate().
  void Set(const std::string& dotted_key, const std::string& value);
  // Parses "section.key=value".
  void SetAssignment(const std::string& assignment);
  // Throws UnknownKeyError for keys the selected presets do not accept and
  // ConfigError for a missing or unknown preset.
  void Validate() const;

  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  std::string GetString(const std::string& key, const std::string& fallback) const;
  double GetDouble(const std::string& key, double fallback) const;
  long GetInt(const std::string& key, long fallback) const;
  bool GetBool(const std::string& key, bool fallback) const;
  // Comma separated vector; `fallback` when absent.
  Point GetPoint(const std::string& key, const Point& fallback) const;
  std::vector<Point> GetPointList(const std::string& key) const;
  std::vector<long> GetIntList(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

class UnknownKeyError : public std::invalid_argument {
 public:
  explicit UnknownKeyError(const std::string& key)
      : std::invalid_argument("unknown configuration key: " + key), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Splits on `sep`, trimming whitespace and dropping empty pieces.
std::vector<std::string> SplitTrimmed(const std::string& text, char sep);

}  // namespace sea

#endif  // SEA_CONFIG_H_
