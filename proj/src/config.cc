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

#include "sea/config.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sea/errors.h"

namespace sea {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = std::find_if_not(s.begin(), s.end(), ::isspace);
  const auto end = std::find_if_not(s.rbegin(), s.rend(), ::isspace).base();
  return begin < end ? std::string(begin, end) : std::string();
}

const std::set<std::string>& CommonEnvKeys() {
  static const std::set<std::string> keys = {
      "preset", "dim", "domain", "radius", "center", "lo", "hi", "gradient_bound"};
  return keys;
}

std::set<std::string> EnvKeysFor(const std::string& preset) {
  std::set<std::string> keys = CommonEnvKeys();
  const std::set<std::string> family = {"family", "curvature", "mean", "sigma"};
  auto add = [&](std::initializer_list<const char*> more) {
    for (const char* k : more) keys.insert(k);
  };
  if (preset == "adversarial") {
    add({"family", "curvature", "pattern", "scale", "block", "direction"});
  } else if (preset == "iid") {
    keys.insert(family.begin(), family.end());
  } else if (preset == "corrupted") {
    keys.insert(family.begin(), family.end());
    add({"budget", "gamma", "direction"});
  } else if (preset == "rom" || preset == "multipass_rom") {
    keys.insert(family.begin(), family.end());
    add({"pool_size", "pool_seed"});
    if (preset == "multipass_rom") keys.insert("passes");
  } else if (preset == "shift") {
    keys.insert(family.begin(), family.end());
    add({"epsilon", "drift_radius"});
  } else if (preset == "switch") {
    add({"family", "curvature", "means", "sigma", "switches"});
  } else if (preset == "lb_rademacher") {
    add({"a", "b", "scale"});
  } else if (preset == "coord_quadratic") {
    // dim and radius only.
  } else {
    throw ConfigError("unknown env.preset '" + preset + "'");
  }
  return keys;
}

std::set<std::string> LearnerKeysFor(const std::string& preset) {
  std::set<std::string> keys = {"preset"};
  if (preset == "oftrl") {
    keys.insert({"nu", "tuning", "regularizer"});
  } else if (preset == "oftl") {
    keys.insert("mu");
  } else if (preset == "ogd") {
    keys.insert("step_scale");
  } else {
    throw ConfigError("unknown learner.preset '" + preset + "'");
  }
  return keys;
}

const std::set<std::string>& RunKeys() {
  static const std::set<std::string> keys = {
      "horizons", "seeds", "num_seeds", "seed", "regret", "theorem3",
      "threads", "out", "sweep"};
  return keys;
}

double ParseDouble(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (Trim(text.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("key " + key + ": '" + text + "' is not a number");
}

long ParseLong(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (Trim(text.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  // Accept integral values written in floating point, e.g. 1e4.
  const double d = ParseDouble(key, text);
  if (d == static_cast<double>(static_cast<long>(d))) return static_cast<long>(d);
  throw ConfigError("key " + key + ": '" + text + "' is not an integer");
}

}  // namespace

std::vector<std::string> SplitTrimmed(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, sep)) {
    piece = Trim(piece);
    if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

ExperimentConfig ExperimentConfig::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromString(buffer.str());
}

ExperimentConfig ExperimentConfig::FromString(const std::string& text) {
  // Boost's INI reader only understands ';' comments; map '#' lines onto it.
  std::stringstream cleaned;
  std::stringstream raw(text);
  std::string line;
  while (std::getline(raw, line)) {
    const std::string trimmed = Trim(line);
    if (!trimmed.empty() && trimmed.front() == '#') {
      cleaned << ";" << trimmed.substr(1) << "\n";
    } else {
      cleaned << line << "\n";
    }
  }
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(cleaned, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  ExperimentConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("config entry '" + section + "' is outside a section");
    }
    for (const auto& [key, value] : body) {
      cfg.values_[section + "." + key] = Trim(value.data());
    }
  }
  return cfg;
}

void ExperimentConfig::Set(const std::string& dotted_key, const std::string& value) {
  values_[Trim(dotted_key)] = Trim(value);
}

void ExperimentConfig::SetAssignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + assignment + "' is not key=value");
  }
  Set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

void ExperimentConfig::Validate() const {
  if (!Has("env.preset")) throw ConfigError("missing env.preset");
  if (!Has("learner.preset")) throw ConfigError("missing learner.preset");
  const auto env_keys = EnvKeysFor(values_.at("env.preset"));
  const auto learner_keys = LearnerKeysFor(values_.at("learner.preset"));
  for (const auto& [dotted, value] : values_) {
    const auto dot = dotted.find('.');
    if (dot == std::string::npos) throw UnknownKeyError(dotted);
    const std::string section = dotted.substr(0, dot);
    const std::string key = dotted.substr(dot + 1);
    const std::set<std::string>* allowed = nullptr;
    if (section == "env") {
      allowed = &env_keys;
    } else if (section == "learner") {
      allowed = &learner_keys;
    } else if (section == "run") {
      allowed = &RunKeys();
    }
    if (allowed == nullptr || allowed->count(key) == 0) throw UnknownKeyError(dotted);
  }
}

std::string ExperimentConfig::GetString(const std::string& key,
                                        const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double ExperimentConfig::GetDouble(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : ParseDouble(key, it->second);
}

long ExperimentConfig::GetInt(const std::string& key, long fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : ParseLong(key, it->second);
}

bool ExperimentConfig::GetBool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
  if (it->second == "false" || it->second == "0" || it->second == "no") return false;
  throw ConfigError("key " + key + ": '" + it->second + "' is not a boolean");
}

Point ExperimentConfig::GetPoint(const std::string& key, const Point& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const auto parts = SplitTrimmed(it->second, ',');
  if (parts.empty()) throw ConfigError("key " + key + " is an empty vector");
  Point p(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) p[i] = ParseDouble(key, parts[i]);
  return p;
}

std::vector<Point> ExperimentConfig::GetPointList(const std::string& key) const {
  std::vector<Point> out;
  const auto it = values_.find(key);
  if (it == values_.end()) return out;
  for (const std::string& vec : SplitTrimmed(it->second, ';')) {
    const auto parts = SplitTrimmed(vec, ',');
    Point p(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) p[i] = ParseDouble(key, parts[i]);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<long> ExperimentConfig::GetIntList(const std::string& key) const {
  std::vector<long> out;
  const auto it = values_.find(key);
  if (it == values_.end()) return out;
  for (const std::string& part : SplitTrimmed(it->second, ',')) {
    out.push_back(ParseLong(key, part));
  }
  return out;
}

}  // namespace sea
