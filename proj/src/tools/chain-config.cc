// Copyright 2026 The ekrt Authors. All Rights Reserved.
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

#include "ekrt/tools/chain-config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "ekrt/base/error.h"

namespace ekrt {
namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

// Dots separate ptree path elements; section and key names use them
// literally.
pt::ptree::path_type Path(const std::string &section, const std::string &key) {
  return pt::ptree::path_type(section + '\x1f' + key, '\x1f');
}

}  // namespace

ChainConfig ChainConfig::FromString(const std::string &text,
                                    const std::string &base_dir,
                                    const std::string &source) {
  ChainConfig config;
  config.base_dir_ = base_dir;
  config.source_ = source;
  std::istringstream is(text);
  try {
    pt::ini_parser::read_ini(is, config.tree_);
  } catch (const pt::ini_parser_error &e) {
    throw ConfigError(source + ":" + std::to_string(e.line()) + ": " +
                      e.message());
  }
  for (const auto &[name, section] : config.tree_) {
    if (section.empty() && !section.data().empty())
      throw ConfigError(source + ": key '" + name +
                        "' appears before any [section]");
  }
  return config;
}

ChainConfig ChainConfig::FromFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  fs::path dir = fs::path(path).parent_path();
  return FromString(ss.str(), dir.empty() ? "." : dir.string(), path);
}

void ChainConfig::Fail(const std::string &section, const std::string &key,
                       const std::string &what) const {
  throw ConfigError(source_ + ": [" + section + "] " + key + ": " + what);
}

bool ChainConfig::HasSection(const std::string &section) const {
  return tree_.find(section) != tree_.not_found();
}

bool ChainConfig::Has(const std::string &section,
                      const std::string &key) const {
  return Find(section, key).has_value();
}

void ChainConfig::Set(const std::string &section, const std::string &key,
                      const std::string &value) {
  tree_.put(Path(section, key), value);
}

std::optional<std::string> ChainConfig::Find(const std::string &section,
                                             const std::string &key) const {
  auto v = tree_.get_optional<std::string>(Path(section, key));
  if (!v) return std::nullopt;
  return *v;
}

std::string ChainConfig::GetString(const std::string &section,
                                   const std::string &key) const {
  auto v = Find(section, key);
  if (!v) Fail(section, key, "missing required key");
  return *v;
}

std::string ChainConfig::GetString(const std::string &section,
                                   const std::string &key,
                                   const std::string &fallback) const {
  return Find(section, key).value_or(fallback);
}

int ChainConfig::GetInt(const std::string &section, const std::string &key,
                        int fallback) const {
  auto v = Find(section, key);
  if (!v) return fallback;
  int out = 0;
  const auto *end = v->data() + v->size();
  auto [p, ec] = std::from_chars(v->data(), end, out);
  if (ec != std::errc() || p != end)
    Fail(section, key, "expected an integer, got '" + *v + "'");
  return out;
}

double ChainConfig::GetDouble(const std::string &section,
                              const std::string &key, double fallback) const {
  auto v = Find(section, key);
  if (!v) return fallback;
  std::string s = *v;
  std::transform(s.begin(), s.end(), s.begin(), ::tolower);
  if (s == "inf" || s == "infinity")
    return std::numeric_limits<double>::infinity();
  double out = 0;
  const auto *end = v->data() + v->size();
  auto [p, ec] = std::from_chars(v->data(), end, out);
  if (ec != std::errc() || p != end)
    Fail(section, key, "expected a number, got '" + *v + "'");
  return out;
}

bool ChainConfig::GetBool(const std::string &section, const std::string &key,
                          bool fallback) const {
  auto v = Find(section, key);
  if (!v) return fallback;
  std::string s = *v;
  std::transform(s.begin(), s.end(), s.begin(), ::tolower);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  Fail(section, key, "expected true or false, got '" + *v + "'");
}

std::string ChainConfig::GetPath(const std::string &section,
                                 const std::string &key) const {
  fs::path p = GetString(section, key);
  if (p.is_relative()) p = fs::path(base_dir_) / p;
  if (!fs::exists(p)) Fail(section, key, "file '" + p.string() + "' not found");
  return p.string();
}

std::vector<std::string> ChainConfig::GetList(const std::string &section,
                                              const std::string &key) const {
  std::string s = GetString(section, key, "");
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace ekrt
