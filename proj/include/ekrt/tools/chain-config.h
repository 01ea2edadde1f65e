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

// include/ekrt/tools/chain-config.h
//
// INI-style chain description: "[section]" headers, "key = value" lines,
// and comment lines starting with '#' or ';'. Every lookup error names the
// section and key.

#ifndef EKRT_TOOLS_CHAIN_CONFIG_H_
#define EKRT_TOOLS_CHAIN_CONFIG_H_

#include <optional>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

namespace ekrt {

class ChainConfig {
 public:
  ChainConfig() = default;

  // Relative paths in the file resolve against the file's directory.
  static ChainConfig FromFile(const std::string &path);
  static ChainConfig FromString(const std::string &text,
                                const std::string &base_dir = ".",
                                const std::string &source = "<config>");

  bool Has(const std::string &section, const std::string &key) const;
  bool HasSection(const std::string &section) const;
  void Set(const std::string &section, const std::string &key,
           const std::string &value);

  std::optional<std::string> Find(const std::string &section,
                                  const std::string &key) const;
  // Throws ConfigError if the key is missing.
  std::string GetString(const std::string &section,
                        const std::string &key) const;
  std::string GetString(const std::string &section, const std::string &key,
                        const std::string &fallback) const;
  int GetInt(const std::string &section, const std::string &key,
             int fallback) const;
  double GetDouble(const std::string &section, const std::string &key,
                   double fallback) const;
  bool GetBool(const std::string &section, const std::string &key,
               bool fallback) const;
  // Required existing file, resolved against base_dir().
  std::string GetPath(const std::string &section,
                      const std::string &key) const;
  // Whitespace- or comma-separated words; empty if the key is missing.
  std::vector<std::string> GetList(const std::string &section,
                                   const std::string &key) const;

  const std::string &base_dir() const { return base_dir_; }
  const std::string &source() const { return source_; }
  bool empty() const { return tree_.empty(); }

 private:
  [[noreturn]] void Fail(const std::string &section, const std::string &key,
                         const std::string &what) const;

  boost::property_tree::ptree tree_;
  std::string base_dir_ = ".";
  std::string source_ = "<config>";
};

}  // namespace ekrt

#endif  // EKRT_TOOLS_CHAIN_CONFIG_H_
