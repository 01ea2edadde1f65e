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

// include/ekrt/decoder/wfst.h

#ifndef EKRT_DECODER_WFST_H_
#define EKRT_DECODER_WFST_H_

#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ekrt/base/error.h"

namespace ekrt {

using StateId = std::int32_t;
using Label = std::int32_t;

inline constexpr double kInfCost = std::numeric_limits<double>::infinity();

// ilabel 0 is epsilon; ilabel k >= 1 reads scorer column k - 1.
// olabel 0 is epsilon; olabel w >= 1 is a word id.
struct WfstArc {
  StateId dst = 0;
  Label ilabel = 0;
  Label olabel = 0;
  double weight = 0.0;  // tropical cost
  bool operator==(const WfstArc &) const = default;
};

// Tropical-semiring transducer.
//
// Text format, one entry per line, '#' starts a comment:
//   src dst ilabel olabel [weight]   arc
//   state [weight]                   final state
// The first entry's state is the start state.
class Wfst {
 public:
  StateId AddState();
  void SetStart(StateId s);
  void AddArc(StateId src, const WfstArc &arc);
  void SetFinal(StateId s, double weight = 0.0);

  StateId start() const { return start_; }
  StateId num_states() const { return static_cast<StateId>(arcs_.size()); }
  const std::vector<WfstArc> &arcs(StateId s) const { return arcs_.at(s); }
  double final_weight(StateId s) const { return finals_.at(s); }
  bool is_final(StateId s) const { return finals_.at(s) != kInfCost; }
  std::size_t num_arcs() const;
  Label max_ilabel() const;
  Label max_olabel() const;

  // Throws FormatError on invalid arcs, a missing start state, no
  // reachable final state or a negative-cost epsilon cycle. Returns
  // warnings such as unreachable final states.
  std::vector<std::string> Validate() const;

  static Wfst Read(std::istream &is, const std::string &source = "wfst");
  static Wfst ReadFile(const std::string &path);
  void Write(std::ostream &os) const;
  void WriteFile(const std::string &path) const;

  bool operator==(const Wfst &) const = default;

 private:
  void Check(StateId s, const char *what) const;

  StateId start_ = -1;
  std::vector<std::vector<WfstArc>> arcs_;
  std::vector<double> finals_;
};

// Word strings to dense ids; "<eps>" is 0. File format: "word id" lines.
class WordTable {
 public:
  WordTable() : words_{"<eps>"}, index_{{"<eps>", 0}} {}
  explicit WordTable(const std::vector<std::string> &words);

  Label Add(const std::string &word);
  Label Id(const std::string &word) const;  // throws if unknown
  const std::string &Word(Label id) const;
  std::size_t size() const { return words_.size(); }  // includes <eps>

  std::string Join(const std::vector<Label> &ids) const;

  static WordTable Read(std::istream &is, const std::string &source = "words");
  static WordTable ReadFile(const std::string &path);
  void Write(std::ostream &os) const;
  void WriteFile(const std::string &path) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, Label> index_;
};

}  // namespace ekrt

#endif  // EKRT_DECODER_WFST_H_
