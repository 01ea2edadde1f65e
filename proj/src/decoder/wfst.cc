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

#include "ekrt/decoder/wfst.h"

#include <cmath>
#include <deque>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

namespace ekrt {

StateId Wfst::AddState() {
  arcs_.emplace_back();
  finals_.push_back(kInfCost);
  return num_states() - 1;
}

void Wfst::Check(StateId s, const char *what) const {
  if (s < 0 || s >= num_states())
    throw FormatError(std::string("wfst: ") + what + " state " +
                      std::to_string(s) + " does not exist");
}

void Wfst::SetStart(StateId s) {
  Check(s, "start");
  start_ = s;
}

void Wfst::AddArc(StateId src, const WfstArc &arc) {
  Check(src, "source");
  Check(arc.dst, "destination");
  arcs_[src].push_back(arc);
}

void Wfst::SetFinal(StateId s, double weight) {
  Check(s, "final");
  finals_[s] = weight;
}

std::size_t Wfst::num_arcs() const {
  std::size_t n = 0;
  for (const auto &a : arcs_) n += a.size();
  return n;
}

Label Wfst::max_ilabel() const {
  Label m = 0;
  for (const auto &as : arcs_)
    for (const WfstArc &a : as) m = std::max(m, a.ilabel);
  return m;
}

Label Wfst::max_olabel() const {
  Label m = 0;
  for (const auto &as : arcs_)
    for (const WfstArc &a : as) m = std::max(m, a.olabel);
  return m;
}

std::vector<std::string> Wfst::Validate() const {
  if (start_ < 0 || start_ >= num_states())
    throw FormatError("wfst: no start state");
  for (StateId s = 0; s < num_states(); ++s) {
    if (std::isnan(finals_[s]) || finals_[s] == -kInfCost)
      throw FormatError("wfst: bad final weight on state " +
                        std::to_string(s));
    for (const WfstArc &a : arcs_[s]) {
      Check(a.dst, "destination");
      if (a.ilabel < 0 || a.olabel < 0)
        throw FormatError("wfst: negative label on an arc of state " +
                          std::to_string(s));
      if (!std::isfinite(a.weight))
        throw FormatError("wfst: non-finite arc weight on state " +
                          std::to_string(s));
    }
  }

  std::vector<bool> seen(num_states(), false);
  std::deque<StateId> queue{start_};
  seen[start_] = true;
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (const WfstArc &a : arcs_[s])
      if (!seen[a.dst]) {
        seen[a.dst] = true;
        queue.push_back(a.dst);
      }
  }
  std::vector<std::string> warnings;
  bool reachable_final = false;
  for (StateId s = 0; s < num_states(); ++s) {
    if (!is_final(s)) continue;
    if (seen[s])
      reachable_final = true;
    else
      warnings.push_back("final state " + std::to_string(s) +
                         " is unreachable from the start state");
  }
  if (!reachable_final)
    throw FormatError("wfst: no final state is reachable from the start");

  // Bellman-Ford over the epsilon subgraph from a virtual source.
  std::vector<double> dist(num_states(), 0.0);
  for (StateId round = 0; round <= num_states(); ++round) {
    bool changed = false;
    for (StateId s = 0; s < num_states(); ++s)
      for (const WfstArc &a : arcs_[s])
        if (a.ilabel == 0 && dist[s] + a.weight < dist[a.dst] - 1e-12) {
          dist[a.dst] = dist[s] + a.weight;
          changed = true;
        }
    if (!changed) return warnings;
  }
  throw FormatError("wfst: negative-cost epsilon cycle");
}

namespace {

std::vector<std::string> Fields(const std::string &raw) {
  std::string line = raw.substr(0, raw.find('#'));
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

long long ParseInt(const std::string &tok, const std::string &where) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != tok.size() || tok.empty())
    throw FormatError(where + ": bad integer '" + tok + "'");
  return v;
}

double ParseCost(const std::string &tok, const std::string &where) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != tok.size() || !std::isfinite(v))
    throw FormatError(where + ": bad weight '" + tok + "'");
  return v;
}

}  // namespace

Wfst Wfst::Read(std::istream &is, const std::string &source) {
  struct Entry {
    bool is_arc;
    StateId src;
    WfstArc arc;
    double final_weight;
  };
  std::vector<Entry> entries;
  StateId max_state = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto f = Fields(line);
    if (f.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    auto state = [&](const std::string &tok) {
      const long long v = ParseInt(tok, where);
      if (v < 0 || v > std::numeric_limits<StateId>::max() / 2)
        throw FormatError(where + ": state id out of range");
      return static_cast<StateId>(v);
    };
    auto label = [&](const std::string &tok) {
      const long long v = ParseInt(tok, where);
      if (v < 0 || v > std::numeric_limits<Label>::max())
        throw FormatError(where + ": label out of range");
      return static_cast<Label>(v);
    };
    Entry e{};
    if (f.size() == 4 || f.size() == 5) {
      e.is_arc = true;
      e.src = state(f[0]);
      e.arc.dst = state(f[1]);
      e.arc.ilabel = label(f[2]);
      e.arc.olabel = label(f[3]);
      e.arc.weight = f.size() == 5 ? ParseCost(f[4], where) : 0.0;
      max_state = std::max({max_state, e.src, e.arc.dst});
    } else if (f.size() <= 2) {
      e.is_arc = false;
      e.src = state(f[0]);
      e.final_weight = f.size() == 2 ? ParseCost(f[1], where) : 0.0;
      max_state = std::max(max_state, e.src);
    } else {
      throw FormatError(where + ": expected 1, 2, 4 or 5 fields, got " +
                        std::to_string(f.size()));
    }
    entries.push_back(e);
  }
  if (entries.empty()) throw FormatError(source + ": empty wfst");

  Wfst g;
  std::vector<bool> mentioned(max_state + 1, false);
  for (StateId s = 0; s <= max_state; ++s) g.AddState();
  for (const Entry &e : entries) {
    mentioned[e.src] = true;
    if (e.is_arc) {
      mentioned[e.arc.dst] = true;
      g.AddArc(e.src, e.arc);
    } else {
      g.SetFinal(e.src, e.final_weight);
    }
  }
  for (StateId s = 0; s <= max_state; ++s)
    if (!mentioned[s])
      throw FormatError(source + ": dangling state id " + std::to_string(s) +
                        " (ids must be dense, up to " +
                        std::to_string(max_state) + ")");
  g.SetStart(entries.front().src);
  try {
    g.Validate();
  } catch (const FormatError &e) {
    throw FormatError(source + ": " + e.what());
  }
  return g;
}

Wfst Wfst::ReadFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open wfst '" + path + "'");
  return Read(is, path);
}

void Wfst::Write(std::ostream &os) const {
  if (start_ < 0) throw FormatError("wfst: cannot write without a start");
  os << std::setprecision(17);
  auto write_arcs = [&](StateId s) {
    for (const WfstArc &a : arcs_[s])
      os << s << ' ' << a.dst << ' ' << a.ilabel << ' ' << a.olabel << ' '
         << a.weight << '\n';
  };
  auto write_final = [&](StateId s) { os << s << ' ' << finals_[s] << '\n'; };
  if (arcs_[start_].empty()) {
    if (!is_final(start_))
      throw FormatError("wfst: start state has neither arcs nor a final "
                        "weight, so the text form cannot name it");
    write_final(start_);
  }
  write_arcs(start_);
  for (StateId s = 0; s < num_states(); ++s)
    if (s != start_) write_arcs(s);
  for (StateId s = 0; s < num_states(); ++s)
    if (is_final(s) && !(s == start_ && arcs_[start_].empty())) write_final(s);
}

void Wfst::WriteFile(const std::string &path) const {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write wfst '" + path + "'");
  Write(os);
}

WordTable::WordTable(const std::vector<std::string> &words) : WordTable() {
  for (const auto &w : words) Add(w);
}

Label WordTable::Add(const std::string &word) {
  if (word.empty() || word.find_first_of(" \t\n") != std::string::npos)
    throw FormatError("word table: bad word '" + word + "'");
  const auto id = static_cast<Label>(words_.size());
  if (!index_.emplace(word, id).second)
    throw FormatError("word table: duplicate word '" + word + "'");
  words_.push_back(word);
  return id;
}

Label WordTable::Id(const std::string &word) const {
  const auto it = index_.find(word);
  if (it != index_.end()) return it->second;
  throw FormatError("word table: unknown word '" + word + "'");
}

const std::string &WordTable::Word(Label id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= words_.size())
    throw FormatError("word table: unknown id " + std::to_string(id));
  return words_[id];
}

std::string WordTable::Join(const std::vector<Label> &ids) const {
  std::string out;
  for (Label id : ids) {
    if (!out.empty()) out.push_back(' ');
    out += Word(id);
  }
  return out;
}

WordTable WordTable::Read(std::istream &is, const std::string &source) {
  std::vector<std::pair<std::string, long long>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto f = Fields(line);
    if (f.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (f.size() != 2) throw FormatError(where + ": expected 'word id'");
    rows.emplace_back(f[0], ParseInt(f[1], where));
  }
  std::vector<std::string> by_id(rows.size());
  for (const auto &[word, id] : rows) {
    if (id < 0 || static_cast<std::size_t>(id) >= rows.size() ||
        !by_id[id].empty())
      throw FormatError(source + ": ids must be dense from 0 and unique ('" +
                        word + "' " + std::to_string(id) + ")");
    by_id[id] = word;
  }
  if (by_id.empty() || by_id[0] != "<eps>")
    throw FormatError(source + ": id 0 must be <eps>");
  WordTable t;
  for (std::size_t i = 1; i < by_id.size(); ++i) t.Add(by_id[i]);
  return t;
}

WordTable WordTable::ReadFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open word table '" + path + "'");
  return Read(is, path);
}

void WordTable::Write(std::ostream &os) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    os << words_[i] << ' ' << i << '\n';
}

void WordTable::WriteFile(const std::string &path) const {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write word table '" + path + "'");
  Write(os);
}

}  // namespace ekrt
