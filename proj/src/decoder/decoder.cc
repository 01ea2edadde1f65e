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

#include "ekrt/decoder/decoder.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>

namespace ekrt {

void DecoderConfig::Validate() const {
  if (!(beam > 0)) throw ConfigError("decoder: beam must be > 0");
  if (max_active < 1) throw ConfigError("decoder: max_active must be >= 1");
  if (nbest < 1) throw ConfigError("decoder: nbest must be >= 1");
  if (!std::isfinite(acoustic_scale) || acoustic_scale < 0)
    throw ConfigError("decoder: acoustic_scale must be finite and >= 0");
  if (std::isnan(nonfinal_penalty) || nonfinal_penalty < 0)
    throw ConfigError("decoder: nonfinal_penalty must be >= 0");
}

void HistoryTrie::Clear() {
  nodes_.assign(1, Node{-1, 0});
  index_.clear();
}

std::int32_t HistoryTrie::Extend(std::int32_t parent, Label word) {
  if (word == 0) return parent;
  const std::uint64_t key = (static_cast<std::uint64_t>(parent) << 32) |
                            static_cast<std::uint32_t>(word);
  auto [it, inserted] =
      index_.emplace(key, static_cast<std::int32_t>(nodes_.size()));
  if (inserted) nodes_.push_back(Node{parent, word});
  return it->second;
}

std::vector<Label> HistoryTrie::Words(std::int32_t id) const {
  std::vector<Label> out;
  for (; id > 0; id = nodes_[id].parent) out.push_back(nodes_[id].word);
  std::reverse(out.begin(), out.end());
  return out;
}

Decoder::Decoder(std::shared_ptr<const Wfst> graph,
                 const DecoderConfig &config)
    : graph_(std::move(graph)), config_(config) {
  if (!graph_) throw ConfigError("decoder: no graph");
  config_.Validate();
  graph_->Validate();
  max_ilabel_ = graph_->max_ilabel();
  cur_.assign(graph_->num_states(), {});
  next_.assign(graph_->num_states(), {});
  queued_.assign(graph_->num_states(), 0);
  Reset();
}

bool Decoder::Insert(TokenList &list, Token tok) const {
  // Same history: keep the cheaper copy.
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].history != tok.history) continue;
    if (!(tok.cost < list[i].cost)) return false;
    list[i].cost = tok.cost;
    for (; i > 0 && list[i].cost < list[i - 1].cost; --i)
      std::swap(list[i], list[i - 1]);
    return true;
  }
  const std::size_t cap = static_cast<std::size_t>(config_.nbest);
  if (list.size() == cap) {
    if (!(tok.cost < list.back().cost)) return false;
    list.back() = tok;
  } else {
    list.push_back(tok);
  }
  for (std::size_t i = list.size() - 1;
       i > 0 && list[i].cost < list[i - 1].cost; --i)
    std::swap(list[i], list[i - 1]);
  return true;
}

void Decoder::EpsilonClosure(std::vector<TokenList> &tokens,
                             std::vector<StateId> &active) {
  std::deque<StateId> work(active.begin(), active.end());
  for (StateId s : active) queued_[s] = 1;
  while (!work.empty()) {
    const StateId s = work.front();
    work.pop_front();
    queued_[s] = 0;
    const TokenList src = tokens[s];
    for (const WfstArc &arc : graph_->arcs(s)) {
      if (arc.ilabel != 0) continue;
      TokenList &dst = tokens[arc.dst];
      const bool was_empty = dst.empty();
      bool changed = false;
      for (const Token &t : src)
        changed |= Insert(dst, {t.cost + arc.weight,
                                trie_.Extend(t.history, arc.olabel)});
      if (was_empty && !dst.empty()) active.push_back(arc.dst);
      if (changed && !queued_[arc.dst]) {
        queued_[arc.dst] = 1;
        work.push_back(arc.dst);
      }
    }
  }
  std::sort(active.begin(), active.end());
}

void Decoder::Prune() {
  double best = kInfCost;
  std::size_t count = 0;
  for (StateId s : cur_active_) {
    best = std::min(best, cur_[s].front().cost);
    count += cur_[s].size();
  }
  const double cutoff = best + config_.beam;
  double cap_cost = kInfCost;
  if (count > static_cast<std::size_t>(config_.max_active)) {
    std::vector<double> costs;
    costs.reserve(count);
    for (StateId s : cur_active_)
      for (const Token &t : cur_[s]) costs.push_back(t.cost);
    std::nth_element(costs.begin(), costs.begin() + (config_.max_active - 1),
                     costs.end());
    cap_cost = costs[config_.max_active - 1];
  }
  // Tokens tied with the cap cost are admitted in state order.
  std::size_t ties_left = count;
  if (cap_cost != kInfCost) {
    std::size_t below = 0;
    for (StateId s : cur_active_)
      for (const Token &t : cur_[s]) below += t.cost < cap_cost;
    ties_left = static_cast<std::size_t>(config_.max_active) - below;
  }
  std::vector<StateId> survivors;
  for (StateId s : cur_active_) {
    TokenList &list = cur_[s];
    std::size_t n = 0;
    for (const Token &t : list) {
      if (t.cost > cutoff || t.cost > cap_cost) break;
      if (t.cost == cap_cost) {
        if (ties_left == 0) break;
        --ties_left;
      }
      ++n;
    }
    list.resize(n);
    if (n > 0) survivors.push_back(s);
  }
  cur_active_.swap(survivors);
}

void Decoder::Reset() {
  for (StateId s : cur_active_) cur_[s].clear();
  cur_active_.clear();
  trie_.Clear();
  frames_ = 0;
  const StateId start = graph_->start();
  cur_[start].push_back({0.0, 0});
  cur_active_.push_back(start);
  EpsilonClosure(cur_, cur_active_);
  Prune();
}

void Decoder::Advance(std::span<const double> loglik) {
  if (static_cast<Label>(loglik.size()) < max_ilabel_)
    throw DimensionError("decoder: loglik row has " +
                         std::to_string(loglik.size()) +
                         " entries, graph needs " +
                         std::to_string(max_ilabel_));
  if (cur_active_.empty())
    throw DecodeError("decoder: no active tokens at frame " +
                      std::to_string(frames_));
  const double scale = config_.acoustic_scale;
  for (StateId s : cur_active_) {
    const TokenList &list = cur_[s];
    for (const WfstArc &arc : graph_->arcs(s)) {
      if (arc.ilabel == 0) continue;
      const double ac = arc.weight - scale * loglik[arc.ilabel - 1];
      TokenList &dst = next_[arc.dst];
      const bool was_empty = dst.empty();
      const std::int32_t word = arc.olabel;
      for (const Token &t : list)
        Insert(dst, {t.cost + ac, trie_.Extend(t.history, word)});
      if (was_empty && !dst.empty()) next_active_.push_back(arc.dst);
    }
  }
  for (StateId s : cur_active_) cur_[s].clear();
  cur_active_.clear();
  std::swap(cur_, next_);
  std::swap(cur_active_, next_active_);
  EpsilonClosure(cur_, cur_active_);
  Prune();
  ++frames_;
  if (cur_active_.empty())
    throw DecodeError("decoder: every token was pruned at frame " +
                      std::to_string(frames_ - 1));
}

void Decoder::AdvanceBlock(const Matrix &logliks) {
  for (std::size_t t = 0; t < logliks.rows(); ++t) Advance(logliks.Row(t));
}

std::size_t Decoder::num_active_tokens() const {
  std::size_t n = 0;
  for (StateId s : cur_active_) n += cur_[s].size();
  return n;
}

std::vector<std::pair<StateId, double>> Decoder::BestCostPerState() const {
  std::vector<std::pair<StateId, double>> out;
  for (StateId s : cur_active_) out.emplace_back(s, cur_[s].front().cost);
  return out;
}

Hypothesis Decoder::PartialBest() const {
  if (cur_active_.empty()) throw DecodeError("decoder: no active tokens");
  const Token *best = nullptr;
  for (StateId s : cur_active_)
    if (!best || cur_[s].front().cost < best->cost) best = &cur_[s].front();
  Hypothesis h;
  h.words = trie_.Words(best->history);
  h.cost = best->cost;
  h.is_final = false;
  return h;
}

std::vector<Hypothesis> Decoder::FinalizeNbest(int k) {
  if (k <= 0 || k > config_.nbest) k = config_.nbest;
  if (cur_active_.empty()) throw DecodeError("decoder: no tokens to finalize");

  struct Entry {
    double cost;
    bool is_final;
  };
  std::map<std::int32_t, Entry> by_history;
  auto offer = [&](std::int32_t h, double cost, bool is_final) {
    auto [it, inserted] = by_history.emplace(h, Entry{cost, is_final});
    if (!inserted && cost < it->second.cost) it->second = {cost, is_final};
  };
  bool any_final = false;
  for (StateId s : cur_active_)
    if (graph_->is_final(s)) {
      any_final = true;
      for (const Token &t : cur_[s])
        offer(t.history, t.cost + graph_->final_weight(s), true);
    }
  const bool penalty_finite = std::isfinite(config_.nonfinal_penalty);
  if (penalty_finite || !any_final)
    for (StateId s : cur_active_)
      if (!graph_->is_final(s))
        for (const Token &t : cur_[s])
          offer(t.history,
                t.cost + (penalty_finite ? config_.nonfinal_penalty : 0.0),
                false);

  std::vector<Hypothesis> out;
  for (const auto &[h, e] : by_history)
    out.push_back(Hypothesis{trie_.Words(h), e.cost, e.is_final});
  std::sort(out.begin(), out.end(), [](const Hypothesis &a,
                                       const Hypothesis &b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.words < b.words;
  });
  if (out.size() > static_cast<std::size_t>(k)) out.resize(k);
  Reset();
  return out;
}

std::string FormatHypothesis(const Hypothesis &hyp, const WordTable &words) {
  char cost[64];
  std::snprintf(cost, sizeof(cost), "%.6f", hyp.cost);
  return std::string(cost) + "\t" + words.Join(hyp.words);
}

}  // namespace ekrt
