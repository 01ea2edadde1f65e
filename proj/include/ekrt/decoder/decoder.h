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

// include/ekrt/decoder/decoder.h

#ifndef EKRT_DECODER_DECODER_H_
#define EKRT_DECODER_DECODER_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ekrt/base/error.h"
#include "ekrt/base/matrix.h"
#include "ekrt/decoder/wfst.h"
#include "ekrt/pipeline/packet.h"

namespace ekrt {

class DecodeError : public Error {
 public:
  using Error::Error;
};

struct DecoderConfig {
  double beam = 16.0;
  int max_active = 7000;  // token cap per frame
  double acoustic_scale = 0.1;
  int nbest = 10;  // also the number of word histories kept per state
  // Added to tokens that end in a non-final state. When infinite they are
  // reported only if no final token survives, at their unpenalized cost.
  double nonfinal_penalty = kInfCost;
  void Validate() const;
};

// Interned word sequences. Id 0 is the empty sequence; each id names a
// (parent, word) extension, so equal ids mean equal sequences.
class HistoryTrie {
 public:
  HistoryTrie() { Clear(); }
  void Clear();
  std::int32_t Extend(std::int32_t parent, Label word);
  std::vector<Label> Words(std::int32_t id) const;
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    std::int32_t parent;
    Label word;
  };
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::int32_t> index_;
};

// Frame-synchronous token passing. Each state keeps up to nbest tokens
// with distinct word histories, cheapest first; the first one is the
// state's Viterbi token.
class Decoder {
 public:
  Decoder(std::shared_ptr<const Wfst> graph, const DecoderConfig &config);

  // One token at the start state with cost 0, epsilon-closed.
  void Reset();

  // Consumes one frame of log-likelihoods, indexed by ilabel - 1.
  void Advance(std::span<const double> loglik);
  void AdvanceBlock(const Matrix &logliks);

  // Cheapest active token, final weights ignored. Non-destructive.
  Hypothesis PartialBest() const;

  // Up to k distinct word sequences by ascending cost, then Reset().
  // k <= 0 uses config.nbest, and k is capped at it.
  std::vector<Hypothesis> FinalizeNbest(int k = 0);

  int frames_decoded() const { return frames_; }
  std::size_t num_active_tokens() const;
  // (state, cost of its best token) for every active state, by state id.
  std::vector<std::pair<StateId, double>> BestCostPerState() const;
  const DecoderConfig &config() const { return config_; }

 private:
  struct Token {
    double cost;
    std::int32_t history;
  };
  using TokenList = std::vector<Token>;  // ascending cost, distinct history

  bool Insert(TokenList &list, Token tok) const;
  void EpsilonClosure(std::vector<TokenList> &tokens,
                      std::vector<StateId> &active);
  void Prune();

  std::shared_ptr<const Wfst> graph_;
  DecoderConfig config_;
  Label max_ilabel_;
  HistoryTrie trie_;
  std::vector<TokenList> cur_, next_;
  std::vector<StateId> cur_active_, next_active_;  // ascending after sort
  std::vector<std::uint8_t> queued_;
  int frames_ = 0;
};

// "cost<TAB>word word ..." as printed by the command-line tools.
std::string FormatHypothesis(const Hypothesis &hyp, const WordTable &words);

}  // namespace ekrt

#endif  // EKRT_DECODER_DECODER_H_
