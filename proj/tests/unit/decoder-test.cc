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

#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ekrt/decoder/decoder-component.h"
#include "ekrt/decoder/decoder.h"
#include "ekrt/decoder/wfst.h"
#include "ekrt/pipeline/chain.h"
#include "oracles/chain-harness.h"
#include "oracles/dsp-oracles.h"
#include "oracles/wfst-oracle.h"

namespace ekrt {
namespace {

std::shared_ptr<const Wfst> Parse(const std::string &text) {
  std::istringstream is(text);
  return std::make_shared<const Wfst>(Wfst::Read(is, "g"));
}

DecoderConfig Exact(int nbest = 10) {
  DecoderConfig c;
  c.beam = kInfCost;
  c.max_active = 1 << 30;
  c.nbest = nbest;
  return c;
}

Matrix RandomLogliks(std::mt19937_64 &rng, std::size_t frames,
                     std::size_t pdfs) {
  return oracle::RandomMatrix(rng, frames, pdfs, -20.0, 0.0);
}

TEST_CASE("wfst text format") {
  auto g = Parse("0 1 1 1 0.5\n1\n");
  CHECK(g->num_states() == 2);
  CHECK(g->num_arcs() == 1);
  CHECK(g->start() == 0);
  CHECK(g->is_final(1));
  CHECK(g->final_weight(1) == 0.0);
  CHECK_FALSE(g->is_final(0));
  CHECK(g->arcs(0)[0] == WfstArc{1, 1, 1, 0.5});

  auto g2 = Parse("# comment\n1 0 2 0\n0 1 0 1 1.25\n0 2.5\n");
  CHECK(g2->start() == 1);
  CHECK(g2->arcs(1)[0].weight == 0.0);
  CHECK(g2->final_weight(0) == 2.5);
  CHECK_THROWS_WITH_AS(Parse("0 1 2 3 4 5\n"),
                       doctest::Contains("g:1: expected 1, 2, 4 or 5"),
                       FormatError);
  CHECK_THROWS_AS(Parse("0 1 x 1\n1\n"), FormatError);
  CHECK_THROWS_AS(Parse("0 1 1 1 nan\n1\n"), FormatError);
  CHECK_THROWS_AS(Parse(""), FormatError);
}

TEST_CASE("wfst validation") {
  CHECK_THROWS_WITH_AS(Parse("0 1 0 0 -0.5\n1 0 0 0 -0.5\n1\n"),
                       doctest::Contains("negative-cost epsilon cycle"),
                       FormatError);
  CHECK_NOTHROW(Parse("0 1 0 0 -0.5\n1 0 0 0 0.5\n1\n"));
  // An emitting negative cycle is fine: every lap consumes a frame.
  CHECK_NOTHROW(Parse("0 1 1 0 -0.5\n1 0 1 0 -0.5\n1\n"));
  CHECK_THROWS_WITH_AS(Parse("0 2 1 1\n2\n"),
                       doctest::Contains("dangling state id 1"), FormatError);
  CHECK_THROWS_WITH_AS(Parse("0 1 1 1\n1 0 1 1\n"),
                       doctest::Contains("no final state"), FormatError);
  auto g = Parse("0 1 1 1\n1\n2 2 1 1\n2\n");
  const auto warnings = g->Validate();
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("final state 2") != std::string::npos);
}

TEST_CASE("wfst round trip") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    Wfst g = oracle::RandomWfst(rng, 8, 4, 3);
    std::stringstream ss;
    g.Write(ss);
    Wfst back = Wfst::Read(ss);
    REQUIRE(back == g);
  }
  auto start_only = Parse("0 1.5\n");
  std::stringstream ss;
  start_only->Write(ss);
  CHECK(Wfst::Read(ss) == *start_only);
}

TEST_CASE("word table") {
  WordTable t({"yes", "no"});
  CHECK(t.Id("<eps>") == 0);
  CHECK(t.Id("no") == 2);
  CHECK(t.Word(1) == "yes");
  CHECK(t.Join({1, 2, 1}) == "yes no yes");
  std::stringstream ss;
  t.Write(ss);
  WordTable back = WordTable::Read(ss);
  CHECK(back.size() == 3);
  CHECK(back.Id("yes") == 1);
  auto bad = [](const std::string &s) {
    std::istringstream is(s);
    return WordTable::Read(is);
  };
  CHECK_THROWS_AS(bad("<eps> 0\na 2\n"), FormatError);
  CHECK_THROWS_AS(bad("a 0\n"), FormatError);
  CHECK_THROWS_AS(bad("<eps> 0\na 1\na 2\n"), FormatError);
  CHECK_THROWS_AS(t.Id("maybe"), FormatError);
  CHECK(FormatHypothesis({{2, 1}, 3.5, true}, t) == "3.500000\tno yes");
}

TEST_CASE("single emitting arc") {
  auto g = Parse("0 1 1 1 0.5\n1\n");
  Decoder d(g, DecoderConfig{});
  const double ll[1] = {-1.0};
  d.Advance(ll);
  auto costs = d.BestCostPerState();
  REQUIRE(costs.size() == 1);
  CHECK(costs[0].first == 1);
  CHECK(costs[0].second == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("beam pruning") {
  auto g = Parse("0 1 1 1 2.0\n0 2 1 2 3.5\n1\n2\n");
  DecoderConfig c;
  c.beam = 1.0;
  c.acoustic_scale = 0.0;
  Decoder d(g, c);
  const double ll[1] = {0.0};
  d.Advance(ll);
  auto costs = d.BestCostPerState();
  REQUIRE(costs.size() == 1);
  CHECK(costs[0] == std::pair<StateId, double>{1, 2.0});

  c.beam = 2.0;
  Decoder wide(g, c);
  wide.Advance(ll);
  CHECK(wide.BestCostPerState().size() == 2);
}

TEST_CASE("max_active caps tokens") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    auto g = std::make_shared<const Wfst>(oracle::RandomWfst(rng, 6, 3, 3));
    DecoderConfig c = Exact(3);
    c.max_active = 2;
    Decoder d(g, c);
    Matrix ll = RandomLogliks(rng, 5, 3);
    try {
      for (std::size_t f = 0; f < ll.rows(); ++f) {
        d.Advance(ll.Row(f));
        REQUIRE(d.num_active_tokens() <= 2);
      }
    } catch (const DecodeError &) {
      // The graph may simply run out of arcs.
    }
  }
}

TEST_CASE("reset and immediate finalize") {
  auto g = Parse("0 1 1 1\n1 0 1 0\n0 0.75\n");
  Decoder d(g, DecoderConfig{});
  auto before = d.BestCostPerState();
  d.Reset();
  d.Reset();
  CHECK(d.BestCostPerState() == before);
  CHECK(d.frames_decoded() == 0);
  Hypothesis p = d.PartialBest();
  CHECK(p.words.empty());
  CHECK(p.cost == 0.0);
  auto nb = d.FinalizeNbest();
  REQUIRE(nb.size() == 1);
  CHECK(nb[0].words.empty());
  CHECK(nb[0].cost == 0.75);
  CHECK(nb[0].is_final);
}

TEST_CASE("decoding after a reset repeats exactly") {
  std::mt19937_64 rng(3);
  auto g = std::make_shared<const Wfst>(oracle::RandomWfst(rng, 6, 4, 3));
  Matrix ll = RandomLogliks(rng, 5, 4);
  Decoder d(g, DecoderConfig{});
  std::vector<std::vector<Hypothesis>> runs;
  for (int r = 0; r < 3; ++r) {
    try {
      d.AdvanceBlock(ll);
      runs.push_back(d.FinalizeNbest());
    } catch (const DecodeError &) {
      d.Reset();
      runs.push_back({});
    }
  }
  CHECK(runs[0] == runs[1]);
  CHECK(runs[1] == runs[2]);
}

TEST_CASE("exhaustive path oracle on random graphs") {
  std::mt19937_64 rng(2026);
  const int trials = 200;
  int decoded = 0, beam_changes = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const Wfst graph = oracle::RandomWfst(rng, 6, 4, 3);
    auto g = std::make_shared<const Wfst>(graph);
    const std::size_t frames =
        std::uniform_int_distribution<std::size_t>(0, 5)(rng);
    const Matrix ll = RandomLogliks(rng, frames, 4);
    const double scale = 0.1;
    const int k = 5;

    const auto want_states = oracle::BruteStateCosts(graph, ll, scale);
    const auto want_seqs = oracle::BruteSequenceCosts(graph, ll, scale);

    Decoder d(g, Exact(k));
    bool died = false;
    for (std::size_t t = 0; t < frames && !died; ++t) {
      try {
        d.Advance(ll.Row(t));
      } catch (const DecodeError &) {
        died = true;
      }
    }
    if (died) {
      REQUIRE(want_states.empty());
      continue;
    }
    // Per-state Viterbi costs.
    const auto got_states = d.BestCostPerState();
    REQUIRE(got_states.size() == want_states.size());
    for (const auto &[s, c] : got_states) {
      REQUIRE(want_states.count(s) == 1);
      REQUIRE(std::abs(c - want_states.at(s)) <= 1e-9);
    }
    const auto partial = d.PartialBest();
    const auto want_partial = oracle::BrutePartialBest(graph, ll, scale);
    REQUIRE(std::abs(partial.cost - want_partial.second) <= 1e-9);

    if (want_seqs.empty()) continue;
    ++decoded;
    // N-best: the k cheapest distinct sequences with their own costs.
    std::vector<std::pair<double, std::vector<Label>>> ranked;
    for (const auto &[w, c] : want_seqs) ranked.emplace_back(c, w);
    std::sort(ranked.begin(), ranked.end());
    auto nbest = d.FinalizeNbest();
    REQUIRE(nbest.size() == std::min<std::size_t>(k, ranked.size()));
    for (std::size_t i = 0; i < nbest.size(); ++i) {
      REQUIRE(nbest[i].is_final);
      REQUIRE(std::abs(nbest[i].cost - ranked[i].first) <= 1e-9);
      REQUIRE(std::abs(nbest[i].cost - want_seqs.at(nbest[i].words)) <= 1e-9);
      if (i > 0) REQUIRE(nbest[i - 1].cost <= nbest[i].cost);
      for (std::size_t j = 0; j < i; ++j)
        REQUIRE(nbest[j].words != nbest[i].words);
    }

    // Default beam against the exhaustive 1-best.
    DecoderConfig beamed = Exact(k);
    beamed.beam = 16.0;
    Decoder b(g, beamed);
    try {
      b.AdvanceBlock(ll);
      const auto top = b.FinalizeNbest(1);
      if (top.empty() || top[0].words != nbest[0].words) ++beam_changes;
    } catch (const DecodeError &) {
      ++beam_changes;
    }
  }
  MESSAGE("decoded " << decoded << " graphs; beam 16 changed " << beam_changes);
  CHECK(decoded > 50);
  CHECK(beam_changes * 100 < decoded);
}

TEST_CASE("two parallel paths") {
  auto g = Parse(
      "0 1 1 1 0.4\n"
      "0 2 1 2 0.7\n"
      "1 3 1 0 0.6\n"
      "2 3 1 0 0.6\n"
      "3\n");
  DecoderConfig c;
  c.acoustic_scale = 0.0;
  Decoder d(g, c);
  const double ll[1] = {0.0};
  d.Advance(ll);
  d.Advance(ll);
  auto nb = d.FinalizeNbest(5);
  REQUIRE(nb.size() == 2);
  CHECK(nb[0].words == std::vector<Label>{1});
  CHECK(nb[0].cost == doctest::Approx(1.0));
  CHECK(nb[1].words == std::vector<Label>{2});
  CHECK(nb[1].cost == doctest::Approx(1.3));
  // Finalizing reset the decoder.
  CHECK(d.frames_decoded() == 0);
}

TEST_CASE("1-best equals partial best plus final weight") {
  auto g = Parse("0 1 1 1 0.2\n1 2 2 2 0.3\n2 3 1 3 0.1\n3 0.9\n");
  Decoder d(g, DecoderConfig{});
  const double ll[2] = {-1.0, -2.0};
  for (int t = 0; t < 3; ++t) d.Advance(ll);
  const Hypothesis p = d.PartialBest();
  CHECK(p.words == std::vector<Label>{1, 2, 3});
  auto nb = d.FinalizeNbest(1);
  REQUIRE(nb.size() == 1);
  CHECK(nb[0].words == p.words);
  CHECK(nb[0].cost == doctest::Approx(p.cost + 0.9).epsilon(1e-14));
}

TEST_CASE("partial best follows the oracle prefix") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const Wfst graph = oracle::RandomWfst(rng, 6, 3, 3);
    auto g = std::make_shared<const Wfst>(graph);
    const Matrix ll = RandomLogliks(rng, 5, 3);
    Decoder d(g, Exact(4));
    for (std::size_t t = 0; t < ll.rows(); ++t) {
      try {
        d.Advance(ll.Row(t));
      } catch (const DecodeError &) {
        break;
      }
      const auto want =
          oracle::BrutePartialBest(graph, ll.RowRange(0, t + 1), 0.1);
      const Hypothesis got = d.PartialBest();
      REQUIRE(std::abs(got.cost - want.second) <= 1e-9);
    }
  }
}

TEST_CASE("non-final fallback") {
  // State 1 is a dead end; state 2 is final.
  auto g = Parse("0 1 1 1 0.1\n0 2 2 2 0.5\n2\n");
  DecoderConfig c;
  c.acoustic_scale = 0.0;
  const double ll[2] = {0.0, 0.0};
  {
    Decoder d(g, c);
    d.Advance(ll);
    auto nb = d.FinalizeNbest();
    REQUIRE(nb.size() == 1);
    CHECK(nb[0].words == std::vector<Label>{2});
    CHECK(nb[0].is_final);
  }
  {
    DecoderConfig pen = c;
    pen.nonfinal_penalty = 1.0;
    Decoder d(g, pen);
    d.Advance(ll);
    auto nb = d.FinalizeNbest();
    REQUIRE(nb.size() == 2);
    CHECK(nb[0].words == std::vector<Label>{2});
    CHECK(nb[1].words == std::vector<Label>{1});
    CHECK(nb[1].cost == doctest::Approx(1.1));
    CHECK_FALSE(nb[1].is_final);
  }
  {
    auto g2 = Parse("0 1 1 1 0.1\n1 2 1 2 0.1\n2\n");
    Decoder d(g2, c);
    d.Advance(ll);
    auto nb = d.FinalizeNbest();
    REQUIRE(nb.size() == 1);
    CHECK_FALSE(nb[0].is_final);
    CHECK(nb[0].cost == doctest::Approx(0.1));
  }
}

TEST_CASE("decode failures") {
  auto g = Parse("0 1 1 1\n1\n");
  Decoder d(g, DecoderConfig{});
  const double ll[1] = {0.0};
  d.Advance(ll);
  CHECK_THROWS_AS(d.Advance(ll), DecodeError);
  auto g3 = Parse("0 1 3 1\n1\n");
  Decoder e(g3, DecoderConfig{});
  CHECK_THROWS_AS(e.Advance(ll), DimensionError);
  DecoderConfig bad;
  bad.beam = 0;
  CHECK_THROWS_AS(Decoder(g, bad), ConfigError);
}

std::vector<Packet> LoglikPackets(const Matrix &ll,
                                  std::vector<std::size_t> cuts,
                                  std::vector<std::size_t> endpoints) {
  std::vector<Packet> out;
  cuts.push_back(ll.rows());
  std::size_t b = 0;
  for (std::size_t e : cuts) {
    Packet p;
    if (e > b) p.payload = LoglikBlock{ll.RowRange(b, e), static_cast<std::int64_t>(b)};
    p.flags.endpoint =
        std::find(endpoints.begin(), endpoints.end(), e) != endpoints.end();
    if (p.is_empty() && !p.flags.endpoint) p.flags.endpoint = true;
    out.push_back(std::move(p));
    b = e;
  }
  out.back().flags.eos = true;
  return out;
}

// Looping word graph: pdf 1 is silence on state 0, words w1..w3 emit
// pdf w+1 on their own state.
std::shared_ptr<const Wfst> LoopGraph() {
  return Parse(
      "0 0 1 0 0\n"
      "0 1 2 1 0\n1 1 2 0 0\n1 0 0 0 0\n"
      "0 2 3 2 0\n2 2 3 0 0\n2 0 0 0 0\n"
      "0 3 4 3 0\n3 3 4 0 0\n3 0 0 0 0\n"
      "0\n");
}

TEST_CASE("endpoint segmentation equals independent decodes") {
  std::mt19937_64 rng(88);
  auto g = LoopGraph();
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix ll = RandomLogliks(rng, 40, 4);
    const std::size_t e =
        std::uniform_int_distribution<std::size_t>(5, 35)(rng);
    DecoderComponentConfig cfg;
    Chain chain;
    chain.Add(std::make_unique<DecoderComponent>(g, cfg));
    auto out = oracle::RunThrough(chain, LoglikPackets(ll, {3, e, e + 2}, {e}));
    std::vector<std::vector<Hypothesis>> finals;
    for (const Packet &p : out)
      if (const auto *h = std::get_if<HypothesisSet>(&p.payload))
        finals.push_back(h->hyps);
    REQUIRE(finals.size() == 2);
    Decoder d(g, cfg.decoder);
    d.AdvanceBlock(ll.RowRange(0, e));
    CHECK(finals[0] == d.FinalizeNbest());
    Decoder d2(g, cfg.decoder);
    d2.AdvanceBlock(ll.RowRange(e, 40));
    CHECK(finals[1] == d2.FinalizeNbest());
  }
}

TEST_CASE("decoder component flags and partials") {
  auto g = LoopGraph();
  std::mt19937_64 rng(5);
  const Matrix ll = RandomLogliks(rng, 12, 4);
  DecoderComponentConfig cfg;
  cfg.emit_partials = true;
  Chain chain;
  chain.Add(std::make_unique<DecoderComponent>(g, cfg));
  std::vector<Packet> in = LoglikPackets(ll, {4, 8}, {8});
  Packet extra;
  extra.flags.endpoint = true;
  in.insert(in.begin() + 2, extra);  // endpoint right after another one
  auto out = oracle::RunThrough(chain, std::move(in));
  // partial, final(endpoint), empty(endpoint), final(eos)
  REQUIRE(out.size() == 4);
  CHECK_FALSE(out[0].flags.any());
  CHECK_FALSE(std::get<HypothesisSet>(out[0].payload).hyps[0].is_final);
  CHECK(out[1].flags.endpoint);
  CHECK(std::get<HypothesisSet>(out[1].payload).hyps[0].is_final);
  CHECK(out[2].is_empty());
  CHECK(out[2].flags.endpoint);
  CHECK(out[3].flags.eos);
  CHECK(std::holds_alternative<HypothesisSet>(out[3].payload));
}

}  // namespace
}  // namespace ekrt
