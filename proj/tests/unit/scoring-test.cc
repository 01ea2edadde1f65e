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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ekrt/pipeline/chain.h"
#include "ekrt/scoring/acoustic-estimator.h"
#include "ekrt/scoring/external-scorer.h"
#include "ekrt/scoring/scorer.h"
#include "oracles/chain-harness.h"
#include "oracles/dsp-oracles.h"
#include "oracles/gmm-oracle.h"

namespace ekrt {
namespace {

using namespace std::chrono_literals;

const std::string kScorers = std::string(EKRT_SOURCE_DIR) + "/tools/scorers/";

FeatureMatrix RandomFeatures(std::mt19937_64 &rng, std::size_t frames,
                             std::size_t dims, std::int64_t first = 0) {
  return FeatureMatrix{oracle::RandomMatrix(rng, frames, dims, -2.0, 2.0),
                       first};
}

TEST_CASE("gaussian at its mean") {
  DiagGmm g(2, {{{1.0, {0.5, -1.0}, {1.0, 1.0}}}});
  const double x[2] = {0.5, -1.0};
  CHECK(g.LogLikelihood(0, x) ==
        doctest::Approx(-std::log(2 * std::numbers::pi)).epsilon(1e-14));
  CHECK(g.LogLikelihood(0, x) == doctest::Approx(-1.83788).epsilon(1e-5));
}

TEST_CASE("identical components collapse") {
  GaussianComponent c{0.5, {0.1, 0.2, 0.3}, {0.7, 1.1, 2.0}};
  GaussianComponent one = c;
  one.weight = 1.0;
  DiagGmm two(3, {{c, c}});
  DiagGmm single(3, {{one}});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto x = oracle::RandomVector(rng, 3, -3, 3);
    CHECK(two.LogLikelihood(0, x) ==
          doctest::Approx(single.LogLikelihood(0, x)).epsilon(1e-13));
  }
}

TEST_CASE("log-sum-exp matches direct mixture summation") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    DiagGmm g = oracle::RandomGmm(rng, 6, 4, 4);
    GmmScorer scorer(g);
    FeatureMatrix f = RandomFeatures(rng, 30, 4);
    LoglikBlock out = scorer.Score(f);
    for (std::size_t t = 0; t < f.frames(); ++t)
      for (std::size_t p = 0; p < g.num_pdfs(); ++p)
        REQUIRE(std::abs(out.data(t, p) - oracle::NaiveGmmLogLikelihood(
                                              g.pdf(p), f.data.Row(t))) <=
                1e-8);
  }
}

TEST_CASE("gmm text format") {
  std::mt19937_64 rng(9);
  DiagGmm g = oracle::RandomGmm(rng, 3, 2, 3);
  std::stringstream ss;
  g.Write(ss);
  DiagGmm back = DiagGmm::Read(ss);
  REQUIRE(back.num_pdfs() == 3);
  const double x[2] = {0.3, -0.4};
  for (std::size_t p = 0; p < 3; ++p)
    CHECK(back.LogLikelihood(p, x) == g.LogLikelihood(p, x));

  auto bad = [](const std::string &text) {
    std::istringstream is(text);
    return DiagGmm::Read(is, "m");
  };
  CHECK_THROWS_AS(bad("1 2\n1\n0.5 0 0 1 1\n"), FormatError);   // weights
  CHECK_THROWS_AS(bad("1 2\n1\n1 0 0 1 0\n"), FormatError);     // variance
  CHECK_THROWS_AS(bad("1 2\n1\n1 0 0 1\n"), FormatError);       // fields
  CHECK_THROWS_AS(bad("2 2\n1\n1 0 0 1 1\n"), FormatError);     // truncated
  CHECK_THROWS_AS(bad("1 2\n1\n1 0 0 1 1\n7\n"), FormatError);  // trailing
  CHECK_THROWS_WITH(bad("1 2\n1\n1 0 x 1 1\n"),
                    doctest::Contains("m:3: bad number 'x'"));
  CHECK_NOTHROW(bad("# comment\n1 2\n\n1\n1 0 0 1 1  # tail\n"));
}

TEST_CASE("gmm scorer rejects a dimension mismatch") {
  GmmScorer s(DiagGmm(2, {{{1.0, {0, 0}, {1, 1}}}}));
  FeatureMatrix f{Matrix(3, 5, 0.0), 0};
  CHECK_THROWS_AS(s.Score(f), DimensionError);
}

TEST_CASE("replay scorer") {
  Matrix table(100, 4);
  for (std::size_t r = 0; r < 100; ++r)
    for (std::size_t c = 0; c < 4; ++c) table(r, c) = r * 10.0 + c;
  ReplayScorer s(table);
  LoglikBlock a = s.Score({Matrix(10, 1), 0});
  CHECK(a.data == table.RowRange(0, 10));
  LoglikBlock b1 = s.Score({Matrix(5, 1), 0});
  LoglikBlock b2 = s.Score({Matrix(5, 1), 5});
  b1.data.AppendRows(b2.data);
  CHECK(b1.data == a.data);
  CHECK_THROWS_WITH_AS(s.Score({Matrix(5, 1), 98}),
                       doctest::Contains("frame 100"), ScorerError);
}

TEST_CASE("external echo scorer") {
  ExternalScorer s({.command = kScorers + "echo_scorer.py -1.5 2.25 0"});
  CHECK(s.num_pdfs() == 3);
  std::mt19937_64 rng(1);
  LoglikBlock out = s.Score(RandomFeatures(rng, 12, 5, 40));
  CHECK(out.first_frame == 40);
  REQUIRE(out.data.rows() == 12);
  for (std::size_t t = 0; t < 12; ++t) {
    CHECK(out.data(t, 0) == -1.5);
    CHECK(out.data(t, 1) == 2.25);
    CHECK(out.data(t, 2) == 0.0);
  }
}

TEST_CASE("external gmm scorer agrees with the in-process scorer") {
  std::mt19937_64 rng(21);
  DiagGmm g = oracle::RandomGmm(rng, 5, 13, 3);
  const std::string path = "scoring-test-model.txt";
  g.WriteFile(path);
  ExternalScorer ext({.command = "python3 " + kScorers + "gmm_scorer.py " +
                                 path,
                      .expected_pdfs = 5,
                      .dims = 13});
  GmmScorer in(g);
  FeatureMatrix f = RandomFeatures(rng, 100, 13);
  const double diff = MaxAbsDiff(ext.Score(f).data, in.Score(f).data);
  CHECK(diff <= 1e-6);
}

TEST_CASE("external scorer failures") {
  std::mt19937_64 rng(2);
  {
    ExternalScorer s({.command = kScorers + "echo_scorer.py 1 2 --die-after 3",
                      .timeout = 2000ms});
    const auto t0 = std::chrono::steady_clock::now();
    CHECK_THROWS_WITH_AS(s.Score(RandomFeatures(rng, 10, 2)),
                         doctest::Contains("process exited"), ScorerError);
    CHECK(std::chrono::steady_clock::now() - t0 < 2000ms);
  }
  CHECK_THROWS_WITH_AS(ExternalScorer({.command = "echo HELLO 1 3"}),
                       doctest::Contains("bad handshake"), ScorerError);
  CHECK_THROWS_WITH_AS(
      ExternalScorer({.command = "sleep 5", .timeout = 200ms}),
      doctest::Contains("no reply within 200 ms"), ScorerError);
  CHECK_THROWS_WITH_AS(
      ExternalScorer({.command = kScorers + "echo_scorer.py 1 2",
                      .expected_pdfs = 3}),
      doctest::Contains("expected 3"), ScorerError);
  {
    ExternalScorer s({.command = "printf 'EKRT-SCORER 1 2\\n1 oops\\n'; "
                                 "cat > /dev/null"});
    CHECK_THROWS_WITH_AS(s.Score(RandomFeatures(rng, 1, 2)),
                         doctest::Contains("malformed"), ScorerError);
  }
}

std::vector<Packet> FeaturePackets(const FeatureMatrix &all,
                                   std::vector<std::size_t> cuts,
                                   std::vector<std::size_t> endpoints = {}) {
  std::vector<Packet> out;
  std::size_t b = 0;
  cuts.push_back(all.frames());
  for (std::size_t e : cuts) {
    Packet p;
    p.payload = FeatureMatrix{all.data.RowRange(b, e),
                              static_cast<std::int64_t>(b)};
    for (std::size_t ep : endpoints) p.flags.endpoint |= ep == e;
    out.push_back(std::move(p));
    b = e;
  }
  out.back().flags.eos = true;
  return out;
}

Matrix RunEstimator(std::unique_ptr<Scorer> scorer, EstimatorConfig cfg,
                    std::vector<Packet> in) {
  Chain chain;
  chain.Add(std::make_unique<AcousticEstimator>(std::move(scorer), cfg));
  Matrix out;
  std::int64_t next = 0;
  for (const Packet &p : oracle::RunThrough(chain, std::move(in))) {
    if (const auto *l = std::get_if<LoglikBlock>(&p.payload)) {
      REQUIRE(l->first_frame == next);
      next += l->data.rows();
      out.AppendRows(l->data);
    }
  }
  return out;
}

TEST_CASE("batch invariance") {
  std::mt19937_64 rng(30);
  DiagGmm g = oracle::RandomGmm(rng, 7, 6, 2);
  FeatureMatrix f = RandomFeatures(rng, 90, 6);
  const Matrix one = RunEstimator(std::make_unique<GmmScorer>(g),
                                  {.batch_size = 1}, FeaturePackets(f, {40}));
  const Matrix sixteen = RunEstimator(std::make_unique<GmmScorer>(g),
                                      {.batch_size = 16},
                                      FeaturePackets(f, {13, 40, 77}));
  CHECK(one.rows() == 90);
  CHECK(one == sixteen);
}

// Weighted sum of the spliced row: every input frame in the window has a
// distinct influence.
class ProbeScorer : public Scorer {
 public:
  std::size_t num_pdfs() const override { return 1; }
  std::size_t dims() const override { return 0; }
  LoglikBlock Score(const FeatureMatrix &f) override {
    LoglikBlock out{Matrix(f.frames(), 1), f.first_frame};
    for (std::size_t t = 0; t < f.frames(); ++t) {
      double s = 0;
      for (std::size_t k = 0; k < f.dims(); ++k)
        s += (k + 1) * f.data(t, k);
      out.data(t, 0) = s;
    }
    return out;
  }
};

TEST_CASE("context window bounds each frame's dependence") {
  std::mt19937_64 rng(31);
  const int left = 3, right = 2;
  FeatureMatrix f = RandomFeatures(rng, 60, 2);
  EstimatorConfig cfg{.left_context = left, .right_context = right,
                      .batch_size = 5};
  const Matrix base = RunEstimator(std::make_unique<ProbeScorer>(), cfg,
                                   FeaturePackets(f, {17, 33}));
  REQUIRE(base.rows() == 60);
  for (int j : {0, 10, 30, 59}) {
    FeatureMatrix g = f;
    g.data(j, 0) += 1.0;
    const Matrix moved = RunEstimator(std::make_unique<ProbeScorer>(), cfg,
                                      FeaturePackets(g, {17, 33}));
    for (int t = 0; t < 60; ++t) {
      const bool inside = j >= t - left && j <= t + right;
      if (inside)
        CHECK(moved(t, 0) != base(t, 0));
      else
        CHECK(moved(t, 0) == base(t, 0));
    }
  }
}

TEST_CASE("endpoints close the context window") {
  std::mt19937_64 rng(32);
  FeatureMatrix f = RandomFeatures(rng, 40, 2);
  EstimatorConfig cfg{.left_context = 2, .right_context = 2};
  const Matrix joint = RunEstimator(std::make_unique<ProbeScorer>(), cfg,
                                    FeaturePackets(f, {25}, {25}));
  FeatureMatrix a{f.data.RowRange(0, 25), 0}, b{f.data.RowRange(25, 40), 0};
  Matrix sep = RunEstimator(std::make_unique<ProbeScorer>(), cfg,
                            FeaturePackets(a, {}));
  sep.AppendRows(RunEstimator(std::make_unique<ProbeScorer>(), cfg,
                              FeaturePackets(b, {})));
  CHECK(joint == sep);
}

TEST_CASE("a dying external scorer fails the chain") {
  auto scorer = std::make_unique<ExternalScorer>(ExternalScorerConfig{
      .command = kScorers + "echo_scorer.py 0 0 --die-after 20",
      .timeout = 2000ms});
  std::mt19937_64 rng(33);
  FeatureMatrix f = RandomFeatures(rng, 50, 3);
  Chain chain;
  chain.Add(std::make_unique<AcousticEstimator>(std::move(scorer)));
  CHECK_THROWS_WITH_AS(oracle::RunThrough(chain, FeaturePackets(f, {10, 30})),
                       doctest::Contains("external scorer"), ChainError);
}

}  // namespace
}  // namespace ekrt
