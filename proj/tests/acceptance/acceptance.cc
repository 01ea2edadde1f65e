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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>

#include "ekrt/decoder/decoder-component.h"
#include "ekrt/decoder/decoder.h"
#include "ekrt/feat/feature-components.h"
#include "ekrt/feat/spectrum.h"
#include "ekrt/scoring/external-scorer.h"
#include "ekrt/tools/chain-builder.h"
#include "ekrt/tools/session.h"
#include "ekrt/tools/toy-model.h"
#include "ekrt/transport/packet-link.h"
#include "ekrt/vad/vad-component.h"
#include "oracles/chain-harness.h"
#include "oracles/dsp-oracles.h"
#include "oracles/gmm-oracle.h"
#include "oracles/packet-gen.h"
#include "oracles/vad-oracle.h"
#include "oracles/wfst-oracle.h"

namespace ekrt {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string Fmt(const char *format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char *format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &tag)
      : path(fs::temp_directory_path() /
             ("ekrt-accept-" + tag + "-" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<Packet> ChunkAudio(std::mt19937_64 &rng,
                               const std::vector<std::int16_t> &pcm) {
  std::uniform_int_distribution<std::size_t> len(1, 4000);
  std::vector<Packet> out;
  for (std::size_t b = 0; b < pcm.size();) {
    const std::size_t e = std::min(pcm.size(), b + len(rng));
    Packet p;
    p.payload = AudioChunk{{pcm.begin() + b, pcm.begin() + e}, 16000};
    out.push_back(std::move(p));
    b = e;
  }
  Packet last;
  last.flags.eos = true;
  out.push_back(std::move(last));
  return out;
}

// Criterion 1.
Outcome StreamingFeatures() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  std::normal_distribution<double> noise(0.0, 2000.0);
  std::uniform_int_distribution<std::size_t> samples(400, 40000);
  std::uniform_int_distribution<int> window(20, 600), ctx(1, 4);
  double worst = 0.0;
  std::size_t frames = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int16_t> pcm(samples(rng));
    const double f = std::uniform_real_distribution<double>(0.01, 0.3)(rng);
    for (std::size_t i = 0; i < pcm.size(); ++i)
      pcm[i] = static_cast<std::int16_t>(std::clamp(
          noise(rng) + 6000 * std::sin(f * i), -32768.0, 32767.0));
    const CmvnConfig cmvn{.window = window(rng),
                          .normalize_variance = trial % 2 == 1};
    const DeltaConfig delta{.order = 2, .half_window = 2};
    const int c = ctx(rng);
    const SpliceConfig splice{c, c};
    const FrameFeatureExtractor mfcc(FeatureType::kMfcc, FrameConfig{},
                                     MelConfig{});
    auto post = std::make_unique<ProcessorPipeline>();
    post->Add(std::make_unique<OnlineSlidingCmvn>(cmvn));
    post->Add(std::make_unique<OnlineDelta>(delta));
    post->Add(std::make_unique<OnlineSplice>(splice));
    Chain chain;
    chain.Add(std::make_unique<FrameCutterComponent>(FrameConfig{}));
    chain.Add(std::make_unique<FeatureComponent>(mfcc, std::move(post)));
    Matrix got;
    for (const Packet &p : oracle::RunThrough(chain, ChunkAudio(rng, pcm)))
      if (const auto *fm = std::get_if<FeatureMatrix>(&p.payload))
        got.AppendRows(fm->data);

    const FrameBlock block{CutFrames(PcmToUnit(pcm), FrameConfig{}), 0};
    const Matrix want = Splice(
        ComputeDeltas(SlidingCmvn(mfcc.Compute(block).data, cmvn), delta),
        splice);
    if (got.rows() != want.rows() || got.cols() != want.cols())
      return {false, Fmt("trial %d: %zux%zu streamed vs %zux%zu offline", trial,
                         got.rows(), got.cols(), want.rows(), want.cols())};
    worst = std::max(worst, MaxAbsDiff(got, want));
    frames += got.rows();
  }
  const double secs = Since(t0);
  return {worst <= 1e-10 && secs < 30.0,
          Fmt("50 signals, %zu frames, max |diff| %.2e (<= 1e-10), %.1f s "
              "(< 30 s)",
              frames, worst, secs)};
}

// Criterion 2.
Outcome DftOracle() {
  std::mt19937_64 rng(202);
  const int n_fft = 512;
  PowerSpectrum power(n_fft);
  double worst_bin = 0.0, worst_parseval = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t len =
        std::uniform_int_distribution<std::size_t>(1, n_fft)(rng);
    const auto frame = oracle::RandomVector(rng, len);
    const auto got = power.Compute(frame);
    const auto want = oracle::NaiveDftPower(frame, n_fft);
    double peak = 0.0;
    for (double v : want) peak = std::max(peak, v);
    for (std::size_t k = 0; k < want.size(); ++k) {
      // Relative to the bin, floored far below any bin of interest.
      const double denom = std::max(want[k], 1e-6 * peak);
      worst_bin = std::max(worst_bin, std::abs(got[k] - want[k]) / denom);
    }
    double time_energy = 0.0;
    for (double x : frame) time_energy += x * x;
    const double freq_energy =
        oracle::FullSpectrumEnergy(got, n_fft) / n_fft;
    worst_parseval = std::max(
        worst_parseval, std::abs(freq_energy - time_energy) / time_energy);
  }
  return {worst_bin <= 1e-9 && worst_parseval <= 1e-9,
          Fmt("100 frames, max relative bin error %.2e, Parseval error %.2e "
              "(both <= 1e-9)",
              worst_bin, worst_parseval)};
}

// Criterion 3.
Outcome DecoderOracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(303);
  DecoderConfig exact;
  exact.beam = kInfCost;
  exact.max_active = 1 << 30;
  exact.nbest = 5;
  const double scale = exact.acoustic_scale;
  int graphs = 0, with_paths = 0, mismatches = 0, tie_orders = 0;
  double worst = 0.0;
  std::string first_bad;
  for (int trial = 0; trial < 200; ++trial) {
    const Wfst g = oracle::RandomWfst(rng, 6, 4, 3);
    const std::size_t frames =
        std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const Matrix ll = oracle::RandomMatrix(rng, frames, 4, -20.0, 0.0);
    const auto want = oracle::BruteSequenceCosts(g, ll, scale);
    std::vector<std::pair<double, std::vector<Label>>> ranked;
    for (const auto &[w, c] : want) ranked.emplace_back(c, w);
    std::sort(ranked.begin(), ranked.end());
    if (ranked.size() > 5) ranked.resize(5);
    ++graphs;

    std::vector<Hypothesis> got;
    Decoder d(std::make_shared<const Wfst>(g), exact);
    try {
      d.AdvanceBlock(ll);
      got = d.FinalizeNbest(5);
      // Without a final token the decoder falls back to non-final paths,
      // which the oracle does not count.
      if (!got.empty() && !got.front().is_final) got.clear();
    } catch (const DecodeError &) {
      got.clear();
    }
    // Rank-wise costs must agree, and every returned sequence must be a
    // distinct complete sequence at its exhaustive cost. Sequences may
    // differ from the oracle's only inside a group of tied costs.
    bool ok = got.size() == ranked.size();
    for (std::size_t i = 0; ok && i < got.size(); ++i) {
      const double diff = std::abs(got[i].cost - ranked[i].first);
      worst = std::max(worst, diff);
      auto it = want.find(got[i].words);
      ok = diff <= 1e-9 && it != want.end() &&
           std::abs(it->second - got[i].cost) <= 1e-9;
      for (std::size_t j = 0; ok && j < i; ++j)
        ok = got[j].words != got[i].words;
      if (ok && got[i].words != ranked[i].second) ++tie_orders;
    }
    with_paths += !ranked.empty();
    if (!ok) {
      ++mismatches;
      if (first_bad.empty()) first_bad = Fmt(", first mismatch trial %d", trial);
    }
  }
  const double secs = Since(t0);
  return {mismatches == 0 && secs < 60.0,
          Fmt("%d graphs (%d with complete paths), %d mismatches, max 1-best "
              "and 5-best cost diff %.2e (<= 1e-9), %d entries ordered "
              "differently within tied costs, %.1f s (< 60 s)%s",
              graphs, with_paths, mismatches, worst, tie_orders, secs,
              first_bad.c_str())};
}

// Criterion 4: the streaming filter and the framed component both against
// the whole-sequence reference.
Outcome VadRules() {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> keep(0, 40), extra(1, 40), run(1, 90),
      chunk(1, 50);
  int mismatches = 0;
  std::size_t endpoints = 0, dropped = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    VadConfig c;
    if (trial % 4 != 0) {  // every fourth trial keeps the defaults
      c.keep_silence = keep(rng);
      c.endpoint_silence = c.keep_silence + extra(rng);
      c.hangover = std::min(c.hangover, c.keep_silence);
    }
    std::vector<VadLabel> labels;
    const int n_runs = std::uniform_int_distribution<int>(0, 12)(rng);
    VadLabel l = rng() % 2 ? VadLabel::kSpeech : VadLabel::kSilence;
    for (int r = 0; r < n_runs; ++r) {
      labels.insert(labels.end(), run(rng), l);
      l = l == VadLabel::kSpeech ? VadLabel::kSilence : VadLabel::kSpeech;
    }
    const auto want = oracle::VadReference(labels, c.keep_silence,
                                           c.endpoint_silence);
    endpoints += want.endpoints.size();
    dropped += want.dropped.size();

    SilenceFilter filter(c);
    oracle::VadReferenceResult got;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const FilterDecision d = filter.Push(labels[i]);
      (d.forward ? got.forwarded : got.dropped).push_back(i);
      if (d.endpoint) got.endpoints.push_back(got.forwarded.size());
    }
    bool ok = got.forwarded == want.forwarded && got.dropped == want.dropped &&
              got.endpoints == want.endpoints;

    // Component: the detector reads column 0, column 1 carries the index.
    Chain chain;
    chain.Add(std::make_unique<VadComponent>(
        c, std::make_unique<CallbackDetector>([](std::span<const double> f) {
          return f[0] > 0.5 ? VadLabel::kSpeech : VadLabel::kSilence;
        })));
    std::vector<Packet> in;
    for (std::size_t b = 0; b < labels.size();) {
      const std::size_t e = std::min(labels.size(), b + chunk(rng));
      Matrix m;
      for (std::size_t i = b; i < e; ++i) {
        const double row[2] = {labels[i] == VadLabel::kSpeech ? 1.0 : 0.0,
                               static_cast<double>(i)};
        m.AppendRow(row);
      }
      Packet p;
      p.payload = FrameBlock{m, static_cast<std::int64_t>(b)};
      in.push_back(std::move(p));
      b = e;
    }
    std::vector<std::size_t> forwarded, at_endpoint;
    for (const Packet &p : oracle::RunThrough(chain, std::move(in))) {
      if (const auto *f = std::get_if<FrameBlock>(&p.payload))
        for (std::size_t r = 0; r < f->frames.rows(); ++r)
          forwarded.push_back(static_cast<std::size_t>(f->frames(r, 1)));
      if (p.flags.endpoint) at_endpoint.push_back(forwarded.size());
    }
    ok = ok && forwarded == want.forwarded && at_endpoint == want.endpoints;
    mismatches += !ok;
  }
  return {mismatches == 0,
          Fmt("1000 sequences, %d mismatches (forwarded, dropped, endpoint "
              "positions); reference totals %zu dropped, %zu endpoints",
              mismatches, dropped, endpoints)};
}

// Criterion 5.
Outcome TransportSoak() {
  // Golden header: Empty payload with the endpoint flag, wire seq 7.
  Packet ep;
  ep.flags.endpoint = true;
  const Bytes golden = {'E', 'K', 'R', 'T', 0x01, 0x00, 0x01, 0x00, 0x07, 0x00,
                        0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
                        0x00};
  bool golden_ok = EncodeMessage(ep, 7) == golden;
  // Audio {1, -2} at 16 kHz with eos, seq 0x01020304; the CRC-32 of the
  // 12 payload bytes is 0x3CAA8A33.
  Packet audio;
  audio.payload = AudioChunk{{1, -2}, 16000};
  audio.flags.eos = true;
  const Bytes golden_audio = {
      'E',  'K',  'R',  'T',  0x01, 0x01, 0x02, 0x00, 0x04, 0x03, 0x02,
      0x01, 0x0C, 0x00, 0x00, 0x00, 0x33, 0x8A, 0xAA, 0x3C, 0x80, 0x3E,
      0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x01, 0x00, 0xFE, 0xFF};
  golden_ok = golden_ok && EncodeMessage(audio, 0x01020304u) == golden_audio;

  auto [a, b] = MakeMemoryStreamPair();
  auto *lossy = new LossyStream(std::move(a), 0.10, 505);
  std::unique_ptr<ByteStream> tx(lossy);
  PacketReceiver receiver(*b);
  std::vector<Packet> got;
  std::optional<std::string> rx_error;
  std::thread rx([&] {
    try {
      while (auto p = receiver.Next()) got.push_back(std::move(*p));
    } catch (const Error &e) {
      rx_error = e.what();
    }
  });
  const int n = 10000;
  std::mt19937_64 rng(55);
  std::vector<Bytes> sent;
  std::string tx_error;
  try {
    PacketSender sender(*tx, {.max_retries = 1000,
                              .ack_timeout = std::chrono::milliseconds(5000)});
    for (int i = 0; i < n; ++i) {
      Packet p = oracle::RandomPacket(rng);
      sent.push_back(EncodeMessage(p, static_cast<std::uint32_t>(i)));
      sender.Send(p);
    }
  } catch (const Error &e) {
    tx_error = e.what();
  }
  tx->CloseWrite();
  rx.join();
  int differing = 0;
  for (std::size_t i = 0; i < std::min(got.size(), sent.size()); ++i)
    differing += EncodeMessage(got[i], static_cast<std::uint32_t>(i)) != sent[i];
  const bool ok = golden_ok && !rx_error && tx_error.empty() &&
                  got.size() == sent.size() && differing == 0;
  return {ok, Fmt("golden bytes %s; %d packets, %lld corrupted (%.1f%%), "
                  "%zu delivered, %lld duplicates dropped, %d differing%s%s",
                  golden_ok ? "match" : "DIFFER", n,
                  static_cast<long long>(lossy->corrupted()),
                  100.0 * lossy->corrupted() / std::max<long long>(1, lossy->messages()),
                  got.size(), static_cast<long long>(receiver.duplicates()),
                  differing, rx_error ? (", receiver: " + *rx_error).c_str() : "",
                  tx_error.empty() ? "" : (", sender: " + tx_error).c_str())};
}

std::string Reference(const ToyModel &m) {
  std::string s;
  for (const auto &w : m.reference) s += (s.empty() ? "" : " ") + w;
  return s;
}

// Criterion 6.
Outcome ToyDecode() {
  TempDir dir("toy");
  int recovered = 0;
  std::string failures;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ToyModelConfig cfg;
    cfg.seed = seed;
    const ToyModel m = MakeToyModel(cfg);
    const fs::path d = dir.path / std::to_string(seed);
    WriteToyModel(m, d.string());
    BuiltChain b = BuildChain(ChainConfig::FromFile((d / "chain.conf").string()));
    const std::string hyp = Transcript(RunSession(b).segments, *b.words);
    if (hyp == Reference(m))
      ++recovered;
    else
      failures += Fmt(" seed %llu: '%s' vs '%s';",
                      static_cast<unsigned long long>(seed), hyp.c_str(),
                      Reference(m).c_str());
  }
  ToyModelConfig gap;
  gap.seed = 1;
  gap.gap_ms = 600;
  const ToyModel m = MakeToyModel(gap);
  const fs::path d = dir.path / "gap";
  WriteToyModel(m, d.string());
  BuiltChain b = BuildChain(ChainConfig::FromFile((d / "chain.conf").string()));
  const SessionResult r = RunSession(b);
  const bool gap_ok = b.vad->endpoints() == 1 && r.segments.size() == 2 &&
                      Transcript(r.segments, *b.words) == Reference(m);
  return {recovered == 10 && gap_ok,
          Fmt("%d/10 seeds recovered exactly; 600 ms gap: %lld endpoint(s), "
              "%zu finalized segments, transcript %s%s",
              recovered, static_cast<long long>(b.vad->endpoints()),
              r.segments.size(),
              Transcript(r.segments, *b.words) == Reference(m) ? "exact"
                                                               : "WRONG",
              failures.c_str())};
}

// Criterion 7.
Outcome RealTimeFactor() {
  TempDir dir("rtf");
  ToyModelConfig cfg;
  cfg.seed = 7;
  cfg.n_pdfs = 16;
  cfg.n_words = 12;
  cfg.seconds = 60;
  const ToyModel m = MakeToyModel(cfg);
  WriteToyModel(m, dir.path.string());
  const ChainConfig c = ChainConfig::FromFile((dir.path / "chain.conf").string());
  const RtfReport report = BenchRtf(c, {(dir.path / "test.wav").string()});
  const double rtf = report.rtf();
  return {report.audio_seconds() >= 60.0 && rtf < 1.0,
          Fmt("%.1f s of audio, %d-state graph, wall %.3f s, RTF %.4f (< 1.0; "
              "target < 0.5 %s)",
              report.audio_seconds(), m.graph.num_states(),
              report.wall_seconds(), rtf, rtf < 0.5 ? "met" : "missed")};
}

// Criterion 8.
Outcome ExternalScorerEquivalence() {
  TempDir dir("external");
  std::mt19937_64 rng(808);
  const DiagGmm gmm = oracle::RandomGmm(rng, 8, 13, 4);
  const std::string model = (dir.path / "model.txt").string();
  gmm.WriteFile(model);
  ExternalScorer ext({.command = "python3 " + std::string(EKRT_SOURCE_DIR) +
                                 "/tools/scorers/gmm_scorer.py " + model,
                      .expected_pdfs = 8,
                      .dims = 13});
  GmmScorer in(gmm);
  FeatureMatrix f{oracle::RandomMatrix(rng, 100, 13, -3.0, 3.0), 0};
  const double diff = MaxAbsDiff(ext.Score(f).data, in.Score(f).data);
  return {diff <= 1e-6,
          Fmt("100 frames x 8 pdfs, max |diff| %.2e (<= 1e-6)", diff)};
}

// Criterion 9.
Outcome MixtureDimensions() {
  const FrameFeatureExtractor mfcc(FeatureType::kMfcc, FrameConfig{},
                                   MelConfig{});
  const FrameFeatureExtractor fbank(FeatureType::kFbank, FrameConfig{},
                                    MelConfig{});
  const std::size_t statics = static_cast<std::size_t>(mfcc.dims());
  const std::size_t with_deltas = OnlineDelta(DeltaConfig{}).OutputDims(statics);
  const std::size_t lda_in = OnlineSplice(SpliceConfig{4, 4}).OutputDims(statics);
  const std::size_t mixed = with_deltas + static_cast<std::size_t>(fbank.dims()) + 40;
  const std::size_t spliced = OnlineSplice(SpliceConfig{3, 3}).OutputDims(mixed);
  bool ok = statics == 13 && with_deltas == 39 && fbank.dims() == 24 &&
            lda_in == 117 && mixed == 103 && spliced == 721;

  TempDir dir("mixture");
  const ToyModel m = MakeToyModel({});
  WriteToyModel(m, dir.path.string());
  BuiltChain b =
      BuildChain(ChainConfig::FromFile((dir.path / "mixture.conf").string()));
  std::size_t rows = 0, bad = 0;
  for (const Packet &p : RunSession(b).packets)
    if (const auto *fm = std::get_if<FeatureMatrix>(&p.payload)) {
      rows += fm->frames();
      bad += fm->dims() != 721;
    }
  ok = ok && rows > 0 && bad == 0;
  return {ok, Fmt("%zu -> %zu (deltas), %zu + %d + 40 = %zu, %zu x 7 = %zu; "
                  "mixture chain emitted %zu frames, %zu packets not 721-dim",
                  statics, with_deltas, with_deltas, fbank.dims(), mixed, mixed,
                  spliced, rows, bad)};
}

}  // namespace
}  // namespace ekrt

int main() {
  using ekrt::Outcome;
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria =
      {{"streaming/offline feature equivalence", ekrt::StreamingFeatures},
       {"power spectrum against naive DFT", ekrt::DftOracle},
       {"decoder against exhaustive paths", ekrt::DecoderOracle},
       {"VAD filter against reference", ekrt::VadRules},
       {"transport soak and golden bytes", ekrt::TransportSoak},
       {"end-to-end toy decode", ekrt::ToyDecode},
       {"real-time factor", ekrt::RealTimeFactor},
       {"external scorer equivalence", ekrt::ExternalScorerEquivalence},
       {"feature mixture dimensions", ekrt::MixtureDimensions}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
