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

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "ekrt/base/error.h"
#include "ekrt/decoder/decoder-component.h"
#include "ekrt/feat/feature-components.h"
#include "ekrt/tools/chain-builder.h"
#include "ekrt/tools/replay-source.h"
#include "ekrt/tools/session.h"
#include "ekrt/tools/toy-model.h"
#include "ekrt/vad/vad-component.h"
#include "oracles/chain-harness.h"
#include "oracles/toy-oracle.h"

namespace ekrt {
namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &tag)
      : path(fs::temp_directory_path() /
             ("ekrt-" + tag + "-" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string &f) const { return (path / f).string(); }
};

std::string Slurp(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string Reference(const ToyModel &m) {
  std::string s;
  for (const auto &w : m.reference) s += (s.empty() ? "" : " ") + w;
  return s;
}

std::string FirstLine(const std::string &text) {
  return text.substr(0, text.find('\n'));
}

WavData Sine(double seconds) {
  WavData w;
  w.samples.resize(static_cast<std::size_t>(seconds * w.sample_rate));
  for (std::size_t i = 0; i < w.samples.size(); ++i)
    w.samples[i] = static_cast<std::int16_t>(8000 * std::sin(0.05 * i));
  return w;
}

TEST_CASE("wav: round trip and unsupported encodings") {
  TempDir dir("wav");
  WavData w = Sine(0.25);
  w.samples.push_back(-32768);
  w.samples.push_back(32767);
  WriteWav(dir / "a.wav", w);
  const WavData r = ReadWav(dir / "a.wav");
  CHECK(r.sample_rate == 16000);
  CHECK(r.samples == w.samples);

  auto bytes = EncodeWav(w);
  auto stereo = bytes;
  stereo[22] = 2;  // channel count
  CHECK_THROWS_WITH_AS(ParseWav(stereo), doctest::Contains("mono"),
                       FormatError);
  auto eight_bit = bytes;
  eight_bit[34] = 8;
  CHECK_THROWS_WITH_AS(ParseWav(eight_bit), doctest::Contains("16-bit"),
                       FormatError);
  auto float_fmt = bytes;
  float_fmt[20] = 3;
  CHECK_THROWS_WITH_AS(ParseWav(float_fmt), doctest::Contains("PCM"),
                       FormatError);
  CHECK_THROWS_AS(ParseWav({'R', 'I', 'F', 'F'}), FormatError);
  bytes.resize(bytes.size() - 10);
  CHECK_THROWS_WITH_AS(ParseWav(bytes), doctest::Contains("truncated"),
                       FormatError);
}

TEST_CASE("replay: 1 s at 100 ms chunks is ten 1600-sample packets") {
  Chain chain;
  chain.Add(std::make_unique<ReplaySource>(Sine(1.0)));
  chain.Start();
  const auto out = CollectOutput(chain);
  REQUIRE(out.size() == 11);
  for (int i = 0; i < 10; ++i) {
    CHECK(out[i].kind() == PayloadKind::kAudio);
    CHECK(std::get<AudioChunk>(out[i].payload).samples.size() == 1600);
    CHECK_FALSE(out[i].flags.any());
  }
  CHECK(out[10].is_empty());
  CHECK(out[10].flags.eos);
}

TEST_CASE("replay: realtime pacing takes at least the audio duration") {
  Chain chain;
  ReplayConfig rc;
  rc.realtime = true;
  chain.Add(std::make_unique<ReplaySource>(Sine(1.0), rc));
  const auto t0 = std::chrono::steady_clock::now();
  chain.Start();
  CollectOutput(chain);
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  CHECK(wall >= 0.95);
  CHECK(wall < 3.0);
}

TEST_CASE("config: lookups, comments and errors naming section and key") {
  const auto c = ChainConfig::FromString(
      "# comment\n[chain]\ncomponents = replay, cutter vad\n"
      "; other comment\n[vad]\nkeep_silence_ms = abc\nflag = yes\n"
      "[decoder]\nbeam = inf\n",
      "/base", "test.conf");
  CHECK(c.GetList("chain", "components") ==
        std::vector<std::string>{"replay", "cutter", "vad"});
  CHECK(c.GetBool("vad", "flag", false));
  CHECK(std::isinf(c.GetDouble("decoder", "beam", 1.0)));
  CHECK(c.GetInt("vad", "missing", 7) == 7);
  CHECK_THROWS_WITH_AS(c.GetDouble("vad", "keep_silence_ms", 0),
                       doctest::Contains("[vad] keep_silence_ms"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(c.GetString("decoder", "graph"),
                       doctest::Contains("[decoder] graph: missing"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(c.GetPath("chain", "components"),
                       doctest::Contains("not found"), ConfigError);
  CHECK_THROWS_AS(ChainConfig::FromString("[a]\nx = 1\nx = 2\n"),
                  ConfigError);
}

TEST_CASE("config: relative paths resolve against the config file") {
  TempDir dir("cfg");
  fs::create_directories(dir.path / "sub");
  { std::ofstream(dir / "sub/model.txt") << "x"; }
  { std::ofstream(dir / "sub/c.conf") << "[gmm]\nmodel = model.txt\n"; }
  const auto c = ChainConfig::FromFile(dir / "sub/c.conf");
  CHECK(fs::equivalent(c.GetPath("gmm", "model"), dir / "sub/model.txt"));
}

struct Toy {
  TempDir dir;
  ToyModel model;
  explicit Toy(ToyModelConfig cfg, const std::string &tag = "toy")
      : dir(tag), model(MakeToyModel(cfg)) {
    WriteToyModel(model, dir.path.string());
  }
  ChainConfig config(const std::string &file = "chain.conf") const {
    return ChainConfig::FromFile(dir / file);
  }
};

TEST_CASE("build_chain: sample pipeline order gives six components") {
  Toy toy({});
  BuildOptions o;
  o.components = {"recorder", "cutter", "mfcc", "cmvn", "gmm", "decoder"};
  BuiltChain b = BuildChain(toy.config(), o);
  CHECK(b.chain->size() == 6);
  CHECK(b.names == std::vector<std::string>{"replay", "cutter", "mfcc",
                                            "cmvn", "gmm", "decoder"});
  CHECK(b.decoder != nullptr);
  CHECK(b.words.has_value());
}

TEST_CASE("build_chain: validation errors") {
  Toy toy({});
  const ChainConfig c = toy.config();
  BuildOptions o;
  o.components = {"replay", "cutter", "mfcc", "decoder", "gmm"};
  CHECK_THROWS_WITH_AS(BuildChain(c, o), doctest::Contains("decoder"),
                       ChainError);
  o.components = {"replay", "cutter", "wobble"};
  CHECK_THROWS_WITH_AS(BuildChain(c, o),
                       doctest::Contains("unknown component 'wobble'"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(BuildChain(ChainConfig::FromString("")),
                       doctest::Contains("empty config"), ConfigError);
  CHECK_THROWS_WITH_AS(
      BuildChain(ChainConfig::FromString("[chain]\ncomponents =\n")),
      doctest::Contains("empty component list"),
      ConfigError);

  ChainConfig bad = c;
  bad.Set("vad", "keep_silence_ms", "900");  // beyond the endpoint
  CHECK_THROWS_WITH_AS(BuildChain(bad), doctest::Contains("[vad]"),
                       ConfigError);
  bad = c;
  bad.Set("frame", "frame_shift", "0");
  CHECK_THROWS_WITH_AS(BuildChain(bad), doctest::Contains("[frame]"),
                       ConfigError);
  bad = c;
  bad.Set("gmm", "model", "nowhere.txt");
  CHECK_THROWS_WITH_AS(BuildChain(bad), doctest::Contains("[gmm] model"),
                       ConfigError);
}

TEST_CASE("toy model: transcript recovered and equal to exact Viterbi") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    ToyModelConfig cfg;
    cfg.seed = seed;
    Toy toy(cfg);
    BuiltChain b = BuildChain(toy.config());
    const SessionResult r = RunSession(b);
    REQUIRE(r.segments.size() == 1);
    CHECK(b.vad->frames_dropped() == 0);
    CHECK(Transcript(r.segments, *b.words) == Reference(toy.model));

    const Matrix ll =
        oracle::OfflineToyLogliks(toy.model.audio.samples, toy.model.gmm);
    const auto [words, cost] = oracle::ExactViterbi(toy.model.graph, ll, 0.1);
    const Hypothesis &best = r.segments[0].hyps.front();
    CHECK(best.words == words);
    CHECK(best.cost == doctest::Approx(cost).epsilon(1e-9));
    CHECK(best.is_final);
  }
}

TEST_CASE("toy model: same seed gives byte-identical artifacts") {
  ToyModelConfig cfg;
  cfg.seed = 11;
  Toy a(cfg, "toy-a"), b(cfg, "toy-b");
  for (const char *f : {"graph.txt", "words.txt", "gmm.txt", "lda.txt",
                        "test.wav", "ref.txt", "chain.conf", "mixture.conf"})
    CHECK_MESSAGE(Slurp(a.dir / f) == Slurp(b.dir / f), f);
  cfg.seed = 12;
  Toy c(cfg, "toy-c");
  CHECK(Slurp(a.dir / "test.wav") != Slurp(c.dir / "test.wav"));
}

TEST_CASE("toy model: single-word loop") {
  ToyModelConfig cfg;
  cfg.n_words = 1;
  Toy toy(cfg);
  CHECK(toy.model.graph.num_states() <= 4);
  BuiltChain b = BuildChain(toy.config());
  CHECK(Transcript(RunSession(b).segments, *b.words) == Reference(toy.model));
}

TEST_CASE("toy model: configuration limits") {
  ToyModelConfig cfg;
  cfg.n_pdfs = 1;
  CHECK_THROWS_AS(MakeToyModel(cfg), ConfigError);
  cfg.n_pdfs = 3;
  cfg.n_words = 17;
  CHECK_THROWS_AS(MakeToyModel(cfg), ConfigError);  // over 50 states
  cfg.n_words = 9;
  CHECK_THROWS_WITH_AS(MakeToyModel(cfg), doctest::Contains("distinct"),
                       ConfigError);
}

TEST_CASE("toy model: a 600 ms gap gives one endpoint and two segments") {
  ToyModelConfig cfg;
  cfg.gap_ms = 600;
  Toy toy(cfg);
  BuiltChain b = BuildChain(toy.config());
  const SessionResult r = RunSession(b);
  CHECK(b.vad->endpoints() == 1);
  CHECK(b.decoder->segments() == 2);
  REQUIRE(r.segments.size() == 2);
  CHECK(Transcript(r.segments, *b.words) == Reference(toy.model));
}

TEST_CASE("bench-rtf: empty set and repeatable transcripts") {
  Toy toy({});
  const ChainConfig c = toy.config();
  const RtfReport empty = BenchRtf(c, {});
  CHECK(empty.rows.empty());
  CHECK(empty.rtf() == 0.0);
  std::ostringstream os;
  PrintRtfReport(os, empty);
  CHECK(os.str() == "no audio\n");

  const RtfReport two = BenchRtf(c, {toy.dir / "test.wav", toy.dir / "test.wav"});
  REQUIRE(two.rows.size() == 2);
  CHECK(two.rows[0].audio_seconds == doctest::Approx(toy.model.audio.seconds()));
  CHECK(two.audio_seconds() == doctest::Approx(2 * toy.model.audio.seconds()));
  std::ostringstream table;
  PrintRtfReport(table, two);
  CHECK(table.str().find("total\t") != std::string::npos);

  BuiltChain b1 = BuildChain(c), b2 = BuildChain(c);
  const auto r1 = RunSession(b1), r2 = RunSession(b2);
  CHECK(r1.segments == r2.segments);
}

TEST_CASE("client and server halves over an in-memory link") {
  ToyModelConfig cfg;
  cfg.seed = 4;
  Toy toy(cfg);
  const ChainConfig c = toy.config();
  auto pair = std::make_shared<
      std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>>>(
      MakeMemoryStreamPair());
  BuildOptions client, server;
  client.list_key = "client";
  client.connect_factory = [pair] { return std::move(pair->first); };
  server.list_key = "server";
  server.accept_factory = [pair] { return std::move(pair->second); };
  BuiltChain sb = BuildChain(c, server);
  BuiltChain cb = BuildChain(c, client);
  CHECK(cb.names.back() == "sender");
  CHECK(sb.names.front() == "receiver");
  sb.chain->Start();
  cb.chain->Start();
  CollectOutput(*cb.chain);
  const auto out = CollectOutput(*sb.chain);
  CHECK(Transcript(FinalizedSegments(out), *sb.words) == Reference(toy.model));
}

TEST_CASE("mixture config yields 721-dim features") {
  Toy toy({});
  BuiltChain b = BuildChain(toy.config("mixture.conf"));
  const auto &mix = dynamic_cast<MixtureComponent &>(b.chain->component(2));
  CHECK(mix.dims() == 721);
  const SessionResult r = RunSession(b);
  std::size_t rows = 0;
  for (const Packet &p : r.packets) {
    if (p.kind() != PayloadKind::kFeatures) continue;
    CHECK(std::get<FeatureMatrix>(p.payload).dims() == 721);
    rows += std::get<FeatureMatrix>(p.payload).frames();
  }
  CHECK(rows == NumFrames(toy.model.audio.samples.size(), FrameConfig{}));
}

TEST_CASE("session: hypothesis printing") {
  WordTable words({"a", "b"});
  std::vector<HypothesisSet> segs(2);
  segs[0].hyps = {{{1, 2}, 1.5, true}, {{2}, 2.25, true}};
  segs[1].hyps = {{{2}, 0.5, true}};
  std::ostringstream one, two;
  PrintSegments(one, segs, words, 1);
  CHECK(one.str() == "1.500000\ta b\n0.500000\tb\n");
  PrintSegments(two, segs, words, 2);
  CHECK(two.str() == "1.500000\ta b\n2.250000\tb\n\n0.500000\tb\n");
  CHECK(Transcript(segs, words) == "a b b");
}

#ifdef EKRT_CLI
// Runs the CLI, capturing stdout and stderr.
int Cli(const std::string &args, const TempDir &dir, std::string *out,
        std::string *err) {
  const std::string o = dir / "stdout", e = dir / "stderr";
  const int status = std::system((std::string(EKRT_CLI) + " " + args + " >" +
                                  o + " 2>" + e).c_str());
  *out = Slurp(o);
  *err = Slurp(e);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_CASE("cli: exit status and one-line diagnostics") {
  TempDir dir("cli");
  std::string out, err;
  const std::string model = dir / "model";
  REQUIRE(Cli("make-toy-model --seed 5 --output " + model, dir, &out, &err) == 0);
  const std::string conf = model + "/chain.conf";

  CHECK(Cli("decode --config " + conf + " --nbest 2", dir, &out, &err) == 0);
  REQUIRE_FALSE(out.empty());
  const std::string first = FirstLine(out);
  const auto tab = first.find('\t');
  REQUIRE(tab != std::string::npos);
  CHECK(std::stod(first.substr(0, tab)) > 0);
  CHECK(first.substr(tab + 1) == FirstLine(Slurp(model + "/ref.txt")));

  CHECK(Cli("vad --config " + conf, dir, &out, &err) == 0);
  CHECK(out.find("endpoints 0") != std::string::npos);
  CHECK(Cli("featurize --config " + conf + " --output " + (dir / "f.txt"),
            dir, &out, &err) == 0);
  CHECK(FirstLine(Slurp(dir / "f.txt")).ends_with(" 13"));
  CHECK(Cli("bench-rtf --config " + conf, dir, &out, &err) == 0);
  CHECK(out == "no audio\n");

  { std::ofstream(dir / "bad.conf") << "[chain]\ncomponents = replay zap\n"; }
  CHECK(Cli("decode --config " + (dir / "bad.conf") + " --wav " + model +
                "/test.wav", dir, &out, &err) != 0);
  CHECK(err.find("unknown component 'zap'") != std::string::npos);
  CHECK(std::count(err.begin(), err.end(), '\n') == 1);

  { std::ofstream(dir / "stereo.wav", std::ios::binary) << "RIFF"; }
  CHECK(Cli("decode --config " + conf + " --wav " + (dir / "stereo.wav"), dir,
            &out, &err) != 0);
  CHECK(std::count(err.begin(), err.end(), '\n') == 1);
  CHECK(Cli("no-such-command", dir, &out, &err) != 0);
}
#endif

}  // namespace
}  // namespace ekrt
