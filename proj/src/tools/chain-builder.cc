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

#include "ekrt/tools/chain-builder.h"

#include <algorithm>
#include <map>

#include "ekrt/base/error.h"
#include "ekrt/base/matrix-io.h"
#include "ekrt/decoder/decoder-component.h"
#include "ekrt/feat/feature-components.h"
#include "ekrt/scoring/acoustic-estimator.h"
#include "ekrt/scoring/external-scorer.h"
#include "ekrt/tools/replay-source.h"
#include "ekrt/vad/vad-component.h"

namespace ekrt {
namespace {

struct Entry {
  std::string type;     // canonical name
  std::string section;  // where its parameters live
};

const std::map<std::string, std::string> &Aliases() {
  static const std::map<std::string, std::string> m = {
      {"recorder", "replay"}, {"replay", "replay"},
      {"cutter", "cutter"},   {"vad", "vad"},
      {"mfcc", "mfcc"},       {"fbank", "fbank"},
      {"spectrogram", "spectrogram"},
      {"cmvn", "cmvn"},       {"delta", "delta"},
      {"splice", "splice"},   {"lda", "lda"},
      {"mixture", "mixture"}, {"gmm", "gmm"},
      {"external", "external"},
      {"replay-scorer", "replay-scorer"},
      {"decoder", "decoder"}, {"sender", "sender"},
      {"receiver", "receiver"}};
  return m;
}

// Default parameter section per canonical type.
std::string DefaultSection(const std::string &type) {
  if (type == "mfcc" || type == "fbank" || type == "spectrogram") return "mel";
  if (type == "cutter") return "frame";
  if (type == "sender" || type == "receiver") return "transport";
  return type;
}

Entry ParseEntry(const std::string &source, const std::string &key,
                 const std::string &word) {
  const auto at = word.find('@');
  const std::string name = word.substr(0, at);
  auto it = Aliases().find(name);
  if (it == Aliases().end())
    throw ConfigError(source + ": [chain] " + key + ": unknown component '" +
                      name + "'");
  Entry e{it->second, DefaultSection(it->second)};
  if (at != std::string::npos) e.section = word.substr(at + 1);
  return e;
}

// Re-raises library validation errors with the section that caused them.
template <typename F>
auto InSection(const ChainConfig &config, const std::string &section, F &&f) {
  try {
    return f();
  } catch (const Error &e) {
    const std::string what = e.what();
    if (what.find("[" + section + "]") != std::string::npos) throw;
    throw ConfigError(config.source() + ": [" + section + "] " + what);
  }
}

class Builder {
 public:
  Builder(const ChainConfig &config, const BuildOptions &options)
      : c_(config), o_(options) {}

  BuiltChain Build();

 private:
  FrameConfig Frame() const;
  MelConfig Mel(const std::string &section) const;
  FrameFeatureExtractor Extractor(const std::string &type,
                                  const std::string &section) const;
  std::unique_ptr<FeatureProcessor> Processor(const Entry &e,
                                              std::size_t in_dims) const;
  // "type[@section]+type[@section]..." processors into one pipeline.
  std::unique_ptr<FeatureProcessor> ProcessorSpec(const std::string &spec,
                                                  std::size_t &dims) const;
  std::unique_ptr<Component> Make(const Entry &e, PayloadKind upstream,
                                  BuiltChain &out);
  std::unique_ptr<Component> MakeMixture(const std::string &section);
  std::unique_ptr<Component> MakeEstimator(std::unique_ptr<Scorer> scorer,
                                           const std::string &section);
  std::string Where(const std::string &section, const std::string &key) const {
    return c_.source() + ": [" + section + "] " + key;
  }

  const ChainConfig &c_;
  const BuildOptions &o_;
  std::size_t dims_ = 0;  // feature dims so far; 0 when unknown
};

FrameConfig Builder::Frame() const {
  FrameConfig f;
  f.sample_rate = c_.GetInt("frame", "sample_rate", f.sample_rate);
  f.frame_length = c_.GetInt("frame", "frame_length", f.frame_length);
  f.frame_shift = c_.GetInt("frame", "frame_shift", f.frame_shift);
  f.preemphasis = c_.GetDouble("frame", "preemphasis", f.preemphasis);
  if (auto w = c_.Find("frame", "window"))
    f.window = InSection(c_, "frame", [&] { return ParseWindowType(*w); });
  InSection(c_, "frame", [&] { f.Validate(); });
  return f;
}

MelConfig Builder::Mel(const std::string &s) const {
  MelConfig m;
  m.n_fft = c_.GetInt(s, "n_fft", m.n_fft);
  m.n_mels = c_.GetInt(s, "n_mels", m.n_mels);
  m.fmin = c_.GetDouble(s, "fmin", m.fmin);
  m.fmax = c_.GetDouble(s, "fmax", m.fmax);
  m.n_ceps = c_.GetInt(s, "n_ceps", m.n_ceps);
  return m;
}

FrameFeatureExtractor Builder::Extractor(const std::string &type,
                                         const std::string &section) const {
  const FrameConfig frame = Frame();
  const MelConfig mel = Mel(section);
  return InSection(c_, section, [&] {
    return FrameFeatureExtractor(ParseFeatureType(type), frame, mel);
  });
}

std::unique_ptr<FeatureProcessor> Builder::Processor(
    const Entry &e, std::size_t in_dims) const {
  const std::string &s = e.section;
  return InSection(c_, s, [&]() -> std::unique_ptr<FeatureProcessor> {
    if (e.type == "cmvn") {
      CmvnConfig cfg;
      cfg.window = c_.GetInt(s, "window", cfg.window);
      cfg.normalize_variance =
          c_.GetBool(s, "normalize_variance", cfg.normalize_variance);
      cfg.Validate();
      return std::make_unique<OnlineSlidingCmvn>(cfg);
    }
    if (e.type == "delta") {
      DeltaConfig cfg;
      cfg.order = c_.GetInt(s, "order", cfg.order);
      cfg.half_window = c_.GetInt(s, "half_window", cfg.half_window);
      cfg.Validate();
      return std::make_unique<OnlineDelta>(cfg);
    }
    if (e.type == "splice") {
      SpliceConfig cfg;
      cfg.left = c_.GetInt(s, "left", cfg.left);
      cfg.right = c_.GetInt(s, "right", cfg.right);
      cfg.Validate();
      return std::make_unique<OnlineSplice>(cfg);
    }
    if (e.type == "lda") {
      const Matrix m = ReadMatrixFile(c_.GetPath(s, "matrix"));
      const std::size_t in =
          static_cast<std::size_t>(c_.GetInt(s, "in_dims", 0));
      const std::size_t d = in ? in : in_dims ? in_dims : m.cols();
      return std::make_unique<OnlineAffine>(AffineTransform::FromMatrix(m, d));
    }
    throw ConfigError("'" + e.type + "' is not a feature processor");
  });
}

std::unique_ptr<FeatureProcessor> Builder::ProcessorSpec(
    const std::string &spec, std::size_t &dims) const {
  auto chain = std::make_unique<ProcessorPipeline>();
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t plus = std::min(spec.find('+', start), spec.size());
    const std::string word = spec.substr(start, plus - start);
    const Entry e = ParseEntry(c_.source(), "mixture", word);
    auto stage = Processor(e, dims);
    if (dims) dims = stage->OutputDims(dims);
    chain->Add(std::move(stage));
    start = plus + 1;
  }
  return chain;
}

std::unique_ptr<Component> Builder::MakeMixture(const std::string &s) {
  const auto specs = c_.GetList(s, "branches");
  if (specs.empty())
    throw ConfigError(Where(s, "branches") + ": at least one branch needed");
  std::vector<MixtureBranch> branches;
  std::size_t total = 0;
  for (const std::string &spec : specs) {
    const std::size_t plus = std::min(spec.find('+'), spec.size());
    const Entry fe = ParseEntry(c_.source(), "branches", spec.substr(0, plus));
    if (fe.type != "mfcc" && fe.type != "fbank" && fe.type != "spectrogram")
      throw ConfigError(Where(s, "branches") + ": branch '" + spec +
                        "' must start with a feature type");
    MixtureBranch b{Extractor(fe.type, fe.section), nullptr};
    std::size_t d = static_cast<std::size_t>(b.extractor.dims());
    if (plus < spec.size()) b.post = ProcessorSpec(spec.substr(plus + 1), d);
    total += d;
    branches.push_back(std::move(b));
  }
  std::unique_ptr<FeatureProcessor> post;
  if (auto p = c_.Find(s, "post"); p && !p->empty())
    post = ProcessorSpec(*p, total);
  dims_ = total;
  return std::make_unique<MixtureComponent>(std::move(branches),
                                            std::move(post));
}

std::unique_ptr<Component> Builder::MakeEstimator(
    std::unique_ptr<Scorer> scorer, const std::string &s) {
  EstimatorConfig cfg;
  cfg.left_context = c_.GetInt(s, "left_context", 0);
  cfg.right_context = c_.GetInt(s, "right_context", 0);
  cfg.batch_size = static_cast<std::size_t>(c_.GetInt(s, "batch_size", 16));
  return InSection(c_, s, [&] {
    cfg.Validate();
    return std::make_unique<AcousticEstimator>(std::move(scorer), cfg);
  });
}

std::unique_ptr<Component> Builder::Make(const Entry &e, PayloadKind upstream,
                                         BuiltChain &out) {
  const std::string &t = e.type;
  const std::string &s = e.section;
  if (t == "replay") {
    std::string path;
    if (o_.wav) {
      path = *o_.wav;
    } else if (c_.Has(s, "wav")) {
      path = c_.GetPath(s, "wav");
    } else {
      throw ConfigError(Where(s, "wav") + ": no input audio (set it or pass --wav)");
    }
    ReplayConfig rc;
    rc.chunk_ms = c_.GetDouble(s, "chunk_ms", rc.chunk_ms);
    rc.realtime = o_.realtime.value_or(c_.GetBool(s, "realtime", false));
    WavData wav = ReadWav(path);
    const FrameConfig f = Frame();
    if (static_cast<int>(wav.sample_rate) != f.sample_rate)
      throw ConfigError(path + ": sample rate " +
                        std::to_string(wav.sample_rate) +
                        " does not match [frame] sample_rate " +
                        std::to_string(f.sample_rate));
    out.audio_seconds = wav.seconds();
    return InSection(c_, s, [&] {
      return std::make_unique<ReplaySource>(std::move(wav), rc);
    });
  }
  if (t == "cutter") return std::make_unique<FrameCutterComponent>(Frame());
  if (t == "vad") {
    const FrameConfig f = Frame();
    const VadConfig d;
    const double shift_ms = 1000.0 * f.frame_shift / f.sample_rate;
    auto vad = InSection(c_, s, [&] {
      const VadConfig cfg = VadConfig::FromMilliseconds(
          c_.GetDouble(s, "energy_threshold", d.energy_threshold),
          c_.GetDouble(s, "keep_silence_ms", d.keep_silence * shift_ms),
          c_.GetDouble(s, "endpoint_silence_ms", d.endpoint_silence * shift_ms),
          c_.GetDouble(s, "hangover_ms", d.hangover * shift_ms), shift_ms);
      cfg.Validate();
      return std::make_unique<VadComponent>(cfg);
    });
    out.vad = vad.get();
    return vad;
  }
  if (t == "mfcc" || t == "fbank" || t == "spectrogram") {
    FrameFeatureExtractor x = Extractor(t, s);
    dims_ = static_cast<std::size_t>(x.dims());
    return std::make_unique<FeatureComponent>(std::move(x), nullptr, t);
  }
  if (t == "cmvn" || t == "delta" || t == "splice" || t == "lda") {
    auto p = Processor(e, dims_);
    if (dims_) dims_ = p->OutputDims(dims_);
    return std::make_unique<ProcessorComponent>(std::move(p), t);
  }
  if (t == "mixture") return MakeMixture(s);
  if (t == "gmm") {
    const std::string model = c_.GetPath(s, "model");
    auto scorer = InSection(c_, s, [&] {
      return std::make_unique<GmmScorer>(DiagGmm::ReadFile(model));
    });
    return MakeEstimator(std::move(scorer), s);
  }
  if (t == "external") {
    ExternalScorerConfig cfg;
    cfg.command = c_.GetString(s, "command");
    cfg.timeout = std::chrono::milliseconds(c_.GetInt(s, "timeout_ms", 5000));
    cfg.expected_pdfs = static_cast<std::size_t>(c_.GetInt(s, "pdfs", 0));
    cfg.dims = static_cast<std::size_t>(c_.GetInt(s, "dims", 0));
    auto scorer = InSection(
        c_, s, [&] { return std::make_unique<ExternalScorer>(cfg); });
    return MakeEstimator(std::move(scorer), s);
  }
  if (t == "replay-scorer") {
    const std::string table = c_.GetPath(s, "table");
    auto scorer = InSection(c_, s, [&] {
      return std::make_unique<ReplayScorer>(ReadMatrixFile(table));
    });
    return MakeEstimator(std::move(scorer), s);
  }
  if (t == "decoder") {
    const std::string graph_path = c_.GetPath(s, "graph");
    DecoderComponentConfig cfg;
    DecoderConfig &d = cfg.decoder;
    d.beam = c_.GetDouble(s, "beam", d.beam);
    d.max_active = c_.GetInt(s, "max_active", d.max_active);
    d.acoustic_scale = c_.GetDouble(s, "acoustic_scale", d.acoustic_scale);
    d.nbest = c_.GetInt(s, "nbest", d.nbest);
    if (o_.nbest) d.nbest = std::max(d.nbest, *o_.nbest);
    d.nonfinal_penalty =
        c_.GetDouble(s, "nonfinal_penalty", d.nonfinal_penalty);
    cfg.emit_partials = c_.GetBool(s, "partials", false);
    if (c_.Has(s, "words")) {
      const std::string words = c_.GetPath(s, "words");
      out.words = InSection(c_, s, [&] { return WordTable::ReadFile(words); });
    }
    auto dec = InSection(c_, s, [&] {
      d.Validate();
      auto graph = std::make_shared<Wfst>(Wfst::ReadFile(graph_path));
      graph->Validate();
      return std::make_unique<DecoderComponent>(graph, cfg);
    });
    out.decoder = dec.get();
    return dec;
  }
  if (t == "sender") {
    if (upstream == PayloadKind::kEmpty)
      throw ConfigError(c_.source() + ": sender needs an upstream component");
    SenderConfig sc;
    sc.max_retries = c_.GetInt(s, "max_retries", sc.max_retries);
    sc.ack_timeout = std::chrono::milliseconds(
        c_.GetInt(s, "ack_timeout_ms", static_cast<int>(sc.ack_timeout.count())));
    StreamFactory factory = o_.connect_factory;
    if (!factory) {
      const std::string addr =
          o_.connect ? *o_.connect : c_.GetString(s, "connect");
      const HostPort hp =
          InSection(c_, s, [&] { return ParseHostPort(addr); });
      const std::chrono::milliseconds wait(
          c_.GetInt(s, "connect_timeout_ms", 10000));
      factory = [hp, wait]() -> std::unique_ptr<ByteStream> {
        return TcpConnect(hp, wait);
      };
    }
    return std::make_unique<SenderComponent>(upstream, std::move(factory), sc);
  }
  throw ConfigError(c_.source() + ": unknown component '" + t + "'");
}

PayloadKind ParseKind(const ChainConfig &c, const std::string &s,
                      const std::string &name) {
  static const std::map<std::string, PayloadKind> kinds = {
      {"audio", PayloadKind::kAudio},
      {"frames", PayloadKind::kFrames},
      {"features", PayloadKind::kFeatures},
      {"loglik", PayloadKind::kLoglik},
      {"hypotheses", PayloadKind::kHypotheses}};
  auto it = kinds.find(name);
  if (it == kinds.end())
    throw ConfigError(c.source() + ": [" + s + "] kind: unknown payload kind '" +
                      name + "'");
  return it->second;
}

BuiltChain Builder::Build() {
  const std::string key = o_.list_key;
  std::vector<std::string> words =
      o_.components ? *o_.components : c_.GetList("chain", key);
  if (words.empty()) {
    if (c_.empty())
      throw ConfigError(c_.source() + ": empty config");
    throw ConfigError(c_.source() + ": [chain] " + key +
                      ": empty component list");
  }
  std::vector<Entry> entries;
  for (const std::string &w : words)
    entries.push_back(ParseEntry(c_.source(), key, w));
  if (key == "client" && entries.back().type != "sender")
    entries.push_back({"sender", "transport"});
  if (key == "server" && entries.front().type != "receiver")
    entries.insert(entries.begin(), Entry{"receiver", "transport"});

  ChainOptions co;
  co.pipe_capacity = static_cast<std::size_t>(
      c_.GetInt("chain", "pipe_capacity", static_cast<int>(co.pipe_capacity)));

  BuiltChain out;
  std::vector<std::unique_ptr<Component>> parts;
  PayloadKind upstream = PayloadKind::kEmpty;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].type == "receiver") {
      if (i != 0)
        throw ConfigError(c_.source() + ": receiver must be the first component");
      parts.push_back(nullptr);  // built once its consumer is known
      continue;
    }
    parts.push_back(Make(entries[i], upstream, out));
    upstream = parts.back()->output_kind();
  }
  if (!parts.front()) {
    const std::string &s = entries.front().section;
    PayloadKind kind;
    if (auto k = c_.Find(s, "kind"))
      kind = ParseKind(c_, s, *k);
    else if (parts.size() > 1)
      kind = parts[1]->input_kind();
    else
      throw ConfigError(Where(s, "kind") +
                        ": required when the receiver stands alone");
    StreamFactory factory = o_.accept_factory;
    if (!factory) {
      const std::string addr =
          o_.listen ? *o_.listen : c_.GetString(s, "listen");
      const HostPort hp =
          InSection(c_, s, [&] { return ParseHostPort(addr); });
      out.listener = std::make_shared<TcpListener>(hp);
      const std::chrono::milliseconds wait(
          c_.GetInt(s, "accept_timeout_ms", 60000));
      std::shared_ptr<TcpListener> l = out.listener;
      factory = [l, wait]() -> std::unique_ptr<ByteStream> {
        return l->Accept(wait);
      };
    }
    parts.front() =
        std::make_unique<ReceiverComponent>(kind, std::move(factory));
  }

  out.chain = std::make_unique<Chain>(co);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out.names.push_back(entries[i].type);
    out.chain->Add(std::move(parts[i]));
  }
  return out;
}

}  // namespace

const std::vector<std::string> &KnownComponents() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto &[alias, canonical] : Aliases()) v.push_back(alias);
    return v;
  }();
  return names;
}

BuiltChain BuildChain(const ChainConfig &config, const BuildOptions &options) {
  return Builder(config, options).Build();
}

}  // namespace ekrt
