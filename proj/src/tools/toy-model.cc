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

#include "ekrt/tools/toy-model.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

#include "ekrt/base/error.h"
#include "ekrt/base/matrix-io.h"
#include "ekrt/feat/feature-extractor.h"
#include "ekrt/feat/feature-transforms.h"
#include "ekrt/feat/frame-cutter.h"

namespace ekrt {
namespace {

constexpr int kShift = 160;
constexpr int kLength = 400;
constexpr double kNoiseLsb = 3.0;  // silence floor, in int16 steps
constexpr double kToneAmplitude = 0.25;
constexpr int kTrainUtterances = 40;

const char *const kWordNames[] = {
    "alpha", "bravo",  "charlie", "delta",  "echo",    "foxtrot", "golf",
    "hotel", "india",  "juliet",  "kilo",   "lima",    "mike",    "november",
    "oscar", "papa",   "quebec",  "romeo",  "sierra",  "tango",   "uniform",
    "victor", "whiskey", "xray",  "yankee", "zulu"};

std::string WordName(int i) {
  const int n = static_cast<int>(std::size(kWordNames));
  if (i < n) return kWordNames[i];
  return std::string(kWordNames[i % n]) + std::to_string(i / n);
}

// One stretch of audio drawn from a single pdf.
struct Segment {
  int pdf;
  int samples;
};

class Synthesizer {
 public:
  Synthesizer(const ToyModelConfig &c, std::mt19937_64 &rng) : rng_(rng) {
    const int speech = c.n_pdfs - 1;
    // Log-spaced tone pairs keep the speech pdfs apart on the mel axis.
    std::vector<int> order(speech);
    for (int i = 0; i < speech; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng_);
    freqs_.assign(c.n_pdfs, 0.0);
    const double lo = 250.0, hi = 0.3 * c.sample_rate;
    for (int p = 1; p <= speech; ++p) {
      const double u = speech > 1 ? order[p - 1] / double(speech - 1) : 0.5;
      freqs_[p] = lo * std::pow(hi / lo, u);
    }
    rate_ = c.sample_rate;
  }

  void Render(const Segment &s, std::vector<std::int16_t> &out) {
    std::normal_distribution<double> noise(0.0, kNoiseLsb);
    std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> gain(0.8, 1.2);
    const double f = freqs_[s.pdf];
    const double p1 = phase(rng_), p2 = phase(rng_), g = gain(rng_);
    for (int n = 0; n < s.samples; ++n) {
      double x = noise(rng_);
      if (s.pdf != 0) {
        const double t = static_cast<double>(n) / rate_;
        x += 32768.0 * kToneAmplitude * g *
             (std::sin(2 * std::numbers::pi * f * t + p1) +
              0.5 * std::sin(2 * std::numbers::pi * 1.5 * f * t + p2));
      }
      out.push_back(static_cast<std::int16_t>(
          std::clamp(std::lround(x), -32768L, 32767L)));
    }
  }

 private:
  std::mt19937_64 &rng_;
  std::vector<double> freqs_;
  int rate_;
};

int FrameSpan(std::mt19937_64 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng) * kShift;
}

// Silence, words separated by short pauses, silence. A gap replaces the
// pause in the middle of the word list.
std::vector<Segment> Layout(const std::vector<int> &sentence,
                            const std::vector<std::vector<int>> &word_pdfs,
                            double gap_ms, int rate, std::mt19937_64 &rng) {
  std::vector<Segment> segs;
  segs.push_back({0, FrameSpan(rng, 10, 20)});
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (i > 0) {
      int pause = FrameSpan(rng, 8, 20);
      if (gap_ms > 0 && i == sentence.size() / 2)
        pause = static_cast<int>(std::lround(gap_ms * rate / 1000.0));
      segs.push_back({0, pause});
    }
    for (int pdf : word_pdfs[sentence[i]])
      segs.push_back({pdf, FrameSpan(rng, 6, 10)});
  }
  segs.push_back({0, FrameSpan(rng, 10, 20)});
  return segs;
}

bool IsSubsequence(const std::vector<int> &a, const std::vector<int> &b) {
  std::size_t i = 0;
  for (int x : b)
    if (i < a.size() && a[i] == x) ++i;
  return i == a.size();
}

std::vector<std::vector<int>> MakeWords(const ToyModelConfig &c,
                                        std::mt19937_64 &rng) {
  const int speech = c.n_pdfs - 1;
  std::uniform_int_distribution<int> pdf(1, speech);
  std::uniform_int_distribution<int> len(2, 3);
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> words;
  for (int attempt = 0; words.size() < std::size_t(c.n_words); ++attempt) {
    if (attempt > 100000)
      throw ConfigError("cannot make " + std::to_string(c.n_words) +
                        " distinct words from " + std::to_string(speech) +
                        " speech pdfs");
    std::vector<int> w(len(rng));
    for (std::size_t i = 0; i < w.size(); ++i) {
      do {
        w[i] = pdf(rng);
      } while (speech > 1 && i > 0 && w[i] == w[i - 1]);
    }
    // Frames straddling a tone change can pass for an extra state, so no
    // word may be another with states inserted.
    bool clash = false;
    for (const auto &o : seen)
      clash = clash || IsSubsequence(w, o) || IsSubsequence(o, w);
    if (clash) continue;
    seen.insert(w);
    words.push_back(w);
  }
  return words;
}

// Word loop through state 0, which carries the silence self-loop and is
// the only final state.
Wfst MakeGraph(const std::vector<std::vector<int>> &word_pdfs) {
  const double half = std::log(2.0);
  const double entry = std::log(static_cast<double>(word_pdfs.size()) + 1.0);
  Wfst g;
  g.SetStart(g.AddState());
  g.SetFinal(0, 0.0);
  g.AddArc(0, {0, 1, 0, half});
  for (std::size_t w = 0; w < word_pdfs.size(); ++w) {
    const auto &pdfs = word_pdfs[w];
    StateId prev = 0;
    for (std::size_t i = 0; i < pdfs.size(); ++i) {
      const StateId s = g.AddState();
      const Label in = pdfs[i] + 1;
      const Label out = i == 0 ? static_cast<Label>(w + 1) : 0;
      g.AddArc(prev, {s, in, out, i == 0 ? entry : half});
      g.AddArc(s, {s, in, 0, half});
      prev = s;
    }
    g.AddArc(prev, {0, 0, 0, 0.0});
  }
  return g;
}

std::vector<int> RandomSentence(std::mt19937_64 &rng, int n_words, int len) {
  std::uniform_int_distribution<int> w(0, n_words - 1);
  std::vector<int> s(len);
  for (int &x : s) x = w(rng);
  return s;
}

// Offline front end identical to the toy chain: frames, MFCC, sliding CMVN.
Matrix Featurize(const std::vector<std::int16_t> &pcm, int rate) {
  FrameConfig frame;
  frame.sample_rate = rate;
  frame.frame_length = kLength;
  frame.frame_shift = kShift;
  FrameFeatureExtractor mfcc(FeatureType::kMfcc, frame, MelConfig{});
  FrameBlock block;
  block.frames = CutFrames(PcmToUnit(pcm), frame);
  return SlidingCmvn(mfcc.Compute(block).data, CmvnConfig{});
}

// Maximum-likelihood single Gaussian per pdf over frames that lie wholly
// inside one segment.
DiagGmm Train(const ToyModelConfig &c,
              const std::vector<std::vector<int>> &word_pdfs,
              Synthesizer &synth, std::mt19937_64 &rng) {
  const std::size_t dims = static_cast<std::size_t>(MelConfig{}.n_ceps);
  std::vector<std::vector<long double>> sum(c.n_pdfs), sq(c.n_pdfs);
  std::vector<long double> count(c.n_pdfs, 0);
  for (int p = 0; p < c.n_pdfs; ++p) {
    sum[p].assign(dims, 0);
    sq[p].assign(dims, 0);
  }
  auto accumulate = [&](const std::vector<Segment> &segs) {
    std::vector<std::int16_t> pcm;
    for (const Segment &s : segs) synth.Render(s, pcm);
    const Matrix feats = Featurize(pcm, c.sample_rate);
    std::vector<int> label(pcm.size());
    std::size_t at = 0;
    for (const Segment &s : segs) {
      std::fill(label.begin() + at, label.begin() + at + s.samples, s.pdf);
      at += s.samples;
    }
    for (std::size_t t = 0; t < feats.rows(); ++t) {
      const std::size_t b = t * kShift, e = b + kLength - 1;
      // Segments outlast a frame, so equal end labels mean one segment.
      if (e >= label.size() || label[b] != label[e]) continue;
      const int p = label[b];
      count[p] += 1;
      for (std::size_t j = 0; j < dims; ++j) {
        sum[p][j] += feats(t, j);
        sq[p][j] += feats(t, j) * feats(t, j);
      }
    }
  };
  std::uniform_int_distribution<int> len(4, 8);
  for (int u = 0; u < kTrainUtterances; ++u) {
    std::vector<int> sentence = RandomSentence(rng, c.n_words, len(rng));
    sentence.push_back(u % c.n_words);  // every word occurs
    accumulate(Layout(sentence, word_pdfs, 0.0, c.sample_rate, rng));
  }
  // Pdfs no word uses still need a model: isolated tones between pauses.
  for (int p = 1; p < c.n_pdfs; ++p) {
    if (count[p] > 0) continue;
    std::vector<Segment> segs{{0, FrameSpan(rng, 10, 20)}};
    for (int i = 0; i < 6; ++i) {
      segs.push_back({p, FrameSpan(rng, 6, 10)});
      segs.push_back({0, FrameSpan(rng, 8, 20)});
    }
    accumulate(segs);
  }
  std::vector<std::vector<GaussianComponent>> pdfs(c.n_pdfs);
  for (int p = 0; p < c.n_pdfs; ++p) {
    if (count[p] < 2)
      throw Error("toy model: pdf " + std::to_string(p) + " has no training frames");
    GaussianComponent g;
    g.weight = 1.0;
    for (std::size_t j = 0; j < dims; ++j) {
      const long double m = sum[p][j] / count[p];
      const long double v = sq[p][j] / count[p] - m * m;
      g.mean.push_back(static_cast<double>(m));
      g.var.push_back(std::max(static_cast<double>(v), 1e-2));
    }
    pdfs[p].push_back(std::move(g));
  }
  DiagGmm gmm(dims, std::move(pdfs));
  gmm.Validate();
  return gmm;
}

}  // namespace

void ToyModelConfig::Validate() const {
  if (n_pdfs < 2) throw ConfigError("toy model needs n_pdfs >= 2");
  if (n_words < 1) throw ConfigError("toy model needs n_words >= 1");
  if (seconds < 0 || gap_ms < 0)
    throw ConfigError("toy model seconds and gap_ms must be >= 0");
  if (sample_rate < 8000) throw ConfigError("toy model sample_rate too low");
  if (1 + 3 * n_words > 50)
    throw ConfigError("toy model graph would exceed 50 states");
}

ToyModel MakeToyModel(const ToyModelConfig &config) {
  config.Validate();
  std::mt19937_64 rng(config.seed);
  ToyModel m;
  m.config = config;
  m.word_pdfs = MakeWords(config, rng);
  m.graph = MakeGraph(m.word_pdfs);
  m.graph.Validate();
  for (int w = 0; w < config.n_words; ++w) m.words.Add(WordName(w));
  Synthesizer synth(config, rng);
  m.gmm = Train(config, m.word_pdfs, synth, rng);

  // Roughly 0.4 s per word with its pause.
  std::uniform_int_distribution<int> len(4, 8);
  const int n = config.seconds > 0
                    ? std::max(1, static_cast<int>(config.seconds / 0.4))
                    : len(rng);
  const std::vector<int> sentence = RandomSentence(rng, config.n_words, n);
  m.audio.sample_rate = static_cast<std::uint32_t>(config.sample_rate);
  for (const Segment &s : Layout(sentence, m.word_pdfs, config.gap_ms,
                                 config.sample_rate, rng))
    synth.Render(s, m.audio.samples);
  if (config.seconds > 0) {
    // Pad with silence up to the requested length.
    const std::size_t want =
        static_cast<std::size_t>(config.seconds * config.sample_rate);
    if (m.audio.samples.size() < want)
      synth.Render({0, static_cast<int>(want - m.audio.samples.size())},
                   m.audio.samples);
  }
  for (int w : sentence) m.reference.push_back(m.words.Word(w + 1));

  // Stand-in for an offline-estimated LDA: a fixed random projection.
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(117.0));
  m.lda.Resize(40, 117);
  for (double &x : m.lda.data()) x = gauss(rng);
  return m;
}

void WriteToyModel(const ToyModel &m, const std::string &dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path d(dir);
  m.graph.WriteFile((d / "graph.txt").string());
  m.words.WriteFile((d / "words.txt").string());
  m.gmm.WriteFile((d / "gmm.txt").string());
  WriteMatrixFile((d / "lda.txt").string(), m.lda);
  WriteWav((d / "test.wav").string(), m.audio);
  {
    std::ofstream os(d / "ref.txt");
    for (std::size_t i = 0; i < m.reference.size(); ++i)
      os << (i ? " " : "") << m.reference[i];
    os << "\n";
  }
  const int rate = m.config.sample_rate;
  std::ofstream os(d / "chain.conf");
  os << "# Toy recognizer, seed " << m.config.seed << "\n"
     << "[chain]\n"
     << "components = replay cutter vad mfcc cmvn gmm decoder\n"
     << "client = replay cutter vad mfcc cmvn\n"
     << "server = gmm decoder\n\n"
     << "[replay]\nwav = test.wav\nchunk_ms = 100\n\n"
     << "[frame]\nsample_rate = " << rate << "\nframe_length = " << kLength
     << "\nframe_shift = " << kShift << "\n\n"
     << "[mel]\nn_mels = 24\nn_ceps = 13\n\n"
     << "[vad]\nenergy_threshold = -9\nkeep_silence_ms = 300\n"
     << "endpoint_silence_ms = 500\nhangover_ms = 100\n\n"
     << "[cmvn]\nwindow = 600\n\n"
     << "[gmm]\nmodel = gmm.txt\n\n"
     << "[decoder]\ngraph = graph.txt\nwords = words.txt\nbeam = 16\n"
     << "acoustic_scale = 0.1\nnbest = 10\n\n"
     << "[transport]\nconnect = 127.0.0.1:5055\nlisten = 127.0.0.1:5055\n";
  std::ofstream mix(d / "mixture.conf");
  mix << "# Three-stream feature mixture\n"
      << "[chain]\ncomponents = replay cutter mixture\n\n"
      << "[replay]\nwav = test.wav\n\n"
      << "[frame]\nsample_rate = " << rate << "\n\n"
      << "[mel]\nn_mels = 24\nn_ceps = 13\n\n"
      << "[mixture]\n"
      << "branches = mfcc+delta fbank mfcc+splice@lda_splice+lda\n"
      << "post = splice@mixture_splice\n\n"
      << "[delta]\norder = 2\nhalf_window = 2\n\n"
      << "[lda_splice]\nleft = 4\nright = 4\n\n"
      << "[lda]\nmatrix = lda.txt\n\n"
      << "[mixture_splice]\nleft = 3\nright = 3\n";
}

}  // namespace ekrt
