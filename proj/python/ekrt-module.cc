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

// Python bindings for the main library operations. Matrices cross the
// boundary as 2-D float64 numpy arrays.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ekrt/base/error.h"
#include "ekrt/decoder/decoder.h"
#include "ekrt/feat/feature-extractor.h"
#include "ekrt/feat/feature-transforms.h"
#include "ekrt/feat/frame-cutter.h"
#include "ekrt/feat/spectrum.h"
#include "ekrt/scoring/scorer.h"
#include "ekrt/tools/chain-builder.h"
#include "ekrt/tools/session.h"
#include "ekrt/tools/toy-model.h"
#include "ekrt/transport/crc32.h"
#include "ekrt/vad/vad.h"

namespace py = pybind11;
using namespace ekrt;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix ToMatrix(const Array &a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-D array");
  Matrix m(static_cast<std::size_t>(a.shape(0)),
           static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), m.data().begin());
  return m;
}

Array ToArray(const Matrix &m) {
  Array a({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), a.mutable_data());
  return a;
}

std::vector<double> Samples(const py::array &samples) {
  // int16 arrays are PCM; anything else is taken as unit-scaled floats.
  if (samples.dtype().is(py::dtype::of<std::int16_t>())) {
    auto pcm = py::array_t<std::int16_t, py::array::c_style>::ensure(samples);
    return PcmToUnit(std::span(pcm.data(), static_cast<std::size_t>(pcm.size())));
  }
  auto f = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(samples);
  return {f.data(), f.data() + f.size()};
}

FrameConfig Frame(int sample_rate, int frame_length, int frame_shift) {
  FrameConfig f;
  f.sample_rate = sample_rate;
  f.frame_length = frame_length;
  f.frame_shift = frame_shift;
  f.Validate();
  return f;
}

py::list Segments(const std::vector<HypothesisSet> &segs,
                  const std::optional<WordTable> &words, int k) {
  py::list out;
  for (const HypothesisSet &s : segs) {
    py::list hyps;
    for (std::size_t i = 0; i < s.hyps.size() && i < std::size_t(k); ++i) {
      const Hypothesis &h = s.hyps[i];
      py::object text = words ? py::cast(words->Join(h.words))
                              : py::cast(h.words);
      hyps.append(py::make_tuple(h.cost, text, h.is_final));
    }
    out.append(hyps);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_ekrt, m) {
  m.doc() = "Streaming speech recognition building blocks";
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def("read_wav", [](const std::string &path) {
    WavData w = ReadWav(path);
    py::array_t<std::int16_t> a(static_cast<py::ssize_t>(w.samples.size()));
    std::copy(w.samples.begin(), w.samples.end(), a.mutable_data());
    return py::make_tuple(a, w.sample_rate);
  }, py::arg("path"), "Returns (int16 samples, sample_rate).");

  m.def("write_wav", [](const std::string &path,
                        py::array_t<std::int16_t, py::array::c_style> s,
                        std::uint32_t rate) {
    WavData w;
    w.sample_rate = rate;
    w.samples.assign(s.data(), s.data() + s.size());
    WriteWav(path, w);
  }, py::arg("path"), py::arg("samples"), py::arg("sample_rate") = 16000);

  m.def("power_spectrum", [](const std::vector<double> &frame, int n_fft) {
    return ComputePowerSpectrum(frame, n_fft);
  }, py::arg("frame"), py::arg("n_fft") = 512);

  m.def("compute_features",
        [](const py::array &samples, const std::string &type, int sample_rate,
           int frame_length, int frame_shift, int n_mels, int n_ceps) {
          const FrameConfig f = Frame(sample_rate, frame_length, frame_shift);
          MelConfig mel;
          mel.n_mels = n_mels;
          mel.n_ceps = n_ceps;
          FrameFeatureExtractor x(ParseFeatureType(type), f, mel);
          FrameBlock block{CutFrames(Samples(samples), f), 0};
          return ToArray(x.Compute(block).data);
        },
        py::arg("samples"), py::arg("type") = "mfcc",
        py::arg("sample_rate") = 16000, py::arg("frame_length") = 400,
        py::arg("frame_shift") = 160, py::arg("n_mels") = 24,
        py::arg("n_ceps") = 13,
        "Whole-signal spectrogram, fbank or mfcc features.");

  m.def("deltas", [](const Array &x, int order, int half_window) {
    return ToArray(ComputeDeltas(ToMatrix(x), {order, half_window}));
  }, py::arg("features"), py::arg("order") = 2, py::arg("half_window") = 2);

  m.def("splice", [](const Array &x, int left, int right) {
    return ToArray(Splice(ToMatrix(x), {left, right}));
  }, py::arg("features"), py::arg("left"), py::arg("right"));

  m.def("sliding_cmvn", [](const Array &x, int window, bool var) {
    return ToArray(SlidingCmvn(ToMatrix(x), {window, var}));
  }, py::arg("features"), py::arg("window") = 600,
     py::arg("normalize_variance") = false);

  m.def("vad_filter",
        [](const std::vector<bool> &speech, int keep, int endpoint) {
          VadConfig c;
          c.keep_silence = keep;
          c.endpoint_silence = endpoint;
          c.hangover = std::min(c.hangover, keep);
          c.Validate();
          SilenceFilter filter(c);
          std::vector<bool> forward;
          std::vector<std::size_t> endpoints;
          std::size_t kept = 0;
          for (bool s : speech) {
            const auto d =
                filter.Push(s ? VadLabel::kSpeech : VadLabel::kSilence);
            forward.push_back(d.forward);
            kept += d.forward;
            if (d.endpoint) endpoints.push_back(kept);
          }
          return py::make_tuple(forward, endpoints);
        },
        py::arg("speech"), py::arg("keep_silence") = 30,
        py::arg("endpoint_silence") = 50,
        "Returns (forward mask, forwarded-frame count at each endpoint).");

  m.def("gmm_loglik", [](const std::string &model, const Array &x) {
    GmmScorer s(DiagGmm::ReadFile(model));
    return ToArray(s.Score(FeatureMatrix{ToMatrix(x), 0}).data);
  }, py::arg("model"), py::arg("features"));

  m.def("decode_logliks",
        [](const std::string &graph, const Array &ll, double beam,
           double acoustic_scale, int nbest) {
          DecoderConfig c;
          c.beam = beam;
          c.acoustic_scale = acoustic_scale;
          c.nbest = nbest;
          auto g = std::make_shared<Wfst>(Wfst::ReadFile(graph));
          g->Validate();
          Decoder d(g, c);
          d.AdvanceBlock(ToMatrix(ll));
          py::list segs = Segments({HypothesisSet{d.FinalizeNbest(nbest)}},
                                   std::nullopt, nbest);
          return py::list(segs[0]);
        },
        py::arg("graph"), py::arg("logliks"), py::arg("beam") = 16.0,
        py::arg("acoustic_scale") = 0.1, py::arg("nbest") = 10,
        "N-best (cost, word ids, is_final) for one utterance.");

  m.def("crc32", [](py::bytes data) {
    const std::string s = data;
    return Crc32(std::span(reinterpret_cast<const std::uint8_t *>(s.data()),
                           s.size()));
  });

  m.def("decode_config",
        [](const std::string &config, std::optional<std::string> wav,
           int nbest) {
          BuildOptions o;
          o.wav = wav;
          o.nbest = nbest;
          BuiltChain b = BuildChain(ChainConfig::FromFile(config), o);
          SessionResult r;
          {
            py::gil_scoped_release release;
            r = RunSession(b);
          }
          return Segments(r.segments, b.words, nbest);
        },
        py::arg("config"), py::arg("wav") = py::none(), py::arg("nbest") = 1,
        "Runs the configured chain; one N-best list per segment.");

  m.def("bench_rtf",
        [](const std::string &config, const std::vector<std::string> &wavs) {
          RtfReport r;
          {
            py::gil_scoped_release release;
            r = BenchRtf(ChainConfig::FromFile(config), wavs);
          }
          py::list rows;
          for (const RtfRow &row : r.rows)
            rows.append(py::make_tuple(row.file, row.audio_seconds,
                                       row.wall_seconds, row.rtf()));
          return py::make_tuple(rows, r.rtf());
        },
        py::arg("config"), py::arg("wavs"));

  m.def("make_toy_model",
        [](const std::string &dir, std::uint64_t seed, int pdfs, int words,
           double seconds, double gap_ms) {
          ToyModelConfig c;
          c.seed = seed;
          c.n_pdfs = pdfs;
          c.n_words = words;
          c.seconds = seconds;
          c.gap_ms = gap_ms;
          const ToyModel model = MakeToyModel(c);
          WriteToyModel(model, dir);
          return model.reference;
        },
        py::arg("directory"), py::arg("seed") = 1, py::arg("pdfs") = 8,
        py::arg("words") = 3, py::arg("seconds") = 0.0,
        py::arg("gap_ms") = 0.0, "Writes the toy task; returns its transcript.");
}
