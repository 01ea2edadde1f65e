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

#include "ekrt/feat/feature-extractor.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ekrt/base/error.h"

namespace ekrt {

FeatureType ParseFeatureType(std::string_view name) {
  if (name == "spectrogram") return FeatureType::kSpectrogram;
  if (name == "fbank") return FeatureType::kFbank;
  if (name == "mfcc") return FeatureType::kMfcc;
  throw ConfigError("unknown feature type '" + std::string(name) + "'");
}

Matrix ApplySpectralHook(const Matrix &magnitudes, const SpectralHook &hook) {
  Matrix out = magnitudes;
  hook(out);
  if (out.rows() != magnitudes.rows() || out.cols() != magnitudes.cols())
    throw DimensionError(
        "spectral hook changed the block shape from " +
        std::to_string(magnitudes.rows()) + "x" +
        std::to_string(magnitudes.cols()) + " to " +
        std::to_string(out.rows()) + "x" + std::to_string(out.cols()));
  return out;
}

FrameFeatureExtractor::FrameFeatureExtractor(FeatureType type,
                                             const FrameConfig &frame,
                                             const MelConfig &mel)
    : type_(type),
      frame_(frame),
      mel_(mel),
      window_(MakeWindow(frame.window, frame.frame_length)),
      power_(mel.n_fft),
      fbank_(mel, frame.sample_rate),
      dct_(mel.n_mels, mel.n_ceps) {
  frame_.Validate(mel.n_fft);
}

int FrameFeatureExtractor::dims() const {
  switch (type_) {
    case FeatureType::kSpectrogram: return power_.num_bins();
    case FeatureType::kFbank: return mel_.n_mels;
    case FeatureType::kMfcc: return mel_.n_ceps;
  }
  return 0;
}

Matrix FrameFeatureExtractor::PowerSpectra(const Matrix &frames) const {
  if (!frames.empty() &&
      frames.cols() != static_cast<std::size_t>(frame_.frame_length))
    throw DimensionError("frame block has " + std::to_string(frames.cols()) +
                         " samples per frame, expected " +
                         std::to_string(frame_.frame_length));
  Matrix spectra(frames.rows(), power_.num_bins());
  std::vector<double> buf(frame_.frame_length);
  for (std::size_t f = 0; f < frames.rows(); ++f) {
    auto row = frames.Row(f);
    std::copy(row.begin(), row.end(), buf.begin());
    ConditionFrame(buf, frame_.preemphasis, window_);
    auto power = power_.Compute(buf);
    std::copy(power.begin(), power.end(), spectra.Row(f).begin());
  }
  return spectra;
}

FeatureMatrix FrameFeatureExtractor::Compute(const FrameBlock &block) const {
  Matrix spectra = PowerSpectra(block.frames);
  if (hook_) {
    Matrix mag = spectra;
    for (double &v : mag.data()) v = std::sqrt(v);
    mag = ApplySpectralHook(mag, hook_);
    for (std::size_t i = 0; i < mag.data().size(); ++i)
      spectra.data()[i] = mag.data()[i] * mag.data()[i];
  }
  FeatureMatrix out;
  out.first_frame = block.first_frame;
  out.data.Resize(spectra.rows(), dims());
  for (std::size_t f = 0; f < spectra.rows(); ++f) {
    auto dst = out.data.Row(f);
    if (type_ == FeatureType::kSpectrogram) {
      auto src = spectra.Row(f);
      for (std::size_t k = 0; k < src.size(); ++k)
        dst[k] = std::log(std::max(src[k], kLogFloor));
      continue;
    }
    auto mel = fbank_.Apply(spectra.Row(f), true);
    if (type_ == FeatureType::kFbank) {
      std::copy(mel.begin(), mel.end(), dst.begin());
    } else {
      auto ceps = dct_.Apply(mel);
      std::copy(ceps.begin(), ceps.end(), dst.begin());
    }
  }
  return out;
}

}  // namespace ekrt
