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

// include/ekrt/feat/feature-extractor.h

#ifndef EKRT_FEAT_FEATURE_EXTRACTOR_H_
#define EKRT_FEAT_FEATURE_EXTRACTOR_H_

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "ekrt/feat/frame-cutter.h"
#include "ekrt/feat/mel.h"
#include "ekrt/feat/spectrum.h"
#include "ekrt/pipeline/packet.h"

namespace ekrt {

enum class FeatureType { kSpectrogram, kFbank, kMfcc };

FeatureType ParseFeatureType(std::string_view name);

// Rewrites a block of magnitude spectra (frames x bins) in place before
// mel filtering. It must keep the shape of the block.
using SpectralHook = std::function<void(Matrix &magnitudes)>;

// Applies the hook to a copy of the block and checks the shape contract.
Matrix ApplySpectralHook(const Matrix &magnitudes, const SpectralHook &hook);

// Per-frame acoustic features: conditioning, power spectrum, optional
// spectral hook, then log spectrum, log mel filterbank or MFCC.
class FrameFeatureExtractor {
 public:
  FrameFeatureExtractor(FeatureType type, const FrameConfig &frame,
                        const MelConfig &mel);

  FeatureType type() const { return type_; }
  int dims() const;
  const FrameConfig &frame_config() const { return frame_; }
  const MelConfig &mel_config() const { return mel_; }

  void set_spectral_hook(SpectralHook hook) { hook_ = std::move(hook); }

  FeatureMatrix Compute(const FrameBlock &block) const;

  // Power spectra of conditioned frames, one row per frame.
  Matrix PowerSpectra(const Matrix &frames) const;

 private:
  FeatureType type_;
  FrameConfig frame_;
  MelConfig mel_;
  std::vector<double> window_;
  PowerSpectrum power_;
  MelFilterbank fbank_;
  Dct dct_;
  SpectralHook hook_;
};

}  // namespace ekrt

#endif  // EKRT_FEAT_FEATURE_EXTRACTOR_H_
