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

#include "ekrt/vad/vad.h"

#include <cmath>
#include <string>

#include "ekrt/base/error.h"

namespace ekrt {

void VadConfig::Validate() const {
  if (keep_silence < 0) throw ConfigError("vad: keep_silence must be >= 0");
  if (endpoint_silence <= keep_silence)
    throw ConfigError("vad: endpoint_silence (" +
                      std::to_string(endpoint_silence) +
                      " frames) must exceed keep_silence (" +
                      std::to_string(keep_silence) + " frames)");
  if (hangover < 0 || hangover > keep_silence)
    throw ConfigError("vad: hangover must lie in [0, keep_silence]");
}

VadConfig VadConfig::FromMilliseconds(double energy_threshold,
                                      double keep_silence_ms,
                                      double endpoint_silence_ms,
                                      double hangover_ms,
                                      double frame_shift_ms) {
  if (frame_shift_ms <= 0) throw ConfigError("vad: frame shift must be > 0");
  auto frames = [&](double ms) {
    return static_cast<int>(std::lround(ms / frame_shift_ms));
  };
  VadConfig c;
  c.energy_threshold = energy_threshold;
  c.keep_silence = frames(keep_silence_ms);
  c.endpoint_silence = frames(endpoint_silence_ms);
  c.hangover = frames(hangover_ms);
  c.Validate();
  return c;
}

double FrameLogEnergy(std::span<const double> frame) {
  double sum = 0.0;
  for (double x : frame) sum += x * x;
  const double mean = frame.empty() ? 0.0 : sum / frame.size();
  return std::log(kEnergyEpsilon + mean);
}

VadLabel EnergyDetector::Classify(std::span<const double> frame) {
  return FrameLogEnergy(frame) > threshold_ ? VadLabel::kSpeech
                                            : VadLabel::kSilence;
}

VadLabel FeatureDetector::Classify(std::span<const double> frame) {
  FrameBlock block;
  block.frames.AppendRow(frame);
  FeatureMatrix feats = extractor_.Compute(block);
  return fn_(feats.data.Row(0));
}

SilenceFilter::SilenceFilter(const VadConfig &config) : config_(config) {
  config_.Validate();
}

FilterDecision SilenceFilter::Push(VadLabel label) {
  FilterDecision d;
  if (label == VadLabel::kSpeech) {
    run_ = 0;
    d.forward = true;
    return d;
  }
  ++run_;
  d.forward = run_ <= config_.keep_silence;
  d.endpoint = run_ == config_.endpoint_silence;
  return d;
}

}  // namespace ekrt
