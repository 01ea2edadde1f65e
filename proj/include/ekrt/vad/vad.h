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

// include/ekrt/vad/vad.h

#ifndef EKRT_VAD_VAD_H_
#define EKRT_VAD_VAD_H_

#include <functional>
#include <memory>
#include <span>

#include "ekrt/feat/feature-extractor.h"

namespace ekrt {

enum class VadLabel { kSilence, kSpeech };

struct VadConfig {
  double energy_threshold = -9.0;  // ln mean-square, samples in [-1, 1)
  int keep_silence = 30;           // silence runs up to this long pass
  int endpoint_silence = 50;       // a run this long marks an endpoint
  // Silence frames always retained after speech. Must not exceed
  // keep_silence, so the keep rule already covers it.
  int hangover = 10;

  void Validate() const;

  // Converts millisecond durations using the frame shift.
  static VadConfig FromMilliseconds(double energy_threshold,
                                    double keep_silence_ms,
                                    double endpoint_silence_ms,
                                    double hangover_ms, double frame_shift_ms);
};

inline constexpr double kEnergyEpsilon = 1e-12;

// ln(kEnergyEpsilon + mean(x^2)).
double FrameLogEnergy(std::span<const double> frame);

// Per-frame speech/silence predictor.
class SpeechDetector {
 public:
  virtual ~SpeechDetector() = default;
  virtual VadLabel Classify(std::span<const double> frame) = 0;
};

class EnergyDetector : public SpeechDetector {
 public:
  explicit EnergyDetector(double threshold) : threshold_(threshold) {}
  VadLabel Classify(std::span<const double> frame) override;

 private:
  double threshold_;
};

// Wraps any callable, e.g. a neural VAD.
class CallbackDetector : public SpeechDetector {
 public:
  using Fn = std::function<VadLabel(std::span<const double> frame)>;
  explicit CallbackDetector(Fn fn) : fn_(std::move(fn)) {}
  VadLabel Classify(std::span<const double> frame) override {
    return fn_(frame);
  }

 private:
  Fn fn_;
};

// Classifies from acoustic features of the frame instead of raw samples.
class FeatureDetector : public SpeechDetector {
 public:
  using Fn = std::function<VadLabel(std::span<const double> features)>;
  FeatureDetector(FrameFeatureExtractor extractor, Fn fn)
      : extractor_(std::move(extractor)), fn_(std::move(fn)) {}
  VadLabel Classify(std::span<const double> frame) override;

 private:
  FrameFeatureExtractor extractor_;
  Fn fn_;
};

struct FilterDecision {
  bool forward = false;
  // An endpoint falls here, after every frame forwarded so far.
  bool endpoint = false;
};

// Streaming silence filter:
//   1. track the length of the current silence run;
//   2. forward run frames up to keep_silence, drop the rest of the run;
//   3. when the run reaches endpoint_silence, mark one endpoint.
// Speech frames always pass and end the run.
class SilenceFilter {
 public:
  explicit SilenceFilter(const VadConfig &config);

  FilterDecision Push(VadLabel label);
  void Reset() { run_ = 0; }
  int silence_run() const { return run_; }

 private:
  VadConfig config_;
  int run_ = 0;
};

}  // namespace ekrt

#endif  // EKRT_VAD_VAD_H_
