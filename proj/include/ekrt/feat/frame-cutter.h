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

// include/ekrt/feat/frame-cutter.h

#ifndef EKRT_FEAT_FRAME_CUTTER_H_
#define EKRT_FEAT_FRAME_CUTTER_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ekrt/base/matrix.h"
#include "ekrt/pipeline/packet.h"

namespace ekrt {

enum class WindowType { kHamming, kHann, kRectangular };

WindowType ParseWindowType(std::string_view name);

struct FrameConfig {
  int sample_rate = 16000;
  int frame_length = 400;  // 25 ms
  int frame_shift = 160;   // 10 ms
  double preemphasis = 0.97;
  WindowType window = WindowType::kHamming;

  // Throws ConfigError. fft_size of 0 skips the frame_length <= fft check.
  void Validate(int fft_size = 0) const;
};

// Number of full frames in n samples: floor((n - L) / S) + 1 for n >= L.
std::size_t NumFrames(std::size_t num_samples, const FrameConfig &config);

// Whole-stream framing, including the zero-padded single frame for a
// stream shorter than one frame.
Matrix CutFrames(std::span<const double> samples, const FrameConfig &config);

double PcmToUnit(std::int16_t sample);
std::vector<double> PcmToUnit(std::span<const std::int16_t> samples);

// Incremental framer. Accepts arbitrary sample chunks and emits every frame
// that has become complete.
class OnlineFrameCutter {
 public:
  explicit OnlineFrameCutter(const FrameConfig &config);

  FrameBlock Accept(std::span<const double> samples);

  // End of stream: if no frame was produced yet, the buffered tail is
  // zero-padded into one frame. Resets the cutter.
  FrameBlock Finish();

  const FrameConfig &config() const { return config_; }

 private:
  FrameConfig config_;
  std::vector<double> buffer_;  // samples from the next frame start onward
  std::int64_t next_frame_ = 0;
};

}  // namespace ekrt

#endif  // EKRT_FEAT_FRAME_CUTTER_H_
