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

#include "ekrt/feat/frame-cutter.h"

#include <algorithm>
#include <string>

#include "ekrt/base/error.h"

namespace ekrt {

WindowType ParseWindowType(std::string_view name) {
  if (name == "hamming") return WindowType::kHamming;
  if (name == "hann" || name == "hanning") return WindowType::kHann;
  if (name == "rectangular" || name == "none") return WindowType::kRectangular;
  throw ConfigError("unknown window type '" + std::string(name) + "'");
}

void FrameConfig::Validate(int fft_size) const {
  if (sample_rate <= 0) throw ConfigError("sample_rate must be positive");
  if (frame_shift <= 0) throw ConfigError("frame_shift must be positive");
  if (frame_shift > frame_length)
    throw ConfigError("frame_shift (" + std::to_string(frame_shift) +
                      ") exceeds frame_length (" +
                      std::to_string(frame_length) + ")");
  if (fft_size > 0 && frame_length > fft_size)
    throw ConfigError("frame_length (" + std::to_string(frame_length) +
                      ") exceeds FFT size (" + std::to_string(fft_size) + ")");
  if (preemphasis < 0.0 || preemphasis >= 1.0)
    throw ConfigError("preemphasis must lie in [0, 1)");
}

std::size_t NumFrames(std::size_t num_samples, const FrameConfig &config) {
  const auto length = static_cast<std::size_t>(config.frame_length);
  if (num_samples < length) return 0;
  return (num_samples - length) / config.frame_shift + 1;
}

Matrix CutFrames(std::span<const double> samples, const FrameConfig &config) {
  config.Validate();
  const std::size_t length = config.frame_length;
  Matrix frames;
  const std::size_t n = NumFrames(samples.size(), config);
  if (n == 0) {
    if (samples.empty()) return Matrix(0, length);
    Matrix padded(1, length, 0.0);
    std::copy(samples.begin(), samples.end(), padded.Row(0).begin());
    return padded;
  }
  frames.Resize(n, length);
  for (std::size_t f = 0; f < n; ++f) {
    auto src = samples.subspan(f * config.frame_shift, length);
    std::copy(src.begin(), src.end(), frames.Row(f).begin());
  }
  return frames;
}

double PcmToUnit(std::int16_t sample) { return sample / 32768.0; }

std::vector<double> PcmToUnit(std::span<const std::int16_t> samples) {
  std::vector<double> out(samples.size());
  std::transform(samples.begin(), samples.end(), out.begin(),
                 [](std::int16_t s) { return PcmToUnit(s); });
  return out;
}

OnlineFrameCutter::OnlineFrameCutter(const FrameConfig &config)
    : config_(config) {
  config_.Validate();
}

FrameBlock OnlineFrameCutter::Accept(std::span<const double> samples) {
  buffer_.insert(buffer_.end(), samples.begin(), samples.end());
  FrameBlock block;
  block.first_frame = next_frame_;
  const std::size_t length = config_.frame_length;
  const std::size_t shift = config_.frame_shift;
  block.frames.Resize(0, length);
  std::size_t start = 0;
  while (start + length <= buffer_.size()) {
    block.frames.AppendRow(std::span<const double>(buffer_).subspan(start, length));
    start += shift;
    ++next_frame_;
  }
  buffer_.erase(buffer_.begin(),
                buffer_.begin() + std::min(start, buffer_.size()));
  return block;
}

FrameBlock OnlineFrameCutter::Finish() {
  FrameBlock block;
  block.first_frame = next_frame_;
  block.frames.Resize(0, config_.frame_length);
  if (next_frame_ == 0 && !buffer_.empty()) {
    std::vector<double> padded(config_.frame_length, 0.0);
    std::copy(buffer_.begin(), buffer_.end(), padded.begin());
    block.frames.AppendRow(padded);
  }
  buffer_.clear();
  next_frame_ = 0;
  return block;
}

}  // namespace ekrt
