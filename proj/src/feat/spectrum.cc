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

#include "ekrt/feat/spectrum.h"

#include <cmath>
#include <numbers>
#include <string>

#include "ekrt/base/error.h"

namespace ekrt {

std::vector<double> MakeWindow(WindowType type, int length) {
  std::vector<double> w(length, 1.0);
  if (length < 2 || type == WindowType::kRectangular) return w;
  const double a = 2.0 * std::numbers::pi / (length - 1);
  for (int n = 0; n < length; ++n) {
    w[n] = type == WindowType::kHamming ? 0.54 - 0.46 * std::cos(a * n)
                                        : 0.5 - 0.5 * std::cos(a * n);
  }
  return w;
}

void ConditionFrame(std::span<double> frame, double preemphasis,
                    std::span<const double> window) {
  if (frame.empty()) return;
  if (window.size() != frame.size())
    throw DimensionError("window length " + std::to_string(window.size()) +
                         " != frame length " + std::to_string(frame.size()));
  double mean = 0.0;
  for (double x : frame) mean += x;
  mean /= static_cast<double>(frame.size());
  for (double &x : frame) x -= mean;
  if (preemphasis != 0.0) {
    for (std::size_t n = frame.size() - 1; n > 0; --n)
      frame[n] -= preemphasis * frame[n - 1];
    frame[0] -= preemphasis * frame[0];
  }
  for (std::size_t n = 0; n < frame.size(); ++n) frame[n] *= window[n];
}

bool IsPowerOfTwo(int n) { return n > 0 && (n & (n - 1)) == 0; }

Fft::Fft(int size) : size_(size) {
  if (!IsPowerOfTwo(size))
    throw ConfigError("FFT size " + std::to_string(size) +
                      " is not a power of two");
  int bits = 0;
  while ((1 << bits) < size) ++bits;
  bit_reverse_.resize(size);
  for (int i = 0; i < size; ++i) {
    int r = 0;
    for (int b = 0; b < bits; ++b)
      if (i & (1 << b)) r |= 1 << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
  twiddles_.resize(size / 2);
  for (int k = 0; k < size / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * k / size;
    twiddles_[k] = {std::cos(angle), std::sin(angle)};
  }
}

void Fft::Forward(std::vector<std::complex<double>> &data) const {
  if (static_cast<int>(data.size()) != size_)
    throw DimensionError("FFT input has " + std::to_string(data.size()) +
                         " points, expected " + std::to_string(size_));
  for (int i = 0; i < size_; ++i)
    if (i < bit_reverse_[i]) std::swap(data[i], data[bit_reverse_[i]]);
  for (int len = 2; len <= size_; len <<= 1) {
    const int half = len / 2;
    const int stride = size_ / len;
    for (int start = 0; start < size_; start += len) {
      for (int k = 0; k < half; ++k) {
        const auto t = twiddles_[k * stride] * data[start + k + half];
        data[start + k + half] = data[start + k] - t;
        data[start + k] += t;
      }
    }
  }
}

std::vector<double> PowerSpectrum::Compute(
    std::span<const double> frame) const {
  const int n = fft_.size();
  if (static_cast<int>(frame.size()) > n)
    throw DimensionError("frame of " + std::to_string(frame.size()) +
                         " samples exceeds FFT size " + std::to_string(n));
  std::vector<std::complex<double>> buf(n);
  for (std::size_t i = 0; i < frame.size(); ++i) buf[i] = frame[i];
  fft_.Forward(buf);
  std::vector<double> power(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) power[k] = std::norm(buf[k]);
  return power;
}

std::vector<double> ComputePowerSpectrum(std::span<const double> frame,
                                         int n_fft) {
  return PowerSpectrum(n_fft).Compute(frame);
}

}  // namespace ekrt
