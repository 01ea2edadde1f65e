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

// include/ekrt/feat/spectrum.h

#ifndef EKRT_FEAT_SPECTRUM_H_
#define EKRT_FEAT_SPECTRUM_H_

#include <complex>
#include <span>
#include <vector>

#include "ekrt/feat/frame-cutter.h"

namespace ekrt {

std::vector<double> MakeWindow(WindowType type, int length);

// In place: remove the DC mean, pre-emphasize (the first sample uses
// itself as predecessor), then multiply by the window.
void ConditionFrame(std::span<double> frame, double preemphasis,
                    std::span<const double> window);

bool IsPowerOfTwo(int n);

// Iterative radix-2 complex FFT with precomputed twiddles.
class Fft {
 public:
  explicit Fft(int size);  // throws ConfigError unless a power of two

  int size() const { return size_; }
  void Forward(std::vector<std::complex<double>> &data) const;

 private:
  int size_;
  std::vector<int> bit_reverse_;
  std::vector<std::complex<double>> twiddles_;
};

// |DFT_k|^2 for k = 0..n_fft/2 of the frame zero-padded to n_fft.
class PowerSpectrum {
 public:
  explicit PowerSpectrum(int n_fft) : fft_(n_fft) {}

  int n_fft() const { return fft_.size(); }
  int num_bins() const { return fft_.size() / 2 + 1; }
  std::vector<double> Compute(std::span<const double> frame) const;

 private:
  Fft fft_;
};

std::vector<double> ComputePowerSpectrum(std::span<const double> frame,
                                         int n_fft);

}  // namespace ekrt

#endif  // EKRT_FEAT_SPECTRUM_H_
