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

// include/ekrt/feat/mel.h

#ifndef EKRT_FEAT_MEL_H_
#define EKRT_FEAT_MEL_H_

#include <span>
#include <vector>

namespace ekrt {

inline constexpr double kLogFloor = 1e-10;

// HTK mel scale: 2595 log10(1 + f / 700).
double HzToMel(double hz);
double MelToHz(double mel);

struct MelConfig {
  int n_fft = 512;
  int n_mels = 24;
  double fmin = 20.0;
  double fmax = 0.0;  // <= 0 means Nyquist
  int n_ceps = 13;

  double UpperEdge(double sample_rate) const;
  void Validate(double sample_rate) const;
};

// Triangular filters with centres equally spaced on the mel scale. Each
// filter's weight at a bin is computed from the bin's mel value.
class MelFilterbank {
 public:
  struct Filter {
    int first_bin = 0;
    std::vector<double> weights;
  };

  MelFilterbank(const MelConfig &config, double sample_rate);

  int num_bins() const { return num_bins_; }
  int num_filters() const { return static_cast<int>(filters_.size()); }
  const std::vector<Filter> &filters() const { return filters_; }

  // Filter outputs on a power spectrum of num_bins() values; with 'log',
  // ln(max(x, kLogFloor)).
  std::vector<double> Apply(std::span<const double> power, bool log) const;

 private:
  int num_bins_;
  std::vector<Filter> filters_;
};

// Orthonormal DCT-II truncated to the first num_out coefficients.
class Dct {
 public:
  Dct(int num_in, int num_out);

  int num_in() const { return num_in_; }
  int num_out() const { return num_out_; }
  std::vector<double> Apply(std::span<const double> input) const;

 private:
  int num_in_;
  int num_out_;
  std::vector<double> basis_;  // num_out x num_in
};

// Cepstra of a log filterbank vector.
std::vector<double> ComputeMfcc(std::span<const double> log_fbank, int n_ceps);

}  // namespace ekrt

#endif  // EKRT_FEAT_MEL_H_
