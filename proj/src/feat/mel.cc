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

#include "ekrt/feat/mel.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ekrt/base/error.h"
#include "ekrt/feat/spectrum.h"

namespace ekrt {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

double MelConfig::UpperEdge(double sample_rate) const {
  return fmax > 0.0 ? fmax : sample_rate / 2.0;
}

void MelConfig::Validate(double sample_rate) const {
  if (!IsPowerOfTwo(n_fft))
    throw ConfigError("n_fft " + std::to_string(n_fft) +
                      " is not a power of two");
  if (n_mels < 1) throw ConfigError("n_mels must be at least 1");
  if (n_ceps < 1 || n_ceps > n_mels)
    throw ConfigError("n_ceps (" + std::to_string(n_ceps) +
                      ") must lie in [1, n_mels=" + std::to_string(n_mels) +
                      "]");
  const double hi = UpperEdge(sample_rate);
  if (fmin < 0.0 || fmin >= hi || hi > sample_rate / 2.0)
    throw ConfigError("mel band edges must satisfy 0 <= fmin < fmax <= "
                      "sample_rate/2");
}

MelFilterbank::MelFilterbank(const MelConfig &config, double sample_rate)
    : num_bins_(config.n_fft / 2 + 1) {
  config.Validate(sample_rate);
  const double mel_lo = HzToMel(config.fmin);
  const double mel_hi = HzToMel(config.UpperEdge(sample_rate));
  const double step = (mel_hi - mel_lo) / (config.n_mels + 1);
  const double bin_hz = sample_rate / config.n_fft;
  filters_.resize(config.n_mels);
  for (int m = 0; m < config.n_mels; ++m) {
    const double left = mel_lo + m * step;
    const double centre = left + step;
    const double right = centre + step;
    Filter &filter = filters_[m];
    filter.first_bin = -1;
    for (int k = 0; k < num_bins_; ++k) {
      const double mel = HzToMel(k * bin_hz);
      double w = 0.0;
      if (mel > left && mel <= centre)
        w = (mel - left) / (centre - left);
      else if (mel > centre && mel < right)
        w = (right - mel) / (right - centre);
      if (w <= 0.0) continue;
      if (filter.first_bin < 0) filter.first_bin = k;
      filter.weights.resize(k - filter.first_bin + 1, 0.0);
      filter.weights[k - filter.first_bin] = w;
    }
    if (filter.first_bin < 0)
      throw ConfigError("mel filter " + std::to_string(m) +
                        " covers no FFT bin; use fewer filters or a larger "
                        "n_fft");
  }
}

std::vector<double> MelFilterbank::Apply(std::span<const double> power,
                                         bool log) const {
  if (static_cast<int>(power.size()) != num_bins_)
    throw DimensionError("power spectrum has " +
                         std::to_string(power.size()) + " bins, expected " +
                         std::to_string(num_bins_));
  std::vector<double> out(filters_.size());
  for (std::size_t m = 0; m < filters_.size(); ++m) {
    const Filter &f = filters_[m];
    double sum = 0.0;
    for (std::size_t i = 0; i < f.weights.size(); ++i)
      sum += f.weights[i] * power[f.first_bin + i];
    out[m] = log ? std::log(std::max(sum, kLogFloor)) : sum;
  }
  return out;
}

Dct::Dct(int num_in, int num_out) : num_in_(num_in), num_out_(num_out) {
  if (num_in < 1 || num_out < 1 || num_out > num_in)
    throw ConfigError("DCT: cannot keep " + std::to_string(num_out) +
                      " of " + std::to_string(num_in) + " coefficients");
  basis_.resize(static_cast<std::size_t>(num_out) * num_in);
  const double n = num_in;
  for (int k = 0; k < num_out; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int i = 0; i < num_in; ++i)
      basis_[k * num_in + i] =
          scale * std::cos(std::numbers::pi * k * (i + 0.5) / n);
  }
}

std::vector<double> Dct::Apply(std::span<const double> input) const {
  if (static_cast<int>(input.size()) != num_in_)
    throw DimensionError("DCT input has " + std::to_string(input.size()) +
                         " values, expected " + std::to_string(num_in_));
  std::vector<double> out(num_out_, 0.0);
  for (int k = 0; k < num_out_; ++k) {
    const double *row = &basis_[k * num_in_];
    double sum = 0.0;
    for (int i = 0; i < num_in_; ++i) sum += row[i] * input[i];
    out[k] = sum;
  }
  return out;
}

std::vector<double> ComputeMfcc(std::span<const double> log_fbank,
                                int n_ceps) {
  return Dct(static_cast<int>(log_fbank.size()), n_ceps).Apply(log_fbank);
}

}  // namespace ekrt
