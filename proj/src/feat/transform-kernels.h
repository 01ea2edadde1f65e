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

// Row kernels shared by the whole-matrix and streaming transforms, so that
// both produce bit-identical output.

#ifndef EKRT_SRC_FEAT_TRANSFORM_KERNELS_H_
#define EKRT_SRC_FEAT_TRANSFORM_KERNELS_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ekrt/feat/feature-transforms.h"

namespace ekrt::internal {

// row(i) must return the input frame i for i in [lo, hi]; frame t is
// computed with indices clamped into that range.
template <typename RowFn>
void DeltaRow(const std::vector<std::vector<double>> &taps, std::int64_t t,
              std::int64_t lo, std::int64_t hi, std::size_t dims, RowFn row,
              std::span<double> out) {
  for (std::size_t order = 0; order < taps.size(); ++order) {
    const auto &tap = taps[order];
    const std::int64_t half = static_cast<std::int64_t>(tap.size() / 2);
    auto dst = out.subspan(order * dims, dims);
    std::fill(dst.begin(), dst.end(), 0.0);
    for (std::int64_t j = -half; j <= half; ++j) {
      const double w = tap[j + half];
      if (w == 0.0) continue;
      const std::span<const double> src = row(std::clamp(t + j, lo, hi));
      for (std::size_t d = 0; d < dims; ++d) dst[d] += w * src[d];
    }
  }
}

template <typename RowFn>
void SpliceRow(int left, int right, std::int64_t t, std::int64_t lo,
               std::int64_t hi, std::size_t dims, RowFn row,
               std::span<double> out) {
  std::size_t offset = 0;
  for (std::int64_t j = -left; j <= right; ++j) {
    const std::span<const double> src = row(std::clamp(t + j, lo, hi));
    std::copy(src.begin(), src.end(), out.begin() + offset);
    offset += dims;
  }
}

// Normalizes 'current' with statistics over row(0..count-1) (oldest
// first). Two-pass mean/variance for numerical robustness.
template <typename RowFn>
void CmvnRow(bool normalize_variance, std::size_t count, std::size_t dims,
             RowFn row, std::span<const double> current,
             std::span<double> out) {
  std::vector<double> mean(dims, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::span<const double> r = row(i);
    for (std::size_t d = 0; d < dims; ++d) mean[d] += r[d];
  }
  for (double &m : mean) m /= static_cast<double>(count);
  if (!normalize_variance) {
    for (std::size_t d = 0; d < dims; ++d) out[d] = current[d] - mean[d];
    return;
  }
  std::vector<double> var(dims, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::span<const double> r = row(i);
    for (std::size_t d = 0; d < dims; ++d) {
      const double c = r[d] - mean[d];
      var[d] += c * c;
    }
  }
  for (std::size_t d = 0; d < dims; ++d) {
    const double sd = std::sqrt(var[d] / static_cast<double>(count));
    out[d] = (current[d] - mean[d]) / std::max(sd, kStdFloor);
  }
}

inline void AffineRow(const AffineTransform &t, std::span<const double> in,
                      std::span<double> out) {
  const std::size_t in_dims = t.in_dims();
  for (std::size_t r = 0; r < t.out_dims(); ++r) {
    const std::span<const double> w = t.linear.Row(r);
    double sum = t.bias.empty() ? 0.0 : t.bias[r];
    for (std::size_t c = 0; c < in_dims; ++c) sum += w[c] * in[c];
    out[r] = sum;
  }
}

}  // namespace ekrt::internal

#endif  // EKRT_SRC_FEAT_TRANSFORM_KERNELS_H_
