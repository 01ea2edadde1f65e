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

#include "ekrt/feat/feature-transforms.h"

#include <string>

#include "ekrt/base/error.h"
#include "transform-kernels.h"

namespace ekrt {

void DeltaConfig::Validate() const {
  if (order < 0 || order > 2)
    throw ConfigError("delta order must be 0, 1 or 2");
  if (half_window < 1) throw ConfigError("delta half_window must be >= 1");
}

void SpliceConfig::Validate() const {
  if (left < 0 || right < 0)
    throw ConfigError("splice context must be non-negative");
}

void CmvnConfig::Validate() const {
  if (window < 1) throw ConfigError("cmvn window must be >= 1 frame");
}

std::vector<std::vector<double>> DeltaTaps(const DeltaConfig &config) {
  config.Validate();
  const int w = config.half_window;
  double norm = 0.0;
  for (int k = 1; k <= w; ++k) norm += 2.0 * k * k;
  std::vector<std::vector<double>> taps(config.order + 1);
  taps[0] = {1.0};
  for (int i = 1; i <= config.order; ++i) {
    const auto &prev = taps[i - 1];
    const int prev_half = static_cast<int>(prev.size() / 2);
    const int half = prev_half + w;
    taps[i].assign(2 * half + 1, 0.0);
    for (int j = -w; j <= w; ++j) {
      if (j == 0) continue;
      for (int k = -prev_half; k <= prev_half; ++k)
        taps[i][j + k + half] += j * prev[k + prev_half] / norm;
    }
  }
  return taps;
}

Matrix ComputeDeltas(const Matrix &feats, const DeltaConfig &config) {
  const auto taps = DeltaTaps(config);
  const std::size_t dims = feats.cols();
  Matrix out(feats.rows(), dims * (config.order + 1));
  if (feats.empty()) return out;
  const std::int64_t hi = static_cast<std::int64_t>(feats.rows()) - 1;
  auto row = [&](std::int64_t i) { return feats.Row(i); };
  for (std::int64_t t = 0; t <= hi; ++t)
    internal::DeltaRow(taps, t, 0, hi, dims, row, out.Row(t));
  return out;
}

Matrix Splice(const Matrix &feats, const SpliceConfig &config) {
  config.Validate();
  const std::size_t dims = feats.cols();
  Matrix out(feats.rows(), dims * (config.left + config.right + 1));
  if (feats.empty()) return out;
  const std::int64_t hi = static_cast<std::int64_t>(feats.rows()) - 1;
  auto row = [&](std::int64_t i) { return feats.Row(i); };
  for (std::int64_t t = 0; t <= hi; ++t)
    internal::SpliceRow(config.left, config.right, t, 0, hi, dims, row,
                        out.Row(t));
  return out;
}

Matrix SlidingCmvn(const Matrix &feats, const CmvnConfig &config) {
  config.Validate();
  const std::size_t dims = feats.cols();
  Matrix out(feats.rows(), dims);
  for (std::size_t t = 0; t < feats.rows(); ++t) {
    const std::size_t begin =
        t + 1 >= static_cast<std::size_t>(config.window) ? t + 1 - config.window
                                                          : 0;
    auto row = [&](std::size_t i) { return feats.Row(begin + i); };
    internal::CmvnRow(config.normalize_variance, t - begin + 1, dims, row,
                      feats.Row(t), out.Row(t));
  }
  return out;
}

AffineTransform AffineTransform::FromMatrix(const Matrix &m,
                                            std::size_t in_dims) {
  AffineTransform t;
  if (m.cols() == in_dims) {
    t.linear = m;
  } else if (m.cols() == in_dims + 1) {
    t.linear.Resize(m.rows(), in_dims);
    t.bias.resize(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < in_dims; ++c) t.linear(r, c) = m(r, c);
      t.bias[r] = m(r, in_dims);
    }
  } else {
    throw DimensionError("transform has " + std::to_string(m.cols()) +
                         " columns; expected " + std::to_string(in_dims) +
                         " or " + std::to_string(in_dims + 1) +
                         " (with bias)");
  }
  return t;
}

void AffineTransform::Validate() const {
  if (linear.rows() == 0 || linear.cols() == 0)
    throw DimensionError("empty affine transform");
  if (!bias.empty() && bias.size() != linear.rows())
    throw DimensionError("bias has " + std::to_string(bias.size()) +
                         " values for " + std::to_string(linear.rows()) +
                         " outputs");
}

Matrix ApplyAffine(const Matrix &feats, const AffineTransform &transform) {
  transform.Validate();
  if (!feats.empty() && feats.cols() != transform.in_dims())
    throw DimensionError("affine transform expects " +
                         std::to_string(transform.in_dims()) +
                         " dims, features have " +
                         std::to_string(feats.cols()));
  Matrix out(feats.rows(), transform.out_dims());
  for (std::size_t t = 0; t < feats.rows(); ++t)
    internal::AffineRow(transform, feats.Row(t), out.Row(t));
  return out;
}

FeatureMatrix ConcatStreams(std::span<const FeatureMatrix> blocks) {
  FeatureMatrix out;
  if (blocks.empty()) return out;
  const FeatureMatrix &ref = blocks.front();
  std::size_t dims = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const FeatureMatrix &b = blocks[i];
    if (b.first_frame != ref.first_frame || b.frames() != ref.frames())
      throw DimensionError(
          "stream " + std::to_string(i) + " covers frames [" +
          std::to_string(b.first_frame) + ", " +
          std::to_string(b.first_frame + static_cast<std::int64_t>(b.frames())) +
          "), stream 0 covers [" + std::to_string(ref.first_frame) + ", " +
          std::to_string(ref.first_frame +
                         static_cast<std::int64_t>(ref.frames())) +
          ")");
    dims += b.dims();
  }
  out.first_frame = ref.first_frame;
  out.data.Resize(ref.frames(), dims);
  for (std::size_t t = 0; t < ref.frames(); ++t) {
    auto dst = out.data.Row(t);
    std::size_t offset = 0;
    for (const FeatureMatrix &b : blocks) {
      auto src = b.data.Row(t);
      std::copy(src.begin(), src.end(), dst.begin() + offset);
      offset += b.dims();
    }
  }
  return out;
}

}  // namespace ekrt
