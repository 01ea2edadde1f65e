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

// include/ekrt/feat/feature-transforms.h
//
// Whole-matrix feature transforms. Boundary frames are replicated for
// deltas and splicing; sliding CMVN is causal.

#ifndef EKRT_FEAT_FEATURE_TRANSFORMS_H_
#define EKRT_FEAT_FEATURE_TRANSFORMS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ekrt/base/matrix.h"
#include "ekrt/pipeline/packet.h"

namespace ekrt {

struct DeltaConfig {
  int order = 2;
  int half_window = 2;
  void Validate() const;
  int look_ahead() const { return order * half_window; }
};

struct SpliceConfig {
  int left = 0;
  int right = 0;
  void Validate() const;
};

inline constexpr double kStdFloor = 1e-8;

struct CmvnConfig {
  int window = 600;
  bool normalize_variance = false;
  void Validate() const;
};

// Filter taps per order: taps[0] = {1}, taps[i] is taps[i-1] convolved
// with the first-order regression filter. taps[i] is centred, of length
// 2 * i * half_window + 1.
std::vector<std::vector<double>> DeltaTaps(const DeltaConfig &config);

// Output dims = dims * (order + 1): statics, then delta, then delta-delta.
Matrix ComputeDeltas(const Matrix &feats, const DeltaConfig &config);

// Output dims = dims * (left + right + 1); row t concatenates
// x[t-left] .. x[t+right].
Matrix Splice(const Matrix &feats, const SpliceConfig &config);

// Frame t is normalized with statistics of frames max(0, t-window+1)..t.
Matrix SlidingCmvn(const Matrix &feats, const CmvnConfig &config);

// Precomputed linear transform (LDA+MLLT and similar), applied as
// linear * x + bias.
struct AffineTransform {
  Matrix linear;              // out_dims x in_dims
  std::vector<double> bias;   // empty or out_dims

  std::size_t in_dims() const { return linear.cols(); }
  std::size_t out_dims() const { return linear.rows(); }

  // A matrix with in_dims + 1 columns carries the bias in its last column.
  static AffineTransform FromMatrix(const Matrix &m, std::size_t in_dims);
  void Validate() const;
};

Matrix ApplyAffine(const Matrix &feats, const AffineTransform &transform);

// Row-wise concatenation in the given order. All blocks must cover the same
// frames; throws DimensionError naming the first misaligned block.
FeatureMatrix ConcatStreams(std::span<const FeatureMatrix> blocks);

}  // namespace ekrt

#endif  // EKRT_FEAT_FEATURE_TRANSFORMS_H_
