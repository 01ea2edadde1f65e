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

// include/ekrt/feat/online-transforms.h

#ifndef EKRT_FEAT_ONLINE_TRANSFORMS_H_
#define EKRT_FEAT_ONLINE_TRANSFORMS_H_

#include <cstdint>
#include <deque>
#include <memory>
#include <vector>

#include "ekrt/feat/feature-transforms.h"
#include "ekrt/pipeline/packet.h"

namespace ekrt {

// Streaming feature transform. Accept() consumes any number of frames and
// returns the frames that are complete; Flush() ends the current segment
// (endpoint or end of stream), returns everything still pending using
// boundary replication, and starts a fresh segment.
class FeatureProcessor {
 public:
  virtual ~FeatureProcessor() = default;
  virtual FeatureMatrix Accept(const FeatureMatrix &input) = 0;
  virtual FeatureMatrix Flush() = 0;
  virtual std::size_t OutputDims(std::size_t input_dims) const = 0;
  // Frames of look-ahead needed before a frame can be emitted.
  virtual int look_ahead() const { return 0; }
};

// Buffers the current segment's frames that are still within reach of
// left/right context.
class ContextBuffer {
 public:
  void Push(const FeatureMatrix &input);
  // Drop frames older than 'keep_from' (segment-local index).
  void Trim(std::int64_t keep_from);
  void Reset();

  std::span<const double> Row(std::int64_t local) const;
  std::int64_t received() const { return received_; }
  std::int64_t first_abs_frame() const { return first_abs_; }
  std::size_t dims() const { return dims_; }
  bool started() const { return started_; }

 private:
  std::deque<std::vector<double>> rows_;
  std::int64_t base_ = 0;       // local index of rows_.front()
  std::int64_t received_ = 0;   // frames received in this segment
  std::int64_t first_abs_ = 0;  // absolute index of local frame 0
  std::size_t dims_ = 0;
  bool started_ = false;
};

class OnlineDelta : public FeatureProcessor {
 public:
  explicit OnlineDelta(const DeltaConfig &config);
  FeatureMatrix Accept(const FeatureMatrix &input) override;
  FeatureMatrix Flush() override;
  std::size_t OutputDims(std::size_t d) const override {
    return d * (config_.order + 1);
  }
  int look_ahead() const override { return config_.look_ahead(); }

 private:
  FeatureMatrix Emit(std::int64_t ready, bool at_end);

  DeltaConfig config_;
  std::vector<std::vector<double>> taps_;
  ContextBuffer buffer_;
  std::int64_t next_out_ = 0;
};

class OnlineSplice : public FeatureProcessor {
 public:
  explicit OnlineSplice(const SpliceConfig &config);
  FeatureMatrix Accept(const FeatureMatrix &input) override;
  FeatureMatrix Flush() override;
  std::size_t OutputDims(std::size_t d) const override {
    return d * (config_.left + config_.right + 1);
  }
  int look_ahead() const override { return config_.right; }

 private:
  FeatureMatrix Emit(std::int64_t ready, bool at_end);

  SpliceConfig config_;
  ContextBuffer buffer_;
  std::int64_t next_out_ = 0;
};

// Causal trailing-window CMVN. Statistics carry across segments; the
// window restarts only on Reset().
class OnlineSlidingCmvn : public FeatureProcessor {
 public:
  explicit OnlineSlidingCmvn(const CmvnConfig &config);
  FeatureMatrix Accept(const FeatureMatrix &input) override;
  FeatureMatrix Flush() override;
  std::size_t OutputDims(std::size_t d) const override { return d; }
  void Reset() { history_.clear(); }

 private:
  CmvnConfig config_;
  std::deque<std::vector<double>> history_;
};

class OnlineAffine : public FeatureProcessor {
 public:
  explicit OnlineAffine(AffineTransform transform);
  FeatureMatrix Accept(const FeatureMatrix &input) override;
  FeatureMatrix Flush() override;
  std::size_t OutputDims(std::size_t) const override {
    return transform_.out_dims();
  }

 private:
  AffineTransform transform_;
  std::int64_t next_frame_ = 0;
};

// Runs processors in sequence.
class ProcessorPipeline : public FeatureProcessor {
 public:
  ProcessorPipeline() = default;
  void Add(std::unique_ptr<FeatureProcessor> processor);
  bool empty() const { return stages_.empty(); }

  FeatureMatrix Accept(const FeatureMatrix &input) override;
  FeatureMatrix Flush() override;
  std::size_t OutputDims(std::size_t d) const override;
  int look_ahead() const override;

 private:
  std::vector<std::unique_ptr<FeatureProcessor>> stages_;
};

}  // namespace ekrt

#endif  // EKRT_FEAT_ONLINE_TRANSFORMS_H_
