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

#include "ekrt/feat/online-transforms.h"

#include <string>

#include "ekrt/base/error.h"
#include "transform-kernels.h"

namespace ekrt {

void ContextBuffer::Push(const FeatureMatrix &input) {
  if (input.frames() == 0) return;
  if (!started_) {
    started_ = true;
    first_abs_ = input.first_frame;
    dims_ = input.dims();
  } else if (input.dims() != dims_) {
    throw DimensionError("feature stream changed from " +
                         std::to_string(dims_) + " to " +
                         std::to_string(input.dims()) + " dims");
  }
  for (std::size_t r = 0; r < input.frames(); ++r) {
    auto row = input.data.Row(r);
    rows_.emplace_back(row.begin(), row.end());
  }
  received_ += static_cast<std::int64_t>(input.frames());
}

void ContextBuffer::Trim(std::int64_t keep_from) {
  while (base_ < keep_from && !rows_.empty()) {
    rows_.pop_front();
    ++base_;
  }
}

void ContextBuffer::Reset() {
  rows_.clear();
  base_ = 0;
  received_ = 0;
  first_abs_ = 0;
  started_ = false;
}

std::span<const double> ContextBuffer::Row(std::int64_t local) const {
  return rows_.at(static_cast<std::size_t>(local - base_));
}

OnlineDelta::OnlineDelta(const DeltaConfig &config)
    : config_(config), taps_(DeltaTaps(config)) {}

FeatureMatrix OnlineDelta::Emit(std::int64_t ready, bool at_end) {
  FeatureMatrix out;
  out.first_frame = buffer_.first_abs_frame() + next_out_;
  const std::size_t dims = buffer_.dims();
  out.data.Resize(0, OutputDims(dims));
  if (!buffer_.started()) return out;
  const std::int64_t hi = buffer_.received() - 1;
  std::vector<double> row(OutputDims(dims));
  auto get = [&](std::int64_t i) { return buffer_.Row(i); };
  for (; next_out_ < ready; ++next_out_) {
    internal::DeltaRow(taps_, next_out_, 0, hi, dims, get, row);
    out.data.AppendRow(row);
  }
  if (!at_end) buffer_.Trim(next_out_ - config_.look_ahead());
  return out;
}

FeatureMatrix OnlineDelta::Accept(const FeatureMatrix &input) {
  buffer_.Push(input);
  const std::int64_t ready = buffer_.received() - config_.look_ahead();
  return Emit(std::max<std::int64_t>(ready, next_out_), false);
}

FeatureMatrix OnlineDelta::Flush() {
  FeatureMatrix out = Emit(buffer_.received(), true);
  buffer_.Reset();
  next_out_ = 0;
  return out;
}

OnlineSplice::OnlineSplice(const SpliceConfig &config) : config_(config) {
  config_.Validate();
}

FeatureMatrix OnlineSplice::Emit(std::int64_t ready, bool at_end) {
  FeatureMatrix out;
  out.first_frame = buffer_.first_abs_frame() + next_out_;
  const std::size_t dims = buffer_.dims();
  out.data.Resize(0, OutputDims(dims));
  if (!buffer_.started()) return out;
  const std::int64_t hi = buffer_.received() - 1;
  std::vector<double> row(OutputDims(dims));
  auto get = [&](std::int64_t i) { return buffer_.Row(i); };
  for (; next_out_ < ready; ++next_out_) {
    internal::SpliceRow(config_.left, config_.right, next_out_, 0, hi, dims,
                        get, row);
    out.data.AppendRow(row);
  }
  if (!at_end) buffer_.Trim(next_out_ - config_.left);
  return out;
}

FeatureMatrix OnlineSplice::Accept(const FeatureMatrix &input) {
  buffer_.Push(input);
  const std::int64_t ready = buffer_.received() - config_.right;
  return Emit(std::max<std::int64_t>(ready, next_out_), false);
}

FeatureMatrix OnlineSplice::Flush() {
  FeatureMatrix out = Emit(buffer_.received(), true);
  buffer_.Reset();
  next_out_ = 0;
  return out;
}

OnlineSlidingCmvn::OnlineSlidingCmvn(const CmvnConfig &config)
    : config_(config) {
  config_.Validate();
}

FeatureMatrix OnlineSlidingCmvn::Accept(const FeatureMatrix &input) {
  FeatureMatrix out;
  out.first_frame = input.first_frame;
  const std::size_t dims = input.dims();
  out.data.Resize(input.frames(), dims);
  for (std::size_t t = 0; t < input.frames(); ++t) {
    auto row = input.data.Row(t);
    if (!history_.empty() && history_.front().size() != dims)
      throw DimensionError("cmvn: feature dims changed");
    history_.emplace_back(row.begin(), row.end());
    if (history_.size() > static_cast<std::size_t>(config_.window))
      history_.pop_front();
    auto get = [&](std::size_t i) {
      return std::span<const double>(history_[i]);
    };
    internal::CmvnRow(config_.normalize_variance, history_.size(), dims, get,
                      row, out.data.Row(t));
  }
  return out;
}

FeatureMatrix OnlineSlidingCmvn::Flush() { return {}; }

OnlineAffine::OnlineAffine(AffineTransform transform)
    : transform_(std::move(transform)) {
  transform_.Validate();
}

FeatureMatrix OnlineAffine::Accept(const FeatureMatrix &input) {
  FeatureMatrix out;
  out.first_frame = input.first_frame;
  out.data = ApplyAffine(input.data, transform_);
  next_frame_ = input.first_frame + static_cast<std::int64_t>(input.frames());
  return out;
}

FeatureMatrix OnlineAffine::Flush() {
  FeatureMatrix out;
  out.first_frame = next_frame_;
  out.data.Resize(0, transform_.out_dims());
  return out;
}

void ProcessorPipeline::Add(std::unique_ptr<FeatureProcessor> processor) {
  stages_.push_back(std::move(processor));
}

FeatureMatrix ProcessorPipeline::Accept(const FeatureMatrix &input) {
  FeatureMatrix current = input;
  for (auto &stage : stages_) current = stage->Accept(current);
  return current;
}

FeatureMatrix ProcessorPipeline::Flush() {
  // Stage k's flushed frames still have to pass through stages k+1.. before
  // those are flushed in turn.
  FeatureMatrix carried;
  bool have = false;
  for (auto &stage : stages_) {
    FeatureMatrix out;
    if (have && carried.frames() > 0) {
      out = stage->Accept(carried);
      out.data.AppendRows(stage->Flush().data);
    } else {
      out = stage->Flush();
    }
    carried = std::move(out);
    have = true;
  }
  return carried;
}

std::size_t ProcessorPipeline::OutputDims(std::size_t d) const {
  for (const auto &stage : stages_) d = stage->OutputDims(d);
  return d;
}

int ProcessorPipeline::look_ahead() const {
  int total = 0;
  for (const auto &stage : stages_) total += stage->look_ahead();
  return total;
}

}  // namespace ekrt
