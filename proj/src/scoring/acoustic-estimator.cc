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

#include "ekrt/scoring/acoustic-estimator.h"

#include <algorithm>

namespace ekrt {

void EstimatorConfig::Validate() const {
  if (left_context < 0 || right_context < 0)
    throw ConfigError("estimator: context must be >= 0");
  if (batch_size == 0) throw ConfigError("estimator: batch_size must be > 0");
}

LoglikBlock ScoreInBatches(Scorer &scorer, const FeatureMatrix &block,
                           std::size_t batch_size) {
  LoglikBlock out;
  out.first_frame = block.first_frame;
  out.data = Matrix(0, scorer.num_pdfs());
  for (std::size_t b = 0; b < block.frames(); b += batch_size) {
    const std::size_t e = std::min(block.frames(), b + batch_size);
    FeatureMatrix slice{block.data.RowRange(b, e),
                        block.first_frame + static_cast<std::int64_t>(b)};
    LoglikBlock part = scorer.Score(slice);
    if (part.data.rows() != e - b || part.data.cols() != scorer.num_pdfs())
      throw ScorerError("scorer returned a " +
                        std::to_string(part.data.rows()) + "x" +
                        std::to_string(part.data.cols()) +
                        " block for " + std::to_string(e - b) + " frames");
    out.data.AppendRows(part.data);
  }
  return out;
}

AcousticEstimator::AcousticEstimator(std::unique_ptr<Scorer> scorer,
                                     EstimatorConfig config, std::string name)
    : Component(std::move(name)), scorer_(std::move(scorer)), config_(config) {
  if (!scorer_) throw ConfigError("estimator: no scorer");
  config_.Validate();
  if (config_.left_context > 0 || config_.right_context > 0)
    splice_.emplace(SpliceConfig{config_.left_context, config_.right_context});
}

void AcousticEstimator::Process(Packet packet, ComponentContext &ctx) {
  FeatureMatrix ready;
  if (auto *f = std::get_if<FeatureMatrix>(&packet.payload)) {
    if (splice_)
      ready = splice_->Accept(*f);
    else
      ready = std::move(*f);
  }
  if (splice_ && packet.flags.any()) {
    FeatureMatrix tail = splice_->Flush();
    if (ready.frames() == 0)
      ready = std::move(tail);
    else
      ready.data.AppendRows(tail.data);
  }
  if (ready.frames() == 0) {
    ctx.Emit(EmptyPayload{}, packet.flags);
    return;
  }
  ready.first_frame = next_frame_;
  next_frame_ += static_cast<std::int64_t>(ready.frames());
  ctx.Emit(ScoreInBatches(*scorer_, ready, config_.batch_size), packet.flags);
}

}  // namespace ekrt
