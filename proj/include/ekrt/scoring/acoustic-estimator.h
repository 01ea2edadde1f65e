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

// include/ekrt/scoring/acoustic-estimator.h

#ifndef EKRT_SCORING_ACOUSTIC_ESTIMATOR_H_
#define EKRT_SCORING_ACOUSTIC_ESTIMATOR_H_

#include <memory>
#include <optional>

#include "ekrt/feat/online-transforms.h"
#include "ekrt/pipeline/component.h"
#include "ekrt/scoring/scorer.h"

namespace ekrt {

struct EstimatorConfig {
  // Context frames the model sees around each frame; the scorer receives
  // spliced rows of dims * (left + 1 + right).
  int left_context = 0;
  int right_context = 0;
  std::size_t batch_size = 16;  // frames per Score call
  void Validate() const;
};

// Scores block in slices of at most batch_size frames.
LoglikBlock ScoreInBatches(Scorer &scorer, const FeatureMatrix &block,
                           std::size_t batch_size);

// FeatureMatrix -> LoglikBlock. Endpoints close the context window like
// the splice processor does. Output frames are numbered consecutively
// from 0.
class AcousticEstimator : public Component {
 public:
  AcousticEstimator(std::unique_ptr<Scorer> scorer, EstimatorConfig config = {},
                    std::string name = "estimator");

  PayloadKind input_kind() const override { return PayloadKind::kFeatures; }
  PayloadKind output_kind() const override { return PayloadKind::kLoglik; }
  Scorer &scorer() { return *scorer_; }

 protected:
  void Process(Packet packet, ComponentContext &ctx) override;

 private:
  std::unique_ptr<Scorer> scorer_;
  EstimatorConfig config_;
  std::optional<OnlineSplice> splice_;
  std::int64_t next_frame_ = 0;
};

}  // namespace ekrt

#endif  // EKRT_SCORING_ACOUSTIC_ESTIMATOR_H_
