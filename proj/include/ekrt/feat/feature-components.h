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

// include/ekrt/feat/feature-components.h

#ifndef EKRT_FEAT_FEATURE_COMPONENTS_H_
#define EKRT_FEAT_FEATURE_COMPONENTS_H_

#include <memory>
#include <vector>

#include "ekrt/feat/feature-extractor.h"
#include "ekrt/feat/frame-cutter.h"
#include "ekrt/feat/online-transforms.h"
#include "ekrt/pipeline/component.h"

namespace ekrt {

// AudioChunk -> FrameBlock. An endpoint or eos on the audio ends the
// current framing run.
class FrameCutterComponent : public Component {
 public:
  explicit FrameCutterComponent(const FrameConfig &config,
                                std::string name = "cutter");
  PayloadKind input_kind() const override { return PayloadKind::kAudio; }
  PayloadKind output_kind() const override { return PayloadKind::kFrames; }

 protected:
  void Process(Packet packet, ComponentContext &ctx) override;

 private:
  OnlineFrameCutter cutter_;
};

// FrameBlock -> FeatureMatrix: per-frame features, then an optional
// streaming processor (deltas, CMVN, splice, affine). Endpoints flush the
// processor.
class FeatureComponent : public Component {
 public:
  FeatureComponent(FrameFeatureExtractor extractor,
                   std::unique_ptr<FeatureProcessor> post = nullptr,
                   std::string name = "features");
  PayloadKind input_kind() const override { return PayloadKind::kFrames; }
  PayloadKind output_kind() const override { return PayloadKind::kFeatures; }
  std::size_t dims() const;

 protected:
  void Process(Packet packet, ComponentContext &ctx) override;

 private:
  FrameFeatureExtractor extractor_;
  std::unique_ptr<FeatureProcessor> post_;
};

// FeatureMatrix -> FeatureMatrix through a streaming processor.
class ProcessorComponent : public Component {
 public:
  explicit ProcessorComponent(std::unique_ptr<FeatureProcessor> processor,
                              std::string name = "processor");
  PayloadKind input_kind() const override { return PayloadKind::kFeatures; }
  PayloadKind output_kind() const override { return PayloadKind::kFeatures; }

 protected:
  void Process(Packet packet, ComponentContext &ctx) override;

 private:
  std::unique_ptr<FeatureProcessor> processor_;
};

struct MixtureBranch {
  FrameFeatureExtractor extractor;
  std::unique_ptr<FeatureProcessor> post;  // may be null
};

// Fan-in of several feature streams computed from the same frames. Each
// branch may lag by its own look-ahead; rows are released once every
// branch has produced them, concatenated in branch order, and then passed
// through the optional post processor.
class MixtureComponent : public Component {
 public:
  MixtureComponent(std::vector<MixtureBranch> branches,
                   std::unique_ptr<FeatureProcessor> post = nullptr,
                   std::string name = "mixture");
  PayloadKind input_kind() const override { return PayloadKind::kFrames; }
  PayloadKind output_kind() const override { return PayloadKind::kFeatures; }
  std::size_t dims() const;

 protected:
  void Process(Packet packet, ComponentContext &ctx) override;

 private:
  FeatureMatrix Release();

  std::vector<MixtureBranch> branches_;
  std::unique_ptr<FeatureProcessor> post_;
  std::vector<FeatureMatrix> pending_;
};

}  // namespace ekrt

#endif  // EKRT_FEAT_FEATURE_COMPONENTS_H_
