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

#include "ekrt/feat/feature-components.h"

#include <algorithm>

#include "ekrt/feat/feature-transforms.h"

namespace ekrt {
namespace {

// Appends b to a; an empty a takes b's frame index.
void Extend(FeatureMatrix &a, FeatureMatrix b) {
  if (b.frames() == 0) return;
  if (a.frames() == 0) {
    a = std::move(b);
    return;
  }
  a.data.AppendRows(b.data);
}

void EmitFeatures(ComponentContext &ctx, FeatureMatrix f, PacketFlags flags) {
  if (f.frames() == 0)
    ctx.Emit(EmptyPayload{}, flags);
  else
    ctx.Emit(std::move(f), flags);
}

}  // namespace

FrameCutterComponent::FrameCutterComponent(const FrameConfig &config,
                                           std::string name)
    : Component(std::move(name)), cutter_(config) {}

void FrameCutterComponent::Process(Packet packet, ComponentContext &ctx) {
  FrameBlock out;
  if (const auto *a = std::get_if<AudioChunk>(&packet.payload)) {
    if (static_cast<int>(a->sample_rate) != cutter_.config().sample_rate)
      throw ConfigError(name() + ": audio at " +
                        std::to_string(a->sample_rate) + " Hz, expected " +
                        std::to_string(cutter_.config().sample_rate));
    out = cutter_.Accept(PcmToUnit(a->samples));
  }
  if (packet.flags.any()) {
    FrameBlock tail = cutter_.Finish();
    if (out.frames.rows() == 0)
      out = std::move(tail);
    else
      out.frames.AppendRows(tail.frames);
  }
  if (out.frames.rows() == 0)
    ctx.Emit(EmptyPayload{}, packet.flags);
  else
    ctx.Emit(std::move(out), packet.flags);
}

FeatureComponent::FeatureComponent(FrameFeatureExtractor extractor,
                                   std::unique_ptr<FeatureProcessor> post,
                                   std::string name)
    : Component(std::move(name)),
      extractor_(std::move(extractor)),
      post_(std::move(post)) {}

std::size_t FeatureComponent::dims() const {
  const std::size_t d = extractor_.dims();
  return post_ ? post_->OutputDims(d) : d;
}

void FeatureComponent::Process(Packet packet, ComponentContext &ctx) {
  FeatureMatrix out;
  if (const auto *f = std::get_if<FrameBlock>(&packet.payload)) {
    out = extractor_.Compute(*f);
    if (post_) out = post_->Accept(out);
  }
  if (post_ && packet.flags.any()) Extend(out, post_->Flush());
  EmitFeatures(ctx, std::move(out), packet.flags);
}

ProcessorComponent::ProcessorComponent(
    std::unique_ptr<FeatureProcessor> processor, std::string name)
    : Component(std::move(name)), processor_(std::move(processor)) {
  if (!processor_) throw ConfigError("processor component: no processor");
}

void ProcessorComponent::Process(Packet packet, ComponentContext &ctx) {
  FeatureMatrix out;
  if (const auto *f = std::get_if<FeatureMatrix>(&packet.payload))
    out = processor_->Accept(*f);
  if (packet.flags.any()) Extend(out, processor_->Flush());
  EmitFeatures(ctx, std::move(out), packet.flags);
}

MixtureComponent::MixtureComponent(std::vector<MixtureBranch> branches,
                                   std::unique_ptr<FeatureProcessor> post,
                                   std::string name)
    : Component(std::move(name)),
      branches_(std::move(branches)),
      post_(std::move(post)),
      pending_(branches_.size()) {
  if (branches_.empty()) throw ConfigError("mixture: no branches");
}

std::size_t MixtureComponent::dims() const {
  std::size_t d = 0;
  for (const MixtureBranch &b : branches_) {
    const std::size_t e = b.extractor.dims();
    d += b.post ? b.post->OutputDims(e) : e;
  }
  return post_ ? post_->OutputDims(d) : d;
}

FeatureMatrix MixtureComponent::Release() {
  std::size_t ready = pending_[0].frames();
  for (const FeatureMatrix &p : pending_) ready = std::min(ready, p.frames());
  if (ready == 0) return {};
  std::vector<FeatureMatrix> parts;
  for (FeatureMatrix &p : pending_) {
    parts.push_back({p.data.RowRange(0, ready), p.first_frame});
    FeatureMatrix rest{p.data.RowRange(ready, p.frames()),
                       p.first_frame + static_cast<std::int64_t>(ready)};
    p = std::move(rest);
  }
  return ConcatStreams(parts);
}

void MixtureComponent::Process(Packet packet, ComponentContext &ctx) {
  const auto *frames = std::get_if<FrameBlock>(&packet.payload);
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    MixtureBranch &b = branches_[i];
    FeatureMatrix out;
    if (frames) {
      out = b.extractor.Compute(*frames);
      if (b.post) out = b.post->Accept(out);
    }
    if (b.post && packet.flags.any()) Extend(out, b.post->Flush());
    Extend(pending_[i], std::move(out));
  }
  FeatureMatrix mixed = Release();
  if (packet.flags.any())
    for (const FeatureMatrix &p : pending_)
      if (p.frames() != 0)
        throw DimensionError(name() + ": branches disagree on frame count "
                             "at a segment end");
  if (post_) {
    mixed = post_->Accept(mixed);
    if (packet.flags.any()) Extend(mixed, post_->Flush());
  }
  EmitFeatures(ctx, std::move(mixed), packet.flags);
}

}  // namespace ekrt
