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

#include "ekrt/vad/vad-component.h"

#include <utility>

namespace ekrt {

VadComponent::VadComponent(const VadConfig &config,
                           std::unique_ptr<SpeechDetector> detector,
                           std::string name)
    : Component(std::move(name)),
      filter_(config),
      detector_(std::move(detector)) {
  if (!detector_)
    detector_ = std::make_unique<EnergyDetector>(config.energy_threshold);
}

void VadComponent::EmitBlock(ComponentContext &ctx, PacketFlags flags) {
  const std::int64_t next = pending_.first_frame + pending_.frames.rows();
  if (pending_.frames.rows() == 0)
    ctx.Emit(EmptyPayload{}, flags);
  else
    ctx.Emit(std::move(pending_), flags);
  pending_ = FrameBlock{};
  pending_.first_frame = next;
}

void VadComponent::Process(Packet packet, ComponentContext &ctx) {
  if (auto *block = std::get_if<FrameBlock>(&packet.payload)) {
    const Matrix &frames = block->frames;
    for (std::size_t r = 0; r < frames.rows(); ++r) {
      const FilterDecision d = filter_.Push(detector_->Classify(frames.Row(r)));
      if (d.forward) {
        pending_.frames.AppendRow(frames.Row(r));
        ++forwarded_;
      } else {
        ++dropped_;
      }
      if (d.endpoint) {
        ++endpoints_;
        PacketFlags f;
        f.endpoint = true;
        EmitBlock(ctx, f);
      }
    }
  }
  if (pending_.frames.rows() > 0 || packet.flags.any()) {
    if (packet.flags.endpoint) filter_.Reset();
    EmitBlock(ctx, packet.flags);
  }
}

}  // namespace ekrt
