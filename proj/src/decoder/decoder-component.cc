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

#include "ekrt/decoder/decoder-component.h"

namespace ekrt {

DecoderComponent::DecoderComponent(std::shared_ptr<const Wfst> graph,
                                   const DecoderComponentConfig &config,
                                   std::string name)
    : Component(std::move(name)),
      decoder_(std::move(graph), config.decoder),
      config_(config) {}

void DecoderComponent::Process(Packet packet, ComponentContext &ctx) {
  if (const auto *block = std::get_if<LoglikBlock>(&packet.payload))
    decoder_.AdvanceBlock(block->data);
  if (!packet.flags.any()) {
    if (config_.emit_partials && decoder_.frames_decoded() > 0)
      ctx.Emit(HypothesisSet{{decoder_.PartialBest()}});
    return;
  }
  if (decoder_.frames_decoded() == 0) {
    ctx.Emit(EmptyPayload{}, packet.flags);
    return;
  }
  ++segments_;
  ctx.Emit(HypothesisSet{decoder_.FinalizeNbest()}, packet.flags);
}

}  // namespace ekrt
