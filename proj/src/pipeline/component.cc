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

#include "ekrt/pipeline/component.h"

#include <utility>

namespace ekrt {

void ComponentContext::Emit(Payload payload, PacketFlags flags) {
  Packet packet;
  packet.payload = std::move(payload);
  packet.flags = flags;
  if (!IsWellFormed(packet)) return;
  packet.seq = next_seq_;
  out_.Put(std::move(packet));
  ++next_seq_;
  if (flags.eos) eos_emitted_ = true;
}

void Component::Run(ComponentContext &ctx) {
  while (auto packet = ctx.Receive()) {
    if (!packet->is_empty() && packet->kind() != input_kind())
      throw Error(name() + ": expected " +
                  std::string(PayloadKindName(input_kind())) +
                  " packet, got " +
                  std::string(PayloadKindName(packet->kind())));
    const bool eos = packet->flags.eos;
    Process(std::move(*packet), ctx);
    if (eos) break;
  }
}

void Component::Process(Packet packet, ComponentContext &ctx) {
  ctx.Emit(std::move(packet.payload), packet.flags);
}

}  // namespace ekrt
