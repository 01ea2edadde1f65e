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

#include "ekrt/transport/transport-components.h"

#include <chrono>

namespace ekrt {

SenderComponent::SenderComponent(PayloadKind kind, StreamFactory connect,
                                 SenderConfig config, std::string name)
    : Component(std::move(name)),
      kind_(kind),
      connect_(std::move(connect)),
      config_(config) {}

void SenderComponent::Initialize() {
  stream_ = connect_();
  if (!stream_) throw TransportError(name() + ": no connection");
  sender_ = std::make_unique<PacketSender>(*stream_, config_);
}

void SenderComponent::Process(Packet packet, ComponentContext &ctx) {
  const PacketFlags flags = packet.flags;
  sender_->Send(packet);
  if (flags.eos) {
    stream_->CloseWrite();
    ctx.Emit(EmptyPayload{}, flags);
  }
}

ReceiverComponent::ReceiverComponent(PayloadKind kind, StreamFactory accept,
                                     std::string name)
    : Component(std::move(name)), kind_(kind), accept_(std::move(accept)) {}

void ReceiverComponent::Initialize() {
  stream_ = accept_();
  if (!stream_) throw TransportError(name() + ": no connection");
  receiver_ = std::make_unique<PacketReceiver>(*stream_);
}

void ReceiverComponent::Run(ComponentContext &ctx) {
  using namespace std::chrono_literals;
  for (;;) {
    while (!stream_->WaitReadable(100ms))
      if (ctx.StopRequested()) return;
    std::optional<Packet> p = receiver_->Next();
    if (!p) throw TransportError(name() + ": peer closed before eos");
    if (!p->is_empty() && p->kind() != kind_)
      throw TransportError(name() + ": expected " +
                           std::string(PayloadKindName(kind_)) +
                           " packets, got " +
                           std::string(PayloadKindName(p->kind())));
    const bool eos = p->flags.eos;
    ctx.Emit(std::move(p->payload), p->flags);
    if (eos) return;
  }
}

}  // namespace ekrt
