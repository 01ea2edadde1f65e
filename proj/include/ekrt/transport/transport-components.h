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

// include/ekrt/transport/transport-components.h

#ifndef EKRT_TRANSPORT_TRANSPORT_COMPONENTS_H_
#define EKRT_TRANSPORT_TRANSPORT_COMPONENTS_H_

#include <functional>
#include <memory>

#include "ekrt/pipeline/component.h"
#include "ekrt/transport/packet-link.h"

namespace ekrt {

// Opens the connection in Initialize, so that connect failures abort the
// chain start instead of surfacing from a worker thread.
using StreamFactory = std::function<std::unique_ptr<ByteStream>()>;

// Terminal stage of a client chain: ships every packet to the peer and
// emits nothing but the closing eos locally.
class SenderComponent : public Component {
 public:
  SenderComponent(PayloadKind kind, StreamFactory connect,
                  SenderConfig config = {}, std::string name = "sender");

  PayloadKind input_kind() const override { return kind_; }
  PayloadKind output_kind() const override { return kind_; }
  void Initialize() override;
  const PacketSender *sender() const { return sender_.get(); }

 protected:
  void Process(Packet packet, ComponentContext &ctx) override;

 private:
  PayloadKind kind_;
  StreamFactory connect_;
  SenderConfig config_;
  std::unique_ptr<ByteStream> stream_;
  std::unique_ptr<PacketSender> sender_;
};

// Source stage of a server chain.
class ReceiverComponent : public Component {
 public:
  ReceiverComponent(PayloadKind kind, StreamFactory accept,
                    std::string name = "receiver");

  PayloadKind input_kind() const override { return PayloadKind::kEmpty; }
  PayloadKind output_kind() const override { return kind_; }
  void Initialize() override;
  void Run(ComponentContext &ctx) override;
  const PacketReceiver *receiver() const { return receiver_.get(); }

 private:
  PayloadKind kind_;
  StreamFactory accept_;
  std::unique_ptr<ByteStream> stream_;
  std::unique_ptr<PacketReceiver> receiver_;
};

}  // namespace ekrt

#endif  // EKRT_TRANSPORT_TRANSPORT_COMPONENTS_H_
