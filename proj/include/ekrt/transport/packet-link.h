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

// include/ekrt/transport/packet-link.h

#ifndef EKRT_TRANSPORT_PACKET_LINK_H_
#define EKRT_TRANSPORT_PACKET_LINK_H_

#include <chrono>
#include <cstdint>
#include <optional>

#include "ekrt/transport/byte-stream.h"
#include "ekrt/transport/wire.h"

namespace ekrt {

struct SenderConfig {
  int max_retries = 3;  // resends after the first attempt
  std::chrono::milliseconds ack_timeout{5000};
};

// Stop-and-wait sender. Wire seq counts messages from 0.
class PacketSender {
 public:
  PacketSender(ByteStream &stream, SenderConfig config = {},
               const PayloadCodec &codec = DefaultCodec());

  // Returns the OK ack. Resends on CRC_FAIL, BAD_HEADER or a missing ack.
  // Throws TransportError on SEQ_GAP or after max_retries resends.
  Ack Send(const Packet &packet);

  std::uint32_t next_seq() const { return seq_; }
  std::int64_t attempts() const { return attempts_; }
  std::int64_t resends() const { return resends_; }

 private:
  std::optional<Ack> AwaitAck();

  ByteStream &stream_;
  SenderConfig config_;
  const PayloadCodec &codec_;
  std::uint32_t seq_ = 0;
  std::int64_t attempts_ = 0;
  std::int64_t resends_ = 0;
};

// Receiving side: verifies every message, acks it and yields each new
// packet once, in order.
class PacketReceiver {
 public:
  explicit PacketReceiver(ByteStream &stream,
                          const PayloadCodec &codec = DefaultCodec());

  // nullopt on end of stream. Throws TransportError on a sequence gap or
  // an undecodable verified payload.
  std::optional<Packet> Next();

  std::uint32_t expected_seq() const { return expected_; }
  std::int64_t rejected() const { return rejected_; }
  std::int64_t duplicates() const { return duplicates_; }

 private:
  void SendAck(AckStatus status, std::uint32_t seq);

  ByteStream &stream_;
  const PayloadCodec &codec_;
  std::uint32_t expected_ = 0;
  std::int64_t rejected_ = 0;
  std::int64_t duplicates_ = 0;
};

}  // namespace ekrt

#endif  // EKRT_TRANSPORT_PACKET_LINK_H_
