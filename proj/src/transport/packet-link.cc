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

#include "ekrt/transport/packet-link.h"

#include <string>

namespace ekrt {

PacketSender::PacketSender(ByteStream &stream, SenderConfig config,
                           const PayloadCodec &codec)
    : stream_(stream), config_(config), codec_(codec) {
  if (config_.max_retries < 0)
    throw ConfigError("sender: max_retries must be >= 0");
}

std::optional<Ack> PacketSender::AwaitAck() {
  const auto deadline = std::chrono::steady_clock::now() + config_.ack_timeout;
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0 || !stream_.WaitReadable(left)) return std::nullopt;
    std::array<std::uint8_t, kAckSize> buf;
    if (!stream_.ReadExact(buf))
      throw TransportError("sender: connection closed while awaiting ack " +
                           std::to_string(seq_));
    const Ack ack = DecodeAck(buf);
    // Late acks for earlier attempts are stale.
    if (ack.seq == seq_) return ack;
  }
}

Ack PacketSender::Send(const Packet &packet) {
  const Bytes msg = EncodeMessage(packet, seq_, codec_);
  for (int attempt = 0;; ++attempt) {
    ++attempts_;
    if (attempt > 0) ++resends_;
    stream_.Write(msg);
    const std::optional<Ack> ack = AwaitAck();
    if (ack && ack->status == AckStatus::kOk) {
      ++seq_;
      return *ack;
    }
    if (ack && ack->status == AckStatus::kSeqGap)
      throw TransportError("sender: receiver reported a sequence gap at " +
                           std::to_string(seq_));
    if (attempt == config_.max_retries)
      throw TransportError(
          "sender: packet " + std::to_string(seq_) + " not accepted after " +
          std::to_string(attempt + 1) + " attempts (last: " +
          (ack ? AckStatusName(ack->status) : "ack timeout") + ")");
  }
}

PacketReceiver::PacketReceiver(ByteStream &stream, const PayloadCodec &codec)
    : stream_(stream), codec_(codec) {}

void PacketReceiver::SendAck(AckStatus status, std::uint32_t seq) {
  stream_.Write(EncodeAck({status, seq}));
}

std::optional<Packet> PacketReceiver::Next() {
  for (;;) {
    std::array<std::uint8_t, kHeaderSize> header;
    if (!stream_.ReadExact(header)) return std::nullopt;
    const WireHeader h = ParseHeader(header);
    if (h.length > kMaxPayloadBytes) {
      SendAck(AckStatus::kBadHeader, h.seq);
      throw TransportError("receiver: length field " +
                           std::to_string(h.length) + " out of range");
    }
    Bytes payload(h.length);
    if (!payload.empty() && !stream_.ReadExact(payload))
      throw TransportError("receiver: connection closed mid-message");

    DecodeResult res = DecodeMessage(header, payload, codec_);
    if (res.status != AckStatus::kOk) {
      ++rejected_;
      SendAck(res.status, h.seq);
      continue;
    }
    if (h.seq < expected_) {
      ++duplicates_;
      SendAck(AckStatus::kOk, h.seq);
      continue;
    }
    if (h.seq > expected_) {
      SendAck(AckStatus::kSeqGap, h.seq);
      throw TransportError("receiver: sequence gap, expected " +
                           std::to_string(expected_) + " got " +
                           std::to_string(h.seq));
    }
    ++expected_;
    SendAck(AckStatus::kOk, h.seq);
    return std::move(res.packet);
  }
}

}  // namespace ekrt
