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

// include/ekrt/transport/wire.h

#ifndef EKRT_TRANSPORT_WIRE_H_
#define EKRT_TRANSPORT_WIRE_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ekrt/base/error.h"
#include "ekrt/pipeline/packet.h"

namespace ekrt {

class TransportError : public Error {
 public:
  using Error::Error;
};

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::size_t kHeaderSize = 20;
inline constexpr std::size_t kAckSize = 5;
inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr std::array<std::uint8_t, 4> kWireMagic = {'E', 'K', 'R', 'T'};
// Larger length fields are treated as a broken header.
inline constexpr std::uint32_t kMaxPayloadBytes = 1u << 30;

enum class AckStatus : std::uint8_t {
  kOk = 0,
  kCrcFail = 1,
  kBadHeader = 2,
  kSeqGap = 3,
};

const char *AckStatusName(AckStatus status);

// Layout, little-endian:
//   0 magic[4] | 4 version | 5 ptype | 6 flags | 7 reserved
//   8 seq u32  | 12 length u32 | 16 crc32 u32
struct WireHeader {
  std::uint8_t ptype = 0;
  std::uint8_t flags = 0;  // bit0 endpoint, bit1 eos
  std::uint32_t seq = 0;
  std::uint32_t length = 0;
  std::uint32_t crc = 0;
};

std::array<std::uint8_t, kHeaderSize> EncodeHeader(const WireHeader &h);

// Fields are read regardless of validity so the payload can be skipped.
WireHeader ParseHeader(std::span<const std::uint8_t, kHeaderSize> bytes);

// kOk or kBadHeader: checks magic, version, reserved, ptype and length.
AckStatus CheckHeader(std::span<const std::uint8_t, kHeaderSize> bytes);

struct Ack {
  AckStatus status = AckStatus::kOk;
  std::uint32_t seq = 0;
  bool operator==(const Ack &) const = default;
};

std::array<std::uint8_t, kAckSize> EncodeAck(const Ack &ack);
Ack DecodeAck(std::span<const std::uint8_t, kAckSize> bytes);

std::uint8_t FlagsToByte(const PacketFlags &flags);
PacketFlags FlagsFromByte(std::uint8_t byte);

// Payload serialization. Replaceable so that callers can plug in their own
// encoding; the header and verification stay the same.
class PayloadCodec {
 public:
  virtual ~PayloadCodec() = default;
  virtual Bytes Encode(const Payload &payload) const = 0;
  // Throws FormatError on bytes that do not describe a payload of kind.
  virtual Payload Decode(PayloadKind kind,
                         std::span<const std::uint8_t> bytes) const = 0;
};

// Uncompressed default. Reals are float32; matrices are
// u32 first_frame, u32 rows, u32 cols, then row-major values. Audio is
// u32 sample_rate, u32 count, int16 samples. Hypothesis sets are u32
// count, then per entry u8 is_final, f32 cost, u32 n, i32 words[n].
class RawCodec : public PayloadCodec {
 public:
  Bytes Encode(const Payload &payload) const override;
  Payload Decode(PayloadKind kind,
                 std::span<const std::uint8_t> bytes) const override;
};

const PayloadCodec &DefaultCodec();

// Header and payload as one message. Throws TransportError if the payload
// does not fit the length field.
Bytes EncodeMessage(const Packet &packet, std::uint32_t wire_seq,
                    const PayloadCodec &codec = DefaultCodec());

struct DecodeResult {
  AckStatus status = AckStatus::kOk;
  WireHeader header;
  Packet packet;  // valid only when status is kOk
};

// Verifies header and crc and decodes the payload. The seq rule is left to
// the receiver, which knows what it expects.
DecodeResult DecodeMessage(std::span<const std::uint8_t, kHeaderSize> header,
                           std::span<const std::uint8_t> payload,
                           const PayloadCodec &codec = DefaultCodec());

}  // namespace ekrt

#endif  // EKRT_TRANSPORT_WIRE_H_
