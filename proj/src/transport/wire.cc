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

#include "ekrt/transport/wire.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>

#include "ekrt/transport/crc32.h"

namespace ekrt {
namespace {

static_assert(std::endian::native == std::endian::little,
              "wire encoding assumes a little-endian host");

void PutU32(Bytes &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

void PutU32At(std::uint8_t *p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = (v >> (8 * i)) & 0xFF;
}

std::uint32_t GetU32At(const std::uint8_t *p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 |
         std::uint32_t{p[2]} << 16 | std::uint32_t{p[3]} << 24;
}

void PutF32(Bytes &out, double v) {
  PutU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

std::uint32_t Narrow(std::size_t v, const char *what) {
  if (v > std::numeric_limits<std::uint32_t>::max())
    throw TransportError(std::string("wire: ") + what +
                         " does not fit in 32 bits");
  return static_cast<std::uint32_t>(v);
}

void PutMatrix(Bytes &out, const Matrix &m, std::int64_t first_frame) {
  if (first_frame < 0) throw TransportError("wire: negative first_frame");
  PutU32(out, Narrow(static_cast<std::size_t>(first_frame), "first_frame"));
  PutU32(out, Narrow(m.rows(), "rows"));
  PutU32(out, Narrow(m.cols(), "cols"));
  for (std::size_t i = 0; i < m.rows() * m.cols(); ++i)
    PutF32(out, m.data()[i]);
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}

  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = GetU32At(b_.data() + pos_);
    pos_ += 4;
    return v;
  }
  std::uint8_t U8() {
    Need(1);
    return b_[pos_++];
  }
  std::int16_t I16() {
    Need(2);
    std::uint16_t v = b_[pos_] | b_[pos_ + 1] << 8;
    pos_ += 2;
    return static_cast<std::int16_t>(v);
  }
  double F32() { return std::bit_cast<float>(U32()); }

  void Need(std::size_t n) const {
    if (b_.size() - pos_ < n)
      throw FormatError("wire: payload truncated at byte " +
                        std::to_string(pos_));
  }
  void ExpectEnd() const {
    if (pos_ != b_.size())
      throw FormatError("wire: " + std::to_string(b_.size() - pos_) +
                        " trailing payload bytes");
  }

 private:
  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

Matrix GetMatrix(Reader &r, std::int64_t *first_frame) {
  *first_frame = r.U32();
  const std::size_t rows = r.U32(), cols = r.U32();
  if (cols != 0 && rows > kMaxPayloadBytes / cols)
    throw FormatError("wire: matrix dimensions overflow");
  r.Need(rows * cols * 4);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) m.data()[i] = r.F32();
  return m;
}

}  // namespace

const char *AckStatusName(AckStatus status) {
  switch (status) {
    case AckStatus::kOk: return "OK";
    case AckStatus::kCrcFail: return "CRC_FAIL";
    case AckStatus::kBadHeader: return "BAD_HEADER";
    case AckStatus::kSeqGap: return "SEQ_GAP";
  }
  return "UNKNOWN";
}

std::array<std::uint8_t, kHeaderSize> EncodeHeader(const WireHeader &h) {
  std::array<std::uint8_t, kHeaderSize> b{};
  std::memcpy(b.data(), kWireMagic.data(), 4);
  b[4] = kWireVersion;
  b[5] = h.ptype;
  b[6] = h.flags;
  b[7] = 0;
  PutU32At(&b[8], h.seq);
  PutU32At(&b[12], h.length);
  PutU32At(&b[16], h.crc);
  return b;
}

WireHeader ParseHeader(std::span<const std::uint8_t, kHeaderSize> b) {
  WireHeader h;
  h.ptype = b[5];
  h.flags = b[6];
  h.seq = GetU32At(&b[8]);
  h.length = GetU32At(&b[12]);
  h.crc = GetU32At(&b[16]);
  return h;
}

AckStatus CheckHeader(std::span<const std::uint8_t, kHeaderSize> b) {
  if (std::memcmp(b.data(), kWireMagic.data(), 4) != 0 ||
      b[4] != kWireVersion || b[7] != 0 ||
      b[5] > static_cast<std::uint8_t>(PayloadKind::kHypotheses) ||
      (b[6] & ~0x03) != 0 || GetU32At(&b[12]) > kMaxPayloadBytes)
    return AckStatus::kBadHeader;
  return AckStatus::kOk;
}

std::array<std::uint8_t, kAckSize> EncodeAck(const Ack &ack) {
  std::array<std::uint8_t, kAckSize> b{};
  b[0] = static_cast<std::uint8_t>(ack.status);
  PutU32At(&b[1], ack.seq);
  return b;
}

Ack DecodeAck(std::span<const std::uint8_t, kAckSize> b) {
  if (b[0] > static_cast<std::uint8_t>(AckStatus::kSeqGap))
    throw TransportError("wire: unknown ack status " + std::to_string(b[0]));
  return Ack{static_cast<AckStatus>(b[0]), GetU32At(&b[1])};
}

std::uint8_t FlagsToByte(const PacketFlags &f) {
  return (f.endpoint ? 0x01 : 0) | (f.eos ? 0x02 : 0);
}

PacketFlags FlagsFromByte(std::uint8_t b) {
  PacketFlags f;
  f.endpoint = b & 0x01;
  f.eos = b & 0x02;
  return f;
}

Bytes RawCodec::Encode(const Payload &payload) const {
  Bytes out;
  std::visit(
      [&](const auto &p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, AudioChunk>) {
          PutU32(out, p.sample_rate);
          PutU32(out, Narrow(p.samples.size(), "sample count"));
          for (std::int16_t s : p.samples) {
            const auto u = static_cast<std::uint16_t>(s);
            out.push_back(u & 0xFF);
            out.push_back(u >> 8);
          }
        } else if constexpr (std::is_same_v<T, FrameBlock>) {
          PutMatrix(out, p.frames, p.first_frame);
        } else if constexpr (std::is_same_v<T, FeatureMatrix> ||
                             std::is_same_v<T, LoglikBlock>) {
          PutMatrix(out, p.data, p.first_frame);
        } else if constexpr (std::is_same_v<T, HypothesisSet>) {
          PutU32(out, Narrow(p.hyps.size(), "hypothesis count"));
          for (const Hypothesis &h : p.hyps) {
            out.push_back(h.is_final ? 1 : 0);
            PutF32(out, h.cost);
            PutU32(out, Narrow(h.words.size(), "word count"));
            for (std::int32_t w : h.words)
              PutU32(out, static_cast<std::uint32_t>(w));
          }
        }
      },
      payload);
  return out;
}

Payload RawCodec::Decode(PayloadKind kind,
                         std::span<const std::uint8_t> bytes) const {
  Reader r(bytes);
  Payload out;
  switch (kind) {
    case PayloadKind::kEmpty:
      break;
    case PayloadKind::kAudio: {
      AudioChunk a;
      a.sample_rate = r.U32();
      const std::size_t n = r.U32();
      r.Need(2 * n);
      a.samples.resize(n);
      for (auto &s : a.samples) s = r.I16();
      out = std::move(a);
      break;
    }
    case PayloadKind::kFrames: {
      FrameBlock f;
      f.frames = GetMatrix(r, &f.first_frame);
      out = std::move(f);
      break;
    }
    case PayloadKind::kFeatures: {
      FeatureMatrix f;
      f.data = GetMatrix(r, &f.first_frame);
      out = std::move(f);
      break;
    }
    case PayloadKind::kLoglik: {
      LoglikBlock f;
      f.data = GetMatrix(r, &f.first_frame);
      out = std::move(f);
      break;
    }
    case PayloadKind::kHypotheses: {
      HypothesisSet set;
      const std::size_t n = r.U32();
      for (std::size_t i = 0; i < n; ++i) {
        Hypothesis h;
        h.is_final = r.U8() != 0;
        h.cost = r.F32();
        const std::size_t nw = r.U32();
        r.Need(4 * nw);
        for (std::size_t k = 0; k < nw; ++k)
          h.words.push_back(static_cast<std::int32_t>(r.U32()));
        set.hyps.push_back(std::move(h));
      }
      out = std::move(set);
      break;
    }
  }
  r.ExpectEnd();
  return out;
}

const PayloadCodec &DefaultCodec() {
  static const RawCodec codec;
  return codec;
}

Bytes EncodeMessage(const Packet &packet, std::uint32_t wire_seq,
                    const PayloadCodec &codec) {
  Bytes payload = codec.Encode(packet.payload);
  if (payload.size() > kMaxPayloadBytes)
    throw TransportError("wire: payload of " + std::to_string(payload.size()) +
                         " bytes exceeds the length limit");
  WireHeader h;
  h.ptype = static_cast<std::uint8_t>(packet.kind());
  h.flags = FlagsToByte(packet.flags);
  h.seq = wire_seq;
  h.length = static_cast<std::uint32_t>(payload.size());
  h.crc = Crc32(payload);
  const auto hb = EncodeHeader(h);
  Bytes msg(kHeaderSize + payload.size());
  std::copy(hb.begin(), hb.end(), msg.begin());
  if (!payload.empty())
    std::memcpy(msg.data() + kHeaderSize, payload.data(), payload.size());
  return msg;
}

DecodeResult DecodeMessage(std::span<const std::uint8_t, kHeaderSize> header,
                           std::span<const std::uint8_t> payload,
                           const PayloadCodec &codec) {
  DecodeResult res;
  res.header = ParseHeader(header);
  res.status = CheckHeader(header);
  if (res.status != AckStatus::kOk) return res;
  if (payload.size() != res.header.length) {
    res.status = AckStatus::kBadHeader;
    return res;
  }
  if (Crc32(payload) != res.header.crc) {
    res.status = AckStatus::kCrcFail;
    return res;
  }
  res.packet.seq = res.header.seq;
  res.packet.flags = FlagsFromByte(res.header.flags);
  res.packet.payload =
      codec.Decode(static_cast<PayloadKind>(res.header.ptype), payload);
  if (!IsWellFormed(res.packet))
    throw FormatError("wire: empty payload without endpoint or eos flag");
  return res;
}

}  // namespace ekrt
