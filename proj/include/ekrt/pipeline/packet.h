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

// include/ekrt/pipeline/packet.h

#ifndef EKRT_PIPELINE_PACKET_H_
#define EKRT_PIPELINE_PACKET_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ekrt/base/matrix.h"

namespace ekrt {

// Payload codes double as the wire ptype byte.
enum class PayloadKind : std::uint8_t {
  kEmpty = 0,
  kAudio = 1,
  kFrames = 2,
  kFeatures = 3,
  kLoglik = 4,
  kHypotheses = 5,
};

std::string_view PayloadKindName(PayloadKind kind);

struct EmptyPayload {
  bool operator==(const EmptyPayload &) const = default;
};

// 16-bit PCM samples as captured or read from file.
struct AudioChunk {
  std::vector<std::int16_t> samples;
  std::uint32_t sample_rate = 16000;
  bool operator==(const AudioChunk &) const = default;
};

// Raw (unconditioned) analysis frames, samples scaled to [-1, 1).
struct FrameBlock {
  Matrix frames;
  std::int64_t first_frame = 0;
  bool operator==(const FrameBlock &) const = default;
};

// frames x dims features. Row r is frame first_frame + r.
struct FeatureMatrix {
  Matrix data;
  std::int64_t first_frame = 0;

  std::size_t frames() const { return data.rows(); }
  std::size_t dims() const { return data.cols(); }
  bool operator==(const FeatureMatrix &) const = default;
};

// frames x pdfs natural-log likelihoods.
struct LoglikBlock {
  Matrix data;
  std::int64_t first_frame = 0;
  bool operator==(const LoglikBlock &) const = default;
};

struct Hypothesis {
  std::vector<std::int32_t> words;
  double cost = 0.0;
  bool is_final = false;
  bool operator==(const Hypothesis &) const = default;
};

struct HypothesisSet {
  std::vector<Hypothesis> hyps;
  bool operator==(const HypothesisSet &) const = default;
};

// Alternative index must match PayloadKind.
using Payload = std::variant<EmptyPayload, AudioChunk, FrameBlock,
                             FeatureMatrix, LoglikBlock, HypothesisSet>;

struct PacketFlags {
  bool endpoint = false;
  bool eos = false;
  bool any() const { return endpoint || eos; }
  bool operator==(const PacketFlags &) const = default;
};

struct Packet {
  std::uint64_t seq = 0;
  Payload payload;
  PacketFlags flags;

  PayloadKind kind() const {
    return static_cast<PayloadKind>(payload.index());
  }
  bool is_empty() const { return kind() == PayloadKind::kEmpty; }
  bool operator==(const Packet &) const = default;
};

// Empty payloads are only legal as carriers for endpoint/eos.
bool IsWellFormed(const Packet &packet);

}  // namespace ekrt

#endif  // EKRT_PIPELINE_PACKET_H_
