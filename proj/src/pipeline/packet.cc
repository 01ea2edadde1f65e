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

#include "ekrt/pipeline/packet.h"

namespace ekrt {

std::string_view PayloadKindName(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::kEmpty: return "empty";
    case PayloadKind::kAudio: return "audio";
    case PayloadKind::kFrames: return "frames";
    case PayloadKind::kFeatures: return "features";
    case PayloadKind::kLoglik: return "loglik";
    case PayloadKind::kHypotheses: return "hypotheses";
  }
  return "unknown";
}

bool IsWellFormed(const Packet &packet) {
  return !packet.is_empty() || packet.flags.any();
}

}  // namespace ekrt
