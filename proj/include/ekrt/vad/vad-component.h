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

// include/ekrt/vad/vad-component.h

#ifndef EKRT_VAD_VAD_COMPONENT_H_
#define EKRT_VAD_VAD_COMPONENT_H_

#include <atomic>
#include <memory>

#include "ekrt/pipeline/component.h"
#include "ekrt/vad/vad.h"

namespace ekrt {

// FrameBlock -> FrameBlock. Drops long silences and marks endpoints in
// band. Forwarded frames are renumbered consecutively. A packet is split
// at each endpoint; when no frame precedes the endpoint inside the packet
// it is carried by an Empty packet.
class VadComponent : public Component {
 public:
  // A null detector selects EnergyDetector(config.energy_threshold).
  explicit VadComponent(const VadConfig &config,
                        std::unique_ptr<SpeechDetector> detector = nullptr,
                        std::string name = "vad");

  PayloadKind input_kind() const override { return PayloadKind::kFrames; }
  PayloadKind output_kind() const override { return PayloadKind::kFrames; }

  std::int64_t frames_forwarded() const { return forwarded_; }
  std::int64_t frames_dropped() const { return dropped_; }
  std::int64_t endpoints() const { return endpoints_; }

 protected:
  void Process(Packet packet, ComponentContext &ctx) override;

 private:
  void EmitBlock(ComponentContext &ctx, PacketFlags flags);

  SilenceFilter filter_;
  std::unique_ptr<SpeechDetector> detector_;
  FrameBlock pending_;
  std::atomic<std::int64_t> forwarded_{0};
  std::atomic<std::int64_t> dropped_{0};
  std::atomic<std::int64_t> endpoints_{0};
};

}  // namespace ekrt

#endif  // EKRT_VAD_VAD_COMPONENT_H_
