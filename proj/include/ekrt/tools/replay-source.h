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

// include/ekrt/tools/replay-source.h

#ifndef EKRT_TOOLS_REPLAY_SOURCE_H_
#define EKRT_TOOLS_REPLAY_SOURCE_H_

#include <chrono>

#include "ekrt/pipeline/component.h"
#include "ekrt/tools/wav.h"

namespace ekrt {

struct ReplayConfig {
  double chunk_ms = 100.0;
  bool realtime = false;  // pace emission to wall-clock audio time
};

// Source that streams audio from memory as AudioChunk packets followed by
// eos, simulating a live recording when realtime is set.
class ReplaySource : public Component {
 public:
  ReplaySource(WavData audio, ReplayConfig config = {},
               std::string name = "replay");

  PayloadKind input_kind() const override { return PayloadKind::kEmpty; }
  PayloadKind output_kind() const override { return PayloadKind::kAudio; }
  void Run(ComponentContext &ctx) override;

  double seconds() const { return audio_.seconds(); }

 private:
  WavData audio_;
  ReplayConfig config_;
};

}  // namespace ekrt

#endif  // EKRT_TOOLS_REPLAY_SOURCE_H_
