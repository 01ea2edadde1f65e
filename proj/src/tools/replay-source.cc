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

#include "ekrt/tools/replay-source.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ekrt/base/error.h"

namespace ekrt {

ReplaySource::ReplaySource(WavData audio, ReplayConfig config,
                           std::string name)
    : Component(std::move(name)), audio_(std::move(audio)), config_(config) {
  if (!(config_.chunk_ms > 0)) throw ConfigError("replay: chunk_ms must be > 0");
}

void ReplaySource::Run(ComponentContext &ctx) {
  const std::size_t chunk = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::lround(config_.chunk_ms * audio_.sample_rate / 1000.0)));
  const auto start = std::chrono::steady_clock::now();
  const auto &s = audio_.samples;
  for (std::size_t b = 0; b < s.size(); b += chunk) {
    if (ctx.StopRequested()) return;
    const std::size_t e = std::min(s.size(), b + chunk);
    if (config_.realtime) {
      // A chunk is available once the recording has reached its end.
      const auto due = start + std::chrono::duration_cast<
                                   std::chrono::steady_clock::duration>(
                                   std::chrono::duration<double>(
                                       static_cast<double>(e) /
                                       audio_.sample_rate));
      std::this_thread::sleep_until(due);
    }
    ctx.Emit(AudioChunk{{s.begin() + b, s.begin() + e}, audio_.sample_rate});
  }
  PacketFlags eos;
  eos.eos = true;
  ctx.Emit(EmptyPayload{}, eos);
}

}  // namespace ekrt
