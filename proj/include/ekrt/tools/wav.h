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

// include/ekrt/tools/wav.h

#ifndef EKRT_TOOLS_WAV_H_
#define EKRT_TOOLS_WAV_H_

#include <cstdint>
#include <string>
#include <vector>

namespace ekrt {

// RIFF/WAVE, 16-bit PCM, mono only.
struct WavData {
  std::vector<std::int16_t> samples;
  std::uint32_t sample_rate = 16000;
  double seconds() const {
    return sample_rate ? static_cast<double>(samples.size()) / sample_rate : 0;
  }
};

// Throws FormatError naming the violated constraint.
WavData ReadWav(const std::string &path);
WavData ParseWav(const std::vector<std::uint8_t> &bytes,
                 const std::string &source = "wav");
void WriteWav(const std::string &path, const WavData &wav);
std::vector<std::uint8_t> EncodeWav(const WavData &wav);

}  // namespace ekrt

#endif  // EKRT_TOOLS_WAV_H_
