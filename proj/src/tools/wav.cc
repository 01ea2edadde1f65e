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

#include "ekrt/tools/wav.h"

#include <cstring>
#include <fstream>
#include <iterator>

#include "ekrt/base/error.h"

namespace ekrt {
namespace {

std::uint32_t U32(const std::uint8_t *p) {
  return p[0] | p[1] << 8 | p[2] << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}
std::uint16_t U16(const std::uint8_t *p) { return p[0] | p[1] << 8; }

void Put32(std::vector<std::uint8_t> &o, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) o.push_back((v >> (8 * i)) & 0xFF);
}
void Put16(std::vector<std::uint8_t> &o, std::uint16_t v) {
  o.push_back(v & 0xFF);
  o.push_back(v >> 8);
}

}  // namespace

WavData ParseWav(const std::vector<std::uint8_t> &b, const std::string &src) {
  if (b.size() < 12 || std::memcmp(b.data(), "RIFF", 4) != 0 ||
      std::memcmp(b.data() + 8, "WAVE", 4) != 0)
    throw FormatError(src + ": not a RIFF/WAVE file");
  WavData wav;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= b.size()) {
    const std::uint32_t size = U32(&b[pos + 4]);
    const std::size_t body = pos + 8;
    if (body + size > b.size()) throw FormatError(src + ": truncated chunk");
    if (std::memcmp(&b[pos], "fmt ", 4) == 0) {
      if (size < 16) throw FormatError(src + ": short fmt chunk");
      const std::uint16_t format = U16(&b[body]);
      const std::uint16_t channels = U16(&b[body + 2]);
      const std::uint16_t bits = U16(&b[body + 14]);
      if (format != 1)
        throw FormatError(src + ": only PCM WAV is supported (format " +
                          std::to_string(format) + ")");
      if (channels != 1)
        throw FormatError(src + ": only mono WAV is supported (" +
                          std::to_string(channels) + " channels)");
      if (bits != 16)
        throw FormatError(src + ": only 16-bit PCM is supported (" +
                          std::to_string(bits) + " bits)");
      wav.sample_rate = U32(&b[body + 4]);
      if (wav.sample_rate == 0) throw FormatError(src + ": zero sample rate");
      have_fmt = true;
    } else if (std::memcmp(&b[pos], "data", 4) == 0) {
      if (!have_fmt) throw FormatError(src + ": data chunk before fmt");
      wav.samples.resize(size / 2);
      for (std::size_t i = 0; i < wav.samples.size(); ++i)
        wav.samples[i] = static_cast<std::int16_t>(U16(&b[body + 2 * i]));
      return wav;
    }
    pos = body + size + (size & 1);
  }
  throw FormatError(src + ": no data chunk");
}

WavData ReadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open wav '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                                  std::istreambuf_iterator<char>());
  return ParseWav(bytes, path);
}

std::vector<std::uint8_t> EncodeWav(const WavData &wav) {
  const std::uint32_t data = static_cast<std::uint32_t>(wav.samples.size() * 2);
  std::vector<std::uint8_t> o;
  o.reserve(44 + data);
  o.insert(o.end(), {'R', 'I', 'F', 'F'});
  Put32(o, 36 + data);
  o.insert(o.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  Put32(o, 16);
  Put16(o, 1);
  Put16(o, 1);
  Put32(o, wav.sample_rate);
  Put32(o, wav.sample_rate * 2);
  Put16(o, 2);
  Put16(o, 16);
  o.insert(o.end(), {'d', 'a', 't', 'a'});
  Put32(o, data);
  for (std::int16_t s : wav.samples) Put16(o, static_cast<std::uint16_t>(s));
  return o;
}

void WriteWav(const std::string &path, const WavData &wav) {
  const auto bytes = EncodeWav(wav);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot write wav '" + path + "'");
  os.write(reinterpret_cast<const char *>(bytes.data()),
           static_cast<std::streamsize>(bytes.size()));
}

}  // namespace ekrt
