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

#include "ekrt/tools/session.h"

#include <chrono>
#include <cstdio>

#include "ekrt/decoder/decoder.h"

namespace ekrt {

SessionResult RunSession(BuiltChain &built) {
  SessionResult r;
  r.audio_seconds = built.audio_seconds;
  const auto t0 = std::chrono::steady_clock::now();
  built.chain->Start();
  r.packets = CollectOutput(*built.chain);
  r.wall_seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  r.segments = FinalizedSegments(r.packets);
  return r;
}

std::vector<HypothesisSet> FinalizedSegments(const std::vector<Packet> &out) {
  std::vector<HypothesisSet> segs;
  for (const Packet &p : out)
    if (p.kind() == PayloadKind::kHypotheses && p.flags.any())
      segs.push_back(std::get<HypothesisSet>(p.payload));
  return segs;
}

std::string Transcript(const std::vector<HypothesisSet> &segments,
                       const WordTable &words) {
  std::string out;
  for (const HypothesisSet &s : segments) {
    if (s.hyps.empty()) continue;
    const std::string text = words.Join(s.hyps.front().words);
    if (text.empty()) continue;
    if (!out.empty()) out += ' ';
    out += text;
  }
  return out;
}

void PrintSegments(std::ostream &os, const std::vector<HypothesisSet> &segments,
                   const WordTable &words, int k) {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0 && k > 1) os << '\n';
    const auto &hyps = segments[i].hyps;
    for (std::size_t j = 0; j < hyps.size() && j < std::size_t(k); ++j)
      os << FormatHypothesis(hyps[j], words) << '\n';
  }
}

double RtfReport::audio_seconds() const {
  double s = 0;
  for (const RtfRow &r : rows) s += r.audio_seconds;
  return s;
}

double RtfReport::wall_seconds() const {
  double s = 0;
  for (const RtfRow &r : rows) s += r.wall_seconds;
  return s;
}

double RtfReport::rtf() const {
  const double a = audio_seconds();
  return a > 0 ? wall_seconds() / a : 0.0;
}

RtfReport BenchRtf(const ChainConfig &config,
                   const std::vector<std::string> &wavs,
                   BuildOptions options) {
  RtfReport report;
  options.realtime = false;
  for (const std::string &wav : wavs) {
    options.wav = wav;
    BuiltChain built = BuildChain(config, options);
    const SessionResult r = RunSession(built);
    report.rows.push_back({wav, r.audio_seconds, r.wall_seconds});
  }
  return report;
}

void PrintRtfReport(std::ostream &os, const RtfReport &report) {
  if (report.rows.empty()) {
    os << "no audio\n";
    return;
  }
  char line[512];
  os << "file\taudio_s\twall_s\trtf\n";
  for (const RtfRow &r : report.rows) {
    std::snprintf(line, sizeof line, "%s\t%.3f\t%.3f\t%.4f\n", r.file.c_str(),
                  r.audio_seconds, r.wall_seconds, r.rtf());
    os << line;
  }
  std::snprintf(line, sizeof line, "total\t%.3f\t%.3f\t%.4f\n",
                report.audio_seconds(), report.wall_seconds(), report.rtf());
  os << line;
}

}  // namespace ekrt
