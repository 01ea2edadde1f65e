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

// include/ekrt/tools/session.h
//
// Running a built chain to completion and summarizing what came out.

#ifndef EKRT_TOOLS_SESSION_H_
#define EKRT_TOOLS_SESSION_H_

#include <ostream>
#include <string>
#include <vector>

#include "ekrt/decoder/wfst.h"
#include "ekrt/pipeline/packet.h"
#include "ekrt/tools/chain-builder.h"

namespace ekrt {

struct SessionResult {
  std::vector<Packet> packets;        // everything the chain emitted
  std::vector<HypothesisSet> segments;  // N-best per finalized segment
  double wall_seconds = 0.0;          // Start to Join
  double audio_seconds = 0.0;
};

// Starts, drains and joins the chain. Throws ChainError on failure.
SessionResult RunSession(BuiltChain &built);

// Hypothesis packets that close a segment, in order.
std::vector<HypothesisSet> FinalizedSegments(const std::vector<Packet> &out);

// Best word sequence of each segment joined with single spaces.
std::string Transcript(const std::vector<HypothesisSet> &segments,
                       const WordTable &words);

// Up to k "cost<TAB>words" lines per segment; a blank line separates
// segments when k > 1.
void PrintSegments(std::ostream &os, const std::vector<HypothesisSet> &segments,
                   const WordTable &words, int k);

struct RtfRow {
  std::string file;
  double audio_seconds = 0.0;
  double wall_seconds = 0.0;
  double rtf() const {
    return audio_seconds > 0 ? wall_seconds / audio_seconds : 0.0;
  }
};

struct RtfReport {
  std::vector<RtfRow> rows;
  double audio_seconds() const;
  double wall_seconds() const;
  double rtf() const;  // total wall time over total audio time
};

// Decodes each file as fast as possible with a fresh chain.
RtfReport BenchRtf(const ChainConfig &config,
                   const std::vector<std::string> &wavs,
                   BuildOptions options = {});

void PrintRtfReport(std::ostream &os, const RtfReport &report);

}  // namespace ekrt

#endif  // EKRT_TOOLS_SESSION_H_
