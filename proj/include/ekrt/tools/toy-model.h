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

// include/ekrt/tools/toy-model.h
//
// Self-contained synthetic recognition task: a word-loop graph, a GMM
// trained on tones that stand in for phone states, and a test recording
// with its transcript.

#ifndef EKRT_TOOLS_TOY_MODEL_H_
#define EKRT_TOOLS_TOY_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ekrt/base/matrix.h"
#include "ekrt/decoder/wfst.h"
#include "ekrt/scoring/scorer.h"
#include "ekrt/tools/wav.h"

namespace ekrt {

struct ToyModelConfig {
  std::uint64_t seed = 1;
  int n_pdfs = 8;   // pdf 0 is silence
  int n_words = 3;
  double seconds = 0.0;  // test audio length; 0 picks a short utterance
  double gap_ms = 0.0;   // silence inserted between two middle words
  int sample_rate = 16000;
  void Validate() const;
};

struct ToyModel {
  ToyModelConfig config;
  Wfst graph;
  WordTable words;
  DiagGmm gmm;
  std::vector<std::vector<int>> word_pdfs;  // pdf sequence per word id - 1
  WavData audio;
  std::vector<std::string> reference;
  Matrix lda;  // 40 x 117, for the feature-mixture config
};

// Deterministic in the seed.
ToyModel MakeToyModel(const ToyModelConfig &config);

// Writes graph.txt, words.txt, gmm.txt, lda.txt, test.wav, ref.txt,
// chain.conf and mixture.conf into dir, creating it if needed.
void WriteToyModel(const ToyModel &model, const std::string &dir);

}  // namespace ekrt

#endif  // EKRT_TOOLS_TOY_MODEL_H_
