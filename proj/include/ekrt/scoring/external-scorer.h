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

// include/ekrt/scoring/external-scorer.h

#ifndef EKRT_SCORING_EXTERNAL_SCORER_H_
#define EKRT_SCORING_EXTERNAL_SCORER_H_

#include <sys/types.h>

#include <chrono>
#include <string>

#include "ekrt/scoring/scorer.h"

namespace ekrt {

struct ExternalScorerConfig {
  std::string command;  // run through /bin/sh -c
  std::chrono::milliseconds timeout{5000};
  std::size_t expected_pdfs = 0;  // 0 accepts what the handshake says
  std::size_t dims = 0;
};

// Child-process scorer speaking a line protocol on its stdin/stdout:
//   child -> "EKRT-SCORER 1 <n_pdfs>" once at start;
//   per frame: parent sends the features as one line of decimals, the
//   child answers with one line of n_pdfs log-likelihoods.
// Any exit, malformed line or timeout raises ScorerError.
class ExternalScorer : public Scorer {
 public:
  explicit ExternalScorer(const ExternalScorerConfig &config);
  ~ExternalScorer() override;
  ExternalScorer(const ExternalScorer &) = delete;
  ExternalScorer &operator=(const ExternalScorer &) = delete;

  std::size_t num_pdfs() const override { return num_pdfs_; }
  std::size_t dims() const override { return config_.dims; }
  LoglikBlock Score(const FeatureMatrix &block) override;
  pid_t pid() const { return pid_; }

 private:
  std::string ReadLine();
  void WriteLine(const std::string &line);
  [[noreturn]] void Fail(const std::string &what);

  ExternalScorerConfig config_;
  pid_t pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
  std::size_t num_pdfs_ = 0;
};

}  // namespace ekrt

#endif  // EKRT_SCORING_EXTERNAL_SCORER_H_
