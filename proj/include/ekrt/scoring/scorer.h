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

// include/ekrt/scoring/scorer.h

#ifndef EKRT_SCORING_SCORER_H_
#define EKRT_SCORING_SCORER_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ekrt/base/error.h"
#include "ekrt/pipeline/packet.h"

namespace ekrt {

class ScorerError : public Error {
 public:
  using Error::Error;
};

// Maps feature frames to per-frame log-likelihood rows over pdf indices.
// Output rows keep the input's first_frame. Posterior-based models must
// divide by their priors before returning.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::size_t num_pdfs() const = 0;
  // Expected feature dimension; 0 accepts any.
  virtual std::size_t dims() const = 0;
  virtual LoglikBlock Score(const FeatureMatrix &block) = 0;
};

// Returns rows of a precomputed table, addressed by absolute frame index.
class ReplayScorer : public Scorer {
 public:
  explicit ReplayScorer(Matrix table);
  std::size_t num_pdfs() const override { return table_.cols(); }
  std::size_t dims() const override { return 0; }
  LoglikBlock Score(const FeatureMatrix &block) override;

 private:
  Matrix table_;
};

struct GaussianComponent {
  double weight = 1.0;
  std::vector<double> mean;
  std::vector<double> var;
};

// Diagonal-covariance GMM per pdf.
//
// Text format:
//   n_pdfs dims
//   then per pdf a line "n_components", followed by one line per
//   component "weight mean[0..dims) var[0..dims)".
class DiagGmm {
 public:
  DiagGmm() = default;
  DiagGmm(std::size_t dims, std::vector<std::vector<GaussianComponent>> pdfs);

  std::size_t num_pdfs() const { return pdfs_.size(); }
  std::size_t dims() const { return dims_; }
  const std::vector<GaussianComponent> &pdf(std::size_t p) const {
    return pdfs_.at(p);
  }

  // Weights of each pdf sum to 1 within 1e-6, variances positive.
  void Validate() const;

  // log sum_m w_m N(x; mu_m, diag var_m).
  double LogLikelihood(std::size_t pdf, std::span<const double> x) const;

  void Write(std::ostream &os) const;
  static DiagGmm Read(std::istream &is, const std::string &source = "gmm");
  static DiagGmm ReadFile(const std::string &path);
  void WriteFile(const std::string &path) const;

 private:
  void Precompute();

  struct Cached {
    double log_const;  // ln w - 0.5 (D ln 2pi + sum ln var)
    std::vector<double> inv_var;
  };

  std::size_t dims_ = 0;
  std::vector<std::vector<GaussianComponent>> pdfs_;
  std::vector<std::vector<Cached>> cache_;
};

class GmmScorer : public Scorer {
 public:
  explicit GmmScorer(DiagGmm model);
  std::size_t num_pdfs() const override { return model_.num_pdfs(); }
  std::size_t dims() const override { return model_.dims(); }
  LoglikBlock Score(const FeatureMatrix &block) override;
  const DiagGmm &model() const { return model_; }

 private:
  DiagGmm model_;
};

}  // namespace ekrt

#endif  // EKRT_SCORING_SCORER_H_
