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

#include "ekrt/scoring/scorer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

namespace ekrt {

ReplayScorer::ReplayScorer(Matrix table) : table_(std::move(table)) {
  if (table_.cols() == 0) throw ScorerError("replay scorer: empty table");
}

LoglikBlock ReplayScorer::Score(const FeatureMatrix &block) {
  const std::int64_t first = block.first_frame;
  const std::int64_t last = first + static_cast<std::int64_t>(block.frames());
  if (first < 0 || last > static_cast<std::int64_t>(table_.rows())) {
    const std::int64_t missing =
        first < 0 ? first : static_cast<std::int64_t>(table_.rows());
    throw ScorerError("replay scorer: frame " + std::to_string(missing) +
                      " not in table of " + std::to_string(table_.rows()) +
                      " rows");
  }
  LoglikBlock out;
  out.first_frame = first;
  out.data = table_.RowRange(first, last);
  return out;
}

DiagGmm::DiagGmm(std::size_t dims,
                 std::vector<std::vector<GaussianComponent>> pdfs)
    : dims_(dims), pdfs_(std::move(pdfs)) {
  Validate();
  Precompute();
}

void DiagGmm::Validate() const {
  if (dims_ == 0 || pdfs_.empty())
    throw FormatError("gmm: needs at least one pdf and one dimension");
  for (std::size_t p = 0; p < pdfs_.size(); ++p) {
    const std::string where = "gmm: pdf " + std::to_string(p);
    if (pdfs_[p].empty()) throw FormatError(where + " has no components");
    double total = 0.0;
    for (const GaussianComponent &c : pdfs_[p]) {
      if (c.mean.size() != dims_ || c.var.size() != dims_)
        throw DimensionError(where + ": component dimension mismatch");
      if (!(c.weight > 0.0) || !std::isfinite(c.weight))
        throw FormatError(where + ": weights must be positive");
      for (double v : c.var)
        if (!(v > 0.0) || !std::isfinite(v))
          throw FormatError(where + ": variances must be positive");
      for (double m : c.mean)
        if (!std::isfinite(m)) throw FormatError(where + ": non-finite mean");
      total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-6)
      throw FormatError(where + ": weights sum to " + std::to_string(total));
  }
}

void DiagGmm::Precompute() {
  const double log_2pi = std::log(2.0 * std::numbers::pi);
  cache_.assign(pdfs_.size(), {});
  for (std::size_t p = 0; p < pdfs_.size(); ++p) {
    for (const GaussianComponent &c : pdfs_[p]) {
      Cached k;
      double log_det = 0.0;
      k.inv_var.resize(dims_);
      for (std::size_t d = 0; d < dims_; ++d) {
        log_det += std::log(c.var[d]);
        k.inv_var[d] = 1.0 / c.var[d];
      }
      k.log_const = std::log(c.weight) - 0.5 * (dims_ * log_2pi + log_det);
      cache_[p].push_back(std::move(k));
    }
  }
}

double DiagGmm::LogLikelihood(std::size_t pdf,
                              std::span<const double> x) const {
  if (x.size() != dims_)
    throw DimensionError("gmm: frame has " + std::to_string(x.size()) +
                         " dims, model expects " + std::to_string(dims_));
  const auto &comps = pdfs_.at(pdf);
  const auto &cached = cache_[pdf];
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> terms(comps.size());
  for (std::size_t m = 0; m < comps.size(); ++m) {
    double q = 0.0;
    for (std::size_t d = 0; d < dims_; ++d) {
      const double diff = x[d] - comps[m].mean[d];
      q += diff * diff * cached[m].inv_var[d];
    }
    terms[m] = cached[m].log_const - 0.5 * q;
    best = std::max(best, terms[m]);
  }
  if (comps.size() == 1) return terms[0];
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - best);
  return best + std::log(sum);
}

void DiagGmm::Write(std::ostream &os) const {
  os << std::setprecision(17) << pdfs_.size() << ' ' << dims_ << '\n';
  for (const auto &pdf : pdfs_) {
    os << pdf.size() << '\n';
    for (const GaussianComponent &c : pdf) {
      os << c.weight;
      for (double m : c.mean) os << ' ' << m;
      for (double v : c.var) os << ' ' << v;
      os << '\n';
    }
  }
}

namespace {

// Next non-blank, non-comment line split into numbers.
bool NextFields(std::istream &is, const std::string &source, int *line_no,
                std::vector<double> *fields) {
  std::string line;
  while (std::getline(is, line)) {
    ++*line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    fields->clear();
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        fields->push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception &) {
        throw FormatError(source + ":" + std::to_string(*line_no) +
                          ": bad number '" + tok + "'");
      }
    }
    if (!fields->empty()) return true;
  }
  return false;
}

std::size_t AsCount(double v, const std::string &what) {
  if (!(v >= 1) || v != std::floor(v) || v > 1e9)
    throw FormatError(what + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

DiagGmm DiagGmm::Read(std::istream &is, const std::string &source) {
  int line_no = 0;
  std::vector<double> f;
  auto where = [&] { return source + ":" + std::to_string(line_no); };
  if (!NextFields(is, source, &line_no, &f) || f.size() != 2)
    throw FormatError(source + ": expected header 'n_pdfs dims'");
  const std::size_t n_pdfs = AsCount(f[0], where() + ": n_pdfs");
  const std::size_t dims = AsCount(f[1], where() + ": dims");
  std::vector<std::vector<GaussianComponent>> pdfs(n_pdfs);
  for (std::size_t p = 0; p < n_pdfs; ++p) {
    if (!NextFields(is, source, &line_no, &f) || f.size() != 1)
      throw FormatError(where() + ": expected component count of pdf " +
                        std::to_string(p));
    const std::size_t n = AsCount(f[0], where() + ": component count");
    for (std::size_t m = 0; m < n; ++m) {
      if (!NextFields(is, source, &line_no, &f))
        throw FormatError(source + ": truncated at pdf " + std::to_string(p));
      if (f.size() != 1 + 2 * dims)
        throw FormatError(where() + ": component line has " +
                          std::to_string(f.size()) + " fields, expected " +
                          std::to_string(1 + 2 * dims));
      GaussianComponent c;
      c.weight = f[0];
      c.mean.assign(f.begin() + 1, f.begin() + 1 + dims);
      c.var.assign(f.begin() + 1 + dims, f.end());
      pdfs[p].push_back(std::move(c));
    }
  }
  if (NextFields(is, source, &line_no, &f))
    throw FormatError(where() + ": trailing data after last pdf");
  try {
    return DiagGmm(dims, std::move(pdfs));
  } catch (const Error &e) {
    throw FormatError(source + ": " + e.what());
  }
}

DiagGmm DiagGmm::ReadFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open gmm file '" + path + "'");
  return Read(is, path);
}

void DiagGmm::WriteFile(const std::string &path) const {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write gmm file '" + path + "'");
  Write(os);
}

GmmScorer::GmmScorer(DiagGmm model) : model_(std::move(model)) {}

LoglikBlock GmmScorer::Score(const FeatureMatrix &block) {
  if (block.frames() > 0 && block.dims() != model_.dims())
    throw DimensionError("gmm scorer: features have " +
                         std::to_string(block.dims()) +
                         " dims, model expects " +
                         std::to_string(model_.dims()));
  LoglikBlock out;
  out.first_frame = block.first_frame;
  out.data = Matrix(block.frames(), model_.num_pdfs());
  for (std::size_t t = 0; t < block.frames(); ++t)
    for (std::size_t p = 0; p < model_.num_pdfs(); ++p)
      out.data(t, p) = model_.LogLikelihood(p, block.data.Row(t));
  return out;
}

}  // namespace ekrt
