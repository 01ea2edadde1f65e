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

#include "ekrt/base/matrix.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ekrt/base/error.h"

namespace ekrt {

void Matrix::AppendRow(std::span<const double> row) {
  if (rows_ == 0 && data_.empty()) cols_ = row.size();
  if (row.size() != cols_)
    throw DimensionError("AppendRow: row has " + std::to_string(row.size()) +
                         " values, matrix has " + std::to_string(cols_) +
                         " columns");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

void Matrix::AppendRows(const Matrix &other) {
  if (other.rows_ == 0) return;
  if (rows_ == 0) cols_ = other.cols_;
  if (other.cols_ != cols_)
    throw DimensionError("AppendRows: column mismatch " +
                         std::to_string(other.cols_) + " vs " +
                         std::to_string(cols_));
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

Matrix Matrix::RowRange(std::size_t begin, std::size_t end) const {
  Matrix out;
  out.cols_ = cols_;
  if (end > rows_) end = rows_;
  if (begin >= end) return out;
  out.rows_ = end - begin;
  out.data_.assign(data_.begin() + begin * cols_, data_.begin() + end * cols_);
  return out;
}

void Matrix::Resize(std::size_t rows, std::size_t cols, double value) {
  rows_ = rows;
  cols_ = cols;
  data_.assign(rows * cols, value);
}

double MaxAbsDiff(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("MaxAbsDiff: shape " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

}  // namespace ekrt
