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

// include/ekrt/base/matrix.h

#ifndef EKRT_BASE_MATRIX_H_
#define EKRT_BASE_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

namespace ekrt {

// Dense row-major matrix of doubles. Rows can be appended, which is how
// streaming blocks are assembled.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> Row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> Row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  // The first appended row fixes the column count of an empty matrix.
  void AppendRow(std::span<const double> row);
  void AppendRows(const Matrix &other);

  // Copy of rows [begin, end).
  Matrix RowRange(std::size_t begin, std::size_t end) const;

  void Resize(std::size_t rows, std::size_t cols, double value = 0.0);
  void Clear() {
    rows_ = 0;
    data_.clear();
  }

  std::vector<double> &data() { return data_; }
  const std::vector<double> &data() const { return data_; }

  bool operator==(const Matrix &other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Largest absolute elementwise difference; throws DimensionError on
// shape mismatch.
double MaxAbsDiff(const Matrix &a, const Matrix &b);

}  // namespace ekrt

#endif  // EKRT_BASE_MATRIX_H_
