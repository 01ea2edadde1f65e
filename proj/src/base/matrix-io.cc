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

#include "ekrt/base/matrix-io.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ekrt/base/error.h"

namespace ekrt {

Matrix ReadMatrix(std::istream &in, const std::string &source) {
  std::string line;
  if (!std::getline(in, line))
    throw FormatError(source + ": missing 'rows cols' header");
  std::istringstream header(line);
  long long rows = -1, cols = -1;
  std::string extra;
  if (!(header >> rows >> cols) || (header >> extra) || rows < 0 || cols < 0)
    throw FormatError(source + ": bad header line '" + line + "'");
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (long long r = 0; r < rows; ++r) {
    if (!std::getline(in, line))
      throw FormatError(source + ": expected " + std::to_string(rows) +
                        " rows, found " + std::to_string(r));
    std::istringstream values(line);
    for (long long c = 0; c < cols; ++c) {
      double v;
      if (!(values >> v))
        throw FormatError(source + ": row " + std::to_string(r + 1) +
                          " has fewer than " + std::to_string(cols) +
                          " values");
      if (!std::isfinite(v))
        throw FormatError(source + ": non-finite value in row " +
                          std::to_string(r + 1));
      m(r, c) = v;
    }
    if (values >> extra)
      throw FormatError(source + ": row " + std::to_string(r + 1) +
                        " has more than " + std::to_string(cols) + " values");
  }
  return m;
}

void WriteMatrix(std::ostream &out, const Matrix &m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  out << std::setprecision(17);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.Row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ' ';
      out << row[c];
    }
    out << '\n';
  }
}

Matrix ReadMatrixFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open matrix file '" + path + "'");
  return ReadMatrix(in, path);
}

void WriteMatrixFile(const std::string &path, const Matrix &m) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write matrix file '" + path + "'");
  WriteMatrix(out, m);
}

}  // namespace ekrt
