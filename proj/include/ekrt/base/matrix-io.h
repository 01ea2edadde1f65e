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

// include/ekrt/base/matrix-io.h
//
// Text matrix format: a "rows cols" line followed by rows lines of cols
// whitespace-separated decimal values.

#ifndef EKRT_BASE_MATRIX_IO_H_
#define EKRT_BASE_MATRIX_IO_H_

#include <iosfwd>
#include <string>

#include "ekrt/base/matrix.h"

namespace ekrt {

Matrix ReadMatrix(std::istream &in, const std::string &source = "<stream>");
void WriteMatrix(std::ostream &out, const Matrix &m);

Matrix ReadMatrixFile(const std::string &path);
void WriteMatrixFile(const std::string &path, const Matrix &m);

}  // namespace ekrt

#endif  // EKRT_BASE_MATRIX_IO_H_
