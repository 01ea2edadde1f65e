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

// include/ekrt/base/error.h

#ifndef EKRT_BASE_ERROR_H_
#define EKRT_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace ekrt {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration value or combination of values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed text or binary input (matrices, graphs, WAV files, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Shape or dimension mismatch between two operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ekrt

#endif  // EKRT_BASE_ERROR_H_
