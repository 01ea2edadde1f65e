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

// include/ekrt/transport/crc32.h

#ifndef EKRT_TRANSPORT_CRC32_H_
#define EKRT_TRANSPORT_CRC32_H_

#include <cstdint>
#include <span>

namespace ekrt {

// IEEE 802.3 CRC-32 (reflected, polynomial 0xEDB88320). Pass a previous
// result as crc to continue over split input.
std::uint32_t Crc32(std::span<const std::uint8_t> data, std::uint32_t crc = 0);

}  // namespace ekrt

#endif  // EKRT_TRANSPORT_CRC32_H_
