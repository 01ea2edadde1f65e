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

// tests/oracles/chain-harness.h

#ifndef EKRT_TESTS_ORACLES_CHAIN_HARNESS_H_
#define EKRT_TESTS_ORACLES_CHAIN_HARNESS_H_

#include <thread>
#include <vector>

#include "ekrt/pipeline/chain.h"

namespace ekrt::oracle {

// Starts the chain, feeds the payloads from a producer thread with seq
// 0..n-1 (the last one carries eos) and returns everything that reaches
// the output.
inline std::vector<Packet> RunThrough(Chain &chain,
                                      std::vector<Packet> inputs) {
  chain.Start();
  std::thread producer([&] {
    try {
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        inputs[i].seq = i;
        chain.input().Put(std::move(inputs[i]));
      }
      if (inputs.empty() || !inputs.back().flags.eos)
        chain.input().Terminate();
    } catch (const Error &) {
      // Chain failed; CollectOutput reports it.
    }
  });
  std::vector<Packet> out;
  try {
    out = CollectOutput(chain);
  } catch (...) {
    producer.join();
    throw;
  }
  producer.join();
  return out;
}

}  // namespace ekrt::oracle

#endif  // EKRT_TESTS_ORACLES_CHAIN_HARNESS_H_
