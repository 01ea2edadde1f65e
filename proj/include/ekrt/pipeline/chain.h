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

// include/ekrt/pipeline/chain.h

#ifndef EKRT_PIPELINE_CHAIN_H_
#define EKRT_PIPELINE_CHAIN_H_

#include <chrono>
#include <cstddef>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ekrt/base/error.h"
#include "ekrt/pipeline/component.h"
#include "ekrt/pipeline/pipe.h"

namespace ekrt {

class ChainError : public Error {
 public:
  using Error::Error;
};

struct ChainOptions {
  std::size_t pipe_capacity = Pipe::kDefaultCapacity;
  std::chrono::milliseconds stop_timeout{5000};
};

enum class ChainState { kIdle, kRunning, kFinished, kFailed };

// Linear container of components. With n components there are n+1 pipes:
// pipe 0 feeds component 0 (the chain input), pipe i connects component
// i-1 to component i, pipe n is the chain output.
class Chain {
 public:
  explicit Chain(ChainOptions options = {});
  ~Chain();

  Chain(const Chain &) = delete;
  Chain &operator=(const Chain &) = delete;

  // Throws ChainError naming both components if the payload kinds do not
  // line up.
  void Add(std::unique_ptr<Component> component);

  // Initializes every component, then starts them last-to-first so that
  // consumers are waiting before producers emit. Returns the output pipe.
  Pipe &Start();

  // Signals end of input at the head and joins every component. Throws
  // ChainError naming any component that did not finish within the stop
  // timeout. No-op unless running.
  void Stop();

  // Waits for all components to finish on their own (eos reached the end).
  // Throws ChainError if the chain failed.
  void Join();

  // Stalls every pipe with the error. Idempotent: the first error wins.
  // Before Start, it makes Start refuse to run.
  void PropagateError(std::size_t origin, const std::string &error);

  ChainState state() const;
  std::optional<std::string> error() const;

  std::size_t size() const { return components_.size(); }
  Component &component(std::size_t i) { return *components_.at(i); }
  Pipe &pipe(std::size_t i) { return *pipes_.at(i); }
  Pipe &input() { return *pipes_.front(); }
  Pipe &output() { return *pipes_.back(); }

 private:
  void RunComponent(std::size_t index, std::promise<void> done);
  void JoinAll();

  ChainOptions options_;
  std::vector<std::unique_ptr<Component>> components_;
  std::vector<std::unique_ptr<Pipe>> pipes_;
  std::vector<std::thread> threads_;
  std::vector<std::future<void>> done_;
  mutable std::mutex mu_;
  ChainState state_ = ChainState::kIdle;
  std::optional<std::string> error_;
};

// Drains the output pipe of a started chain until eos, then joins it.
// Throws ChainError if the chain fails.
std::vector<Packet> CollectOutput(Chain &chain);

}  // namespace ekrt

#endif  // EKRT_PIPELINE_CHAIN_H_
