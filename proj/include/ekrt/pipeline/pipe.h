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

// include/ekrt/pipeline/pipe.h

#ifndef EKRT_PIPELINE_PIPE_H_
#define EKRT_PIPELINE_PIPE_H_

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>
#include <string>

#include "ekrt/base/error.h"
#include "ekrt/pipeline/packet.h"

namespace ekrt {

enum class PipeState { kActive, kStalled, kTerminated };

// Thrown by Put/Get on a pipe that carries an error, and by Put on a
// terminated pipe.
class PipeError : public Error {
 public:
  using Error::Error;
};

// Bounded blocking FIFO between one producer and one consumer.
//
// Put blocks while the buffer is full. Putting a packet with the eos flag
// terminates the pipe: later puts are rejected, buffered packets can still
// be drained and Get returns nullopt once the buffer is empty. Stall() puts
// the pipe into the error state, which wakes every waiter; from then on
// Put and Get throw PipeError carrying the stored message.
class Pipe {
 public:
  static constexpr std::size_t kDefaultCapacity = 32;

  explicit Pipe(std::size_t capacity = kDefaultCapacity,
                std::string name = "pipe");

  Pipe(const Pipe &) = delete;
  Pipe &operator=(const Pipe &) = delete;

  void Put(Packet packet);

  // Blocks while empty and active. nullopt means terminated and drained.
  std::optional<Packet> Get();

  // As Get, but gives up after 'timeout' and returns nullopt with
  // *timed_out set.
  std::optional<Packet> GetFor(std::chrono::milliseconds timeout,
                               bool *timed_out);

  // Non-blocking: returns nullopt if nothing is buffered.
  std::optional<Packet> TryGet();

  // Active -> Stalled. No-op if already stalled or terminated.
  void Stall(const std::string &error);

  // Active/Stalled -> Terminated without an eos packet.
  void Terminate();

  PipeState state() const;
  std::optional<std::string> error() const;
  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }
  std::size_t high_water_mark() const;
  const std::string &name() const { return name_; }

 private:
  std::optional<Packet> PopLocked();
  void ThrowIfStalledLocked() const;

  const std::size_t capacity_;
  const std::string name_;
  mutable std::mutex mu_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::deque<Packet> buffer_;
  PipeState state_ = PipeState::kActive;
  std::optional<std::string> error_;
  std::optional<std::uint64_t> last_seq_;
  std::size_t high_water_ = 0;
};

}  // namespace ekrt

#endif  // EKRT_PIPELINE_PIPE_H_
