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

#include "ekrt/pipeline/pipe.h"

#include <algorithm>
#include <utility>

namespace ekrt {

Pipe::Pipe(std::size_t capacity, std::string name)
    : capacity_(std::max<std::size_t>(capacity, 1)), name_(std::move(name)) {}

void Pipe::ThrowIfStalledLocked() const {
  if (error_) throw PipeError(*error_);
}

void Pipe::Put(Packet packet) {
  if (!IsWellFormed(packet))
    throw PipeError(name_ + ": empty packet without endpoint/eos flag");
  std::unique_lock<std::mutex> lock(mu_);
  not_full_.wait(lock, [&] {
    return state_ != PipeState::kActive || buffer_.size() < capacity_;
  });
  ThrowIfStalledLocked();
  if (state_ == PipeState::kTerminated)
    throw PipeError(name_ + ": put after termination (eos already sent)");
  if (last_seq_ && packet.seq <= *last_seq_)
    throw PipeError(name_ + ": sequence number " + std::to_string(packet.seq) +
                    " does not follow " + std::to_string(*last_seq_));
  last_seq_ = packet.seq;
  const bool eos = packet.flags.eos;
  buffer_.push_back(std::move(packet));
  high_water_ = std::max(high_water_, buffer_.size());
  if (eos) {
    state_ = PipeState::kTerminated;
    not_full_.notify_all();
  }
  not_empty_.notify_one();
}

std::optional<Packet> Pipe::PopLocked() {
  ThrowIfStalledLocked();
  if (buffer_.empty()) return std::nullopt;
  Packet p = std::move(buffer_.front());
  buffer_.pop_front();
  not_full_.notify_one();
  return p;
}

std::optional<Packet> Pipe::Get() {
  std::unique_lock<std::mutex> lock(mu_);
  not_empty_.wait(lock, [&] {
    return state_ != PipeState::kActive || !buffer_.empty();
  });
  return PopLocked();
}

std::optional<Packet> Pipe::GetFor(std::chrono::milliseconds timeout,
                                   bool *timed_out) {
  std::unique_lock<std::mutex> lock(mu_);
  const bool ready = not_empty_.wait_for(lock, timeout, [&] {
    return state_ != PipeState::kActive || !buffer_.empty();
  });
  if (timed_out) *timed_out = !ready;
  if (!ready) return std::nullopt;
  return PopLocked();
}

std::optional<Packet> Pipe::TryGet() {
  std::lock_guard<std::mutex> lock(mu_);
  return PopLocked();
}

void Pipe::Stall(const std::string &error) {
  std::lock_guard<std::mutex> lock(mu_);
  if (state_ != PipeState::kActive) return;
  state_ = PipeState::kStalled;
  error_ = error;
  buffer_.clear();
  not_empty_.notify_all();
  not_full_.notify_all();
}

void Pipe::Terminate() {
  std::lock_guard<std::mutex> lock(mu_);
  state_ = PipeState::kTerminated;
  not_empty_.notify_all();
  not_full_.notify_all();
}

PipeState Pipe::state() const {
  std::lock_guard<std::mutex> lock(mu_);
  return state_;
}

std::optional<std::string> Pipe::error() const {
  std::lock_guard<std::mutex> lock(mu_);
  return error_;
}

std::size_t Pipe::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return buffer_.size();
}

std::size_t Pipe::high_water_mark() const {
  std::lock_guard<std::mutex> lock(mu_);
  return high_water_;
}

}  // namespace ekrt
