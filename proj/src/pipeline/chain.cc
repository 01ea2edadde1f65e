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

#include "ekrt/pipeline/chain.h"

#include <utility>

namespace ekrt {

Chain::Chain(ChainOptions options) : options_(options) {
  pipes_.push_back(
      std::make_unique<Pipe>(options_.pipe_capacity, "chain-input"));
}

Chain::~Chain() {
  if (!threads_.empty()) {
    PropagateError(0, "chain destroyed while running");
    JoinAll();
  }
}

void Chain::Add(std::unique_ptr<Component> component) {
  std::lock_guard<std::mutex> lock(mu_);
  if (state_ != ChainState::kIdle)
    throw ChainError("cannot add '" + component->name() +
                     "' to a chain that has already started");
  if (!components_.empty()) {
    const Component &prev = *components_.back();
    if (prev.output_kind() != component->input_kind())
      throw ChainError("cannot link '" + prev.name() + "' (outputs " +
                       std::string(PayloadKindName(prev.output_kind())) +
                       ") to '" + component->name() + "' (expects " +
                       std::string(PayloadKindName(component->input_kind())) +
                       ")");
  }
  const std::size_t index = components_.size();
  components_.push_back(std::move(component));
  pipes_.push_back(std::make_unique<Pipe>(
      options_.pipe_capacity,
      components_.back()->name() + "-out-" + std::to_string(index)));
}

Pipe &Chain::Start() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (error_) {
      state_ = ChainState::kFailed;
      throw ChainError("chain refuses to start: " + *error_);
    }
    if (state_ != ChainState::kIdle)
      throw ChainError("chain already started");
    if (components_.empty()) throw ChainError("chain has no components");
  }
  for (std::size_t i = 0; i < components_.size(); ++i) {
    try {
      components_[i]->Initialize();
    } catch (const std::exception &e) {
      const std::string msg = "component '" + components_[i]->name() +
                              "' failed to initialize: " + e.what();
      PropagateError(i, msg);
      throw ChainError(msg);
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  state_ = ChainState::kRunning;
  done_.resize(components_.size());
  for (std::size_t i = components_.size(); i-- > 0;) {
    std::promise<void> done;
    done_[i] = done.get_future();
    threads_.emplace_back(&Chain::RunComponent, this, i, std::move(done));
  }
  return *pipes_.back();
}

void Chain::RunComponent(std::size_t index, std::promise<void> done) {
  ComponentContext ctx(*pipes_[index], *pipes_[index + 1]);
  Component &component = *components_[index];
  try {
    component.Run(ctx);
    if (!ctx.eos_emitted()) ctx.Emit(EmptyPayload{}, {.endpoint = false,
                                                      .eos = true});
  } catch (const PipeError &e) {
    // Either a neighbour already failed (the pipe carries its error) or
    // this component misused a pipe.
    PropagateError(index, "component '" + component.name() + "': " + e.what());
  } catch (const std::exception &e) {
    PropagateError(index, "component '" + component.name() + "': " + e.what());
  }
  done.set_value();
}

void Chain::PropagateError(std::size_t origin, const std::string &error) {
  (void)origin;
  std::lock_guard<std::mutex> lock(mu_);
  if (error_) return;
  error_ = error;
  for (auto &pipe : pipes_) pipe->Stall(error);
  if (state_ == ChainState::kIdle) state_ = ChainState::kFailed;
}

void Chain::JoinAll() {
  for (auto &t : threads_)
    if (t.joinable()) t.join();
  threads_.clear();
  std::lock_guard<std::mutex> lock(mu_);
  if (state_ == ChainState::kRunning)
    state_ = error_ ? ChainState::kFailed : ChainState::kFinished;
}

void Chain::Stop() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (state_ != ChainState::kRunning) return;
  }
  input().Terminate();
  const auto deadline = std::chrono::steady_clock::now() + options_.stop_timeout;
  std::string stuck;
  for (std::size_t i = 0; i < done_.size(); ++i) {
    if (done_[i].wait_until(deadline) != std::future_status::ready) {
      if (!stuck.empty()) stuck += ", ";
      stuck += "'" + components_[i]->name() + "'";
    }
  }
  if (!stuck.empty()) {
    PropagateError(0, "stop timed out");
    JoinAll();
    throw ChainError("component(s) failed to stop within " +
                     std::to_string(options_.stop_timeout.count()) +
                     " ms: " + stuck);
  }
  JoinAll();
}

void Chain::Join() {
  JoinAll();
  std::lock_guard<std::mutex> lock(mu_);
  if (error_) throw ChainError(*error_);
}

ChainState Chain::state() const {
  std::lock_guard<std::mutex> lock(mu_);
  return state_;
}

std::optional<std::string> Chain::error() const {
  std::lock_guard<std::mutex> lock(mu_);
  return error_;
}

std::vector<Packet> CollectOutput(Chain &chain) {
  std::vector<Packet> out;
  try {
    while (auto packet = chain.output().Get()) out.push_back(std::move(*packet));
  } catch (const PipeError &) {
    // The chain error below is more informative.
  }
  chain.Join();
  return out;
}

}  // namespace ekrt
