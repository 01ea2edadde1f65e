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

// include/ekrt/pipeline/component.h

#ifndef EKRT_PIPELINE_COMPONENT_H_
#define EKRT_PIPELINE_COMPONENT_H_

#include <cstdint>
#include <optional>
#include <string>

#include "ekrt/pipeline/packet.h"
#include "ekrt/pipeline/pipe.h"

namespace ekrt {

// The two pipe ends a running component owns, plus its output sequence
// counter.
class ComponentContext {
 public:
  ComponentContext(Pipe &input, Pipe &output) : in_(input), out_(output) {}

  std::optional<Packet> Receive() { return in_.Get(); }

  // Emits one packet. An Empty payload with no flags is silently skipped,
  // so callers can forward flags without checking whether data exists.
  void Emit(Payload payload, PacketFlags flags = {});

  // True once the input end has been terminated or stalled; used by
  // sources, which never read their input.
  bool StopRequested() const { return in_.state() != PipeState::kActive; }

  bool eos_emitted() const { return eos_emitted_; }
  std::uint64_t emitted() const { return next_seq_; }
  Pipe &input() { return in_; }
  Pipe &output() { return out_; }

 private:
  Pipe &in_;
  Pipe &out_;
  std::uint64_t next_seq_ = 0;
  bool eos_emitted_ = false;
};

// A processing stage of a Chain. Runs in its own thread.
class Component {
 public:
  explicit Component(std::string name) : name_(std::move(name)) {}
  virtual ~Component() = default;

  Component(const Component &) = delete;
  Component &operator=(const Component &) = delete;

  const std::string &name() const { return name_; }

  // kEmpty as input kind marks a source: it reads nothing but a stop
  // request from its input pipe.
  virtual PayloadKind input_kind() const = 0;
  virtual PayloadKind output_kind() const = 0;

  // Called on the starting thread before any component runs. Throwing
  // aborts Chain::Start.
  virtual void Initialize() {}

  // Default loop: receive, check kind, Process, stop after eos. The chain
  // emits a closing eos if the component did not.
  virtual void Run(ComponentContext &ctx);

 protected:
  // Must forward the packet's endpoint/eos flags on its last emitted
  // packet.
  virtual void Process(Packet packet, ComponentContext &ctx);

 private:
  std::string name_;
};

// Forwards packets of one kind unchanged.
class PassThrough : public Component {
 public:
  explicit PassThrough(PayloadKind kind, std::string name = "pass-through")
      : Component(std::move(name)), kind_(kind) {}
  PayloadKind input_kind() const override { return kind_; }
  PayloadKind output_kind() const override { return kind_; }

 private:
  PayloadKind kind_;
};

}  // namespace ekrt

#endif  // EKRT_PIPELINE_COMPONENT_H_
