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

// include/ekrt/tools/chain-builder.h

#ifndef EKRT_TOOLS_CHAIN_BUILDER_H_
#define EKRT_TOOLS_CHAIN_BUILDER_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ekrt/decoder/wfst.h"
#include "ekrt/pipeline/chain.h"
#include "ekrt/tools/chain-config.h"
#include "ekrt/transport/byte-stream.h"
#include "ekrt/transport/transport-components.h"

namespace ekrt {

class VadComponent;
class DecoderComponent;

// Command-line overrides applied on top of the config file.
struct BuildOptions {
  // Which "[chain]" key lists the components: "components", or "client"
  // (a sender is appended) or "server" (a receiver is prepended).
  std::string list_key = "components";
  std::optional<std::vector<std::string>> components;  // replaces the list
  std::optional<std::string> wav;
  std::optional<bool> realtime;
  std::optional<int> nbest;
  std::optional<std::string> connect;  // host:port for a sender
  std::optional<std::string> listen;   // host:port for a receiver
  // Replace TCP for in-process client/server wiring.
  StreamFactory connect_factory;
  StreamFactory accept_factory;
};

struct BuiltChain {
  std::unique_ptr<Chain> chain;
  std::vector<std::string> names;  // canonical component names, in order
  double audio_seconds = 0.0;      // of the replayed file, if any
  std::optional<WordTable> words;  // from [decoder] words, if given
  std::shared_ptr<TcpListener> listener;
  VadComponent *vad = nullptr;
  DecoderComponent *decoder = nullptr;
};

// Names accepted in a component list. An entry "type@section" reads its
// parameters from [section] instead of the type's default section.
const std::vector<std::string> &KnownComponents();

// Throws ConfigError for an empty list, an unknown name or a bad parameter
// and ChainError for incompatible neighbours.
BuiltChain BuildChain(const ChainConfig &config,
                      const BuildOptions &options = {});

}  // namespace ekrt

#endif  // EKRT_TOOLS_CHAIN_BUILDER_H_
