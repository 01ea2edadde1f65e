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

// include/ekrt/decoder/decoder-component.h

#ifndef EKRT_DECODER_DECODER_COMPONENT_H_
#define EKRT_DECODER_DECODER_COMPONENT_H_

#include <memory>

#include "ekrt/decoder/decoder.h"
#include "ekrt/pipeline/component.h"

namespace ekrt {

struct DecoderComponentConfig {
  DecoderConfig decoder;
  bool emit_partials = false;  // best partial after every input packet
};

// LoglikBlock -> HypothesisSet. On an endpoint or eos the N-best list is
// emitted carrying that flag and the decoder restarts. A segment with no
// frames yields an Empty packet instead.
class DecoderComponent : public Component {
 public:
  DecoderComponent(std::shared_ptr<const Wfst> graph,
                   const DecoderComponentConfig &config,
                   std::string name = "decoder");

  PayloadKind input_kind() const override { return PayloadKind::kLoglik; }
  PayloadKind output_kind() const override {
    return PayloadKind::kHypotheses;
  }
  int segments() const { return segments_; }

 protected:
  void Process(Packet packet, ComponentContext &ctx) override;

 private:
  Decoder decoder_;
  DecoderComponentConfig config_;
  int segments_ = 0;
};

}  // namespace ekrt

#endif  // EKRT_DECODER_DECODER_COMPONENT_H_
