# Copyright 2026 The ekrt Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Streaming speech recognition building blocks.

Thin wrappers over the C++ library: features, VAD, GMM scoring, WFST
decoding and config-driven chains.
"""

from ._ekrt import (
    Error,
    bench_rtf,
    compute_features,
    crc32,
    decode_config,
    decode_logliks,
    deltas,
    gmm_loglik,
    make_toy_model,
    power_spectrum,
    read_wav,
    sliding_cmvn,
    splice,
    vad_filter,
    write_wav,
)

__all__ = [
    "Error",
    "bench_rtf",
    "compute_features",
    "crc32",
    "decode_config",
    "decode_logliks",
    "deltas",
    "gmm_loglik",
    "make_toy_model",
    "power_spectrum",
    "read_wav",
    "sliding_cmvn",
    "splice",
    "vad_filter",
    "write_wav",
]
