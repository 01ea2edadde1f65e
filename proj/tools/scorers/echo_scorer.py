#!/usr/bin/env python3
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
"""External scorer that answers every frame with the same row.

Usage: echo_scorer.py V0 [V1 ...] [--die-after N]
"""

import sys


def main():
    args = sys.argv[1:]
    die_after = None
    if "--die-after" in args:
        k = args.index("--die-after")
        die_after = int(args[k + 1])
        del args[k:k + 2]
    row = " ".join(args)
    sys.stdout.write("EKRT-SCORER 1 %d\n" % len(args))
    sys.stdout.flush()
    for n, _ in enumerate(sys.stdin):
        if die_after is not None and n >= die_after:
            return 3
        sys.stdout.write(row + "\n")
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
