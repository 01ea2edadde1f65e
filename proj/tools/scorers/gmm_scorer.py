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
"""External scorer: diagonal GMM over the ekrt line protocol.

Usage: gmm_scorer.py MODEL
"""

import math
import sys


def load(path):
    with open(path) as f:
        toks = [l.split("#", 1)[0].split() for l in f]
    lines = [t for t in toks if t]
    n_pdfs, dims = int(lines[0][0]), int(lines[0][1])
    pdfs, i = [], 1
    for _ in range(n_pdfs):
        n = int(lines[i][0])
        i += 1
        comps = []
        for _ in range(n):
            v = [float(x) for x in lines[i]]
            i += 1
            w, mean, var = v[0], v[1:1 + dims], v[1 + dims:]
            const = math.log(w) - 0.5 * sum(math.log(2 * math.pi * s) for s in var)
            comps.append((const, mean, var))
        pdfs.append(comps)
    return dims, pdfs


def score(pdfs, x):
    out = []
    for comps in pdfs:
        terms = [c - 0.5 * sum((a - m) ** 2 / s for a, m, s in zip(x, mean, var))
                 for c, mean, var in comps]
        top = max(terms)
        out.append(top + math.log(sum(math.exp(t - top) for t in terms)))
    return out


def main():
    dims, pdfs = load(sys.argv[1])
    out = sys.stdout
    out.write("EKRT-SCORER 1 %d\n" % len(pdfs))
    out.flush()
    for line in sys.stdin:
        x = [float(v) for v in line.split()]
        if len(x) != dims:
            sys.stderr.write("gmm_scorer: got %d dims, expected %d\n" % (len(x), dims))
            return 1
        out.write(" ".join(repr(v) for v in score(pdfs, x)) + "\n")
        out.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
