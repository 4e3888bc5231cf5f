#!/usr/bin/env python3
# Copyright 2026 The qstar Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Offline helper: build the h1/h2 dataset files from PARI/GP modular forms.

Not part of the build or of any test. Requires cypari2. For each level the
subspace of S_2(Gamma_0(N)) fixed by every Atkin-Lehner involution W_p
(p | N) is computed, then put in echelon form q + O(q^3), q^2 + O(q^3).
"""
import argparse
import json
import pathlib
import sys

import cypari2

LEVELS = [67, 73, 85, 93, 103, 106, 107, 115, 122, 129, 133, 134, 146, 154,
          158, 161, 165, 167, 170, 177, 186, 191, 205, 206, 209, 213, 215,
          221, 230, 266, 285, 286, 287, 299, 357, 390]


def sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def build(pari, level, precision):
    pari(f"mf = mfinit([{level}, 2], 1)")
    primes = [int(p) for p in pari(f"factor({level})[,1]~")]
    dim = int(pari("mfdim(mf)"))
    # Stack (W_p - 1) for every p and take the kernel.
    rows = []
    for p in primes:
        pari(f"W = mfatkininit(mf, {p})")
        pari(f"M{p} = W[2]")
        if str(pari(f"M{p}^2 == matid({dim})")) != "1":
            raise RuntimeError(f"W_{p} is not an involution at level {level}")
        rows.append(f"(M{p} - matid({dim}))")
    pari("A = matconcat(" + "[" + ";".join(rows) + "]" + ")")
    pari("K = matker(A)")
    if int(pari("#K")) != 2:
        raise RuntimeError(f"invariant space has dimension {pari('#K')} at level {level} (dim S2 = {dim})")
    pari(f"C = mfcoefs(mf, {precision - 1})")  # columns: basis elements, rows: q^0..q^{prec-1}
    pari("V = C * K")  # two columns
    # Echelonize over Q on the q^1 and q^2 rows.
    pari("P = [V[2,1], V[2,2]; V[3,1], V[3,2]]")
    pari("H = V * P^(-1)")
    if str(pari("denominator(H)")) != "1":
        raise RuntimeError(f"non-integral echelon basis at level {level}")
    h1 = [int(pari(f"H[{k + 1},1]")) for k in range(1, precision)]
    h2 = [int(pari(f"H[{k + 1},2]")) for k in range(2, precision)]
    assert h1[0] == 1 and h1[1] == 0 and h2[0] == 1
    return h1, h2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "datasets"))
    ap.add_argument("--margin", type=int, default=32)
    ap.add_argument("levels", nargs="*", type=int)
    args = ap.parse_args()
    pari = cypari2.Pari()
    pari.allocatemem(4 * 10**9)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for level in args.levels or LEVELS:
        precision = sigma(level) + 12 + args.margin
        h1, h2 = build(pari, level, precision)
        doc = {"format": 1, "level": level, "precision": precision,
               "h1": [str(c) for c in h1], "h2": [str(c) for c in h2]}
        path = out / f"level_{level}.json"
        path.write_text(json.dumps(doc, separators=(",", ":")) + "\n")
        print(f"level {level}: precision {precision} -> {path}", file=sys.stderr)


if __name__ == "__main__":
    main()
