"""Compare the numba-compiled kernels with the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each mode runs in its own interpreter; the fallback is selected with
``SUPERELLIPTIC_NO_JIT=1``, exactly as a user would select it. Helper
kernels called from other kernels are therefore interpreted too.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from superelliptic import _kernels
from superelliptic.cosets import _flatten
from superelliptic.family import FamilyParameters
from superelliptic.fourmanifold import total_space_presentation


def gf2_case(size: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, size=(size, size + 1), dtype=np.uint8)
    return lambda fn: fn(a.copy(), size)


def coset_case(n: int, k: int):
    pres = total_space_presentation(FamilyParameters(n, k))
    rel_flat, rel_off = _flatten(w for w in pres.relators if w)
    sub_flat, sub_off = _flatten([])
    args = (2 * pres.ngens, rel_flat, rel_off, sub_flat, sub_off, 4096)
    return lambda fn: fn(*args)


def coxeter_case():
    # PSL(2,7) = <a, b | a^2, b^3, (ab)^7, [a,b]^4>, order 168
    rels = [(1, 1), (2, 2, 2), (1, 2) * 7, (1, 2, -1, -2) * 4]
    rel_flat, rel_off = _flatten(rels)
    sub_flat, sub_off = _flatten([])
    args = (4, rel_flat, rel_off, sub_flat, sub_off, 1 << 14)
    return lambda fn: fn(*args)


def symmetric_case(m: int):
    # Coxeter presentation of the symmetric group on m letters
    rels = [(i, i) for i in range(1, m)]
    rels += [(i, i + 1) * 3 for i in range(1, m - 1)]
    rels += [(i, j, i, j) for i in range(1, m) for j in range(i + 2, m)]
    rel_flat, rel_off = _flatten(rels)
    sub_flat, sub_off = _flatten([])
    args = (2 * (m - 1), rel_flat, rel_off, sub_flat, sub_off, 1 << 17)
    return lambda fn: fn(*args)


CASES = {
    "gf2_rref 200x201": ("gf2_rref", lambda: gf2_case(200)),
    "coset_enumerate PSL(2,7)": ("coset_enumerate", coxeter_case),
    "coset_enumerate S7": ("coset_enumerate", lambda: symmetric_case(7)),
    "coset_enumerate total space (1,4)": ("coset_enumerate", lambda: coset_case(1, 4)),
    "coset_enumerate total space (2,3)": ("coset_enumerate", lambda: coset_case(2, 3)),
}


def time_cases(repeat: int) -> dict:
    out = {}
    for name, (kernel_name, make) in CASES.items():
        kernel = getattr(_kernels, kernel_name)
        call = make()
        call(kernel)                      # compile outside the timing
        out[name] = min(timeit.repeat(lambda: call(kernel), number=1, repeat=repeat))
    return out


def run_mode(no_jit: bool, repeat: int) -> dict:
    env = {**os.environ, "SUPERELLIPTIC_NO_JIT": "1" if no_jit else "0"}
    proc = subprocess.run([sys.executable, __file__, "--worker", "--repeat", str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        print(json.dumps({"jit": _kernels.JIT_ENABLED, "times": time_cases(args.repeat)}))
        return
    fast, slow = run_mode(False, args.repeat), run_mode(True, args.repeat)
    assert fast["jit"] and not slow["jit"]
    print(f"{'case':40s} {'numba (ms)':>11s} {'numpy (ms)':>11s} {'speedup':>8s}")
    for name in CASES:
        f, s = fast["times"][name], slow["times"][name]
        print(f"{name:40s} {f * 1e3:11.2f} {s * 1e3:11.2f} {s / f:7.1f}x")


if __name__ == "__main__":
    main()
