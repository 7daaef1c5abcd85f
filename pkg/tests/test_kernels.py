import os
import subprocess
import sys

import numpy as np
from hypothesis import given, strategies as st

from superelliptic import _kernels
from superelliptic.cosets import _flatten

gf2_matrix = st.integers(1, 8).flatmap(
    lambda r: st.integers(1, 8).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@given(gf2_matrix)
def test_gf2_rref_compiled_matches_python(rows):
    a = np.array(rows, dtype=np.uint8)
    fast, r1 = _kernels.gf2_rref(a.copy(), a.shape[1])
    slow, r2 = _kernels.gf2_rref.py_func(a.copy(), a.shape[1])
    assert r1 == r2
    assert np.array_equal(fast, slow)


def test_coset_enumerate_compiled_matches_python():
    # A4 = <a, b | a^2, b^3, (ab)^3>
    rel_flat, rel_off = _flatten([(1, 1), (2, 2, 2), (1, 2, 1, 2, 1, 2)])
    sub_flat, sub_off = _flatten([])
    args = (4, rel_flat, rel_off, sub_flat, sub_off, 256)
    fast = _kernels.coset_enumerate(*args)
    slow = _kernels.coset_enumerate.py_func(*args)
    assert fast[0] == slow[0] == 12
    assert fast[1] == slow[1] and fast[2] == slow[2]
    assert np.array_equal(fast[3], slow[3])


def test_no_jit_flag_selects_fallback():
    code = ("from superelliptic import _kernels as k; "
            "from superelliptic.fourmanifold import pi1_total_space; "
            "from superelliptic.family import FamilyParameters as P; "
            "print(k.JIT_ENABLED, pi1_total_space(P(1, 3)).status)")
    env = {**os.environ, "SUPERELLIPTIC_NO_JIT": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.split() == ["False", "trivial"]
