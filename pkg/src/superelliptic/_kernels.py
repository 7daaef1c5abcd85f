"""Hot inner loops: GF(2) elimination and Todd-Coxeter coset enumeration.

Each kernel is written against plain numpy arrays so the same source runs
either compiled by numba or interpreted. Set ``SUPERELLIPTIC_NO_JIT=1`` to
force the interpreted path (numba is also skipped if it cannot be imported).
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("SUPERELLIPTIC_NO_JIT", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit

    JIT_ENABLED = True
except ImportError:  # pragma: no cover - depends on environment
    _njit = None
    JIT_ENABLED = False


def maybe_jit(fn):
    """Compile ``fn`` with numba when enabled; keep the Python original as ``.py_func``."""
    if JIT_ENABLED:
        compiled = _njit(cache=True)(fn)
        return compiled
    fn.py_func = fn
    return fn


@maybe_jit
def gf2_rref(aug, ncols):
    """Row-reduce ``aug`` in place over GF(2) on its first ``ncols`` columns.

    Returns the reduced array and the rank.
    """
    rows = aug.shape[0]
    r = 0
    for c in range(ncols):
        piv = -1
        for i in range(r, rows):
            if aug[i, c] & 1:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(aug.shape[1]):
                t = aug[r, j]
                aug[r, j] = aug[piv, j]
                aug[piv, j] = t
        for i in range(rows):
            if i != r and aug[i, c] & 1:
                for j in range(aug.shape[1]):
                    aug[i, j] ^= aug[r, j]
        r += 1
        if r == rows:
            break
    return aug, r


# Coset enumeration (HLT strategy with coincidence processing).
#
# Letters are encoded 2*g for generator g and 2*g+1 for its inverse, so the
# inverse of letter x is x ^ 1. Relators arrive flattened with offsets.


@maybe_jit
def _rep(p, k):
    root = k
    while p[root] != root:
        root = p[root]
    while p[k] != root:
        nxt = p[k]
        p[k] = root
        k = nxt
    return root


@maybe_jit
def _merge(p, a, b, queue, qlen):
    ra = _rep(p, a)
    rb = _rep(p, b)
    if ra != rb:
        lo = min(ra, rb)
        hi = max(ra, rb)
        p[hi] = lo
        queue[qlen] = hi
        qlen += 1
    return qlen


@maybe_jit
def _coincidence(table, p, a, b, queue):
    nlet = table.shape[1]
    qlen = _merge(p, a, b, queue, 0)
    i = 0
    while i < qlen:
        g = queue[i]
        i += 1
        for x in range(nlet):
            d = table[g, x]
            if d >= 0:
                table[d, x ^ 1] = -1
                mu = _rep(p, g)
                nu = _rep(p, d)
                if table[mu, x] >= 0:
                    qlen = _merge(p, nu, table[mu, x], queue, qlen)
                elif table[nu, x ^ 1] >= 0:
                    qlen = _merge(p, mu, table[nu, x ^ 1], queue, qlen)
                else:
                    table[mu, x] = nu
                    table[nu, x ^ 1] = mu


@maybe_jit
def _scan_and_fill(table, p, state, alpha, word, queue):
    """Scan ``word`` from coset ``alpha``, defining cosets as needed.

    ``state`` holds [next_free, unused, total_defined]. Returns False only
    when the table is full.
    """
    n = word.shape[0]
    if n == 0:
        return True
    f = alpha
    b = alpha
    i = 0
    j = n - 1
    while True:
        while i <= j and table[f, word[i]] >= 0:
            f = table[f, word[i]]
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, p, f, b, queue)
            return True
        while j >= i and table[b, word[j] ^ 1] >= 0:
            b = table[b, word[j] ^ 1]
            j -= 1
        if j < i:
            _coincidence(table, p, f, b, queue)
            return True
        if i == j:
            table[f, word[i]] = b
            table[b, word[i] ^ 1] = f
            return True
        if state[0] >= table.shape[0]:
            return False
        new = state[0]
        state[0] += 1
        state[2] += 1
        table[f, word[i]] = new
        table[new, word[i] ^ 1] = f


@maybe_jit
def coset_enumerate(nletters, rel_flat, rel_off, sub_flat, sub_off, capacity):
    """Enumerate cosets of the subgroup spanned by the ``sub`` words.

    Returns ``(index, total_defined, used_rows, table, p)``; ``index`` is -1
    when more than ``capacity`` cosets would be needed.
    """
    table = -np.ones((capacity, nletters), dtype=np.int64)
    p = np.arange(capacity, dtype=np.int64)
    queue = np.zeros(capacity, dtype=np.int64)
    state = np.zeros(3, dtype=np.int64)
    state[0] = 1
    state[2] = 1
    nrel = rel_off.shape[0] - 1
    nsub = sub_off.shape[0] - 1
    for s in range(nsub):
        w = sub_flat[sub_off[s]:sub_off[s + 1]]
        if p[0] == 0:
            if not _scan_and_fill(table, p, state, 0, w, queue):
                return -1, state[2], state[0], table, p
    alpha = 0
    while alpha < state[0]:
        if p[alpha] == alpha:
            for r in range(nrel):
                w = rel_flat[rel_off[r]:rel_off[r + 1]]
                if not _scan_and_fill(table, p, state, alpha, w, queue):
                    return -1, state[2], state[0], table, p
                if p[alpha] != alpha:
                    break
            if p[alpha] == alpha:
                for x in range(nletters):
                    if table[alpha, x] < 0:
                        if state[0] >= capacity:
                            return -1, state[2], state[0], table, p
                        new = state[0]
                        state[0] += 1
                        state[2] += 1
                        table[alpha, x] = new
                        table[new, x ^ 1] = alpha
        alpha += 1
    live = 0
    for c in range(state[0]):
        if p[c] == c:
            live += 1
    return live, state[2], state[0], table, p
