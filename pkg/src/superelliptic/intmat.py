"""Exact integer and rational linear algebra.

Matrices are numpy arrays with ``dtype=object`` holding Python ints, so no
entry can overflow. Everything here is small (a few hundred rows at most).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def as_int_matrix(rows) -> np.ndarray:
    """Copy ``rows`` into a 2-d object array of Python ints."""
    a = np.array(rows, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.zeros((0, 0), dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = int(v)
    return out


def identity(n: int) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def zeros(r: int, c: int) -> np.ndarray:
    m = np.empty((r, c), dtype=object)
    m.fill(0)
    return m


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = a.dot(b)
    if out.dtype != object:
        out = out.astype(object)
    return out


def is_identity(a: np.ndarray) -> bool:
    return a.shape[0] == a.shape[1] and bool(np.all(a == identity(a.shape[0])))


def to_lists(a: np.ndarray) -> list[list[int]]:
    return [[int(v) for v in row] for row in a]


def smith_normal_form(a: np.ndarray):
    """Smith normal form with unimodular transforms.

    Returns ``(U, D, V, Uinv, Vinv)`` with ``U @ a @ V == D``, ``D`` diagonal,
    nonnegative, each diagonal entry dividing the next.
    """
    D = as_int_matrix(a) if a.size else zeros(*a.shape)
    m, n = D.shape
    U, Uinv = identity(m), identity(m)
    V, Vinv = identity(n), identity(n)

    def swap_rows(i, j):
        if i != j:
            D[[i, j]] = D[[j, i]]
            U[[i, j]] = U[[j, i]]
            Uinv[:, [i, j]] = Uinv[:, [j, i]]

    def swap_cols(i, j):
        if i != j:
            D[:, [i, j]] = D[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]
            Vinv[[i, j]] = Vinv[[j, i]]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = D[dst] + q * D[src]
        U[dst] = U[dst] + q * U[src]
        Uinv[:, src] = Uinv[:, src] - q * Uinv[:, dst]

    def add_col(dst, src, q):
        D[:, dst] = D[:, dst] + q * D[:, src]
        V[:, dst] = V[:, dst] + q * V[:, src]
        Vinv[src] = Vinv[src] - q * Vinv[dst]

    def negate_row(i):
        D[i] = -D[i]
        U[i] = -U[i]
        Uinv[:, i] = -Uinv[:, i]

    t = 0
    while t < min(m, n):
        sub = D[t:, t:]
        nz = [(abs(int(sub[i, j])), i, j) for i in range(sub.shape[0])
              for j in range(sub.shape[1]) if sub[i, j] != 0]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, t + i)
        swap_cols(t, t + j)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i, t] != 0:
                    q = D[i, t] // D[t, t]
                    add_row(i, t, -q)
                    if D[i, t] != 0:
                        done = False
            for j in range(t + 1, n):
                if D[t, j] != 0:
                    q = D[t, j] // D[t, t]
                    add_col(j, t, -q)
                    if D[t, j] != 0:
                        done = False
            if done:
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i, j] % D[t, t] != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # move the smallest nonzero of row/col t into the pivot
            cands = [(abs(int(D[i, t])), i, t) for i in range(t, m) if D[i, t] != 0]
            cands += [(abs(int(D[t, j])), t, j) for j in range(t, n) if D[t, j] != 0]
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
        if D[t, t] < 0:
            negate_row(t)
        t += 1
    return U, D, V, Uinv, Vinv


def invariant_factors(a: np.ndarray) -> list[int]:
    """Diagonal of the Smith normal form, padded with zeros to the column count."""
    if a.size == 0:
        return [0] * a.shape[1]
    _, D, _, _, _ = smith_normal_form(a)
    diag = [int(D[i, i]) for i in range(min(D.shape))]
    diag += [0] * (a.shape[1] - len(diag))
    return diag


def rank(a: np.ndarray) -> int:
    return sum(1 for d in invariant_factors(a) if d != 0) if a.size else 0


def integer_kernel(a: np.ndarray) -> np.ndarray:
    """Columns form a basis of ``{x in Z^n : a x = 0}``."""
    n = a.shape[1]
    if a.shape[0] == 0:
        return identity(n)
    _, D, V, _, _ = smith_normal_form(a)
    r = sum(1 for i in range(min(D.shape)) if D[i, i] != 0)
    return V[:, r:].copy()


def solve_integer(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Return an integer ``x`` with ``a @ x == b``; raise ValueError if none exists."""
    U, D, V, _, _ = smith_normal_form(a)
    rhs = matmul(U, b)
    y = zeros(a.shape[1], b.shape[1])
    r = min(D.shape)
    for i in range(rhs.shape[0]):
        d = int(D[i, i]) if i < r else 0
        for j in range(rhs.shape[1]):
            v = int(rhs[i, j])
            if d == 0:
                if v != 0:
                    raise ValueError("system has no solution")
            else:
                if v % d:
                    raise ValueError("system has no integer solution")
                y[i, j] = v // d
    x = matmul(V, y)
    assert np.all(matmul(a, x) == b)
    return x


def inverse_unimodular(a: np.ndarray) -> np.ndarray:
    x = solve_integer(a, identity(a.shape[0]))
    return x


def determinant(a: np.ndarray) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = a.shape[0]
    m = [[int(v) for v in row] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def symmetric_signature(q) -> int:
    """Signature of a symmetric rational matrix via congruence diagonalisation."""
    m = [[Fraction(v) for v in row] for row in q]
    n = len(m)
    for i in range(n):
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix is not symmetric")
    sig = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active
                         if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace basis vector i by e_i + e_j, giving a nonzero diagonal
            for r in range(n):
                m[r][i] += m[r][j]
            for c in range(n):
                m[i][c] += m[j][c]
            piv = i
        p = m[piv][piv]
        sig += 1 if p > 0 else -1
        active.remove(piv)
        for r in active:
            f = m[r][piv] / p
            if f:
                for c in active:
                    m[r][c] -= f * m[piv][c]
        for r in active:
            m[r][piv] = m[piv][r] = Fraction(0)
    return sig


def gf2_solve(a: np.ndarray, b: np.ndarray):
    """Lexicographically least solution of ``a x = b`` over GF(2), or None.

    The first unknown is the most significant; a 0 is preferred there.
    """
    from ._kernels import gf2_rref

    a = np.asarray(a, dtype=np.uint8) % 2
    b = np.asarray(b, dtype=np.uint8).reshape(-1) % 2
    n = a.shape[1]

    def consistent(fixed):
        rows = [np.concatenate([a, b[:, None]], axis=1)]
        for var, val in fixed:
            row = np.zeros(n + 1, dtype=np.uint8)
            row[var] = 1
            row[n] = val
            rows.append(row[None, :])
        aug = np.ascontiguousarray(np.concatenate(rows, axis=0))
        red, rk = gf2_rref(aug, n)
        return not np.any((red[rk:, n] == 1))

    if not consistent([]):
        return None
    fixed = []
    for var in range(n):
        if consistent(fixed + [(var, 0)]):
            fixed.append((var, 0))
        else:
            fixed.append((var, 1))
    return np.array([v for _, v in fixed], dtype=np.uint8)


def gf2_rank(a: np.ndarray) -> int:
    from ._kernels import gf2_rref

    a = np.ascontiguousarray(np.asarray(a, dtype=np.uint8) % 2)
    if a.size == 0:
        return 0
    _, rk = gf2_rref(a.copy(), a.shape[1])
    return int(rk)


def rational_kernel(a) -> list[list[Fraction]]:
    """Basis of the rational null space of ``a`` (reduced row echelon form)."""
    m = [[Fraction(int(v)) for v in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [v / p for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
