"""Exact linear algebra over fields, integer Smith normal form, and
batched numpy kernels modulo a prime."""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .scalars import DomainError

Matrix = list  # list of rows


def _inv(x: Any) -> Any:
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def rref(M: Sequence[Sequence[Any]]) -> tuple[list[list[Any]], list[int]]:
    """Reduced row echelon form over a field; returns (R, pivot columns)."""
    R = [list(r) for r in M]
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = _inv(R[r][c])
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: Sequence[Sequence[Any]]) -> int:
    return len(rref(M)[1])


def kernel_basis(M: Sequence[Sequence[Any]], ncols: int | None = None) -> list[list[Any]]:
    """Basis of {v : M v = 0}, one vector per free column."""
    if not M:
        if ncols is None:
            raise ValueError("ncols needed for an empty matrix")
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    cols = len(M[0])
    R, pivots = rref(M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * cols
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fcol]
        basis.append(v)
    return basis


def det(M: Sequence[Sequence[Any]]) -> Any:
    """Determinant by Gaussian elimination over a field."""
    n = len(M)
    A = [list(r) for r in M]
    d: Any = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return A[0][0] * 0 if n else 1
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d = d * A[c][c]
        inv = _inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return d


def matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), 0) for j in range(len(B[0]))] for i in range(len(A))]


def inverse2(A):
    (a, b), (c, d) = A
    dt = a * d - b * c
    if dt == 0:
        raise DomainError("matrix is singular")
    i = _inv(dt)
    return [[d * i, -b * i], [-c * i, a * i]]


def det2(A):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def identity(n: int, one: Any = 1):
    return [[one if i == j else one * 0 for j in range(n)] for i in range(n)]


# --- integers -------------------------------------------------------------

class IntMatrix:
    """Rectangular integer matrix (immutable view over nested tuples)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[int]]):
        ents = tuple(tuple(int(x) for x in r) for r in entries)
        if ents and any(len(r) != len(ents[0]) for r in ents):
            raise ValueError("ragged integer matrix")
        self.entries = ents
        self.rows = len(ents)
        self.cols = len(ents[0]) if ents else 0

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix(matmul([list(r) for r in self.entries], [list(r) for r in other.entries]))

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return int(det([[Fraction(x) for x in r] for r in self.entries]))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


def smith_normal_form(M: IntMatrix) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Return (diag, U, V) with U*M*V diagonal, d_i >= 0 and d_i | d_{i+1}."""
    m, n = M.rows, M.cols
    A = M.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A,):
            for r in R:
                r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for r in A:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        swap_rows(t, pi)
        swap_cols(t, pj)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # enforce divisibility of the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                    None,
                )
                if bad:
                    add_row(t, bad[0], 1)
                    done = False
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, IntMatrix(U), IntMatrix(V)


# --- batched arithmetic mod p -----------------------------------------------

def batched_rank_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices (shape (N, rows, cols)) over F_p."""
    A = np.array(M, dtype=np.int64) % p
    N, rows, cols = A.shape
    rk = np.zeros(N, dtype=np.int64)
    active_row = np.zeros(N, dtype=np.int64)
    idx = np.arange(N)
    for c in range(cols):
        col = A[:, :, c]
        # first usable pivot at or below each matrix's current row
        below = (np.arange(rows)[None, :] >= active_row[:, None]) & (col != 0)
        has = below.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(below, axis=1)
        sel = idx[has]
        r = active_row[sel]
        pr = piv[sel]
        tmp = A[sel, r, :].copy()
        A[sel, r, :] = A[sel, pr, :]
        A[sel, pr, :] = tmp
        pv = A[sel, r, c]
        inv = _inv_mod_vec(pv, p)
        A[sel, r, :] = (A[sel, r, :] * inv[:, None]) % p
        f = A[sel, :, c].copy()
        f[np.arange(len(sel)), r] = 0
        A[sel] = (A[sel] - f[:, :, None] * A[sel, r, :][:, None, :]) % p
        active_row[sel] += 1
        rk[sel] += 1
    return rk


def batched_det_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Determinants of a stack of square matrices over F_p."""
    A = np.array(M, dtype=np.int64) % p
    N, n, _ = A.shape
    out = np.ones(N, dtype=np.int64)
    alive = np.ones(N, dtype=bool)
    for c in range(n):
        col = A[:, c:, c]
        nzm = col != 0
        has = nzm.any(axis=1)
        out[~has] = 0
        alive &= has
        if not alive.any():
            break
        sel = np.nonzero(alive)[0]
        piv = c + np.argmax(nzm[sel], axis=1)
        swap = piv != c
        if swap.any():
            s = sel[swap]
            ps = piv[swap]
            tmp = A[s, c, :].copy()
            A[s, c, :] = A[s, ps, :]
            A[s, ps, :] = tmp
            out[s] = (-out[s]) % p
        pv = A[sel, c, c]
        out[sel] = (out[sel] * pv) % p
        inv = _inv_mod_vec(pv, p)
        f = (A[sel, c + 1 :, c] * inv[:, None]) % p
        A[sel, c + 1 :, :] = (A[sel, c + 1 :, :] - f[:, :, None] * A[sel, c, :][:, None, :]) % p
    return out % p


def _inv_mod_vec(v: np.ndarray, p: int) -> np.ndarray:
    # Fermat inverse, vectorized square-and-multiply
    res = np.ones_like(v)
    base = v % p
    e = p - 2
    while e:
        if e & 1:
            res = (res * base) % p
        base = (base * base) % p
        e >>= 1
    return res
