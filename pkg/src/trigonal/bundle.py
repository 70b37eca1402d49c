"""Matrices of linear forms on P^1: degeneracy, splitting types, and a
finite-field probe of the degeneracy locus and splitting strata.

A LinearMatrix with r+d rows and d columns presents
0 -> O(-1)^d -> O^(r+d) -> E -> 0; its splitting type is that of E.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .forms import BinaryForm, binary_gcd, form_divmod
from .linalg import batched_det_mod_p, batched_rank_mod_p, rank, rref
from .scalars import QQ, DomainError, Fp, PrimeField, Rationals, is_prime

BAREISS_THRESHOLD = 8
PROBE_BLOCK = 2048


class DegenerateMatrix(DomainError):
    pass


class LinearMatrix:
    """(r+d) x d matrix whose entry [i][j] = (a, b) means a*x1 + b*x2."""

    __slots__ = ("r", "d", "entries", "field")

    def __init__(self, r: int, d: int, entries: Sequence[Sequence[Sequence[Any]]], field=QQ):
        if r < 1 or d < 1:
            raise DomainError("r and d must be positive")
        if len(entries) != r + d or any(len(row) != d for row in entries):
            raise DomainError(f"expected a {r + d} x {d} matrix of linear forms")
        ents = []
        for row in entries:
            new_row = []
            for e in row:
                if len(e) != 2:
                    raise DomainError("each entry must be a pair [c1, c2]")
                new_row.append((field(e[0]), field(e[1])))
            ents.append(tuple(new_row))
        self.r, self.d, self.field = r, d, field
        self.entries = tuple(ents)

    @property
    def rows(self) -> int:
        return self.r + self.d

    def form(self, i: int, j: int) -> BinaryForm:
        a, b = self.entries[i][j]
        return BinaryForm([a, b], 1, self.field)

    def evaluate(self, p1: Any, p2: Any) -> list[list[Any]]:
        return [[a * p1 + b * p2 for a, b in row] for row in self.entries]

    def __eq__(self, other):
        return isinstance(other, LinearMatrix) and (self.r, self.d, self.entries) == (other.r, other.d, other.entries)

    def __hash__(self):
        return hash((self.r, self.d, self.entries))

    def to_array(self) -> np.ndarray:
        if not isinstance(self.field, PrimeField):
            raise DomainError("to_array needs a prime field")
        return np.array([[[int(a), int(b)] for a, b in row] for row in self.entries], dtype=np.int64)

    @classmethod
    def from_array(cls, r: int, d: int, arr: np.ndarray, p: int) -> "LinearMatrix":
        return cls(r, d, arr.tolist(), PrimeField(p))

    @classmethod
    def from_json(cls, obj: dict | str, field=None) -> "LinearMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            r, d, ents = int(obj["r"]), int(obj["d"]), obj["entries"]
        except KeyError as e:
            raise DomainError(f"matrix JSON is missing {e}") from None
        if field is None:
            field = QQ
        conv = (lambda s: Fraction(str(s))) if isinstance(field, Rationals) else (lambda s: int(str(s)))
        return cls(r, d, [[[conv(c) for c in e] for e in row] for row in ents], field)

    def to_json(self) -> dict:
        return {"r": self.r, "d": self.d, "entries": [[[str(a), str(b)] for a, b in row] for row in self.entries]}


# --- minors ------------------------------------------------------------------

def _laplace_minors(L: LinearMatrix) -> dict[tuple[int, ...], BinaryForm]:
    """All d x d minors, keyed by sorted row tuple, via memoized expansion
    along columns (column k uses |S| = d - k rows)."""
    d = L.d
    memo: dict[tuple[int, ...], BinaryForm] = {}
    one = BinaryForm([L.field.one], 0, L.field)

    def minor(S: tuple[int, ...]) -> BinaryForm:
        if not S:
            return one
        hit = memo.get(S)
        if hit is not None:
            return hit
        col = d - len(S)
        acc = BinaryForm.zero(len(S), L.field)
        for pos, i in enumerate(S):
            a, b = L.entries[i][col]
            if a == 0 and b == 0:
                continue
            sub = minor(S[:pos] + S[pos + 1 :])
            term = L.form(i, col) * sub
            acc = acc - term if pos % 2 else acc + term
        memo[S] = acc
        return acc

    return {S: minor(S) for S in itertools.combinations(range(L.rows), d)}


def _bareiss_det(M: list[list[BinaryForm]]) -> BinaryForm:
    """Fraction-free determinant over the ring of binary forms."""
    n = len(M)
    A = [list(r) for r in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if A[k][k].is_zero():
            sw = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if sw is None:
                return BinaryForm.zero(n, A[0][0].field)
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                if prev is not None:
                    q, rem = form_divmod(num, prev)
                    assert rem.is_zero()
                    num = q
                A[i][j] = num
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return -det if sign < 0 else det


def minors(L: LinearMatrix) -> dict[tuple[int, ...], BinaryForm]:
    if L.d <= BAREISS_THRESHOLD:
        return _laplace_minors(L)
    out = {}
    for S in itertools.combinations(range(L.rows), L.d):
        out[S] = _bareiss_det([[L.form(i, j) for j in range(L.d)] for i in S])
    return out


def degeneracy_check(L: LinearMatrix) -> bool:
    """True iff L has full rank d at every point of P^1 (L lies in the open
    locus); False when the minors share a projective zero or all vanish."""
    ms = [m for m in minors(L).values() if not m.is_zero()]
    if not ms:
        return False
    return binary_gcd(ms).degree == 0


# --- splitting type ------------------------------------------------------------

def section_matrix(L: LinearMatrix, t: int) -> list[list[Any]]:
    """Matrix of H^0(O(t))^(r+d) -> H^0(O(t+1))^d, v |-> v^T L."""
    rows, d = L.rows, L.d
    zero = L.field.zero
    M = [[zero] * (rows * (t + 1)) for _ in range(d * (t + 2))]
    for i in range(rows):
        for c in range(d):
            a, b = L.entries[i][c]
            for j in range(t + 1):
                col = i * (t + 1) + j
                M[c * (t + 2) + j][col] = M[c * (t + 2) + j][col] + a
                M[c * (t + 2) + j + 1][col] = M[c * (t + 2) + j + 1][col] + b
    return M


def _rank(M: list[list[Any]], field) -> int:
    if isinstance(field, PrimeField):
        arr = np.array([[int(x) for x in row] for row in M], dtype=np.int64)
        return int(batched_rank_mod_p(arr[None], field.p)[0])
    return rank(M)


def kernel_dims(L: LinearMatrix, tmax: int) -> list[int]:
    """k(t) = h^0(E^dual(t)) for t = 0..tmax."""
    return [L.rows * (t + 1) - _rank(section_matrix(L, t), L.field) for t in range(tmax + 1)]


def type_from_kernel_dims(k: Sequence[int], r: int, d: int) -> list[int]:
    """Recover m_1 <= ... <= m_r from k(t) = sum_i max(0, t - m_i + 1)."""
    c_prev = 0
    k_prev = 0
    out: list[int] = []
    for t, kt in enumerate(k):
        c = kt - k_prev  # number of m_i <= t
        out.extend([t] * (c - c_prev))
        c_prev, k_prev = c, kt
        if c >= r:
            break
    if len(out) != r or sum(out) != d:
        raise DomainError(f"inconsistent kernel dimensions {list(k)}")
    return out


def splitting_type(L: LinearMatrix) -> list[int]:
    if not degeneracy_check(L):
        raise DegenerateMatrix("splitting type needs a matrix of full rank at every point")
    ks: list[int] = []
    k_prev = 0
    for t in range(L.d + 1):
        kt = L.rows * (t + 1) - _rank(section_matrix(L, t), L.field)
        ks.append(kt)
        if kt - k_prev >= L.r:
            break
        k_prev = kt
    return type_from_kernel_dims(ks, L.r, L.d)


def transform(L: LinearMatrix, A, B, C) -> LinearMatrix:
    """A * L(xC) * B^{-1} for A in GL_{r+d}, B in GL_d, C in GL_2."""
    rows, d = L.rows, L.d
    # substitute x -> xC in every entry
    sub = [
        [(a * C[0][0] + b * C[0][1], a * C[1][0] + b * C[1][1]) for a, b in row]
        for row in L.entries
    ]
    Binv = _inverse(B, L.field)
    out = []
    for i in range(rows):
        new_row = []
        for j in range(d):
            c1 = c2 = L.field.zero
            for k in range(rows):
                if A[i][k] == 0:
                    continue
                for l in range(d):
                    w = A[i][k] * Binv[l][j]
                    if w == 0:
                        continue
                    c1 = c1 + w * sub[k][l][0]
                    c2 = c2 + w * sub[k][l][1]
            new_row.append((c1, c2))
        out.append(new_row)
    return LinearMatrix(L.r, L.d, out, L.field)


def _inverse(B, field):
    n = len(B)
    aug = [list(B[i]) + [field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise DomainError("matrix is singular")
    return [row[n:] for row in R]


# --- sampling and the probe --------------------------------------------------

def _check_prime(p: int, allow_small: bool = False):
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p <= 3 and not allow_small:
        raise DomainError("random sampling needs a prime p > 3")


def random_matrix(r: int, d: int, field: PrimeField | int, seed: int) -> LinearMatrix:
    p = field.p if isinstance(field, PrimeField) else int(field)
    _check_prime(p)
    rng = np.random.default_rng(np.random.SeedSequence([int(seed)]))
    arr = rng.integers(0, p, size=(r + d, d, 2), dtype=np.int64)
    return LinearMatrix.from_array(r, d, arr, p)


def _block_arrays(r: int, d: int, p: int, seed: int, block: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), int(block)]))
    return rng.integers(0, p, size=(PROBE_BLOCK, r + d, d, 2), dtype=np.int64)


def sample_arrays(r: int, d: int, p: int, trials: int, seed: int) -> np.ndarray:
    """The probe's matrices as an (trials, r+d, d, 2) array; trial i comes
    from block i // PROBE_BLOCK, seeded by (seed, block)."""
    nblocks = -(-trials // PROBE_BLOCK)
    parts = [_block_arrays(r, d, p, seed, b) for b in range(nblocks)]
    return np.concatenate(parts)[:trials] if parts else np.zeros((0, r + d, d, 2), dtype=np.int64)


def _batched_minor_coeffs(arr: np.ndarray, subsets, p: int) -> np.ndarray:
    """Coefficient vectors (index i <-> x1^(d-i) x2^i) of the chosen minors,
    shape (N, len(subsets), d+1), by evaluation at (1, a) and interpolation."""
    N, rows, d, _ = arr.shape
    pts = np.arange(d + 1, dtype=np.int64)
    # entries evaluated: (N, d+1, rows, d)
    ev = (arr[None, :, :, :, 0] + pts[:, None, None, None] * arr[None, :, :, :, 1]) % p
    ev = np.transpose(ev, (1, 0, 2, 3))
    vals = np.empty((N, len(subsets), d + 1), dtype=np.int64)
    for s, S in enumerate(subsets):
        sub = ev[:, :, list(S), :].reshape(N * (d + 1), d, d)
        vals[:, s, :] = batched_det_mod_p(sub, p).reshape(N, d + 1)
    Vinv = _vandermonde_inverse(d + 1, p)
    return np.einsum("ij,nsj->nsi", Vinv, vals) % p


def _vandermonde_inverse(n: int, p: int) -> np.ndarray:
    V = [[Fp(a, p) ** j for j in range(n)] for a in range(n)]
    Vi = _inverse(V, PrimeField(p))
    return np.array([[int(x) for x in row] for row in Vi], dtype=np.int64)


def _batched_resultant(f: np.ndarray, g: np.ndarray, p: int) -> np.ndarray:
    """Homogeneous resultant of two batches of degree-d forms (Sylvester)."""
    N, n1 = f.shape
    d = n1 - 1
    S = np.zeros((N, 2 * d, 2 * d), dtype=np.int64)
    for i in range(d):
        S[:, i, i : i + d + 1] = f
        S[:, d + i, i : i + d + 1] = g
    return batched_det_mod_p(S, p)


def _gcd_is_constant_mod_p(polys: Sequence[Sequence[int]], p: int) -> bool:
    """Do the binary forms (coefficient lists, index i <-> x1^(d-i) x2^i)
    have no common zero over the algebraic closure of F_p?  Plain ints."""
    nz = [list(map(int, f)) for f in polys if any(int(c) % p for c in f)]
    if not nz:
        return False
    # common factor x2 <-> every form has a zero leading entry
    if all(f[0] % p == 0 for f in nz):
        return False
    g: list[int] = []
    for f in nz:
        q = [c % p for c in reversed(f)]  # dehomogenized, low degree first
        g = _int_poly_gcd(g, q, p)
        if len(g) == 1:
            return True
    return len(g) == 1


def _int_poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    def trim(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            k = len(a) - len(b)
            for j, bj in enumerate(b):
                a[k + j] = (a[k + j] - c * bj) % p
            trim(a)
            if not a:
                break
        a, b = b, a
    return a


def batched_nondegenerate(arr: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask of matrices that have rank d at every point of P^1.

    All d x d minors are computed in batch (evaluation and interpolation
    mod p); a nonzero resultant of two minors settles a matrix at once, the
    rest go through an exact gcd of all minors over F_p."""
    N, rows, d, _ = arr.shape
    out = np.zeros(N, dtype=bool)
    subsets = list(itertools.combinations(range(rows), d))
    if p <= d or len(subsets) > 256 or not N:
        for i in range(N):
            out[i] = degeneracy_check(LinearMatrix.from_array(rows - d, d, arr[i], p))
        return out
    k = len(subsets)
    pairs = [(0, k - 1), (1, k - 2), (0, k // 2)] if k > 2 else [(0, 1)]
    used = sorted({i for pr in pairs for i in pr})
    first = _batched_minor_coeffs(arr, [subsets[i] for i in used], p)
    pos = {s_: j for j, s_ in enumerate(used)}
    undecided = np.ones(N, dtype=bool)
    for a, b in pairs:
        if a == b:
            continue
        idx = np.nonzero(undecided)[0]
        if not len(idx):
            break
        res = _batched_resultant(first[idx, pos[a], :], first[idx, pos[b], :], p)
        hit = idx[res != 0]
        out[hit] = True
        undecided[hit] = False
    rest = np.nonzero(undecided)[0]
    if len(rest):
        coeffs = _batched_minor_coeffs(arr[rest], subsets, p)
        for j, i in enumerate(rest):
            out[i] = _gcd_is_constant_mod_p(coeffs[j], p)
    return out


def _batched_section_matrices(arr: np.ndarray, t: int) -> np.ndarray:
    N, rows, d, _ = arr.shape
    M = np.zeros((N, d * (t + 2), rows * (t + 1)), dtype=np.int64)
    for i in range(rows):
        for c in range(d):
            for j in range(t + 1):
                col = i * (t + 1) + j
                M[:, c * (t + 2) + j, col] += arr[:, i, c, 0]
                M[:, c * (t + 2) + j + 1, col] += arr[:, i, c, 1]
    return M


def batched_splitting_types(arr: np.ndarray, p: int, r: int) -> list[tuple[int, ...]]:
    """Splitting types of non-degenerate matrices, via ranks mod p.

    After step t every exponent not yet found is >= t+1; once the unknown
    exponents are forced by their sum the matrix leaves the batch."""
    N, rows, d, _ = arr.shape
    types: list[list[int]] = [[] for _ in range(N)]
    pending = np.arange(N)
    c_prev = np.zeros(N, dtype=np.int64)
    k_prev = np.zeros(N, dtype=np.int64)
    for t in range(d + 1):
        if len(pending) == 0:
            break
        M = _batched_section_matrices(arr[pending], t)
        kt = rows * (t + 1) - batched_rank_mod_p(M, p)
        c = kt - k_prev[pending]
        new = c - c_prev[pending]
        keep = []
        for idx, n_new in zip(pending.tolist(), new.tolist()):
            tp = types[idx]
            tp.extend([t] * n_new)
            q, s = r - len(tp), d - sum(tp)
            if q == 0:
                continue
            if q == 1:
                tp.append(s)
                continue
            if q * (t + 1) == s:
                tp.extend([t + 1] * q)
                continue
            keep.append(idx)
        c_prev[pending] = c
        k_prev[pending] = kt
        pending = np.array(keep, dtype=np.int64)
    return [tuple(sorted(tp)) for tp in types]


@dataclass
class ProbeResult:
    r: int
    d: int
    p: int
    trials: int
    degenerate: int
    histogram: dict = field(default_factory=dict)
    exhaustive: bool = False

    @property
    def degenerate_fraction(self) -> float:
        return self.degenerate / self.trials if self.trials else 0.0

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "d": self.d,
            "p": self.p,
            "trials": self.trials,
            "exhaustive": self.exhaustive,
            "degenerate_count": self.degenerate,
            "degenerate_fraction": self.degenerate_fraction,
            "stratum_histogram": {",".join(map(str, k)): v for k, v in sorted(self.histogram.items())},
        }


def codim_probe(r: int, d: int, p: int, trials: int = 0, seed: int = 0, exhaustive: bool = False) -> ProbeResult:
    """Degenerate fraction and splitting-type histogram over F_p.

    Random mode samples ``trials`` matrices; exhaustive mode enumerates all
    p^(2d(r+d)) of them (only sensible for tiny r, d, p)."""
    _check_prime(p, allow_small=exhaustive)
    if exhaustive:
        n_coeffs = 2 * d * (r + d)
        if p**n_coeffs > 2_000_000:
            raise DomainError("exhaustive enumeration too large")
        arr = np.array(list(itertools.product(range(p), repeat=n_coeffs)), dtype=np.int64).reshape(-1, r + d, d, 2)
    else:
        if trials < 1:
            raise DomainError("trials must be >= 1")
        arr = sample_arrays(r, d, p, trials, seed)
    hist: Counter = Counter()
    degenerate = 0
    for start in range(0, len(arr), PROBE_BLOCK):
        chunk = arr[start : start + PROBE_BLOCK]
        ok = batched_nondegenerate(chunk, p)
        degenerate += int((~ok).sum())
        if ok.any():
            hist.update(batched_splitting_types(chunk[ok], p, r))
    return ProbeResult(r, d, p, len(arr), degenerate, dict(hist), exhaustive)

