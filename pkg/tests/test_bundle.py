import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from trigonal import bundle
from trigonal.acceptance import brute_force_degenerate_count, oracle_kernel_dims
from trigonal.bundle import DegenerateMatrix, LinearMatrix, degeneracy_check, splitting_type
from trigonal.scalars import QQ, DomainError, GF

X1, X2 = (1, 0), (0, 1)
O = (0, 0)


def lm(r, d, rows, field=QQ):
    return LinearMatrix(r, d, [[tuple(Fraction(c) for c in e) for e in row] for row in rows], field)


EULER2 = lm(2, 2, [[X1, O], [X2, O], [O, X1], [O, X2]])
SHIFTED = lm(2, 2, [[X1, O], [X2, X1], [O, X2], [O, O]])


def test_degeneracy_examples():
    assert degeneracy_check(EULER2)
    assert not degeneracy_check(lm(2, 2, [[X1, X1], [X2, X2], [O, O], [O, O]]))
    assert not degeneracy_check(lm(1, 1, [[X1], [X1]]))


def test_splitting_examples():
    assert splitting_type(EULER2) == [1, 1]
    assert splitting_type(SHIFTED) == [0, 2]
    with pytest.raises(DegenerateMatrix):
        splitting_type(lm(1, 1, [[X1], [X1]]))


def test_shifted_kernel_dims_by_brute_force():
    # over F_5 the kernel of v -> v^T L on H^0(O(t))^4 can be enumerated outright
    p = 5
    F = GF(p)
    L = LinearMatrix(2, 2, [[tuple(F(c) for c in e) for e in row] for row in SHIFTED.entries], F)
    for t in range(2):
        n = 4 * (t + 1)
        M = np.array(bundle.section_matrix(L, t), dtype=object)
        count = sum(1 for v in itertools.product(range(p), repeat=n)
                    if all(sum(int(M[i, j]) * v[j] for j in range(n)) % p == 0 for i in range(M.shape[0])))
        k = round(np.log(count) / np.log(p))
        assert k == bundle.kernel_dims(L, 1)[t] == oracle_kernel_dims(L, 1)[t]


def test_minors_match_sympy(rng):
    x1, x2 = sp.symbols("x1 x2")
    for d in (2, 3):
        rows = [[(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(d)] for _ in range(d + 2)]
        L = lm(2, d, rows)
        for S, m in bundle.minors(L).items():
            M = sp.Matrix([[rows[i][j][0] * x1 + rows[i][j][1] * x2 for j in range(d)] for i in S])
            expect = sp.Poly(sp.expand(M.det()), x1, x2) if M.det() != 0 else None
            got = sum(c * x1 ** (d - i) * x2**i for i, c in enumerate(m.coeffs))
            assert sp.expand(got - (expect.as_expr() if expect else 0)) == 0


def test_bareiss_agrees_with_laplace(rng, monkeypatch):
    F = GF(101)
    L = bundle.random_matrix(1, 4, F, 3)
    a = bundle.minors(L)
    monkeypatch.setattr(bundle, "BAREISS_THRESHOLD", 0)
    assert bundle.minors(L) == a


def test_degree_sum_is_d():
    for g in range(2, 6):
        for seed in range(5):
            L = bundle.random_matrix(2, g + 2, 101, seed)
            if degeneracy_check(L):
                assert sum(splitting_type(L)) == g + 2


def test_random_matrix_determinism_and_range():
    a = bundle.random_matrix(1, 1, 5, 42)
    assert a.to_json() == bundle.random_matrix(1, 1, 5, 42).to_json()
    arr = a.to_array()
    assert arr.shape == (2, 1, 2) and ((0 <= arr) & (arr < 5)).all()
    with pytest.raises(DomainError):
        bundle.random_matrix(1, 1, 3, 0)


def test_sampling_uniform():
    arr = bundle.sample_arrays(1, 1, 5, 10_000, 9)
    counts = np.bincount(arr.ravel(), minlength=5)
    n = counts.sum()
    chi2 = float(((counts - n / 5) ** 2 / (n / 5)).sum())
    # chi-square with 4 degrees of freedom: mean 4, sd sqrt(8)
    assert chi2 < 4 + 5 * np.sqrt(8)


def test_batched_nondegenerate_matches_exact(rng):
    for r, d, p in ((1, 1, 5), (2, 2, 5), (2, 3, 7), (2, 4, 5)):
        arr = bundle.sample_arrays(r, d, p, 300, rng.randrange(1000))
        fast = bundle.batched_nondegenerate(arr, p)
        slow = [degeneracy_check(LinearMatrix.from_array(r, d, a, p)) for a in arr]
        assert list(fast) == slow


def test_batched_types_match_exact():
    p = 7
    arr = bundle.sample_arrays(2, 4, p, 200, 11)
    arr = arr[bundle.batched_nondegenerate(arr, p)]
    fast = bundle.batched_splitting_types(arr, p, 2)
    slow = [tuple(splitting_type(LinearMatrix.from_array(2, 4, a, p))) for a in arr]
    assert fast == slow


@pytest.mark.parametrize("p", [3, 5])
def test_exhaustive_probe_matches_brute_force(p):
    assert bundle.codim_probe(1, 1, p, exhaustive=True).degenerate == brute_force_degenerate_count(1, 1, p)


def test_exhaustive_f3_count_by_hand():
    # two linear forms over F_3 share a zero iff they are proportional or one is 0:
    # pairs (l1, l2) with l2 in the span of l1 or l1 = 0: 1*9 + 8*3 = 33
    assert bundle.codim_probe(1, 1, 3, exhaustive=True).degenerate == 33


def test_probe_determinism_and_schema():
    a = bundle.codim_probe(2, 4, 11, 3000, 7).to_json()
    b = bundle.codim_probe(2, 4, 11, 3000, 7).to_json()
    assert a == b
    assert set(a) >= {"degenerate_count", "degenerate_fraction", "stratum_histogram"}
    assert max(a["stratum_histogram"], key=a["stratum_histogram"].get) == "2,2"


def test_probe_rejects_small_prime_sampling():
    with pytest.raises(DomainError):
        bundle.codim_probe(2, 4, 3, 10, 0)


def test_transform_invariance(rng):
    p = 101
    F = GF(p)

    def inv(n):
        while True:
            M = [[F(rng.randrange(p)) for _ in range(n)] for _ in range(n)]
            if sp.Matrix([[int(x) for x in r] for r in M]).det() % p:
                return M

    for seed in range(10):
        L = bundle.random_matrix(2, 4, F, seed)
        if not degeneracy_check(L):
            continue
        L2 = bundle.transform(L, inv(6), inv(4), inv(2))
        assert degeneracy_check(L2) and splitting_type(L2) == splitting_type(L)


def test_json_round_trip():
    L = bundle.random_matrix(2, 2, 13, 1)
    assert LinearMatrix.from_json(L.to_json(), GF(13)).to_json() == L.to_json()
    with pytest.raises(DomainError):
        LinearMatrix.from_json({"r": 1})


def test_kernel_dims_shape():
    for seed in range(20):
        L = bundle.random_matrix(2, 5, 101, seed)
        if not degeneracy_check(L):
            continue
        k = bundle.kernel_dims(L, 8)
        diffs = [b - a for a, b in zip(k, k[1:])]
        assert all(x <= y for x, y in zip(k, k[1:]))
        assert all(x <= y for x, y in zip(diffs, diffs[1:]))
        assert diffs[-1] == 2
