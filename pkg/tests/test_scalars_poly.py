from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from trigonal.poly import MPoly, UPoly, poly_gcd, poly_xgcd, rational_roots, squarefree_part
from trigonal.scalars import EPS, QQ, DomainError, Dual, Fp, GF, PrimeField, field_from_spec, is_prime

x = sp.Symbol("x")
small = st.integers(-20, 20)
coeff_lists = st.lists(small, min_size=1, max_size=6)


def to_sympy(p: UPoly):
    return sum(sp.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(map(Fraction, p.c)))


def test_is_prime_against_sympy():
    assert [n for n in range(200) if is_prime(n)] == list(sp.primerange(0, 200))


def test_fp_field_axioms():
    F = GF(13)
    for a in F.elements():
        if int(a):
            assert a * a.inverse() == F.one
    with pytest.raises(DomainError):
        F.zero.inverse()


def test_fp_mixing_primes_rejected():
    with pytest.raises(DomainError):
        Fp(1, 5) + Fp(1, 7)


def test_prime_field_rejects_composite():
    with pytest.raises(DomainError):
        PrimeField(15)


def test_field_spec():
    assert field_from_spec("q") is QQ
    assert field_from_spec("p=101").p == 101
    for bad in ("p=x", "r", "p=9"):
        with pytest.raises(DomainError):
            field_from_spec(bad)


def test_dual_numbers():
    assert EPS * EPS == 0
    a = Dual(2, 3)
    assert a * a.inverse() == 1
    with pytest.raises(DomainError):
        Dual(0, 1).inverse()


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_divmod_identity(a, b):
    A = UPoly([Fraction(c) for c in a])
    B = UPoly([Fraction(c) for c in b])
    if B.is_zero():
        return
    q, r = divmod(A, B)
    assert q * B + r == A
    assert r.is_zero() or r.degree < B.degree


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_gcd_matches_sympy(a, b):
    A = UPoly([Fraction(c) for c in a])
    B = UPoly([Fraction(c) for c in b])
    if A.is_zero() and B.is_zero():
        return
    g = poly_gcd(A, B)
    expect = sp.Poly(sp.gcd(to_sympy(A), to_sympy(B)), x)
    assert g.degree == expect.degree()
    assert sp.simplify(to_sympy(g) - expect.monic().as_expr()) == 0


def test_xgcd_bezout():
    a = UPoly([Fraction(c) for c in (-1, 0, 1)])
    b = UPoly([Fraction(c) for c in (1, 1)])
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    assert g.degree == 1


def test_squarefree_and_roots():
    p = UPoly([Fraction(c) for c in sp.Poly((x - 1) ** 2 * (2 * x + 3) * (x**2 + 1), x).all_coeffs()[::-1]])
    assert squarefree_part(p).degree == 4
    assert sorted(rational_roots(p)) == [Fraction(-3, 2), Fraction(1)]
    q = UPoly([GF(7)(c) for c in (1, 0, 1)])  # x^2 + 1 has no roots mod 7
    assert rational_roots(q) == []
    q = UPoly([GF(5)(c) for c in (1, 0, 1)])
    assert sorted(int(r) for r in rational_roots(q)) == [2, 3]


def test_mpoly_against_sympy():
    a, b = MPoly.gens(("a", "b"))
    p = (a + 2 * b) ** 3 - a * b
    sa, sb = sp.symbols("a b")
    assert p(Fraction(3), Fraction(-2)) == ((sa + 2 * sb) ** 3 - sa * sb).subs({sa: 3, sb: -2})
    assert (p - p).is_zero()
    assert str(a * a - 1) == "a^2 - 1"


@given(st.tuples(small, small, small, small))
@settings(max_examples=50, deadline=None)
def test_dual_multiplication_rule(v):
    a, b, c, d = map(Fraction, v)
    assert Dual(a, b) * Dual(c, d) == Dual(a * c, a * d + b * c)
    assert Dual(a, b) * EPS * EPS == 0
