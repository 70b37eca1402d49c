"""Univariate and sparse multivariate polynomials with exact coefficients.

``UPoly`` is dense (coefficient of ``var**k`` at index k) and is the work
horse for dehomogenized binary forms and for the genus parameter ring Q[g].
``MPoly`` is a sparse dict ``exponent tuple -> coefficient`` used for
symbolic checks (e.g. generic cubics over Z[a, b, c, d]).
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import zip_longest
from typing import Any, Iterable, Sequence

from .scalars import Fp


def _is_scalar(x: Any) -> bool:
    return isinstance(x, (int, Fraction, Fp))


def _fmt_coeff(c: Any) -> str:
    return str(c)


class UPoly:
    """Dense univariate polynomial; coefficients low degree first."""

    __slots__ = ("c", "var")

    def __init__(self, coeffs: Iterable[Any] = (), var: str = "x"):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)
        self.var = var

    # construction helpers
    @classmethod
    def const(cls, a: Any, var: str = "x") -> "UPoly":
        return cls((a,), var)

    @classmethod
    def gen(cls, var: str = "x", one: Any = 1) -> "UPoly":
        return cls((one * 0, one), var)

    def _wrap(self, other: Any) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        if _is_scalar(other):
            return UPoly((other,), self.var)
        raise TypeError(f"cannot combine UPoly with {type(other).__name__}")

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    @property
    def lc(self) -> Any:
        return self.c[-1] if self.c else 0

    def __getitem__(self, k: int) -> Any:
        return self.c[k] if 0 <= k < len(self.c) else 0

    def __add__(self, other):
        if not isinstance(other, UPoly) and not _is_scalar(other):
            return NotImplemented
        o = self._wrap(other)
        return UPoly((a + b for a, b in zip_longest(self.c, o.c, fillvalue=0)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return UPoly((-a for a in self.c), self.var)

    def __sub__(self, other):
        if not isinstance(other, UPoly) and not _is_scalar(other):
            return NotImplemented
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if _is_scalar(other):
            return UPoly((a * other for a in self.c), self.var)
        if not isinstance(other, UPoly):
            return NotImplemented
        if not self.c or not other.c:
            return UPoly((), self.var)
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                out[i + j] = out[i + j] + a * b
        return UPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = UPoly((1,), self.var)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        if _is_scalar(other):
            if other == 0:
                raise ZeroDivisionError("polynomial divided by zero")
            inv = 1 / other if not isinstance(other, int) else Fraction(1, other)
            return self * inv
        q, r = divmod(self, self._wrap(other))
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __divmod__(self, other):
        o = self._wrap(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(rem) - len(o.c)
        if dq < 0:
            return UPoly((), self.var), self
        q = [0] * (dq + 1)
        lc = o.c[-1]
        inv = 1 / lc if not isinstance(lc, int) else Fraction(1, lc)
        for k in range(dq, -1, -1):
            coef = rem[k + len(o.c) - 1]
            if coef == 0:
                continue
            coef = coef * inv
            q[k] = coef
            for j, b in enumerate(o.c):
                rem[k + j] = rem[k + j] - coef * b
        return UPoly(q, self.var), UPoly(rem[: len(o.c) - 1], self.var)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __eq__(self, other):
        if _is_scalar(other):
            other = UPoly((other,), self.var)
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.c == other.c or (
            len(self.c) == len(other.c) and all(a == b for a, b in zip(self.c, other.c))
        )

    def __hash__(self):
        return hash(self.c)

    def __call__(self, x: Any) -> Any:
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self) -> "UPoly":
        return UPoly((k * a for k, a in enumerate(self.c) if k), self.var)

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        return self / self.lc

    def map(self, fn) -> "UPoly":
        return UPoly((fn(a) for a in self.c), self.var)

    def __repr__(self):
        return f"UPoly({list(self.c)!r}, var={self.var!r})"

    def __str__(self):
        return format_univariate(self.c, self.var)


def format_univariate(coeffs: Sequence[Any], var: str) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        a = coeffs[k]
        if a == 0:
            continue
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        terms.append((a, mon))
    return join_terms(terms)


def join_terms(terms: Sequence[tuple[Any, str]]) -> str:
    """Render ``[(coeff, monomial_string)]`` in the ``c*m + ...`` grammar."""
    if not terms:
        return "0"
    out = []
    for i, (a, mon) in enumerate(terms):
        neg = _is_negative(a)
        mag = -a if neg else a
        if mon:
            body = mon if mag == 1 else f"{_fmt_coeff(mag)}*{mon}"
        else:
            body = _fmt_coeff(mag)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _is_negative(a: Any) -> bool:
    if isinstance(a, (int, Fraction)):
        return a < 0
    return False


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over a field (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Return (g, s, t) with s*a + t*b = g monic."""
    one = UPoly((1,), a.var)
    zero = UPoly((), a.var)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc
    return r0 / lc, s0 / lc, t0 / lc


def squarefree_part(f: UPoly) -> UPoly:
    """Product of the distinct irreducible factors (monic).

    Valid in characteristic 0 and, over F_p, whenever deg f < p."""
    if f.degree <= 0:
        return f.monic()
    g = poly_gcd(f, f.derivative())
    return (f / g).monic() if g.degree > 0 else f.monic()


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(f: UPoly) -> list[Any]:
    """Distinct roots of ``f`` in its coefficient field, sorted.

    Over Q this is the rational root test on the primitive integer
    polynomial; over F_p every field element is tried."""
    if f.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    if f.degree <= 0:
        return []
    lc = f.lc
    if isinstance(lc, Fp):
        p = lc.p
        return [Fp(v, p) for v in range(p) if f(Fp(v, p)) == 0]
    c = [Fraction(a) for a in f.c]
    den = 1
    for a in c:
        den = den * a.denominator // math.gcd(den, a.denominator)
    ints = [int(a * den) for a in c]
    roots = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints.pop(0)
    if len(ints) <= 1:
        return sorted(roots)
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    ints = [a // g for a in ints]
    fq = UPoly([Fraction(a) for a in ints])
    for pnum in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for sign in (1, -1):
                r = Fraction(sign * pnum, q)
                if r not in roots and fq(r) == 0:
                    roots.add(r)
    return sorted(roots)


class MPoly:
    """Sparse multivariate polynomial ``{exponents: coeff}`` over named variables."""

    __slots__ = ("terms", "names")

    def __init__(self, terms: dict[tuple[int, ...], Any] | None = None, names: Sequence[str] = ()):
        self.names = tuple(names)
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def gens(cls, names: Sequence[str]) -> list["MPoly"]:
        n = len(names)
        out = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            out.append(cls({tuple(e): 1}, names))
        return out

    def _wrap(self, other: Any) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if _is_scalar(other):
            return MPoly({(0,) * len(self.names): other}, self.names)
        raise TypeError(f"cannot combine MPoly with {type(other).__name__}")

    def __add__(self, other):
        if not isinstance(other, MPoly) and not _is_scalar(other):
            return NotImplemented
        o = self._wrap(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        if not isinstance(other, MPoly) and not _is_scalar(other):
            return NotImplemented
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if _is_scalar(other):
            return MPoly({e: c * other for e, c in self.terms.items()}, self.names)
        if not isinstance(other, MPoly):
            return NotImplemented
        out: dict[tuple[int, ...], Any] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(out, self.names)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        inv = Fraction(1, other) if isinstance(other, int) else 1 / other
        return self * inv

    def __pow__(self, e: int):
        out = self._wrap(1)
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if _is_scalar(other):
            other = self._wrap(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __call__(self, *values: Any) -> Any:
        acc = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v**k
            acc = acc + t
        return acc

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __str__(self):
        terms = []
        for e in sorted(self.terms, reverse=True):
            mon = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.names, e) if k
            )
            terms.append((self.terms[e], mon))
        return join_terms(terms)

    __repr__ = __str__
