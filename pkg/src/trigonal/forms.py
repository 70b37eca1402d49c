"""Binary forms in x1, x2 and projective points on the line.

Coefficient convention: ``coeffs[i]`` multiplies ``x1^(deg-i) * x2^i``.
A form is divisible by ``x2^k`` exactly when its first k coefficients vanish.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Sequence

from .parsing import ParseError, parse_poly
from .poly import UPoly, join_terms, poly_gcd, rational_roots
from .scalars import QQ, DomainError, Fp, PrimeField, Rationals, field_of


class FormError(DomainError):
    pass


def _infer_field(coeffs: Sequence[Any]):
    for c in coeffs:
        if isinstance(c, Fp):
            return PrimeField(c.p)
        if not isinstance(c, (int, Fraction)):
            return None
    return QQ


class BinaryForm:
    """Homogeneous form of fixed degree in (x1, x2).

    ``field`` is QQ, a PrimeField, or None for a general commutative ring
    (dual numbers, multivariate polynomials); gcd-type operations need a field.
    """

    __slots__ = ("degree", "coeffs", "field")

    def __init__(self, coeffs: Iterable[Any], degree: int | None = None, field=...):
        cs = list(coeffs)
        if degree is None:
            degree = len(cs) - 1
        if degree < 0:
            raise FormError("degree must be non-negative")
        if len(cs) != degree + 1:
            raise FormError(f"form of degree {degree} needs {degree + 1} coefficients, got {len(cs)}")
        if field is ...:
            field = _infer_field(cs)
        if field is not None:
            cs = [field(c) for c in cs]
        self.degree = degree
        self.coeffs = tuple(cs)
        self.field = field

    @classmethod
    def zero(cls, degree: int, field=QQ) -> "BinaryForm":
        return cls([0] * (degree + 1), degree, field)

    @classmethod
    def monomial(cls, a: int, b: int, coeff: Any = 1, field=QQ) -> "BinaryForm":
        """``coeff * x1^a * x2^b``."""
        cs = [0] * (a + b + 1)
        cs[b] = coeff
        return cls(cs, a + b, field)

    @classmethod
    def parse(cls, text: str, degree: int | None = None, field=QQ) -> "BinaryForm":
        terms = parse_poly(text, ("x1", "x2"))
        degs = {a + b for a, b in terms}
        if len(degs) > 1:
            raise ParseError(f"form is not homogeneous (degrees {sorted(degs)})", 0, text)
        if degs:
            d = degs.pop()
            if degree is not None and d != degree:
                raise ParseError(f"expected a form of degree {degree}, got degree {d}", 0, text)
        elif degree is None:
            raise ParseError("zero form needs an explicit degree", 0, text)
        else:
            d = degree
        cs = [0] * (d + 1)
        for (a, b), c in terms.items():
            cs[b] = c
        return cls(cs, d, field)

    # arithmetic
    def _same(self, other: "BinaryForm"):
        if self.degree != other.degree:
            raise FormError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        self._same(other)
        return BinaryForm([a + b for a, b in zip(self.coeffs, other.coeffs)], self.degree, self.field)

    def __sub__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        self._same(other)
        return BinaryForm([a - b for a, b in zip(self.coeffs, other.coeffs)], self.degree, self.field)

    def __neg__(self):
        return BinaryForm([-a for a in self.coeffs], self.degree, self.field)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [0] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            field = self.field if self.field == other.field else None
            return BinaryForm(out, self.degree + other.degree, field)
        return BinaryForm([a * other for a in self.coeffs], self.degree, self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BinaryForm([1], 0, self.field)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coefficient(self, a: int, b: int) -> Any:
        return self.coeffs[b]

    def __call__(self, p1: Any, p2: Any) -> Any:
        acc = 0
        d = self.degree
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            acc = acc + c * p1 ** (d - i) * p2**i
        return acc

    def map(self, fn, field=...) -> "BinaryForm":
        return BinaryForm([fn(c) for c in self.coeffs], self.degree, field)

    def partial(self, var: int) -> "BinaryForm":
        """Derivative by x1 (var=1) or x2 (var=2); degree drops by one."""
        d = self.degree
        if d == 0:
            raise FormError("cannot differentiate a constant form")
        if var == 1:
            cs = [(d - i) * self.coeffs[i] for i in range(d)]
        elif var == 2:
            cs = [i * self.coeffs[i] for i in range(1, d + 1)]
        else:
            raise ValueError("var must be 1 or 2")
        return BinaryForm(cs, d - 1, self.field)

    def x2_multiplicity(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise FormError("zero form has no multiplicity")

    def dehomogenize(self) -> UPoly:
        """Set x2 = 1; returns a polynomial in x1."""
        return UPoly(reversed(self.coeffs), "x1")

    @classmethod
    def homogenize(cls, p: UPoly, degree: int, field=QQ) -> "BinaryForm":
        if p.degree > degree:
            raise FormError("polynomial degree exceeds form degree")
        cs = [p[degree - i] for i in range(degree + 1)]
        return cls(cs, degree, field)

    def monic(self) -> "BinaryForm":
        if self.is_zero():
            return self
        lead = self.coeffs[self.x2_multiplicity()]
        inv = Fraction(1, lead) if isinstance(lead, int) else 1 / lead
        return self * inv

    def __repr__(self):
        return f"BinaryForm({[str(c) for c in self.coeffs]}, degree={self.degree})"

    def __str__(self):
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts = []
            if d - i:
                parts.append("x1" if d - i == 1 else f"x1^{d - i}")
            if i:
                parts.append("x2" if i == 1 else f"x2^{i}")
            terms.append((c, "*".join(parts)))
        return join_terms(terms)


def form_divmod(f: BinaryForm, h: BinaryForm) -> tuple[BinaryForm, BinaryForm]:
    """Exact homogeneous division: returns (q, r) with f = q*h + r, r = 0 iff h | f."""
    if h.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero():
        return BinaryForm.zero(max(f.degree - h.degree, 0), f.field), f
    if h.degree > f.degree:
        return BinaryForm.zero(0, f.field), f
    # long division from the x1-highest term downward
    rem = list(f.coeffs)
    q = [0] * (f.degree - h.degree + 1)
    k0 = h.x2_multiplicity()
    lead = h.coeffs[k0]
    inv = Fraction(1, lead) if isinstance(lead, int) else 1 / lead
    for i in range(len(q)):
        c = rem[i + k0]
        if c == 0:
            continue
        c = c * inv
        q[i] = c
        for j, b in enumerate(h.coeffs):
            rem[i + j] = rem[i + j] - c * b
    return BinaryForm(q, len(q) - 1, f.field), BinaryForm(rem, f.degree, f.field)


def divides(h: BinaryForm, f: BinaryForm) -> bool:
    return form_divmod(f, h)[1].is_zero()


def binary_gcd(forms: Sequence[BinaryForm]) -> BinaryForm:
    """Monic homogeneous gcd of binary forms over a field.

    Zero inputs are skipped.  The x2-power is tracked separately from the
    dehomogenized (x2 = 1) gcd, so roots at (1:0) are not lost."""
    nz = [f for f in forms if not f.is_zero()]
    if not nz:
        raise FormError("gcd of all-zero forms is undefined")
    field = nz[0].field
    if field is None:
        raise FormError("binary_gcd needs forms over a field")
    v = min(f.x2_multiplicity() for f in nz)
    g = UPoly((), "x1")
    for f in nz:
        g = poly_gcd(g, f.dehomogenize())
        if g.degree == 0:
            break
    g = g.monic()
    deg = g.degree + v
    cs = [0] * v + [g[g.degree - i] for i in range(g.degree + 1)]
    return BinaryForm(cs, deg, field)


def cubic_discriminant(f: BinaryForm) -> Any:
    if f.degree != 3:
        raise FormError(f"discriminant needs a cubic, got degree {f.degree}")
    a, b, c, d = f.coeffs
    return b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def jacobian(f: BinaryForm) -> tuple[BinaryForm, BinaryForm]:
    return f.partial(1), f.partial(2)


class ProjPoint:
    """Point (p1 : p2) of P^1 as a row vector, compared up to scaling."""

    __slots__ = ("p1", "p2")

    def __init__(self, p1: Any, p2: Any):
        if p1 == 0 and p2 == 0:
            raise DomainError("(0:0) is not a projective point")
        self.p1 = p1
        self.p2 = p2

    def normalized(self) -> tuple[Any, Any]:
        if self.p2 == 0:
            return (self.p1 * 0 + 1, self.p2 * 0)
        inv = Fraction(1, self.p2) if isinstance(self.p2, int) else 1 / self.p2
        return (self.p1 * inv, self.p2 * 0 + 1)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.p1 * other.p2 == self.p2 * other.p1

    def __hash__(self):
        a, b = self.normalized()
        return hash((a, b))

    def sort_key(self):
        a, b = self.normalized()
        return (int(a) if isinstance(a, Fp) else a, int(b) if isinstance(b, Fp) else b)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        a, b = self.normalized()
        return f"({a}:{b})"

    def __repr__(self):
        return f"ProjPoint{str(self)}"


def rational_points_of(h: BinaryForm) -> list[ProjPoint]:
    """Zeros of a nonzero form defined over its coefficient field, sorted."""
    if h.is_zero():
        raise FormError("zero form vanishes everywhere")
    one = h.field.one if h.field is not None else 1
    zero = one * 0
    pts = []
    if h.coeffs[0] == 0:
        pts.append(ProjPoint(one, zero))
    p = h.dehomogenize()
    if p.degree > 0:
        for r in rational_roots(p):
            pts.append(ProjPoint(r, one))
    return sorted(pts, key=ProjPoint.sort_key)


def linear_factor_count(h: BinaryForm) -> int:
    return len(rational_points_of(h))
