"""Binary cubics: the GL2 and G_m |x GL2(k[eps]) actions, the beta map and
the first-order singularity locus W.

Conventions: points are row vectors, matrices act on forms by substitution
x -> xA, and on points by p -> p A^{-1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .forms import BinaryForm, FormError, ProjPoint, binary_gcd, jacobian, rational_points_of
from .linalg import det2, inverse2, matmul
from .poly import squarefree_part
from .scalars import QQ, DomainError


def _inv(x):
    return Fraction(1, x) if isinstance(x, int) else 1 / x


def substitute_linear(f: BinaryForm, A: Sequence[Sequence[Any]]) -> BinaryForm:
    """f(xA) for the row vector x = (x1, x2)."""
    (a11, a12), (a21, a22) = A
    L1 = BinaryForm([a11, a21], 1, None)  # (xA)_1
    L2 = BinaryForm([a12, a22], 1, None)  # (xA)_2
    d = f.degree
    out = BinaryForm([0] * (d + 1), d, None)
    p1 = [BinaryForm([1], 0, None)]
    p2 = [BinaryForm([1], 0, None)]
    for _ in range(d):
        p1.append(p1[-1] * L1)
        p2.append(p2[-1] * L2)
    for i, c in enumerate(f.coeffs):
        if c != 0:
            out = out + (p1[d - i] * p2[i]) * c
    return out.map(lambda c: c, f.field) if f.field is not None else out


def act_gl2(A: Sequence[Sequence[Any]], f: BinaryForm) -> BinaryForm:
    """det(A)^{-1} f(xA)."""
    dt = det2(A)
    if dt == 0:
        raise DomainError("act_gl2: A is singular")
    return substitute_linear(f, A) * _inv(dt)


@dataclass(frozen=True)
class DualCubic:
    """f + eps*g with f, g binary cubics over the same field."""

    f: BinaryForm
    g: BinaryForm

    def __post_init__(self):
        if self.f.degree != 3 or self.g.degree != 3:
            raise FormError("DualCubic needs two cubics")

    @classmethod
    def parse(cls, f: str, g: str = "0", field=QQ) -> "DualCubic":
        return cls(BinaryForm.parse(f, 3, field), BinaryForm.parse(g, 3, field))

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.g.is_zero()


@dataclass(frozen=True)
class HgElement:
    """(u, A + eps*B) in G_m |x GL2(k[eps])."""

    u: Any
    A: tuple
    B: tuple

    def __init__(self, u, A, B=None):
        A = tuple(tuple(r) for r in A)
        if B is None:
            B = tuple(tuple(x * 0 for x in r) for r in A)
        B = tuple(tuple(r) for r in B)
        if u == 0:
            raise DomainError("u must be a unit")
        if det2(A) == 0:
            raise DomainError("A must be invertible")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @classmethod
    def identity(cls, one: Any = 1) -> "HgElement":
        z = one * 0
        return cls(one, ((one, z), (z, one)), ((z, z), (z, z)))

    def __eq__(self, other):
        if not isinstance(other, HgElement):
            return NotImplemented
        flat = lambda M: [x for r in M for x in r]
        return (
            self.u == other.u
            and all(a == b for a, b in zip(flat(self.A), flat(other.A)))
            and all(a == b for a, b in zip(flat(self.B), flat(other.B)))
        )

    __hash__ = None  # type: ignore[assignment]


def _madd(X, Y):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(X, Y)]


def _mscale(X, c):
    return [[a * c for a in r] for r in X]


def hg_multiply(h1: HgElement, h2: HgElement) -> HgElement:
    """(u, A, B)(u', A', B') = (uu', AA', BA' + u AB').

    The G_m factor scales the eps-part of the second factor, which is the
    law under which act_hg below is a left action."""
    A = matmul(h1.A, h2.A)
    B = _madd(matmul(h1.B, h2.A), _mscale(matmul(h1.A, h2.B), h1.u))
    return HgElement(h1.u * h2.u, A, B)


def hg_inverse(h: HgElement) -> HgElement:
    Ai = inverse2(h.A)
    ui = _inv(h.u)
    B = _mscale(matmul(matmul(Ai, h.B), Ai), -ui)
    return HgElement(ui, Ai, B)


def act_hg(h: HgElement, v: DualCubic) -> DualCubic:
    """(u, A + eps*B) . (f + eps*g) = det(A+eps*B)^{-1} (f(xA) + eps*(xB J_f(xA) + u g(xA)))."""
    A, B, u = h.A, h.B, h.u
    dA = det2(A)
    di = _inv(dA)
    Ai = inverse2(A)
    tr = sum(Ai[i][k] * B[k][i] for i in range(2) for k in range(2))
    fA = substitute_linear(v.f, A)
    gA = substitute_linear(v.g, A)
    d1, d2 = jacobian(v.f)
    j1 = substitute_linear(d1, A)
    j2 = substitute_linear(d2, A)
    xb1 = BinaryForm([B[0][0], B[1][0]], 1, None)
    xb2 = BinaryForm([B[0][1], B[1][1]], 1, None)
    eps_part = xb1 * j1 + xb2 * j2 + gA * u - fA * tr
    fld = v.f.field
    f_new = (fA * di).map(lambda c: c, fld)
    g_new = (eps_part * di).map(lambda c: c, fld)
    return DualCubic(f_new, g_new)


def beta(p: ProjPoint | Sequence[Any], v: DualCubic) -> tuple[Any, Any, Any]:
    """(g(p), d1 f(p), d2 f(p))."""
    p1, p2 = (p.p1, p.p2) if isinstance(p, ProjPoint) else p
    d1, d2 = jacobian(v.f)
    return (v.g(p1, p2), d1(p1, p2), d2(p1, p2))


@dataclass
class WVerdict:
    in_W: bool
    witnesses: list = field(default_factory=list)
    gcd_degree: int | None = None  # None when the common locus is all of P^1
    n_points: int | None = None  # distinct common zeros over the closure

    @property
    def witness(self) -> ProjPoint | None:
        return self.witnesses[0] if self.witnesses else None

    def to_json(self) -> dict:
        return {
            "in_W": self.in_W,
            "witness": str(self.witness) if self.witness else None,
            "witnesses": [str(w) for w in self.witnesses],
            "gcd_degree": self.gcd_degree,
            "n_points": self.n_points,
        }


def in_W(v: DualCubic) -> WVerdict:
    """Is there p in P^1 (over the closure) with J_f(p) = 0 and g(p) = 0?

    f = 0 counts as singular (the fiber is not Gorenstein)."""
    f, g = v.f, v.g
    if f.field is None:
        raise FormError("in_W needs forms over a field")
    if f.is_zero():
        if g.is_zero():
            return WVerdict(True, [], None, None)
        return WVerdict(True, rational_points_of(g), 3, _distinct_zeros(g))
    d1, d2 = jacobian(f)
    h = binary_gcd([d1, d2])
    common = h if g.is_zero() else binary_gcd([h, g])
    if common.degree == 0:
        return WVerdict(False, [], 0, 0)
    return WVerdict(True, rational_points_of(common), common.degree, _distinct_zeros(common))


def _distinct_zeros(h: BinaryForm) -> int:
    p = h.dehomogenize()
    at_inf = 1 if h.coeffs[0] == 0 else 0
    return at_inf + (squarefree_part(p).degree if p.degree > 0 else 0)
