"""Equivariant Chern-class pipeline: the class of W, its pullback to the
parameter space of trigonal curves, and the resulting Picard groups.

All classes carry coefficients in Q[g]; ``G`` is the genus parameter.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Any

from .graded import (
    G,
    GradedClass,
    Presentation,
    chern_of_twisted_trivial,
    pushforward_p1,
    qg,
    reduce,
    series_inverse,
    substitute,
    truncate,
)
from .linalg import IntMatrix, smith_normal_form
from .poly import UPoly
from .scalars import DomainError

NAMES = ("delta1", "delta2", "gamma1", "gamma2", "sigma1", "sigma2", "xi", "nu1", "c1", "c2", "mu1", "tau")
DEGREES = (1, 2, 1, 2, 1, 2, 1, 1, 1, 2, 1, 1)
RULES = {"xi": (2, "-sigma1*xi - sigma2"), "mu1": (2, "c1*mu1 - c2")}


class NotInKernel(DomainError):
    pass


class InternalConsistencyError(DomainError):
    pass


def presentation(D: int = 2, rules: dict | None = None) -> Presentation:
    return Presentation(NAMES, DEGREES, RULES if rules is None else rules, D)


# --- Chern classes on P^1 x X_g ---------------------------------------------

def chern_O_minus1(pres: Presentation | None = None) -> GradedClass:
    """c(O(-1)^(g+2)) up to degree 2, in the free ring (xi^2 kept)."""
    pres = (pres or presentation()).free()
    v = pres.var
    return chern_of_twisted_trivial(G + 2, (v("gamma1"), v("gamma2")), -v("xi"))


def chern_O_minus1_inverse(pres: Presentation | None = None) -> GradedClass:
    return series_inverse(chern_O_minus1(pres), 2)


def chern_E_prime(pres: Presentation | None = None) -> GradedClass:
    """c(E') = c(O(-1)^(g+2))^{-1} c(O^(g+4)), reduced by the xi relation."""
    pres = pres or presentation()
    free = pres.free()
    v = free.var
    total = chern_O_minus1_inverse(pres) * (1 + v("delta1") + v("delta2"))
    return reduce(truncate(total, 2), pres)


# --- the class of W -----------------------------------------------------------

def c3_A3(pres: Presentation) -> GradedClass:
    """Top Chern class of A^1 + A^2 under the (lambda, alpha, A) action."""
    v = pres.var
    c1, c2, nu1, mu1 = v("c1"), v("c2"), v("nu1"), v("mu1")
    # A^2: weights a_i - c1 + 2 mu1 ; A^1: -c1 + nu1 + 3 mu1
    a2 = c2 - 2 * c1 * mu1 + 4 * mu1 * mu1
    return a2 * (-c1 + nu1 + 3 * mu1)


def class_of_W_tilde(rules: dict | None = None) -> GradedClass:
    pres = presentation(3, rules)
    return c3_A3(pres)


def class_of_W(rules: dict | None = None) -> GradedClass:
    """Pushforward along P^1 of the class of W-tilde; lands in degree 2."""
    Wt = class_of_W_tilde(rules)
    W3 = pushforward_p1(Wt, "mu1")
    # move to the degree-2 ring (the class has degree exactly 2)
    return GradedClass(presentation(2, rules), W3.terms)


EXPECTED_W_TILDE = "-3*c1*c2 - 3*c2*nu1 + 4*c1^2*mu1 - 9*c2*mu1 + 2*c1*nu1*mu1"
EXPECTED_W = "4*c1^2 - 9*c2 + 2*c1*nu1"


# --- the class of Y_g ------------------------------------------------------------

def pullback_map(pres: Presentation) -> dict[str, GradedClass]:
    """nu1, c1, c2 in terms of the classes on P^1 x X_g."""
    v = pres.var
    cE = chern_E_prime(pres)
    return {
        "nu1": -2 * v("xi") - v("sigma1"),
        "c1": cE.degree_part(1),
        "c2": cE.degree_part(2),
    }


def class_of_Y_tilde(pres: Presentation | None = None) -> GradedClass:
    pres = pres or presentation()
    return substitute(class_of_W(), pullback_map(pres), pres)


@dataclass(frozen=True)
class LatticeClass:
    """a*delta1 + b*gamma1 + c*sigma1 with coefficients in Q[g] (or Q)."""

    delta1: Any
    gamma1: Any
    sigma1: Any

    def instantiate(self, g: int) -> "LatticeClass":
        ev = lambda c: qg(c)(Fraction(g))
        return LatticeClass(ev(self.delta1), ev(self.gamma1), ev(self.sigma1))

    def to_json(self) -> dict:
        return {"delta1": str(self.delta1), "gamma1": str(self.gamma1), "sigma1": str(self.sigma1)}


def as_lattice_class(c: GradedClass) -> LatticeClass:
    pres = c.pres
    allowed = {"delta1", "gamma1", "sigma1"}
    for m in c.terms:
        if pres.weight(m) != 1:
            raise InternalConsistencyError(f"class is not of pure degree 1: {c}")
        (name,) = [n for n, e in zip(pres.names, m) if e]
        if name not in allowed:
            raise InternalConsistencyError(f"unexpected generator {name} in a degree-1 class")
    return LatticeClass(c.coefficient("delta1"), c.coefficient("gamma1"), c.coefficient("sigma1"))


def class_of_Y(pres: Presentation | None = None) -> LatticeClass:
    Yt = class_of_Y_tilde(pres)
    return as_lattice_class(pushforward_p1(Yt, "xi"))


def Y_tilde_xi_free(pres: Presentation | None = None) -> GradedClass:
    Yt = class_of_Y_tilde(pres)
    return Yt - Yt.pres.var("xi") * pushforward_p1(Yt, "xi")


# --- restriction to G_m, kernel lattice and Picard group ---------------------------

def restriction_to_gm(c: LatticeClass, g: Any = None) -> UPoly:
    """Coefficient of tau: delta1 -> 0, gamma1 -> (g+2), sigma1 -> -2."""
    gg = G if g is None else qg(g)
    return qg(c.delta1) * 0 + qg(c.gamma1) * (gg + 2) + qg(c.sigma1) * (-2)


def q1(g: int) -> LatticeClass:
    if g % 2:
        return LatticeClass(0, 2, g + 2)
    return LatticeClass(0, 1, Fraction(g + 2, 2))


def _scalar(x: Any) -> Fraction:
    if isinstance(x, UPoly):
        if x.degree > 0:
            raise DomainError("instantiate the genus first")
        return Fraction(x[0])
    return Fraction(x)


def kernel_coordinates(c: LatticeClass, g: int) -> tuple[int, int]:
    """(a, b) with c = a*delta1 + b*q1, both integers."""
    if any(isinstance(x, UPoly) and x.degree > 0 for x in (c.delta1, c.gamma1, c.sigma1)):
        c = c.instantiate(g)
    d1, ga, si = _scalar(c.delta1), _scalar(c.gamma1), _scalar(c.sigma1)
    if restriction_to_gm(LatticeClass(d1, ga, si), g) != 0:
        raise NotInKernel(f"class {c.to_json()} does not restrict to zero at g={g}")
    q = q1(g)
    b = ga / Fraction(q.gamma1)
    if b * Fraction(q.sigma1) != si:
        raise NotInKernel("class is not a multiple of q1 modulo delta1")
    if d1.denominator != 1 or b.denominator != 1:
        raise NotInKernel(f"non-integral kernel coordinates ({d1}, {b})")
    return int(d1), int(b)


@dataclass
class PicardGroup:
    g: int
    a: int
    b: int
    free_rank: int
    torsion: list

    def label(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"g": self.g, "a": self.a, "b": self.b, "free_rank": self.free_rank,
                "torsion": self.torsion, "group": self.label()}


@lru_cache(maxsize=1)
def class_of_Y_cached() -> LatticeClass:
    return class_of_Y()


def picard_group(g: int, Y: LatticeClass | None = None) -> PicardGroup:
    if g < 2:
        raise DomainError("the Picard group is computed for g >= 2 only")
    Y = Y or class_of_Y_cached()
    a, b = kernel_coordinates(Y, g)
    diag, _, _ = smith_normal_form(IntMatrix([[a], [b]]))
    # Z^2 / <(a, b)>: one relation, so rank 2 - #nonzero invariants
    nonzero = [x for x in diag if x != 0]
    torsion = [x for x in nonzero if x > 1]
    return PicardGroup(g, a, b, 2 - len(nonzero), torsion)


def expected_picard_torsion(g: int) -> list[int]:
    """The three-case congruence table."""
    if g % 3:
        return []
    if g % 9 == 3:
        return [9]
    return [3]


def picard_table(g_from: int, g_to: int) -> list[PicardGroup]:
    Y = class_of_Y_cached()
    return [picard_group(g, Y) for g in range(g_from, g_to + 1)]
