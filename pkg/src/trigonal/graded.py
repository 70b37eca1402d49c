"""Truncated graded rings with power-rewrite relations, coefficients in Q[g].

A :class:`Presentation` names the generators, their degrees, rewrite rules
``v^k -> rhs`` and a truncation bound D.  A :class:`GradedClass` is always
stored in normal form: no term above degree D and no monomial divisible by a
rewritable power.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping, Sequence

from .parsing import parse_poly
from .poly import UPoly, join_terms
from .scalars import DomainError

G = UPoly((0, 1), "g")


class ConfigError(DomainError):
    pass


class InvalidUnit(DomainError):
    pass


def qg(x: Any) -> UPoly:
    """Coerce an int, Fraction or UPoly into Q[g]."""
    if isinstance(x, UPoly):
        return UPoly((Fraction(c) for c in x.c), "g")
    return UPoly((Fraction(x),), "g")


MAX_REWRITE_STEPS = 200_000


class Presentation:
    """Graded polynomial ring modulo pure-power rewrite rules, truncated at D.

    ``rules`` maps a generator name to ``(k, rhs)``: rhs is a string in the
    polynomial grammar over the generator names (rational coefficients).
    """

    def __init__(
        self,
        names: Sequence[str],
        degrees: Sequence[int],
        rules: Mapping[str, tuple[int, str]] | None = None,
        D: int = 2,
    ):
        if len(names) != len(degrees):
            raise ConfigError("names and degrees differ in length")
        if any(d <= 0 for d in degrees):
            raise ConfigError("generator degrees must be positive")
        if len(set(names)) != len(names):
            raise ConfigError("duplicate generator names")
        self.names = tuple(names)
        self.degrees = tuple(int(d) for d in degrees)
        self.index = {v: i for i, v in enumerate(self.names)}
        self.D = int(D)
        self.rule_text = dict(rules or {})
        self.rules: list[tuple[int, int, dict[tuple[int, ...], UPoly]]] = []
        for v, (k, rhs) in self.rule_text.items():
            if v not in self.index:
                raise ConfigError(f"rule for unknown generator {v!r}")
            if k < 1:
                raise ConfigError("rule power must be positive")
            i = self.index[v]
            terms = {m: qg(c) for m, c in parse_poly(rhs, self.names).items()}
            lhs_deg = k * self.degrees[i]
            for m in terms:
                if m[i] >= k:
                    raise ConfigError(f"rule {v}^{k} -> {rhs} does not terminate (rhs contains {v}^{k})")
                if self.weight(m) != lhs_deg:
                    raise ConfigError(f"rule {v}^{k} -> {rhs} is not homogeneous")
            self.rules.append((i, k, terms))
        self._nf_cache: dict[tuple[int, ...], dict[tuple[int, ...], UPoly]] = {}

    def weight(self, mono: tuple[int, ...]) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def free(self) -> "Presentation":
        """Same generators and bound, no relations."""
        return Presentation(self.names, self.degrees, None, self.D)

    def with_bound(self, D: int) -> "Presentation":
        return Presentation(self.names, self.degrees, self.rule_text, D)

    def __eq__(self, other):
        return (
            isinstance(other, Presentation)
            and self.names == other.names
            and self.degrees == other.degrees
            and self.rule_text == other.rule_text
            and self.D == other.D
        )

    def __hash__(self):
        return hash((self.names, self.degrees, self.D, tuple(sorted(self.rule_text.items()))))

    # constructors of classes
    def var(self, name: str) -> "GradedClass":
        if name not in self.index:
            raise KeyError(f"unknown generator {name!r}")
        e = [0] * len(self.names)
        e[self.index[name]] = 1
        return GradedClass(self, {tuple(e): qg(1)})

    def const(self, c: Any) -> "GradedClass":
        return GradedClass(self, {(0,) * len(self.names): qg(c)})

    def one(self) -> "GradedClass":
        return self.const(1)

    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def parse(self, text: str) -> "GradedClass":
        return GradedClass(self, {m: qg(c) for m, c in parse_poly(text, self.names).items()})

    # normal forms
    def normal_form_of_monomial(self, mono: tuple[int, ...]) -> dict[tuple[int, ...], UPoly]:
        hit = self._nf_cache.get(mono)
        if hit is not None:
            return hit
        out: dict[tuple[int, ...], UPoly] = {}
        stack = [(mono, qg(1))]
        steps = 0
        while stack:
            m, c = stack.pop()
            steps += 1
            if steps > MAX_REWRITE_STEPS:
                raise ConfigError("rewrite rules did not terminate within the step limit")
            if self.weight(m) > self.D:
                continue
            for i, k, rhs in self.rules:
                if m[i] >= k:
                    base = list(m)
                    base[i] -= k
                    for m2, c2 in rhs.items():
                        stack.append((tuple(a + b for a, b in zip(base, m2)), c * c2))
                    break
            else:
                out[m] = out.get(m, qg(0)) + c
        out = {m: c for m, c in out.items() if not c.is_zero()}
        self._nf_cache[mono] = out
        return out

    def is_normal(self, mono: tuple[int, ...]) -> bool:
        return self.weight(mono) <= self.D and all(mono[i] < k for i, k, _ in self.rules)

    def __repr__(self):
        return f"Presentation({self.names}, D={self.D}, rules={self.rule_text})"


class GradedClass:
    """Element of a presented graded ring, kept in normal form."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms: Mapping[tuple[int, ...], Any], normalized: bool = False):
        self.pres = pres
        if normalized:
            self.terms = {m: c for m, c in terms.items() if not c.is_zero()}
            return
        acc: dict[tuple[int, ...], UPoly] = {}
        for m, c in terms.items():
            c = qg(c)
            if c.is_zero():
                continue
            if pres.is_normal(m):
                acc[m] = acc.get(m, qg(0)) + c
            else:
                for m2, c2 in pres.normal_form_of_monomial(m).items():
                    acc[m2] = acc.get(m2, qg(0)) + c * c2
        self.terms = {m: c for m, c in acc.items() if not c.is_zero()}

    def _lift(self, other: Any) -> "GradedClass":
        if isinstance(other, GradedClass):
            if other.pres != self.pres:
                raise DomainError("classes live in different presentations")
            return other
        return self.pres.const(other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, qg(0)) + c
        return GradedClass(self.pres, out, normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.pres, {m: -c for m, c in self.terms.items()}, normalized=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedClass):
            c = qg(other)
            return GradedClass(self.pres, {m: v * c for m, v in self.terms.items()}, normalized=True)
        o = self._lift(other)
        D = self.pres.D
        w = self.pres.weight
        out: dict[tuple[int, ...], UPoly] = {}
        for m1, c1 in self.terms.items():
            w1 = w(m1)
            for m2, c2 in o.terms.items():
                if w1 + w(m2) > D:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, qg(0)) + c1 * c2
        return GradedClass(self.pres, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.pres.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GradedClass):
            return self.pres == other.pres and self.terms == other.terms
        if isinstance(other, (int, Fraction, UPoly)):
            return self == self.pres.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree_part(self, k: int) -> "GradedClass":
        w = self.pres.weight
        return GradedClass(self.pres, {m: c for m, c in self.terms.items() if w(m) == k}, normalized=True)

    def constant_term(self) -> UPoly:
        return self.terms.get((0,) * len(self.pres.names), qg(0))

    def coefficient(self, mono: str | tuple[int, ...]) -> UPoly:
        if isinstance(mono, str):
            (m,) = parse_poly(mono, self.pres.names).keys()
            mono = m
        return self.terms.get(mono, qg(0))

    def max_degree(self) -> int:
        return max((self.pres.weight(m) for m in self.terms), default=-1)

    def instantiate(self, g: int | Fraction) -> "GradedClass":
        """Evaluate every coefficient at a concrete genus."""
        return GradedClass(self.pres, {m: qg(c(Fraction(g))) for m, c in self.terms.items()})

    def _sorted_terms(self):
        n = len(self.pres.names)
        w = self.pres.weight

        def key(m):
            # degree first, then generator order
            return (w(m), [-e for e in m])

        return sorted(self.terms.items(), key=lambda mc: key(mc[0])) if n else list(self.terms.items())

    def monomial_str(self, m: tuple[int, ...]) -> str:
        return "*".join((v if e == 1 else f"{v}^{e}") for v, e in zip(self.pres.names, m) if e)

    def __str__(self):
        parts = []
        for m, c in self._sorted_terms():
            mon = self.monomial_str(m)
            if c.degree <= 0:
                parts.append((c[0], mon))
            else:
                neg = c.lc < 0
                body = f"({c if not neg else -c})"
                parts.append((-1 if neg else 1, f"{body}*{mon}" if mon else body))
        return join_terms(parts)

    def __repr__(self):
        return f"GradedClass({self})"

    def to_dict(self) -> dict[str, str]:
        return {(self.monomial_str(m) or "1"): str(c) for m, c in self._sorted_terms()}


# --- operations ------------------------------------------------------------

def reduce(cls: GradedClass, target: Presentation | None = None) -> GradedClass:
    """Normal form of ``cls`` modulo ``target``'s relations (default: its own)."""
    if target is None or target == cls.pres:
        return GradedClass(cls.pres, cls.terms)
    if target.names != cls.pres.names:
        raise DomainError("reduce needs presentations over the same generators")
    return GradedClass(target, cls.terms)


def truncate(cls: GradedClass, D: int) -> GradedClass:
    w = cls.pres.weight
    return GradedClass(cls.pres, {m: c for m, c in cls.terms.items() if w(m) <= D}, normalized=True)


def series_inverse(cls: GradedClass, D: int | None = None) -> GradedClass:
    """Inverse of 1 + (positive degree) up to degree D."""
    D = cls.pres.D if D is None else min(D, cls.pres.D)
    if cls.constant_term() != qg(1):
        raise InvalidUnit(f"constant term is {cls.constant_term()}, expected 1")
    t = truncate(cls - 1, D)
    out = cls.pres.one()
    power = cls.pres.one()
    for _ in range(D):
        power = truncate(power * (-t), D)
        if power.is_zero():
            break
        out = out + power
    return truncate(out, D)


def substitute(cls: GradedClass, mapping: Mapping[str, GradedClass], target: Presentation) -> GradedClass:
    """Ring map sending generator v to mapping[v] (or to v itself in target)."""
    images = []
    for v in cls.pres.names:
        if v in mapping:
            img = mapping[v]
            if img.pres != target:
                raise DomainError(f"image of {v} is not in the target presentation")
        else:
            img = target.var(v)
        images.append(img)
    out = target.zero()
    for m, c in cls.terms.items():
        t = target.const(c)
        for img, e in zip(images, m):
            for _ in range(e):
                t = t * img
        out = out + t
    return out


def pushforward_p1(cls: GradedClass, fiber_var: str) -> GradedClass:
    """Coefficient of the fiber class: a + b*h |-> b."""
    i = cls.pres.index[fiber_var]
    out = {}
    for m, c in cls.terms.items():
        if m[i] > 1:
            raise DomainError(f"{fiber_var}^{m[i]} present; reduce the class first")
        if m[i] == 1:
            m2 = list(m)
            m2[i] = 0
            out[tuple(m2)] = c
    return GradedClass(cls.pres, out, normalized=True)


def chern_of_twisted_trivial(
    rank: Any, chern: tuple[GradedClass, GradedClass], t: GradedClass, D: int = 2
) -> GradedClass:
    """Total Chern class of V (x) L, V of the given rank with c1, c2 = chern and
    c1(L) = t, up to degree 2."""
    if D > 2:
        raise NotImplementedError("only degree <= 2 is supported")
    n = qg(rank)
    e1, e2 = chern
    pres = t.pres
    out = pres.one() + e1 + t * n + e2 + e1 * t * (n - 1) + t * t * (n * (n - 1) / 2)
    return truncate(out, D)
