"""Exact scalar domains: rationals, prime fields and dual numbers.

Rationals are plain :class:`fractions.Fraction`.  Prime-field elements are
:class:`Fp` instances; they interoperate with Python ints so generic code can
use ``0`` and ``1`` as identities.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterator


class DomainError(ValueError):
    """Raised when a scalar operation leaves its domain (e.g. 1/0)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Fp:
    """Element of the prime field F_p, stored reduced to [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other: Any) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise DomainError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise DomainError("division by zero in F_%d" % self.p)
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise DomainError("division by zero in F_%d" % self.p)
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        if isinstance(other, Fraction):
            return self.v == self._coerce(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Rationals:
    """The field Q; elements are Fractions."""

    name = "q"
    characteristic = 0

    def __call__(self, x: Any) -> Fraction:
        if isinstance(x, Fp):
            raise DomainError("cannot lift an F_p element to Q")
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field F_p.  Any prime is accepted here; callers that need p > 3
    (anything dividing by 2 or 3) check :attr:`characteristic` themselves."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p

    @property
    def name(self) -> str:
        return f"p={self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x: Any) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise DomainError(f"mixing F_{self.p} and F_{x.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DomainError(f"{x} has no image in F_{self.p}")
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Fp(int(x), self.p)

    @property
    def zero(self) -> Fp:
        return Fp(0, self.p)

    @property
    def one(self) -> Fp:
        return Fp(1, self.p)

    def elements(self) -> Iterator[Fp]:
        for v in range(self.p):
            yield Fp(v, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str) -> Rationals | PrimeField:
    """Parse a field flag: ``q`` or ``p=<prime>``."""
    s = spec.strip().lower()
    if s in ("q", "qq"):
        return QQ
    if s.startswith("p="):
        try:
            p = int(s[2:])
        except ValueError:
            raise DomainError(f"bad field spec {spec!r}") from None
        return PrimeField(p)
    raise DomainError(f"bad field spec {spec!r}; expected 'q' or 'p=<prime>'")


def field_of(x: Any) -> Rationals | PrimeField:
    if isinstance(x, Fp):
        return PrimeField(x.p)
    return QQ


class Dual:
    """Dual number a + eps*b with eps^2 = 0, over any scalar ring."""

    __slots__ = ("a", "b")

    def __init__(self, a: Any, b: Any = 0):
        self.a = a
        self.b = b

    @staticmethod
    def _lift(x: Any) -> "Dual":
        return x if isinstance(x, Dual) else Dual(x, 0)

    def __add__(self, other):
        o = self._lift(other)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def inverse(self) -> "Dual":
        if self.a == 0:
            raise DomainError("dual number with zero real part is not a unit")
        ia = 1 / self.a if not isinstance(self.a, int) else Fraction(1, self.a)
        return Dual(ia, -self.b * ia * ia)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Dual(1, 0)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Fp)):
            return self.a == other and self.b == 0
        if isinstance(other, Dual):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"Dual({self.a!r}, {self.b!r})"


EPS = Dual(0, 1)
