"""Parametric gcds of polynomials in x whose coefficients lie in Q[t].

``generic_gcd`` runs Euclid over Q(t) with pseudo-remainders and records a
polynomial D(t) such that for every t0 with D(t0) != 0 the specialized gcd
agrees with the generic one.  ``split_gcd`` then runs Euclid over
Q[t]/(h) for squarefree h (a product of fields), splitting h whenever a
leading coefficient is a zero divisor.  Together they give the exact set of
t-values where the specialized polynomials share a root, without factoring.

Polynomials in x are lists of UPoly-in-t, index = power of x.
"""
from __future__ import annotations

from typing import Sequence

from .poly import UPoly, poly_gcd, poly_xgcd, squarefree_part

PX = list  # list[UPoly], low degree first


def _trim(p: PX) -> PX:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _content(p: PX) -> UPoly:
    c = UPoly((), "t")
    for a in p:
        c = poly_gcd(c, a)
    return c


def _prem(a: PX, b: PX) -> PX:
    a = _trim(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        new = [x * lb for x in a]
        for j, c in enumerate(b):
            new[j + shift] = new[j + shift] - la * c
        a = _trim(new)
    return a


class GenericResult:
    def __init__(self, degree: int, D: UPoly):
        self.degree = degree  # degree in x of the generic gcd (-1: all inputs zero)
        self.D = D


def generic_gcd(polys: Sequence[PX]) -> GenericResult:
    one = UPoly((1,), "t")
    D = one
    nz = [_trim(p) for p in polys]
    nz = [p for p in nz if p]
    if not nz:
        return GenericResult(-1, one)
    g = nz[0]
    for p in nz[1:]:
        a, b = (g, p) if len(g) >= len(p) else (p, g)
        while b:
            D = D * b[-1]
            r = _prem(a, b)
            if r:
                c = _content(r)
                D = D * c
                r = [x / c for x in r]
            a, b = b, r
        g = a
    if len(g) == 1:
        D = D * g[0]
    return GenericResult(len(g) - 1, D)


class _Split(Exception):
    def __init__(self, factor: UPoly):
        self.factor = factor


def _norm(p: PX, h: UPoly) -> PX:
    """Reduce mod h and drop leading coefficients that vanish mod h; a
    leading coefficient that is a zero divisor raises _Split."""
    p = [c % h for c in p]
    while p:
        lc = p[-1]
        if lc.is_zero():
            p.pop()
            continue
        g = poly_gcd(lc, h)
        if g.degree > 0:
            raise _Split(g)
        return p
    return p


def _inv_mod(c: UPoly, h: UPoly) -> UPoly:
    g, s, _ = poly_xgcd(c, h)
    if g.degree != 0:
        raise _Split(g)
    return s % h


def _rem(a: PX, b: PX, h: UPoly) -> PX:
    inv = _inv_mod(b[-1], h)
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        q = (a[-1] * inv) % h
        shift = len(a) - 1 - db
        for j, c in enumerate(b):
            a[j + shift] = (a[j + shift] - q * c) % h
        a.pop()
        a = _norm(a, h)
    return a


def _gcd_degree_mod(polys: Sequence[PX], h: UPoly) -> int:
    nz = [q for q in (_norm(p, h) for p in polys) if q]
    if not nz:
        return -1
    g = nz[0]
    for p in nz[1:]:
        a, b = g, p
        while b:
            a, b = b, _rem(a, b, h)
        g = a
        if len(g) == 1:
            return 0
    return len(g) - 1


def split_gcd(polys: Sequence[PX], h: UPoly) -> list[tuple[UPoly, int]]:
    """Pairs (h_j, deg_j) with prod h_j = squarefree(h): over every root of
    h_j the specialized gcd has x-degree deg_j (-1 when all inputs vanish)."""
    h = squarefree_part(h)
    if h.degree <= 0:
        return []
    work = [h]
    out = []
    while work:
        cur = work.pop()
        try:
            out.append((cur, _gcd_degree_mod(polys, cur)))
        except _Split as s:
            f = s.factor.monic()
            work.append(f)
            work.append((cur / f).monic())
    out.sort(key=lambda hd: (hd[0].degree, hd[0].c))
    return out


def singular_parameter_locus(polys: Sequence[PX]) -> tuple[bool, UPoly]:
    """(infinite, S): either the specialized polys share a root for all t
    (infinite=True) or exactly at the roots of the squarefree S(t)."""
    gen = generic_gcd(polys)
    if gen.degree != 0:
        return True, UPoly((), "t")
    S = UPoly((1,), "t")
    for hj, dj in split_gcd(polys, gen.D):
        if dj != 0:
            S = S * hj
    return False, S.monic()
