"""Text grammar for polynomials: ``c*x1^a*x2^b`` terms joined by + and -.

Coefficients are integers or rationals ``p/q``.  Whitespace is ignored.
Variable names are supplied by the caller (``x1, x2`` for fiber forms,
``t0, t1`` for base forms).
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .scalars import DomainError

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-]))")


class ParseError(DomainError):
    def __init__(self, msg: str, offset: int, text: str):
        super().__init__(f"{msg} at offset {offset} in {text!r}")
        self.offset = offset
        self.text = text


def _tokens(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        kind = ("num", "name", "pow", "mul", "sign")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


def parse_poly(text: str, names: Sequence[str]) -> dict[tuple[int, ...], Fraction]:
    """Parse ``text`` into a sparse map ``exponents -> Fraction``."""
    names = tuple(names)
    index = {v: i for i, v in enumerate(names)}
    toks = _tokens(text)
    i = 0
    terms: dict[tuple[int, ...], Fraction] = {}

    def peek():
        return toks[i]

    if peek()[0] == "end":
        raise ParseError("empty polynomial", 0, text)
    first = True
    while True:
        kind, val, pos = peek()
        sign = 1
        if kind == "sign":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            if kind == "end":
                break
            raise ParseError("expected '+' or '-'", pos, text)
        first = False
        coeff = Fraction(sign)
        exps = [0] * len(names)
        need_factor = True
        while need_factor:
            kind, val, pos = peek()
            if kind == "num":
                try:
                    coeff *= Fraction(val)
                except ZeroDivisionError:
                    raise ParseError("zero denominator", pos, text) from None
                i += 1
            elif kind == "name":
                if val not in index:
                    raise ParseError(f"unknown variable {val!r} (expected one of {', '.join(names)})", pos, text)
                i += 1
                e = 1
                if peek()[0] == "pow":
                    i += 1
                    k2, v2, p2 = peek()
                    if k2 != "num" or "/" in v2:
                        raise ParseError("expected integer exponent", p2, text)
                    e = int(v2)
                    i += 1
                exps[index[val]] += e
            else:
                raise ParseError("expected coefficient or variable", pos, text)
            if peek()[0] == "mul":
                i += 1
            else:
                need_factor = False
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
        kind, val, pos = peek()
        if kind == "end":
            break
        if kind != "sign":
            raise ParseError("expected '+' or '-'", pos, text)
    return {k: v for k, v in terms.items() if v != 0}
