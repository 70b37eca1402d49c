from fractions import Fraction

import pytest

from trigonal.forms import BinaryForm
from trigonal.parsing import ParseError, parse_poly
from trigonal.scalars import GF


def test_grammar_example():
    f = BinaryForm.parse("3*x1^3 - 1/2*x1*x2^2", 3)
    assert list(f.coeffs) == [3, 0, Fraction(-1, 2), 0]


def test_whitespace_and_repeated_terms():
    assert parse_poly(" x1 +x1-  2*x1 ", ("x1", "x2")) == {}
    assert parse_poly("x1*x1*x2", ("x1", "x2")) == {(2, 1): 1}


def test_round_trip_through_str():
    f = BinaryForm.parse("-x1^3 + 2/3*x1^2*x2 - 7*x2^3", 3)
    assert BinaryForm.parse(str(f), 3) == f


def test_mod_p_coefficients():
    f = BinaryForm.parse("1/2*x1^3", 3, GF(7))
    assert int(f.coeffs[0]) == 4


@pytest.mark.parametrize(
    "text, offset",
    [("x1^2*x2 +", 9), ("x1^^2", 3), ("3 x1", 2), ("x3", 0), ("x1 * / x2", 5)],
)
def test_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as e:
        parse_poly(text, ("x1", "x2"))
    assert e.value.offset == offset


def test_wrong_degree_rejected():
    with pytest.raises(ParseError):
        BinaryForm.parse("x1^2", 3)
