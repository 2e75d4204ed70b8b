from fractions import Fraction

import pytest

from vertexalg.scalars import (CPoly, format_rational, parse_rational, smul)


def test_cpoly_arithmetic():
    c = CPoly.sym()
    p = (c - 26) * (c + 1)
    assert p.eval(26) == 0
    assert p.eval(-1) == 0
    assert p.eval(0) == -26
    assert p.degree() == 2
    assert (p - p) == 0
    assert not (p - p)


def test_cpoly_mixed_with_fractions():
    c = CPoly.sym()
    p = Fraction(1, 2) * c + 3
    assert p.eval(2) == 4
    assert (p * Fraction(2)).eval(2) == 8
    assert smul(Fraction(2), p) == p * 2
    assert smul(Fraction(2), Fraction(3)) == 6


def test_divisibility_by_linear():
    c = CPoly.sym()
    assert ((c - 26) * Fraction(5, 7)).divisible_by_linear(26)
    assert not (c - 25).divisible_by_linear(26)


def test_rational_round_trip():
    for text in ["3", "-4", "22/7", "-1/2", "0"]:
        assert format_rational(parse_rational(text)) == text
    with pytest.raises(ValueError):
        parse_rational("1.5")
