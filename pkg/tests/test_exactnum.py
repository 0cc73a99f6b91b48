from fractions import Fraction

import pytest

from latinboards.exactnum import PHI, SQRT3, SQRT5, Quad, format_quad, parse_quad, sqrt_int


def test_basic_arithmetic():
    x = Quad(1, 1, 3)  # 1 + sqrt3
    y = Quad(2, -1, 3)  # 2 - sqrt3
    assert x + y == Quad(3)
    assert x * y == Quad(2 - 3, 1, 3)  # (1+s)(2-s) = 2 - s + 2s - 3 = -1 + s
    assert x - x == Quad(0)
    assert (x * y).a == Fraction(-1)


def test_division_and_inverse():
    x = Quad(1, 1, 3)
    assert x / x == Quad(1)
    assert (Quad(1) / x) * x == Quad(1)
    with pytest.raises(ZeroDivisionError):
        Quad(1) / Quad(0)


def test_mixing_surds_rejected():
    with pytest.raises(ValueError):
        SQRT3 + SQRT5


def test_sign_and_ordering():
    assert (SQRT3 - Quad(1)).sign() == 1
    assert (SQRT3 - Quad(2)).sign() == -1
    assert Quad(Fraction(17, 10)) < SQRT3 < Quad(Fraction(174, 100))
    assert (SQRT3 * SQRT3) == Quad(3)
    # phi^2 = phi + 1
    assert PHI * PHI == PHI + 1


def test_sqrt_int_extracts_squares():
    assert sqrt_int(4) == Quad(2)
    assert sqrt_int(12) == Quad(0, 2, 3)
    assert sqrt_int(0) == Quad(0)
    assert float(sqrt_int(5)) == pytest.approx(5 ** 0.5)


@pytest.mark.parametrize(
    "q",
    [
        Quad(3),
        Quad(Fraction(-3, 2)),
        Quad(0, 1, 3),
        Quad(0, -1, 3),
        Quad(0, 2, 3),
        Quad(Fraction(1, 2), Fraction(1, 2), 3),
        Quad(Fraction(1, 2), Fraction(-1, 2), 3),
        Quad(Fraction(-1, 4), Fraction(3, 4), 5),
        Quad(0, Fraction(2, 3), 3),
    ],
)
def test_format_parse_round_trip(q):
    assert parse_quad(format_quad(q)) == q


def test_format_examples():
    assert format_quad(Quad(Fraction(3, 2))) == "3/2"
    assert format_quad((Quad(1) + SQRT3) / 2) == "(1+sqrt3)/2"
    assert format_quad(SQRT3) == "sqrt3"


def test_hash_consistent_with_eq():
    assert Quad(3) == 3
    assert hash(Quad(3)) == hash(Fraction(3))
    assert hash(Quad(1, 1, 3)) == hash(Quad(1, 1, 3))
