"""Exact arithmetic over Q(sqrt(d)) for geometric coordinates.

Symmetry matching compares coordinates for exact equality, so every
coordinate is a `Quad`: (an + bn*sqrt(d)) / dn with integer numerators
and one positive denominator, kept reduced.  The lattices used by the
builders only ever need one surd at a time (sqrt(3) for triangle and
hexagon grids, sqrt(5) for the icosahedral solids, sqrt(2) for the
octagonal dihedral group), which keeps the field quadratic and the
arithmetic plain integer work.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Union

Rat = Union[int, Fraction]

_SQUAREFREE_OK = (2, 3, 5, 6, 7, 10, 15)


class Quad:
    """(an + bn*sqrt(d)) / dn, reduced; d is 0 when bn is 0."""

    __slots__ = ("an", "bn", "dn", "d")

    def __init__(self, a: Rat = 0, b: Rat = 0, d: int = 0):
        if isinstance(a, int):
            an, ad = a, 1
        elif isinstance(a, Fraction):
            an, ad = a.numerator, a.denominator
        else:
            raise TypeError(f"expected int or Fraction, got {type(a).__name__}")
        if isinstance(b, int):
            bn, bd = b, 1
        elif isinstance(b, Fraction):
            bn, bd = b.numerator, b.denominator
        else:
            raise TypeError(f"expected int or Fraction, got {type(b).__name__}")
        if bn == 0:
            d = 0
        elif d <= 1:
            raise ValueError("surd part needs d >= 2")
        self._set(an * bd, bn * ad, ad * bd, d)

    def _set(self, an: int, bn: int, dn: int, d: int):
        # instances are treated as immutable after this runs
        if dn < 0:
            an, bn, dn = -an, -bn, -dn
        if dn > 1:
            g = gcd(gcd(an, bn), dn)
            if g > 1:
                an //= g
                bn //= g
                dn //= g
        self.an = an
        self.bn = bn
        self.dn = dn
        self.d = d if bn else 0

    @classmethod
    def _raw(cls, an: int, bn: int, dn: int, d: int) -> "Quad":
        q = cls.__new__(cls)
        q._set(an, bn, dn, d if bn else 0)
        return q

    # -- rational views -----------------------------------------------------

    @property
    def a(self) -> Fraction:
        return Fraction(self.an, self.dn)

    @property
    def b(self) -> Fraction:
        return Fraction(self.bn, self.dn)

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def of(x) -> "Quad":
        if isinstance(x, Quad):
            return x
        return Quad(x)

    def _join(self, other) -> tuple["Quad", int]:
        o = other if isinstance(other, Quad) else Quad(other)
        if self.d and o.d and self.d != o.d:
            raise ValueError(f"cannot mix sqrt({self.d}) with sqrt({o.d})")
        return o, self.d or o.d

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o, d = self._join(other)
        return Quad._raw(
            self.an * o.dn + o.an * self.dn,
            self.bn * o.dn + o.bn * self.dn,
            self.dn * o.dn,
            d,
        )

    __radd__ = __add__

    def __neg__(self):
        return Quad._raw(-self.an, -self.bn, self.dn, self.d)

    def __sub__(self, other):
        o, d = self._join(other)
        return Quad._raw(
            self.an * o.dn - o.an * self.dn,
            self.bn * o.dn - o.bn * self.dn,
            self.dn * o.dn,
            d,
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o, d = self._join(other)
        return Quad._raw(
            self.an * o.an + self.bn * o.bn * d,
            self.an * o.bn + self.bn * o.an,
            self.dn * o.dn,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o, d = self._join(other)
        norm = o.an * o.an - o.bn * o.bn * d
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        # 1/o = o.dn * (o.an - o.bn sqrt(d)) / norm
        return Quad._raw(
            (self.an * o.an - self.bn * o.bn * d) * o.dn,
            (self.bn * o.an - self.an * o.bn) * o.dn,
            self.dn * norm,
            d,
        )

    def __rtruediv__(self, other):
        return Quad.of(other) / self

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Quad):
            o = other
        elif isinstance(other, int):
            return self.bn == 0 and self.dn == 1 and self.an == other
        else:
            return NotImplemented
        return (
            self.an == o.an
            and self.bn == o.bn
            and self.dn == o.dn
            and self.d == o.d
        )

    def __hash__(self):
        if self.bn == 0 and self.dn == 1:
            return hash(self.an)
        return hash((self.an, self.bn, self.dn, self.d))

    def sign(self) -> int:
        """Exact sign of the real value."""
        an, bn = self.an, self.bn
        if bn == 0:
            return -1 if an < 0 else (1 if an > 0 else 0)
        if an == 0:
            return -1 if bn < 0 else 1
        if an > 0 and bn > 0:
            return 1
        if an < 0 and bn < 0:
            return -1
        lhs = an * an
        rhs = bn * bn * self.d
        if lhs == rhs:
            return 0
        bigger_rational = lhs > rhs
        if an > 0:
            return 1 if bigger_rational else -1
        return -1 if bigger_rational else 1

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return self.an != 0 or self.bn != 0

    def __float__(self):
        return (self.an + self.bn * self.d ** 0.5) / self.dn

    def __int__(self):
        if self.bn != 0 or self.dn != 1:
            raise ValueError(f"{self} is not an integer")
        return self.an

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- formatting -------------------------------------------------------

    def __repr__(self):
        return f"Quad({self})"

    def __str__(self):
        return format_quad(self)


def sqrt_int(n: int) -> Quad:
    """Exact square root of a nonnegative integer, pulling out square factors."""
    if n < 0:
        raise ValueError("sqrt of negative integer")
    if n == 0:
        return Quad(0)
    outside, inside = 1, n
    f = 2
    while f * f <= inside:
        while inside % (f * f) == 0:
            inside //= f * f
            outside *= f
        f += 1
    if inside == 1:
        return Quad(outside)
    if inside not in _SQUAREFREE_OK:
        raise ValueError(f"sqrt({n}) not supported")
    return Quad(0, outside, inside)


SQRT3 = sqrt_int(3)
SQRT5 = sqrt_int(5)
HALF = Quad(Fraction(1, 2))
PHI = (Quad(1) + SQRT5) / 2  # golden ratio


def format_quad(q: Quad) -> str:
    """Canonical exact string: "3", "-3/2", "2sqrt3", "(1+sqrt3)/2", "(1-2sqrt5)/4"."""
    if q.bn == 0:
        return str(q.an) if q.dn == 1 else f"{q.an}/{q.dn}"
    p, r, den = q.an, q.bn, q.dn
    surd = f"sqrt{q.d}" if abs(r) == 1 else f"{abs(r)}sqrt{q.d}"
    if p == 0:
        body = surd if r > 0 else f"-{surd}"
        return body if den == 1 else f"({body})/{den}"
    sign = "+" if r > 0 else "-"
    body = f"{p}{sign}{surd}"
    return body if den == 1 else f"({body})/{den}"


_QUAD_RE = re.compile(
    r"^\(?(?:(-?\d+)(?=[+-]))?([+-]?)(?:(\d*)sqrt(\d+))?\)?(?:/(\d+))?$"
)


def parse_quad(text: str) -> Quad:
    """Parse the strings produced by :func:`format_quad`."""
    text = text.strip().replace(" ", "")
    if "sqrt" not in text:
        return Quad(Fraction(text))
    m = _QUAD_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse exact number {text!r}")
    p_str, sign, coeff, d_str, den_str = m.groups()
    p = int(p_str) if p_str else 0
    coeff_val = int(coeff) if coeff else 1
    if sign == "-":
        coeff_val = -coeff_val
    den = int(den_str) if den_str else 1
    return Quad(Fraction(p, den), Fraction(coeff_val, den), int(d_str))
