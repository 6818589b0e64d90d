"""Exact scalars over the Gaussian rationals, the field all computation runs on.

A scalar is ``re + im*i`` with arbitrary-precision rational parts.  Both parts
are normalized ``fractions.Fraction`` values (lowest terms, positive
denominator), so equality is structural and hashing is consistent.

The canonical text form follows the grammar

    RAT    := ["-"] DIGITS ["/" DIGITS]
    SCALAR := RAT | RAT ("+"|"-") RAT "i" | ["-"] RAT "i" | "i"

e.g. ``3/2``, ``-1+2/5i``, ``i``.  ``format_scalar`` always emits a canonical
string and ``parse_scalar(format_scalar(x)) == x``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import FormatError

ScalarLike = Union["GaussianRational", Fraction, int]

_RAT = r"-?\d+(?:/\d+)?"
_URAT = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?:(?P<re_only>{_RAT})"
    rf"|(?P<re_part>{_RAT})(?P<sign>[+-])(?P<im_part>{_URAT})i"
    rf"|(?P<im_sign>-?)(?P<im_only>{_URAT})i"
    rf"|(?P<unit_sign>-?)i)$"
)


class GaussianRational:
    """An element of Q(i): exact complex number with rational parts."""

    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: ScalarLike = 0, im: Fraction | int = 0):
        if isinstance(re, GaussianRational):
            if im:
                raise ValueError("cannot combine a GaussianRational with an imaginary part")
            object.__setattr__(self, "re", re.re)
            object.__setattr__(self, "im", re.im)
            return
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "GaussianRational":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> "GaussianRational":
        return self

    def inverse(self) -> "GaussianRational":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm re^2 + im^2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    # -- comparisons and hashing --------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    @property
    def is_rational(self) -> bool:
        return self.im == 0

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        return format_scalar(self)


def _coerce(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return NotImplemented


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def _format_fraction(q: Fraction) -> str:
    return str(q)  # Fraction renders as "p" or "p/q" with q > 0


def format_scalar(z: GaussianRational) -> str:
    """Canonical text form of ``z`` per the scalar grammar."""
    if z.im == 0:
        return _format_fraction(z.re)
    if z.re == 0:
        if z.im == 1:
            return "i"
        return _format_fraction(z.im) + "i"
    sign = "+" if z.im > 0 else "-"
    return _format_fraction(z.re) + sign + _format_fraction(abs(z.im)) + "i"


def parse_scalar(text: str) -> GaussianRational:
    """Parse a scalar string; raises FormatError if it is not in the grammar."""
    m = _SCALAR_RE.match(text)
    if m is None:
        raise FormatError(f"not a valid scalar: {text!r}")
    try:
        if m.group("re_only") is not None:
            return GaussianRational(Fraction(m.group("re_only")))
        if m.group("re_part") is not None:
            im = Fraction(m.group("im_part"))
            if m.group("sign") == "-":
                im = -im
            return GaussianRational(Fraction(m.group("re_part")), im)
        if m.group("im_only") is not None:
            im = Fraction(m.group("im_only"))
            if m.group("im_sign") == "-":
                im = -im
            return GaussianRational(0, im)
        return GaussianRational(0, -1 if m.group("unit_sign") == "-" else 1)
    except ZeroDivisionError as exc:
        raise FormatError(f"zero denominator in scalar: {text!r}") from exc


def sqrt_fraction(q: Fraction) -> Fraction | None:
    """Exact nonnegative square root of ``q``, or None if q is not a square."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    rn = isqrt(q.numerator)
    if rn * rn != q.numerator:
        return None
    rd = isqrt(q.denominator)
    if rd * rd != q.denominator:
        return None
    return Fraction(rn, rd)


def gaussian_sqrt(z: GaussianRational) -> GaussianRational | None:
    """A square root of ``z`` in Q(i) if one exists, else None.

    A root exists iff norm(z) is a rational square and the derived real part
    (re + sqrt(norm))/2 is too; the other root is the negation.
    """
    if z.im == 0:
        if z.re >= 0:
            r = sqrt_fraction(z.re)
            return None if r is None else GaussianRational(r)
        r = sqrt_fraction(-z.re)
        return None if r is None else GaussianRational(0, r)
    n = sqrt_fraction(z.norm())
    if n is None:
        return None
    x = sqrt_fraction((z.re + n) / 2)
    if x is None or x == 0:
        return None
    y = z.im / (2 * x)
    root = GaussianRational(x, y)
    return root if root * root == z else None
