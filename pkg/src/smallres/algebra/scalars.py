"""Exact scalars: rationals (gmpy2 ``mpq``) and Gaussian rationals.

Polynomial coefficients are always normalised with :func:`gauss`, so a
coefficient with zero imaginary part is stored as a plain ``mpq``.  Only
genuinely complex values are :class:`GaussRational` instances; this keeps
real computations on the fast path.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from gmpy2 import mpq

__all__ = ["GaussRational", "Scalar", "I", "gauss", "rational", "parse_scalar", "format_scalar"]


def rational(value) -> mpq:
    """Coerce ``int``, ``Fraction``, ``mpq`` or a ``"p/q"`` string to ``mpq``."""
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, str, mpq)):
        return mpq(value)
    if isinstance(value, Rational):
        return mpq(value.numerator, value.denominator)
    raise TypeError(f"cannot make an exact rational from {value!r}")


class GaussRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = rational(re)
        self.im = rational(im)

    # construction helpers -------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussRational):
            return other
        try:
            return GaussRational(other, 0)
        except TypeError:
            return None

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gauss(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gauss(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = gauss(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("GaussRational division by zero")
        return gauss(self.re / norm, -self.im / norm)

    def conjugate(self):
        return gauss(self.re, -self.im)

    # comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[mpq, GaussRational]

I = GaussRational(0, 1)


def gauss(re, im=0) -> Scalar:
    """Normalised scalar: ``mpq`` when the imaginary part vanishes."""
    if isinstance(re, GaussRational):
        if im:
            return re + GaussRational(0, 1) * gauss(im)
        return re if re.im else re.re
    im = rational(im)
    if im == 0:
        return rational(re)
    return GaussRational(re, im)


def is_scalar(value) -> bool:
    if isinstance(value, bool):
        return False
    return isinstance(value, (int, Fraction, mpq, GaussRational))


def _format_rational(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(c) -> str:
    """Canonical text for a scalar: ``3/4``, ``-i``, ``(1/2+3*i)``."""
    c = gauss(c)
    if not isinstance(c, GaussRational):
        return _format_rational(c)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_format_rational(c.im)}*i"
    im = c.im
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    im_text = "i" if mag == 1 else f"{_format_rational(mag)}*i"
    return f"({_format_rational(c.re)}{sign}{im_text})"


_SCALAR_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*$")


def parse_scalar(text: str) -> Scalar:
    """Parse a rational ``p/q`` or decimal literal; complex values go through the polynomial parser."""
    m = _SCALAR_RE.match(text)
    if m:
        return mpq(m.group(1))
    try:
        return mpq(Fraction(text.strip()))
    except ValueError:
        from .parse import parse_poly

        p = parse_poly(text)
        if not p.is_constant():
            raise ValueError(f"not a scalar: {text!r}")
        return p.constant_coefficient()
