"""Exact arithmetic over the Gaussian rationals Q(i).

A ``Scalar`` stores ``(a + b*i) / d`` with integers ``a, b`` and ``d > 0``,
reduced so that ``gcd(a, b, d) == 1``.  Keeping one shared denominator makes
multiplication a handful of integer products and a single gcd, which matters
inside elimination loops.  The real and imaginary parts are exposed as
``fractions.Fraction`` values in lowest terms.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = ["Scalar", "ZERO", "ONE", "I", "as_scalar", "parse_scalar", "format_scalar"]


class Scalar:
    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a: int, b: int, d: int) -> None:
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a = a
        self._b = b
        self._d = d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "Scalar":
        s = object.__new__(cls)
        s._set(a, b, d)
        return s

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """Squared modulus, an exact rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._d, other._d
        if d1 == d2:
            return Scalar._raw(self._a + other._a, self._b + other._b, d1)
        return Scalar._raw(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._d, other._d
        if d1 == d2:
            return Scalar._raw(self._a - other._a, self._b - other._b, d1)
        return Scalar._raw(self._a * d2 - other._a * d1, self._b * d2 - other._b * d1, d1 * d2)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, e = self._a, self._b, other._a, other._b
        if b == 0 and e == 0:
            return Scalar._raw(a * c, 0, self._d * other._d)
        return Scalar._raw(a * c - b * e, a * e + b * c, self._d * other._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        c, e = other._a, other._b
        if c == 0 and e == 0:
            raise ZeroDivisionError("division by zero scalar")
        a, b = self._a, self._b
        if e == 0:
            return Scalar._raw(a * other._d, b * other._d, self._d * c)
        # (a+bi)/d / ((c+ei)/f) = f (a+bi)(c-ei) / (d (c^2+e^2))
        f = other._d
        return Scalar._raw(f * (a * c + b * e), f * (b * c - a * e), self._d * (c * c + e * e))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** -k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison / hashing

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{format_scalar(self)}')"

    def __reduce__(self):
        return (parse_scalar, (format_scalar(self),))


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar._raw(x, 0, 1)
    if isinstance(x, Rational):
        return Scalar._raw(x.numerator, 0, x.denominator)
    if isinstance(x, complex):
        return NotImplemented
    return NotImplemented


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, scalar strings and Scalars to ``Scalar``."""
    if isinstance(x, str):
        return parse_scalar(x)
    s = _coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return s


ZERO = Scalar._raw(0, 0, 1)
ONE = Scalar._raw(1, 0, 1)
I = Scalar._raw(0, 1, 1)


_RAT = r"[+-]?\d+(?:/\d+)?"
_IMAG = r"[+-]?(?:\d+(?:/\d+)?\*)?i"
_FULL = re.compile(
    rf"^(?P<re>{_RAT})(?P<rest>[+-](?:\d+(?:/\d+)?\*)?i)?$|^(?P<pure>{_IMAG})$"
)


def _rational(text: str) -> Fraction:
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise ValueError(f"zero denominator in scalar {text!r}")
    return Fraction(text)


def _imag_part(text: str) -> Fraction:
    # text like "+3/4*i", "-i", "i", "2*i"
    body = text[:-1]
    if body.endswith("*"):
        body = body[:-1]
    if body in ("", "+"):
        return Fraction(1)
    if body == "-":
        return Fraction(-1)
    return _rational(body)


def parse_scalar(text: str) -> Scalar:
    """Parse ``p/q``, ``p/q+r/s*i``, ``p/q-r/s*i`` or a pure ``r/s*i``.

    ``/1`` may be omitted.  A bare ``i`` (or ``-i``) is accepted as shorthand
    for ``1*i``.
    """
    s = text.strip().replace(" ", "")
    m = _FULL.match(s)
    if not m:
        raise ValueError(f"malformed scalar {text!r}")
    if m.group("pure") is not None:
        return Scalar(0, _imag_part(m.group("pure")))
    re_part = _rational(m.group("re"))
    rest = m.group("rest")
    im_part = _imag_part(rest) if rest else Fraction(0)
    return Scalar(re_part, im_part)


def _fmt_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    re_, im_ = x.re, x.im
    if im_ == 0:
        return _fmt_rational(re_)
    imag = _fmt_rational(abs(im_)) + "*i"
    if re_ == 0:
        return ("-" if im_ < 0 else "") + imag
    return _fmt_rational(re_) + ("-" if im_ < 0 else "+") + imag
