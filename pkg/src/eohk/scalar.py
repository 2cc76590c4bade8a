"""Exact arithmetic in the field Q(i, sqrt2).

A :class:`Scalar` is stored as integer numerators over one positive common
denominator::

    ((a + b*sqrt2) + (c + d*sqrt2) * i) / den

and is kept in lowest terms, so structural equality is value equality.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "ZERO", "ONE", "I", "SQRT2", "as_scalar"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


class Scalar:
    __slots__ = ("a", "b", "c", "d", "den", "_hash")

    def __init__(self, re0=0, re1=0, im0=0, im1=0):
        parts = [_frac(re0), _frac(re1), _frac(im0), _frac(im1)]
        den = math.lcm(*(p.denominator for p in parts))
        nums = [p.numerator * (den // p.denominator) for p in parts]
        self._set(*nums, den)

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int, den: int) -> "Scalar":
        s = cls.__new__(cls)
        s._set(a, b, c, d, den)
        return s

    def _set(self, a, b, c, d, den):
        if den < 0:
            a, b, c, d, den = -a, -b, -c, -d, -den
        if den != 1:
            g = math.gcd(a, b, c, d, den)
            if g > 1:
                a, b, c, d, den = a // g, b // g, c // g, d // g, den // g
        if not (a or b or c or d):
            den = 1
        self.a, self.b, self.c, self.d, self.den = a, b, c, d, den
        self._hash = None

    # ---- component access -------------------------------------------------
    @property
    def re0(self) -> Fraction:
        return Fraction(self.a, self.den)

    @property
    def re1(self) -> Fraction:
        return Fraction(self.b, self.den)

    @property
    def im0(self) -> Fraction:
        return Fraction(self.c, self.den)

    @property
    def im1(self) -> Fraction:
        return Fraction(self.d, self.den)

    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.re0, self.re1, self.im0, self.im1

    # ---- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        return self.c == 0 and self.d == 0

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def real_sign(self) -> int:
        """Sign of a real scalar a + b*sqrt2 (raises for non-real values)."""
        if not self.is_real():
            raise ValueError("real_sign of a non-real scalar")
        a, b = self.a, self.b
        if a >= 0 and b >= 0:
            return 0 if (a == 0 and b == 0) else 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: compare a^2 with 2 b^2
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return 1 if 2 * b * b > a * a else -1

    # ---- arithmetic --------------------------------------------------------
    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self.a, -self.b, -self.c, -self.d, self.den)

    def __pos__(self) -> "Scalar":
        return self

    def __add__(self, other) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Scalar._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, self.den)
        p, q = o.den, self.den
        return Scalar._raw(
            self.a * p + o.a * q,
            self.b * p + o.b * q,
            self.c * p + o.c * q,
            self.d * p + o.d * q,
            p * q,
        )

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, int):
            return Scalar._raw(self.a * other, self.b * other, self.c * other, self.d * other, self.den)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = o.a, o.b, o.c, o.d
        re0 = (a * e + 2 * b * f) - (c * g + 2 * d * h)
        re1 = (a * f + b * e) - (c * h + d * g)
        im0 = (a * g + 2 * b * h) + (c * e + 2 * d * f)
        im1 = (a * h + b * g) + (c * f + d * e)
        return Scalar._raw(re0, re1, im0, im1, self.den * o.den)

    __rmul__ = __mul__

    def conj(self) -> "Scalar":
        return Scalar._raw(self.a, self.b, -self.c, -self.d, self.den)

    def abs2(self) -> "Scalar":
        """|s|^2 = s * conj(s); always real."""
        return self * self.conj()

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        n = self.abs2()  # (p + q sqrt2) / den'
        p, q = n.a, n.b
        # 1 / (p + q sqrt2) = (p - q sqrt2) / (p^2 - 2 q^2)
        norm = p * p - 2 * q * q
        inv_n = Scalar._raw(p * n.den, -q * n.den, 0, 0, norm)
        return self.conj() * inv_n

    def __truediv__(self, other) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def times_i(self, k: int = 1) -> "Scalar":
        """Multiply by i**k without a general product."""
        k %= 4
        a, b, c, d = self.a, self.b, self.c, self.d
        if k == 0:
            return self
        if k == 1:
            return Scalar._raw(-c, -d, a, b, self.den)
        if k == 2:
            return Scalar._raw(-a, -b, -c, -d, self.den)
        return Scalar._raw(c, d, -a, -b, self.den)

    # ---- comparison / hashing ---------------------------------------------
    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (
            self.den == o.den
            and self.a == o.a
            and self.b == o.b
            and self.c == o.c
            and self.d == o.d
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.a, self.b, self.c, self.d, self.den))
        return self._hash

    # ---- conversion --------------------------------------------------------
    def to_complex(self) -> complex:
        r2 = math.sqrt(2.0)
        return complex((self.a + self.b * r2) / self.den, (self.c + self.d * r2) / self.den)

    def __complex__(self) -> complex:
        return self.to_complex()

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        return format_scalar(self)


def _coerce(x) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        return Scalar._raw(f.numerator, 0, 0, 0, f.denominator)
    return None


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, 'p/q' strings and Gaussian-integer complex to Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            raise TypeError(f"only Gaussian-integer complex values convert exactly: {x!r}")
        return Scalar(int(x.real), 0, int(x.imag), 0)
    if isinstance(x, float):
        if x != int(x):
            raise TypeError(f"float {x!r} has no exact representation here")
        return Scalar(int(x))
    return Scalar(_frac(x))


def _fmt_qsqrt2(p: Fraction, q: Fraction) -> str:
    if q == 0:
        return str(p)
    sq = "sqrt2" if q == 1 else "-sqrt2" if q == -1 else f"{q}*sqrt2"
    if p == 0:
        return sq
    return f"{p}{sq}" if sq.startswith("-") else f"{p}+{sq}"


def format_scalar(s: Scalar) -> str:
    """Canonical exact text such as ``2``, ``-i`` or ``(1+sqrt2)+3/2*i``."""
    re = _fmt_qsqrt2(s.re0, s.re1)
    if s.is_real():
        return re
    if s.im1 == 0:
        q = s.im0
        im = "i" if q == 1 else "-i" if q == -1 else f"{q}*i"
    else:
        im = f"({_fmt_qsqrt2(s.im0, s.im1)})*i"
    if s.a == 0 and s.b == 0:
        return im
    re_part = re if s.b == 0 else f"({re})"
    return f"{re_part}-{im[1:]}" if im.startswith("-") else f"{re_part}+{im}"


ZERO = Scalar._raw(0, 0, 0, 0, 1)
ONE = Scalar._raw(1, 0, 0, 0, 1)
I = Scalar._raw(0, 0, 1, 0, 1)
SQRT2 = Scalar._raw(0, 1, 0, 0, 1)
