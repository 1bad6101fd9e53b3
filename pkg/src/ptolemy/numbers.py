"""Exact dyadic rationals and projective rationals (Q plus a point at infinity)."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering


@total_ordering
class Dyadic:
    """The number ``numerator / 2**exponent``, kept normalized.

    Normalized means ``exponent == 0`` or ``numerator`` odd, so equal values
    have equal fields.
    """

    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int = 0, exponent: int = 0):
        numerator = int(numerator)
        exponent = int(exponent)
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        if numerator == 0:
            exponent = 0
        else:
            # strip common powers of two
            tz = (numerator & -numerator).bit_length() - 1
            shift = min(tz, exponent)
            numerator >>= shift
            exponent -= shift
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def coerce(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise ValueError(f"{value} is not dyadic")
            return cls(value.numerator, den.bit_length() - 1)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Dyadic")

    _PATTERN = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(?:2\s*\^\s*(\d+)|(\d+)))?\s*$")

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse ``"p"``, ``"p/2^m"`` or ``"p/q"`` with ``q`` a power of two."""
        m = cls._PATTERN.match(text)
        if not m:
            raise ValueError(f"bad dyadic literal {text!r}")
        num = int(m.group(1))
        if m.group(2) is not None:
            return cls(num, int(m.group(2)))
        if m.group(3) is not None:
            return cls.coerce(Fraction(num, int(m.group(3))))
        return cls(num, 0)

    def _pair(self, other):
        other = Dyadic.coerce(other)
        e = max(self.exponent, other.exponent)
        return (self.numerator << (e - self.exponent),
                other.numerator << (e - other.exponent), e)

    def __add__(self, other):
        try:
            a, b, e = self._pair(other)
        except TypeError:
            return NotImplemented
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            a, b, e = self._pair(other)
        except TypeError:
            return NotImplemented
        return Dyadic(a - b, e)

    def __rsub__(self, other):
        return Dyadic.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Dyadic.coerce(other)
        except TypeError:
            return NotImplemented
        return Dyadic(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic(-self.numerator, self.exponent)

    def mul_pow2(self, k: int) -> "Dyadic":
        """Multiply by ``2**k`` (``k`` may be negative)."""
        if k >= 0:
            return Dyadic(self.numerator << k, self.exponent)
        return Dyadic(self.numerator, self.exponent - k)

    def __floor__(self) -> int:
        return self.numerator >> self.exponent

    def frac(self) -> "Dyadic":
        return self - math.floor(self)

    def __eq__(self, other):
        if isinstance(other, (Dyadic, int, Fraction)):
            try:
                a, b, _ = self._pair(other)
            except ValueError:
                return False
            return a == b
        return NotImplemented

    def __lt__(self, other):
        try:
            a, b, _ = self._pair(other)
        except TypeError:
            return NotImplemented
        return a < b

    def __hash__(self):
        if self.exponent == 0:
            return hash(self.numerator)
        return hash(Fraction(self.numerator, 1 << self.exponent))

    def __float__(self):
        return self.numerator / (1 << self.exponent)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __str__(self):
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/2^{self.exponent}"

    def __repr__(self):
        return f"Dyadic({self})"


ZERO = Dyadic(0)
ONE = Dyadic(1)


@total_ordering
class Rational:
    """An element of Q ∪ {∞} stored as ``p/q`` with ``q >= 0`` and gcd 1.

    Infinity is ``1/0``.  The ordering puts infinity above every rational,
    which is the linear order used to read cyclic orders on the circle.
    """

    __slots__ = ("p", "q")

    def __init__(self, p: int, q: int = 1):
        p, q = int(p), int(q)
        if q == 0:
            if p == 0:
                raise ValueError("0/0 is not a rational")
            p = 1
        else:
            if q < 0:
                p, q = -p, -q
            g = math.gcd(p, q)
            p, q = p // g, q // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("Rational is immutable")

    @classmethod
    def coerce(cls, value) -> "Rational":
        if isinstance(value, Rational):
            return value
        if isinstance(value, int):
            return cls(value, 1)
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Rational")

    @classmethod
    def parse(cls, text: str) -> "Rational":
        t = text.strip()
        if t in ("inf", "oo", "∞"):
            return INF
        if "/" in t:
            a, b = t.split("/")
            return cls(int(a), int(b))
        return cls(int(t), 1)

    @property
    def is_inf(self) -> bool:
        return self.q == 0

    def vector(self) -> tuple[int, int]:
        return (self.p, self.q)

    def det(self, other: "Rational") -> int:
        """``p*s - q*r`` for ``self = p/q`` and ``other = r/s``."""
        return self.p * other.q - self.q * other.p

    def to_fraction(self) -> Fraction:
        if self.is_inf:
            raise ValueError("infinity has no Fraction value")
        return Fraction(self.p, self.q)

    def __float__(self):
        return math.inf if self.is_inf else self.p / self.q

    def __eq__(self, other):
        if isinstance(other, int):
            other = Rational(other)
        if not isinstance(other, Rational):
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __lt__(self, other):
        other = Rational.coerce(other)
        if self.is_inf:
            return False
        if other.is_inf:
            return True
        return self.p * other.q < other.p * self.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __str__(self):
        return f"{self.p}/{self.q}"

    def __repr__(self):
        return f"Rational({self.p}/{self.q})"


INF = Rational(1, 0)


def ccw(a: Rational, b: Rational, c: Rational) -> bool:
    """True iff ``a, b, c`` are distinct and occur in increasing cyclic order.

    Increasing order on R ∪ {∞} is counterclockwise on the boundary circle.
    """
    if a == b or b == c or a == c:
        return False
    return (a < b < c) or (b < c < a) or (c < a < b)
