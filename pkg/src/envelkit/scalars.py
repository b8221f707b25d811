"""Exact scalars: the rationals (as :class:`fractions.Fraction`) and prime fields.

A :class:`Field` is a small immutable tag. Calling it coerces integers,
fractions and strings into the field::

    >>> QQ("1/2") + QQ("1/3")
    Fraction(5, 6)
    >>> F5 = Field(5); F5(3) * F5(4)
    Fp(2, 5)
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import MixedFields, ParseError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % q for q in range(3, math.isqrt(n) + 1, 2))


class Fp:
    """An element of the prime field of order ``p``, stored in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise MixedFields(f"F{self.p} vs F{other.p}")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            raise MixedFields(f"F{self.p} vs Q")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Fp(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(o, self.p) * self.inverse()

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return f"{self.v} mod {self.p}"

    def __reduce__(self):
        return (Fp, (self.v, self.p))


Scalar = Union[Fraction, Fp]

_RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class Field:
    """Field tag: ``p == 0`` is the rationals, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def char(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __call__(self, x, den=None) -> Scalar:
        if isinstance(x, str):
            m = _RAT.match(x)
            if not m:
                raise ParseError(f"bad scalar {x!r}")
            x = Fraction(int(m.group(1)), int(m.group(2) or 1))
        if den is not None:
            x = Fraction(x, den)
        if self.p == 0:
            if isinstance(x, Fp):
                raise MixedFields("F_p element used over Q")
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise MixedFields(f"F{x.p} vs F{self.p}")
            return x
        x = Fraction(x)
        return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def elements(self) -> Iterator[Fp]:
        if self.p == 0:
            raise ValueError("Q is infinite")
        return (Fp(v, self.p) for v in range(self.p))

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t in ("Q", "QQ"):
            return QQ
        m = re.fullmatch(r"F[p]?(\d+)", t)
        if not m:
            raise ParseError(f"unknown field {text!r}")
        try:
            return cls(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None


QQ = Field(0)


def field_of(a) -> Field:
    if isinstance(a, Fp):
        return Field(a.p)
    return QQ


def arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Checked binary arithmetic; both operands must live in the same field."""
    if field_of(a) != field_of(b):
        raise MixedFields(f"{field_of(a)} vs {field_of(b)}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def render(a: Scalar) -> str:
    if isinstance(a, Fp):
        return str(a)
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def _iroot(n: int, k: int) -> int | None:
    """Exact non-negative integer k-th root of n >= 0, or None."""
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        m = mid**k
        if m == n:
            return mid
        if m < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def nth_root(a: Scalar, n: int) -> Scalar | None:
    """Some r in the field of ``a`` with r**n == a, or None when none exists."""
    if isinstance(a, Fp):
        for r in Field(a.p).elements():
            if r**n == a:
                return r
        return None
    a = Fraction(a)
    if a < 0:
        if n % 2 == 0:
            return None
        r = nth_root(-a, n)
        return None if r is None else -r
    num, den = _iroot(a.numerator, n), _iroot(a.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def is_square(a: Scalar) -> Scalar | None:
    """Return a square root of ``a`` if ``a`` is a square in its field, else None."""
    if isinstance(a, Fp):
        p = a.p
        if p != 2 and a and pow(a.v, (p - 1) // 2, p) != 1:
            return None
        return nth_root(a, 2)
    return nth_root(a, 2)


def is_cube(a: Scalar) -> Scalar | None:
    return nth_root(a, 3)


def solve_scaling(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Scalar | None:
    """Find a nonzero alpha with ``a == alpha**3 * c`` and ``b == alpha**2 * d``."""
    if not c:
        raise ValueError("solve_scaling needs c != 0")
    if not b and not d:
        alpha = is_cube(a / c)
    elif b and d:
        alpha = (a / c) * (d / b)
    else:
        return None
    if alpha is None or not alpha:
        return None
    if a == alpha**3 * c and b == alpha**2 * d:
        return alpha
    return None


def squarefree_part(a: Fraction) -> int:
    """Canonical representative of the rational square class of a nonzero ``a``."""
    a = Fraction(a)
    if not a:
        raise ValueError("0 has no square class")
    n = a.numerator * a.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    q = 2
    while q * q <= n:
        while n % (q * q) == 0:
            n //= q * q
        if n % q == 0:
            out *= q
            n //= q
        q += 1
    return sign * out * n
