"""Exact scalars: rationals (``fractions.Fraction``) and ``a + b*sqrt(D)``.

Rationals are plain :class:`fractions.Fraction` (or ``int``) values.  A
:class:`QuadraticScalar` adjoins a single square root of a square-free
integer ``D``; scalars with different ``D`` never mix.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = ["Fraction", "QuadraticScalar", "is_zero", "as_fraction", "squarefree"]


def squarefree(d: int) -> bool:
    if d == 0:
        return False
    n = abs(d)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, QuadraticScalar) and x.b == 0:
        return x.a
    raise TypeError(f"not a rational scalar: {x!r}")


def is_zero(x) -> bool:
    return not x


class QuadraticScalar:
    """An element ``a + b*sqrt(D)`` of ``Q(sqrt(D))``."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: int = -1):
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        if not squarefree(D) or D == 1:
            raise ValueError(f"discriminant must be square-free and != 1, got {D}")
        self.D = D

    @classmethod
    def sqrt(cls, D: int) -> "QuadraticScalar":
        return cls(0, 1, D)

    def _coerce(self, other):
        if isinstance(other, QuadraticScalar):
            if other.D != self.D:
                raise ValueError(
                    f"cannot mix sqrt({self.D}) and sqrt({other.D}) scalars"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticScalar(other, 0, self.D)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticScalar(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticScalar(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticScalar(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticScalar(
            self.a * o.a + self.D * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.D,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticScalar":
        return QuadraticScalar(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def inverse(self) -> "QuadraticScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero quadratic scalar")
        return QuadraticScalar(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadraticScalar(1, 0, self.D)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadraticScalar):
            return self.D == other.D and self.a == other.a and self.b == other.b
        if isinstance(other, _RationalABC):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __repr__(self):
        return f"QuadraticScalar({self.a}, {self.b}, D={self.D})"

    def to_string(self, root_name: str) -> str:
        if self.b == 0:
            return str(self.a)
        b = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        root = f"{b}{root_name}"
        if self.a == 0:
            return root
        sign = "-" if self.b < 0 else "+"
        babs = abs(self.b)
        bpart = root_name if babs == 1 else f"{babs}*{root_name}"
        return f"({self.a} {sign} {bpart})"
