"""Quotients of sparse polynomials.

Normalization is deliberately light: the denominator is made monic in
grlex order, common monomial factors are cancelled, and the quotient
collapses to a polynomial when the division is exact.  No multivariate
gcd is computed, so equality is decided by cross-multiplication.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .poly import SparsePolynomial, _SCALARS

__all__ = ["RationalFunction", "as_rational_function"]


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, normalize: bool = True):
        if not isinstance(num, SparsePolynomial):
            vars = den.vars if isinstance(den, SparsePolynomial) else ()
            num = SparsePolynomial.constant(num, vars)
        if den is None:
            den = num.one()
        elif not isinstance(den, SparsePolynomial):
            den = SparsePolynomial.constant(den, num.vars)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.vars != den.vars:
            vars, _, _ = num._align(den)
            num, den = num.with_vars(vars), den.with_vars(vars)
        self.num = num
        self.den = den
        if normalize:
            self._normalize()

    def _normalize(self):
        num, den = self.num, self.den
        if not num:
            self.den = den.one()
            return
        if den.is_constant():
            c = den.constant_value()
            if c != 1:
                num = num * _inv(c)
            self.num, self.den = num, den.one()
            return
        _, lc = den.leading()
        if lc != 1:
            inv = _inv(lc)
            num, den = num * inv, den * inv
        low_n = num.monomial_content()
        low_d = den.monomial_content()
        common = tuple(min(a, b) for a, b in zip(low_n, low_d))
        if any(common):
            num, den = num.shift(common), den.shift(common)
        if den.is_constant():
            self.num, self.den = num, den.one()
            return
        q = num.divide_exact(den)
        if q is not None:
            num, den = q, den.one()
        self.num, self.den = num, den

    @property
    def vars(self) -> tuple:
        return self.num.vars

    @classmethod
    def constant(cls, c, vars: Iterable[str] = ()) -> "RationalFunction":
        return cls(SparsePolynomial.constant(c, vars))

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> SparsePolynomial:
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.constant_value()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, SparsePolynomial):
            return RationalFunction(other, normalize=False)
        if isinstance(other, _SCALARS):
            return RationalFunction(SparsePolynomial.constant(other, self.vars), normalize=False)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        if o.den.is_constant():
            return RationalFunction(self.num + o.num * self.den, self.den)
        if self.den.is_constant():
            return RationalFunction(self.num * o.den + o.num, o.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return RationalFunction(self.num * other, self.den, normalize=False) if other else \
                RationalFunction(self.num.zero(), self.den.one(), normalize=False)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

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

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, normalize=False)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        # equal rational functions may have different representations
        if self.den.is_constant():
            return hash(self.num)
        return hash(("rf", self.vars))

    def diff(self, var: str) -> "RationalFunction":
        if self.den.is_constant():
            return RationalFunction(self.num.diff(var), self.den, normalize=False)
        return RationalFunction(
            self.num.diff(var) * self.den - self.num * self.den.diff(var),
            self.den * self.den,
        )

    def evaluate(self, values: Mapping[str, object]):
        n = self.num.evaluate(values)
        if self.den.is_constant():
            d = self.den.constant_value()
            return n if d == 1 else n * _inv(d)
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError("denominator vanishes under substitution")
        if isinstance(d, _SCALARS):
            return n * _inv(d)
        if isinstance(n, _SCALARS):
            n = _lift_like(n, d)
        return n / d

    def with_vars(self, vars) -> "RationalFunction":
        return RationalFunction(self.num.with_vars(vars), self.den.with_vars(vars), normalize=False)

    def to_string(self, root_name: str = "sqrtD") -> str:
        n = self.num.to_string(root_name)
        if self.den.is_constant():
            return n
        d = self.den.to_string(root_name)
        if " " in n:
            n = f"({n})"
        if any(ch in d for ch in " */") or d.startswith("-"):
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"RationalFunction({self.to_string()!r})"


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def _lift_like(c, target):
    if isinstance(target, SparsePolynomial):
        return SparsePolynomial.constant(c, target.vars)
    if isinstance(target, RationalFunction):
        return RationalFunction.constant(c, target.vars)
    return c


def as_rational_function(x, vars: Iterable[str] = ()) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, SparsePolynomial):
        return RationalFunction(x, normalize=False)
    return RationalFunction.constant(x, vars)
