"""Truncated Laurent series in ``t^(1/2)``.

Exponents are stored as integers counting half-units, so ``t^(3/2)`` has
key 3.  ``prec`` is the first unknown exponent (exclusive, half-units);
``None`` marks an exact series with finitely many terms.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .poly import SparsePolynomial, _SCALARS
from .ratfunc import RationalFunction

__all__ = ["HalfLaurentSeries", "SeriesOrderError", "series_substitute"]


class SeriesOrderError(ValueError):
    """Raised when a result cannot be determined to the available order."""


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _invert_coeff(c):
    if isinstance(c, int):
        return Fraction(1, c)
    if isinstance(c, _SCALARS):
        return 1 / c
    if isinstance(c, SparsePolynomial):
        if c.is_constant():
            v = c.constant_value()
            return SparsePolynomial.constant(_invert_coeff(v), c.vars)
        return RationalFunction(c.one(), c)
    if isinstance(c, RationalFunction):
        return c.inverse()
    return 1 / c


class HalfLaurentSeries:
    __slots__ = ("terms", "prec", "var")

    def __init__(self, terms: Mapping[int, object] | None = None, prec: int | None = None, var: str = "t"):
        self.var = var
        self.prec = prec
        out = {}
        if terms:
            for e, c in terms.items():
                if c and (prec is None or e < prec):
                    out[int(e)] = c
        self.terms = out

    @classmethod
    def _raw(cls, terms, prec, var):
        s = cls.__new__(cls)
        s.terms = terms
        s.prec = prec
        s.var = var
        return s

    # constructors ---------------------------------------------------------
    @classmethod
    def monomial(cls, coeff=1, half_exp: int = 0, var: str = "t", prec: int | None = None):
        return cls({half_exp: coeff}, prec, var)

    @classmethod
    def constant(cls, c, var: str = "t"):
        return cls({0: c}, None, var)

    @classmethod
    def gen(cls, var: str = "t"):
        """The series ``t`` itself."""
        return cls({2: 1}, None, var)

    @classmethod
    def sqrt_gen(cls, var: str = "t"):
        """The series ``t^(1/2)``."""
        return cls({1: 1}, None, var)

    @classmethod
    def big_o(cls, half_exp: int, var: str = "t"):
        return cls({}, half_exp, var)

    # basic queries ------------------------------------------------------------
    def valuation(self):
        """Lowest exponent present (half-units); ``prec`` for an inexact zero."""
        if self.terms:
            return min(self.terms)
        return self.prec  # None for the exact zero

    def is_exact(self) -> bool:
        return self.prec is None

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, half_exp: int):
        if self.prec is not None and half_exp >= self.prec:
            raise SeriesOrderError(f"coefficient at {half_exp}/2 beyond precision {self.prec}/2")
        return self.terms.get(half_exp, 0)

    def integral_exponents(self) -> bool:
        return all(e % 2 == 0 for e in self.terms)

    def items(self):
        return sorted(self.terms.items())

    # arithmetic -------------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, HalfLaurentSeries):
            if other.var != self.var:
                raise ValueError(f"series in {self.var} and {other.var} do not mix")
            return other
        if isinstance(other, (SparsePolynomial, RationalFunction) + _SCALARS):
            return HalfLaurentSeries._raw({0: other} if other else {}, None, self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = _min_prec(self.prec, o.prec)
        out = {}
        for src in (self.terms, o.terms):
            for e, c in src.items():
                if prec is not None and e >= prec:
                    continue
                s = out.get(e)
                out[e] = c if s is None else s + c
        return HalfLaurentSeries._raw({e: c for e, c in out.items() if c}, prec, self.var)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurentSeries._raw({e: -c for e, c in self.terms.items()}, self.prec, self.var)

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
        if isinstance(other, (SparsePolynomial, RationalFunction) + _SCALARS):
            if not other:
                return HalfLaurentSeries._raw({}, self.prec, self.var)
            return HalfLaurentSeries._raw(
                {e: c * other for e, c in self.terms.items() if c * other}, self.prec, self.var
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        va, vb = self.valuation(), o.valuation()
        if self.prec is None and o.prec is None:
            prec = None
        elif self.prec is None:
            prec = None if va is None else o.prec + va
        elif o.prec is None:
            prec = None if vb is None else self.prec + vb
        else:
            prec = min(self.prec + vb, o.prec + va)
        if va is None or vb is None:
            # exact zero factor
            return HalfLaurentSeries._raw({}, None, self.var)
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in o.terms.items():
                e = ea + eb
                if prec is not None and e >= prec:
                    continue
                s = out.get(e)
                p = ca * cb
                out[e] = p if s is None else s + p
        return HalfLaurentSeries._raw({e: c for e, c in out.items() if c}, prec, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = HalfLaurentSeries.constant(1, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self, prec: int | None = None) -> "HalfLaurentSeries":
        """Multiplicative inverse, known below ``prec`` (half-units).

        The lowest term must be known and have an invertible coefficient.
        Without ``prec`` the natural precision ``self.prec - 2*valuation``
        is used; exact series that are not monomials need an explicit
        ``prec``.
        """
        if not self.terms:
            if self.prec is None:
                raise ZeroDivisionError("inverse of the zero series")
            raise SeriesOrderError("order insufficient: series is zero to the available order")
        v = min(self.terms)
        c0 = self.terms[v]
        inv0 = _invert_coeff(c0)
        if len(self.terms) == 1 and self.prec is None:
            return HalfLaurentSeries._raw({-v: inv0}, None, self.var)
        natural = None if self.prec is None else self.prec - 2 * v
        if prec is None:
            if natural is None:
                raise SeriesOrderError("order insufficient: give a target precision for the inverse")
            prec = natural
        elif natural is not None:
            prec = min(prec, natural)
        # g = sum_n g_n t^(n/2) normalised so that f = t^(v/2) * sum f_i t^(i/2)
        span = prec + v  # number of half-unit steps needed
        f = {e - v: c for e, c in self.terms.items()}
        g: dict = {}
        for n in range(max(span, 0)):
            if n == 0:
                g[0] = inv0
                continue
            acc = None
            for i, fi in f.items():
                if 0 < i <= n:
                    gi = g.get(n - i)
                    if gi is not None and gi:
                        p = fi * gi
                        acc = p if acc is None else acc + p
            if acc is not None and acc:
                g[n] = -(acc * inv0)
        return HalfLaurentSeries._raw(
            {n - v: c for n, c in g.items() if c and n - v < prec}, prec, self.var
        )

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self * _invert_coeff(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # transformations -------------------------------------------------------------------
    def truncate(self, prec: int) -> "HalfLaurentSeries":
        prec = _min_prec(self.prec, prec)
        return HalfLaurentSeries._raw(
            {e: c for e, c in self.terms.items() if e < prec}, prec, self.var
        )

    def map_coeffs(self, fn) -> "HalfLaurentSeries":
        out = {}
        for e, c in self.terms.items():
            d = fn(c)
            if d:
                out[e] = d
        return HalfLaurentSeries._raw(out, self.prec, self.var)

    def diff(self) -> "HalfLaurentSeries":
        """Derivative with respect to the series variable."""
        out = {}
        for e, c in self.terms.items():
            if e:
                out[e - 2] = c * Fraction(e, 2)
        prec = None if self.prec is None else self.prec - 2
        return HalfLaurentSeries._raw(out, prec, self.var)

    # comparison / printing --------------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, HalfLaurentSeries) else other
        if o is None:
            return NotImplemented
        if self.prec != o.prec:
            return False
        keys = set(self.terms) | set(o.terms)
        return all(self.terms.get(k, 0) == o.terms.get(k, 0) for k in keys)

    def agrees_with(self, other: "HalfLaurentSeries", below: int | None = None) -> bool:
        """True when both series agree on every exponent known to both."""
        bound = _min_prec(_min_prec(self.prec, other.prec), below)
        keys = set(self.terms) | set(other.terms)
        return all(
            self.terms.get(k, 0) == other.terms.get(k, 0)
            for k in keys
            if bound is None or k < bound
        )

    def __hash__(self):
        return hash((self.var, self.prec, len(self.terms)))

    def _exp_string(self, e: int) -> str:
        if e == 0:
            return ""
        if e == 2:
            return self.var
        if e % 2 == 0:
            return f"{self.var}^{e // 2}" if e > 0 else f"{self.var}^({e // 2})"
        return f"{self.var}^({e}/2)"

    def to_string(self, root_name: str = "sqrtD") -> str:
        parts = []
        for e, c in self.items():
            cs = c.to_string(root_name) if hasattr(c, "to_string") else str(c)
            t = self._exp_string(e)
            if " " in cs.strip("-") or (cs.startswith("-") and t):
                cs = f"({cs})"
            if not t:
                parts.append(cs)
            elif cs == "1":
                parts.append(t)
            else:
                parts.append(f"{cs}*{t}")
        if self.prec is not None:
            parts.append(f"O({self._exp_string(self.prec) or '1'})")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"HalfLaurentSeries({self.to_string()!r})"


def series_substitute(expr, assignments: Mapping[str, object], order: int | None = None, var: str | None = None):
    """Substitute series for the variables of a polynomial or rational function.

    ``order`` is the inclusive truncation order in whole powers of the
    series variable: ``order=3`` keeps terms up to ``t^3``.  Variables
    may also be mapped to exact scalars or polynomials.
    """
    if isinstance(expr, RationalFunction) and expr.is_polynomial():
        expr = expr.num
    if var is None:
        for v in assignments.values():
            if isinstance(v, HalfLaurentSeries):
                var = v.var
                break
        else:
            var = "t"
    used = expr.num.used_vars() + expr.den.used_vars() if isinstance(expr, RationalFunction) \
        else expr.used_vars()
    missing = sorted(set(used) - set(assignments))
    if missing:
        raise ValueError(f"no assignment for variables {missing}")
    target = None if order is None else 2 * order + 2

    def lift(x):
        if isinstance(x, HalfLaurentSeries):
            return x
        return HalfLaurentSeries._raw({0: x} if x else {}, None, var)

    if isinstance(expr, SparsePolynomial):
        out = lift(expr.evaluate(assignments))
    elif isinstance(expr, RationalFunction):
        num = lift(expr.num.evaluate(assignments))
        den = lift(expr.den.evaluate(assignments))
        if not den.terms:
            raise SeriesOrderError("order insufficient: denominator image vanishes to the available order")
        if target is not None:
            v = min(den.terms)
            vn = num.valuation()
            # precision needed from the inverse so the quotient is known below target
            need = target - (vn if vn is not None else 0)
            inv = den.inverse(prec=need)
        else:
            inv = den.inverse()
        out = num * inv
    else:
        out = lift(expr)
    if target is not None:
        out = out.truncate(target)
    return out
