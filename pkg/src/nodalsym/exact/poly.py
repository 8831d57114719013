"""Sparse multivariate polynomials with exact scalar coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .. import _kernels
from .scalars import QuadraticScalar

__all__ = ["SparsePolynomial", "grlex_key"]

_SCALARS = (int, Fraction, QuadraticScalar)


def grlex_key(exps: tuple) -> tuple:
    """Sort key: larger total degree first, then lexicographic by variable order."""
    return (sum(exps), exps)


class SparsePolynomial:
    """Polynomial as a map from exponent vectors to nonzero coefficients.

    ``vars`` fixes the variable order; exponent vectors are indexed by it.
    Polynomials over different variable tuples are aligned on demand, so
    ``x + y`` works even when ``x`` and ``y`` were built separately.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(vars)
        if terms is None:
            self.terms = {}
        else:
            n = len(self.vars)
            clean = {}
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                if c:
                    clean[tuple(e)] = c
            self.terms = clean

    @classmethod
    def _raw(cls, vars: tuple, terms: dict) -> "SparsePolynomial":
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, c, vars: Iterable[str] = ()) -> "SparsePolynomial":
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def variable(cls, name: str, vars: Iterable[str] | None = None) -> "SparsePolynomial":
        vars = (name,) if vars is None else tuple(vars)
        if name not in vars:
            raise ValueError(f"{name!r} not among {vars}")
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {e: 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=1, vars: Iterable[str] | None = None):
        vars = tuple(exps) if vars is None else tuple(vars)
        e = tuple(exps.get(v, 0) for v in vars)
        return cls._raw(vars, {e: coeff} if coeff else {})

    def zero(self) -> "SparsePolynomial":
        return SparsePolynomial._raw(self.vars, {})

    def one(self) -> "SparsePolynomial":
        return SparsePolynomial._raw(self.vars, {(0,) * len(self.vars): 1})

    # variable alignment ---------------------------------------------------
    def with_vars(self, vars: Iterable[str]) -> "SparsePolynomial":
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in self.vars:
            try:
                idx.append(vars.index(v))
            except ValueError:
                idx = None
                break
        n = len(vars)
        terms = {}
        if idx is None:
            # dropping variables: only allowed when they do not occur
            for e, c in self.terms.items():
                new = [0] * n
                for v, k in zip(self.vars, e):
                    if k:
                        if v not in vars:
                            raise ValueError(f"variable {v!r} occurs; cannot drop it")
                        new[vars.index(v)] = k
                terms[tuple(new)] = c
        else:
            for e, c in self.terms.items():
                new = [0] * n
                for i, k in zip(idx, e):
                    new[i] = k
                terms[tuple(new)] = c
        return SparsePolynomial._raw(vars, terms)

    def used_vars(self) -> tuple:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def compact(self) -> "SparsePolynomial":
        return self.with_vars(self.used_vars())

    def _align(self, other: "SparsePolynomial"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return vars, self.with_vars(vars).terms, other.with_vars(vars).terms

    def _coerce(self, other):
        if isinstance(other, SparsePolynomial):
            return other
        if isinstance(other, _SCALARS):
            return SparsePolynomial.constant(other, self.vars)
        return None

    # ring operations -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        vars, a, b = self._align(o)
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for e, c in b.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return SparsePolynomial._raw(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

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
            if not other:
                return self.zero()
            return SparsePolynomial._raw(
                self.vars, {e: c * other for e, c in self.terms.items() if c * other}
            )
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        vars, a, b = self._align(other)
        if not a or not b:
            return SparsePolynomial._raw(vars, {})
        return SparsePolynomial._raw(vars, _kernels.poly_mul(a, b))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "SparsePolynomial":
        return self * c

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self * _div(1, other)
        if isinstance(other, SparsePolynomial):
            from .ratfunc import RationalFunction

            q = RationalFunction(self, other)
            return q.num if q.is_polynomial() else q
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _SCALARS):
            from .ratfunc import RationalFunction

            q = RationalFunction(SparsePolynomial.constant(other, self.vars), self)
            return q.num if q.is_polynomial() else q
        return NotImplemented

    # predicates -------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values())) if self.terms else 0

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, SparsePolynomial) else other
        if o is None:
            return NotImplemented
        vars, a, b = self._align(o)
        return a == b

    def __hash__(self):
        p = self.compact()
        return hash((p.vars, frozenset(p.terms.items())))

    # structure -----------------------------------------------------------------
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def leading(self):
        """(exponent, coefficient) of the grlex-leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def monomial_content(self) -> tuple:
        if not self.terms:
            return (0,) * len(self.vars)
        it = iter(self.terms)
        low = list(next(it))
        for e in it:
            for i, k in enumerate(e):
                if k < low[i]:
                    low[i] = k
        return tuple(low)

    def shift(self, exps: tuple, sign: int = -1) -> "SparsePolynomial":
        """Multiply (sign=+1) or divide (sign=-1) by the monomial with exponents ``exps``."""
        out = {}
        for e, c in self.terms.items():
            new = tuple(a + sign * b for a, b in zip(e, exps))
            if min(new, default=0) < 0:
                raise ValueError("monomial does not divide polynomial")
            out[new] = c
        return SparsePolynomial._raw(self.vars, out)

    def coefficients_in(self, names: Iterable[str]) -> dict:
        """Split into ``{exponents in names: polynomial in the other variables}``."""
        names = tuple(names)
        idx = [self.vars.index(v) if v in self.vars else None for v in names]
        rest = tuple(v for v in self.vars if v not in names)
        ridx = [self.vars.index(v) for v in rest]
        out: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[i] if i is not None else 0 for i in idx)
            re = tuple(e[i] for i in ridx)
            out.setdefault(key, {})[re] = c
        return {k: SparsePolynomial._raw(rest, t) for k, t in out.items()}

    # calculus / evaluation ----------------------------------------------------
    def diff(self, var: str) -> "SparsePolynomial":
        if var not in self.vars:
            return self.zero()
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1 :]
                out[ne] = c * k
        return SparsePolynomial._raw(self.vars, out)

    def evaluate(self, values: Mapping[str, object]):
        """Substitute ``values[v]`` for each variable ``v`` and sum up.

        Values may be scalars, polynomials, rational functions or series;
        anything closed under ``+`` and ``*`` with scalars.  Variables
        missing from ``values`` stay symbolic.  A constant polynomial
        evaluates to its scalar value.
        """
        missing = [v for v in self.vars if v not in values]
        if missing:
            values = dict(values)
            for v in missing:
                values[v] = SparsePolynomial.variable(v, (v,))
        acc = None
        powers: dict = {}
        for e, c in self.sorted_terms():
            term = None
            for v, k in zip(self.vars, e):
                if not k:
                    continue
                pw = powers.get((v, k))
                if pw is None:
                    pw = _power(values[v], k, powers, v)
                term = pw if term is None else term * pw
            term = c if term is None else term * c
            acc = term if acc is None else acc + term
        return 0 if acc is None else acc

    # printing -------------------------------------------------------------------
    def to_string(self, root_name: str = "sqrtD") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            neg, cs = _coeff_string(c, root_name)
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"SparsePolynomial({self.to_string()!r}, vars={self.vars})"

    # exact division -------------------------------------------------------------
    def divide_exact(self, other: "SparsePolynomial"):
        """Return ``self / other`` if the division is exact, else ``None``."""
        if not isinstance(other, SparsePolynomial):
            other = SparsePolynomial.constant(other, self.vars)
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        vars, a, b = self._align(other)
        if not a:
            return SparsePolynomial._raw(vars, {})
        if len(b) == 1:
            (eb, cb), = b.items()
            out = {}
            for e, c in a.items():
                q = tuple(x - y for x, y in zip(e, eb))
                if min(q, default=0) < 0:
                    return None
                out[q] = _div(c, cb)
            return SparsePolynomial._raw(vars, out)
        divisor = SparsePolynomial._raw(vars, b)
        lb, lc = divisor.leading()
        # cheap degree rejection
        for i in range(len(vars)):
            if max(e[i] for e in b) > max(e[i] for e in a):
                return None
        rem = dict(a)
        quot = {}
        while rem:
            e = max(rem, key=grlex_key)
            c = rem[e]
            q = tuple(x - y for x, y in zip(e, lb))
            if min(q) < 0:
                return None
            qc = _div(c, lc)
            quot[q] = qc
            for eb, cb in b.items():
                t = tuple(x + y for x, y in zip(q, eb))
                v = rem.get(t, 0) - qc * cb
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return SparsePolynomial._raw(vars, quot)


def _div(c, d):
    if isinstance(c, int) and isinstance(d, int):
        return c // d if c % d == 0 else Fraction(c, d)
    return c / d


def _power(base, k, cache, v):
    # binary powering with memo of intermediate powers of this variable
    if k == 1:
        cache[(v, 1)] = base
        return base
    half = cache.get((v, k // 2))
    if half is None:
        half = _power(base, k // 2, cache, v)
    r = half * half
    if k & 1:
        r = r * base
    cache[(v, k)] = r
    return r


def _coeff_string(c, root_name):
    """Return (is_negative, string of |c|) for printing."""
    if isinstance(c, QuadraticScalar):
        if c.b == 0:
            c = c.a
        elif c.a == 0:
            neg = c.b < 0
            b = abs(c.b)
            return neg, root_name if b == 1 else f"{b}*{root_name}"
        else:
            return False, c.to_string(root_name)
    if not isinstance(c, (int, Fraction)):
        return False, f"({c})"
    neg = c < 0
    return neg, str(abs(c))
