"""Multiquadratic cover rings.

The ring is ``B[g_1, ..., g_k] / (g_j^2 - q_j)`` where ``B`` is the field
of rational functions in the base variables.  An element is stored as a
map from subsets of generators (bitmasks) to base coefficients, so the
ring is a free B-module of rank ``2^k``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..exact.parser import parse_expression
from ..exact.poly import SparsePolynomial, _SCALARS
from ..exact.ratfunc import RationalFunction

__all__ = ["MultiQuadraticRing", "CoverElement", "ZeroDivisorError"]


class ZeroDivisorError(ArithmeticError):
    """Raised when an inverse is requested for an element of norm zero."""


def _rf(x, vars) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x if x.vars == vars else RationalFunction(x.num.with_vars(vars), x.den.with_vars(vars))
    if isinstance(x, SparsePolynomial):
        return RationalFunction(x.with_vars(vars), normalize=False)
    if isinstance(x, str):
        return _rf(parse_expression(x, vars=vars), vars)
    if not isinstance(x, _SCALARS):
        raise TypeError(f"cannot use {type(x).__name__} as a base coefficient")
    return RationalFunction(SparsePolynomial.constant(x, vars), normalize=False)


class MultiQuadraticRing:
    def __init__(self, base_vars: Sequence[str], generators: Sequence[tuple] = (), name: str | None = None):
        self.base_vars = tuple(base_vars)
        gens = []
        squares = []
        for g, q in generators:
            if g in self.base_vars:
                raise ValueError(f"generator {g!r} clashes with a base variable")
            q = _rf(q, self.base_vars)
            if not q.is_polynomial():
                raise ValueError(f"square of {g!r} must be a base polynomial")
            gens.append(g)
            squares.append(q.num)
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator")
        self.gens = tuple(gens)
        self.squares = tuple(squares)
        self.name = name

    @property
    def k(self) -> int:
        return len(self.gens)

    @property
    def all_vars(self) -> tuple:
        return self.base_vars + self.gens

    def __eq__(self, other):
        return (isinstance(other, MultiQuadraticRing) and self.base_vars == other.base_vars
                and self.gens == other.gens and self.squares == other.squares)

    def __hash__(self):
        return hash((self.base_vars, self.gens))

    def __repr__(self):
        rel = ", ".join(f"{g}^2 = {q}" for g, q in zip(self.gens, self.squares))
        return f"MultiQuadraticRing({list(self.base_vars)}; {rel})"

    # construction ------------------------------------------------------------
    def base(self, x) -> RationalFunction:
        return _rf(x, self.base_vars)

    def element(self, comps: Mapping[int, object]) -> "CoverElement":
        return CoverElement(self, {m: self.base(c) for m, c in comps.items()})

    def zero(self) -> "CoverElement":
        return CoverElement(self, {})

    def one(self) -> "CoverElement":
        return self.from_base(1)

    def from_base(self, x) -> "CoverElement":
        return CoverElement(self, {0: self.base(x)})

    def gen(self, name: str) -> "CoverElement":
        j = self.gens.index(name)
        return CoverElement(self, {1 << j: self.base(1)})

    def variable(self, name: str) -> "CoverElement":
        if name in self.gens:
            return self.gen(name)
        if name in self.base_vars:
            return self.from_base(SparsePolynomial.variable(name, self.base_vars))
        raise KeyError(f"{name!r} is neither a base variable nor a generator")

    def mask_monomial(self, mask: int) -> str:
        return "*".join(g for j, g in enumerate(self.gens) if mask >> j & 1)

    def from_polynomial(self, p: SparsePolynomial) -> "CoverElement":
        """Reduce a polynomial in base variables and generators."""
        extra = set(p.used_vars()) - set(self.all_vars)
        if extra:
            raise ValueError(f"unknown variables {sorted(extra)}")
        split = p.coefficients_in(self.gens) if self.gens else {(): p}
        out: dict = {}
        for gexps, coeff in split.items():
            mask = 0
            factor = SparsePolynomial.constant(1, self.base_vars)
            for j, e in enumerate(gexps):
                if e % 2:
                    mask |= 1 << j
                if e >= 2:
                    factor = factor * self.squares[j] ** (e // 2)
            c = coeff.with_vars(self.base_vars) * factor
            prev = out.get(mask)
            out[mask] = c if prev is None else prev + c
        return CoverElement(self, {m: RationalFunction(c, normalize=False) for m, c in out.items()})

    def from_expression(self, expr) -> "CoverElement":
        """Interpret a polynomial or rational function in ring variables.

        Generator factors in a denominator are removed by conjugation, so
        the result has base denominators only.
        """
        if isinstance(expr, CoverElement):
            return expr
        if isinstance(expr, _SCALARS):
            return self.from_base(expr)
        if isinstance(expr, SparsePolynomial):
            return self.from_polynomial(expr)
        if isinstance(expr, RationalFunction):
            num = self.from_polynomial(expr.num)
            if expr.den.is_constant():
                c = expr.den.constant_value()
                return num * (Fraction(1, c) if isinstance(c, int) else 1 / c)
            return num * self.from_polynomial(expr.den).inverse()
        raise TypeError(f"cannot interpret {type(expr).__name__} in the cover ring")

    def conjugate(self, a: "CoverElement", j: int) -> "CoverElement":
        """Apply the automorphism g_j -> -g_j."""
        bit = 1 << j
        return CoverElement(self, {m: (-c if m & bit else c) for m, c in a.comps.items()}, clean=False)


class CoverElement:
    __slots__ = ("ring", "comps")

    def __init__(self, ring: MultiQuadraticRing, comps: Mapping[int, RationalFunction], clean: bool = True):
        self.ring = ring
        self.comps = {m: c for m, c in comps.items() if c} if clean else dict(comps)

    def _coerce(self, other):
        if isinstance(other, CoverElement):
            if other.ring != self.ring:
                raise ValueError("elements of different cover rings")
            return other
        if isinstance(other, (SparsePolynomial, RationalFunction) + _SCALARS):
            return self.ring.from_base(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.comps)
        for m, c in o.comps.items():
            prev = out.get(m)
            out[m] = c if prev is None else prev + c
        return CoverElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return CoverElement(self.ring, {m: -c for m, c in self.comps.items()}, clean=False)

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
        if isinstance(other, _SCALARS) or isinstance(other, (SparsePolynomial, RationalFunction)):
            if not other:
                return self.ring.zero()
            b = other if isinstance(other, _SCALARS) else self.ring.base(other)
            return CoverElement(self.ring, {m: c * b for m, c in self.comps.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        squares = self.ring.squares
        out: dict = {}
        for ma, ca in self.comps.items():
            for mb, cb in o.comps.items():
                p = ca * cb
                both = ma & mb
                j = 0
                while both:
                    if both & 1:
                        p = p * squares[j]
                    both >>= 1
                    j += 1
                m = ma ^ mb
                prev = out.get(m)
                out[m] = p if prev is None else prev + p
        return CoverElement(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def norm(self) -> RationalFunction:
        """Product of all conjugates; a base element."""
        x, _ = self._norm_and_cofactor()
        return x

    def _norm_and_cofactor(self):
        x = self
        cof = self.ring.one()
        for j in range(self.ring.k):
            if not any(m >> j & 1 for m in x.comps):
                continue  # already fixed by this conjugation
            s = self.ring.conjugate(x, j)
            cof = cof * s
            x = x * s
        if any(m for m in x.comps):
            raise ArithmeticError("norm did not land in the base field")
        return x.comps.get(0, self.ring.base(0)), cof

    def inverse(self) -> "CoverElement":
        if not self.comps:
            raise ZeroDivisionError("inverse of zero")
        n, cof = self._norm_and_cofactor()
        if not n:
            raise ZeroDivisorError("element has zero norm; the ring is not a domain here")
        return cof * n.inverse()

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

    def __bool__(self):
        return bool(self.comps)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return not (self - o).comps

    def __hash__(self):
        return hash((self.ring, frozenset(self.comps)))

    def is_base(self) -> bool:
        return all(m == 0 for m in self.comps)

    def base_value(self) -> RationalFunction:
        if not self.is_base():
            raise ValueError("element involves generators")
        return self.comps.get(0, self.ring.base(0))

    def map_coeffs(self, fn) -> "CoverElement":
        return CoverElement(self.ring, {m: fn(c) for m, c in self.comps.items()})

    def common_denominator(self) -> SparsePolynomial:
        """Product of the distinct component denominators."""
        den = SparsePolynomial.constant(1, self.ring.base_vars)
        seen = []
        for c in self.comps.values():
            d = c.den
            if d.is_constant() or any(d == s for s in seen):
                continue
            seen.append(d)
            den = den * d
        return den

    def evaluate(self, base_values: Mapping[str, object], gen_values: Mapping[str, object]):
        """Substitute values for base variables and generators."""
        total = None
        for m, c in self.comps.items():
            v = c.evaluate(base_values)
            for j, g in enumerate(self.ring.gens):
                if m >> j & 1:
                    v = v * gen_values[g]
            total = v if total is None else total + v
        return 0 if total is None else total

    def diff(self, var: str) -> "CoverElement":
        """Derivation extending d/dvar on the base via d(g) = q'/(2g)."""
        ring = self.ring
        out = self.map_coeffs(lambda c: c.diff(var))
        for j, g in enumerate(ring.gens):
            dq = ring.squares[j].diff(var)
            if not dq:
                continue
            # d(g_j) = dq / (2 q_j) * g_j
            factor = CoverElement(ring, {1 << j: RationalFunction(dq, ring.squares[j] * 2)})
            part = CoverElement(ring, {m: c for m, c in self.comps.items() if m >> j & 1})
            if part:
                stripped = CoverElement(ring, {m ^ (1 << j): c for m, c in part.comps.items()})
                out = out + stripped * factor
        return out

    def to_string(self, root_name: str = "sqrtD") -> str:
        if not self.comps:
            return "0"
        parts = []
        for m in sorted(self.comps):
            c = self.comps[m].to_string(root_name)
            mono = self.ring.mask_monomial(m)
            if not mono:
                parts.append(f"({c})" if " " in c and len(self.comps) > 1 else c)
            elif c in ("1", "-1"):
                parts.append(mono if c == "1" else f"-{mono}")
            elif " " in c or "/" in c:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for q in parts[1:]:
            out += f" - {q[1:]}" if q.startswith("-") else f" + {q}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"CoverElement({self.to_string()!r})"
