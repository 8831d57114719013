"""Symmetric differential forms with cover-ring coefficients, and pullback."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from ..exact.parser import Context, parse_expression
from ..exact.poly import SparsePolynomial, _SCALARS
from ..exact.ratfunc import RationalFunction
from .cover import CoverElement, MultiQuadraticRing

__all__ = [
    "SymmetricForm", "Parametrization", "PulledBackForm", "FormUndefinedError",
    "InconsistentParametrization", "pullback", "curve_in_locus", "diff_name",
]


class FormUndefinedError(ValueError):
    """The form has a denominator vanishing identically on the curve."""


class InconsistentParametrization(ValueError):
    """Generator values do not square to their defining polynomials."""


def diff_name(coord: str) -> str:
    return "d" + coord


def _key(coords: Iterable[str], order: tuple) -> tuple:
    pos = {c: i for i, c in enumerate(order)}
    return tuple(sorted(coords, key=lambda c: pos.get(c, len(pos))))


class SymmetricForm:
    """A degree-m symmetric differential sum c_K dx_K.

    Keys are sorted tuples of coordinate names with repetition, so
    ``("x2", "x2")`` stands for dx2^2 and ``("x2", "x3")`` for dx2 dx3.
    """

    def __init__(self, ring: MultiQuadraticRing, m: int, coeffs: Mapping[tuple, object],
                 coords: Iterable[str] | None = None):
        self.ring = ring
        self.m = m
        self.coords = tuple(coords) if coords is not None else ring.all_vars
        out = {}
        for k, c in coeffs.items():
            k = _key(k, self.coords)
            if len(k) != m:
                raise ValueError(f"monomial {k} has degree {len(k)}, expected {m}")
            for x in k:
                if x not in self.coords:
                    raise ValueError(f"unknown coordinate {x!r}")
            c = ring.from_expression(c) if not isinstance(c, CoverElement) else c
            if c:
                prev = out.get(k)
                out[k] = c if prev is None else prev + c
        self.coeffs = {k: c for k, c in out.items() if c}

    # construction ------------------------------------------------------------
    @classmethod
    def from_expression(cls, ring: MultiQuadraticRing, expr, diffs: Iterable[str],
                        coords: Iterable[str] | None = None) -> "SymmetricForm":
        """Split an expression homogeneous in differential symbols."""
        diffs = tuple(diffs)
        if isinstance(expr, RationalFunction):
            num, den = expr.num, expr.den
        elif isinstance(expr, SparsePolynomial):
            num, den = expr, None
        else:
            raise ValueError("a form needs differential symbols")
        if den is not None and set(den.used_vars()) & set(diffs):
            raise ValueError("differential symbols may not occur in a denominator")
        split = num.coefficients_in(diffs)
        degrees = {sum(k) for k in split}
        if len(degrees) > 1:
            raise ValueError(f"form is not homogeneous in the differentials: degrees {sorted(degrees)}")
        m = degrees.pop() if degrees else 0
        coeffs = {}
        for exps, c in split.items():
            key = []
            for d, e in zip(diffs, exps):
                key.extend([d[1:]] * e)
            val = c if den is None else RationalFunction(c, den)
            coeffs[tuple(key)] = ring.from_expression(val)
        if coords is None:
            coords = tuple(d[1:] for d in diffs)
        return cls(ring, m, coeffs, coords)

    def zero_like(self) -> "SymmetricForm":
        return SymmetricForm(self.ring, self.m, {}, self.coords)

    # algebra --------------------------------------------------------------------
    def __add__(self, other: "SymmetricForm"):
        if not isinstance(other, SymmetricForm):
            return NotImplemented
        if other.m != self.m or other.ring != self.ring:
            raise ValueError("forms of different degree or ring")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return SymmetricForm(self.ring, self.m, out, self._merged(other))

    def _merged(self, other):
        return self.coords + tuple(c for c in other.coords if c not in self.coords)

    def __neg__(self):
        return SymmetricForm(self.ring, self.m, {k: -c for k, c in self.coeffs.items()}, self.coords)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, g) -> "SymmetricForm":
        g = self.ring.from_expression(g) if not isinstance(g, CoverElement) else g
        return SymmetricForm(self.ring, self.m, {k: c * g for k, c in self.coeffs.items()}, self.coords)

    def __mul__(self, g):
        if isinstance(g, SymmetricForm):
            return self.product(g)
        return self.scale(g)

    __rmul__ = __mul__

    def product(self, other: "SymmetricForm") -> "SymmetricForm":
        out = {}
        for ka, ca in self.coeffs.items():
            for kb, cb in other.coeffs.items():
                k = _key(ka + kb, self._merged(other))
                out[k] = out[k] + ca * cb if k in out else ca * cb
        return SymmetricForm(self.ring, self.m + other.m, out, self._merged(other))

    def __eq__(self, other):
        if not isinstance(other, SymmetricForm):
            return NotImplemented
        if self.m != other.m:
            return False
        return not (self - other).coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, *coords: str) -> CoverElement:
        return self.coeffs.get(_key(coords, self.coords), self.ring.zero())

    def binary_coefficients(self, x: str, y: str) -> list:
        """[a_0, ..., a_m] with a_i the coefficient of dx^i dy^(m-i)."""
        extra = {c for k in self.coeffs for c in k} - {x, y}
        if extra:
            raise ValueError(f"form involves differentials of {sorted(extra)} besides d{x}, d{y}")
        return [self.coefficient(*([x] * i + [y] * (self.m - i))) for i in range(self.m + 1)]

    def to_string(self, root_name: str = "sqrtD") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, key=lambda k: [self.coords.index(c) for c in k]):
            mono = "*".join(
                f"d{c}" if k.count(c) == 1 else f"d{c}^{k.count(c)}"
                for c in dict.fromkeys(k)
            )
            c = self.coeffs[k].to_string(root_name)
            if c in ("1", "-1"):
                parts.append(mono if c == "1" else f"-{mono}")
            else:
                parts.append(f"{c}*{mono}" if " " not in c.lstrip("-") else f"({c})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"SymmetricForm(m={self.m}, {self.to_string()!r})"


def _lift_param(x, vars):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, SparsePolynomial):
        return RationalFunction(x, normalize=False)
    return RationalFunction(SparsePolynomial.constant(x, vars), normalize=False)


@dataclass
class Parametrization:
    """A curve given by rational functions of one parameter.

    ``constants`` are extra symbols (such as line coefficients) that may
    appear in the expressions and are treated as independent of the
    parameter.
    """

    parameter: str
    coords: dict
    generators: dict = field(default_factory=dict)
    constants: tuple = ()
    sqrt: int | None = None

    def __post_init__(self):
        vars = (self.parameter,) + tuple(self.constants)
        self.coords = {k: _lift_param(v, vars) for k, v in self.coords.items()}
        self.generators = {k: _lift_param(v, vars) for k, v in self.generators.items()}
        if self.coords and all(not v.diff(self.parameter) for v in self.coords.values()):
            raise ValueError("parametrization is constant")

    @classmethod
    def from_strings(cls, parameter: str, coords: Mapping[str, str], generators: Mapping[str, str] | None = None,
                     constants: Iterable[str] = (), sqrt: int | None = None) -> "Parametrization":
        ctx = Context(vars=(parameter,) + tuple(constants), sqrt=sqrt)
        c = {k: parse_expression(v, ctx) for k, v in coords.items()}
        g = {k: parse_expression(v, ctx) for k, v in (generators or {}).items()}
        return cls(parameter, c, g, tuple(constants), sqrt)

    def value(self, name: str) -> RationalFunction:
        if name in self.coords:
            return self.coords[name]
        if name in self.generators:
            return self.generators[name]
        raise KeyError(f"parametrization does not assign {name!r}")

    def derivative(self, name: str) -> RationalFunction:
        return self.value(name).diff(self.parameter)

    def check_generators(self, ring: MultiQuadraticRing):
        """Raise unless every generator squares to its relation along the curve."""
        for g, q in zip(ring.gens, ring.squares):
            if g not in self.generators:
                raise InconsistentParametrization(f"no value for generator {g!r}")
            lhs = self.generators[g] ** 2
            rhs = _lift_param(q.evaluate(self._base_values(ring)), lhs.vars)
            if not lhs == rhs:
                raise InconsistentParametrization(f"{g}^2 differs from {q} along the curve")

    def _base_values(self, ring: MultiQuadraticRing) -> dict:
        missing = [v for v in ring.base_vars if v not in self.coords]
        if missing:
            raise ValueError(f"parametrization does not assign {missing}")
        return {v: self.coords[v] for v in ring.base_vars}


@dataclass
class PulledBackForm:
    """``coefficient * (d parameter)^m`` on the curve."""

    m: int
    coefficient: RationalFunction
    parameter: str
    root_name: str = "sqrtD"

    def is_zero(self) -> bool:
        return not self.coefficient

    def to_string(self) -> str:
        if not self.coefficient:
            return "0"
        c = self.coefficient.to_string(self.root_name)
        d = f"d{self.parameter}" if self.m == 1 else f"d{self.parameter}^{self.m}"
        if self.m == 0:
            return c
        return d if c == "1" else f"({c})*{d}"

    def __str__(self):
        return self.to_string()


def _evaluate_element(c: CoverElement, p: Parametrization):
    base_values = p._base_values(c.ring)
    try:
        v = c.evaluate(base_values, p.generators)
    except ZeroDivisionError:
        raise FormUndefinedError("form undefined on curve") from None
    except KeyError as e:
        raise ValueError(f"parametrization does not assign generator {e}") from None
    return v


def pullback(form: SymmetricForm, p: Parametrization) -> PulledBackForm:
    """Pull a symmetric form back along a parametrized curve."""
    ring = form.ring
    vars = (p.parameter,) + tuple(p.constants)
    derivs = {}
    total = RationalFunction(SparsePolynomial.constant(0, vars), normalize=False)
    for key, c in form.coeffs.items():
        v = _lift_param(_evaluate_element(c, p), vars)
        for x in key:
            if x not in derivs:
                derivs[x] = p.derivative(x)
            v = v * derivs[x]
        total = total + v
    root = "I" if p.sqrt == -1 else "sqrtD"
    return PulledBackForm(form.m, total, p.parameter, root)


def curve_in_locus(f, p: Parametrization) -> bool:
    """True when the cover-ring element vanishes identically on the curve."""
    if isinstance(f, CoverElement):
        p.check_generators(f.ring)
        v = _evaluate_element(f, p)
    else:
        v = f.evaluate({k: p.value(k) for k in f.vars if k in p.coords or k in p.generators}) \
            if isinstance(f, (SparsePolynomial, RationalFunction)) else f
    return not v
