"""Local Euler characteristics of symmetric differentials at an A1 point.

The A1 singularity is the quotient of the plane by z -> -z.  Invariant
symmetric differentials are spanned by monomials
``z1^j z2^(n-j) dz1^i dz2^(m-i)`` with ``n = m (mod 2)``.  Closed forms are
given for chi^0, chi^1 and chi, next to two independent routes to chi^0:
a summation over graded pieces and an exact kernel computation on the two
charts of the blow-up.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from ._kernels import int_rank
from .exact.poly import SparsePolynomial
from .exact.series import HalfLaurentSeries

__all__ = [
    "KERNEL_CAP", "HalfIntValuation", "dim_V", "dim_W", "chi0_a1", "chi1_a1", "chi_a1",
    "chi0_a1_by_summation", "chi0_a1_by_kernel", "kernel_codim", "ord_E",
    "chi0_logtwist_vanishes", "chi1_logtwist_vanishes", "chi_logtwist_vanishing_h",
    "chart_images", "CHI0_COEFFS", "CHI1_COEFFS",
]

KERNEL_CAP = 10

# (m^3, m^2, m, 1) coefficients by residue
CHI0_COEFFS = {
    0: (Fraction(11, 108), Fraction(11, 36), Fraction(1, 6), Fraction(0)),
    1: (Fraction(11, 108), Fraction(11, 36), Fraction(-1, 12), Fraction(-35, 108)),
    2: (Fraction(11, 108), Fraction(11, 36), Fraction(7, 18), Fraction(5, 27)),
    3: (Fraction(11, 108), Fraction(11, 36), Fraction(-1, 12), Fraction(-1, 4)),
    4: (Fraction(11, 108), Fraction(11, 36), Fraction(1, 6), Fraction(-2, 27)),
    5: (Fraction(11, 108), Fraction(11, 36), Fraction(5, 36), Fraction(-7, 108)),
}
CHI1_COEFFS = {
    0: (Fraction(4, 27), Fraction(4, 9), Fraction(1, 3), Fraction(0)),
    1: (Fraction(4, 27), Fraction(4, 9), Fraction(1, 3), Fraction(2, 27)),
    2: (Fraction(4, 27), Fraction(4, 9), Fraction(1, 9), Fraction(-5, 27)),
}


def _cubic(coeffs, m: int) -> int:
    a3, a2, a1, a0 = coeffs
    v = ((a3 * m + a2) * m + a1) * m + a0
    if v.denominator != 1:
        raise ArithmeticError(f"non-integral value {v} at m={m}")
    return int(v)


def _check_m(m: int):
    if m < 0:
        raise ValueError("m must be non-negative")


def chi0_a1(m: int) -> int:
    _check_m(m)
    return _cubic(CHI0_COEFFS[m % 6], m)


def chi1_a1(m: int) -> int:
    _check_m(m)
    return _cubic(CHI1_COEFFS[m % 3], m)


def chi_a1(m: int) -> int:
    _check_m(m)
    if m % 2 == 0:
        return m * (m + 1) * (m + 2) // 4
    return (m + 1) * (m * m + 2 * m - 1) // 4


def dim_V(m: int, n: int) -> int:
    return (m + 1) * (n + 1)


def dim_W(m: int, n: int) -> int:
    """Dimension of the regular part of the (m, n) graded piece."""
    if n >= m:
        return (m + 1) * (n + 1)
    if 3 * n >= m:
        v = (n + m + 2) * (3 * n - m + 2)
        return v // 4
    return 0


def chi0_a1_by_summation(m: int) -> int:
    _check_m(m)
    return sum(dim_V(m, n) - dim_W(m, n) for n in range(m % 2, m, 2))


# chart data ---------------------------------------------------------------

_CHART_SYMBOLS = {1: ("u", "dt", "du"), 2: ("v", "ds", "dv")}


@lru_cache(maxsize=None)
def chart_images(chart: int):
    """Images of (z1, z2, dz1, dz2) on a chart of the blow-up of the A1 cone."""
    if chart not in _CHART_SYMBOLS:
        raise ValueError("chart must be 1 or 2")
    names = _CHART_SYMBOLS[chart]
    var = "t" if chart == 1 else "s"
    a, da, db = (SparsePolynomial.variable(x, names) for x in names)
    half = Fraction(1, 2)

    def mono(c, e):
        return HalfLaurentSeries({e: c}, None, var)

    if chart == 1:
        z1 = mono(a.one(), 1)
        z2 = mono(a, 1)
        dz1 = mono(da * half, -1)
        dz2 = mono(a * da * half, -1) + mono(db, 1)
    else:
        z1 = mono(a, 1)
        z2 = mono(a.one(), 1)
        dz1 = mono(a * da * half, -1) + mono(db, 1)
        dz2 = mono(da * half, -1)
    return z1, z2, dz1, dz2


class _PowerCache:
    def __init__(self, chart: int):
        self.gens = chart_images(chart)
        self.cache = {}

    def power(self, g: int, k: int):
        key = (g, k)
        hit = self.cache.get(key)
        if hit is None:
            if k == 0:
                hit = HalfLaurentSeries.constant(1, self.gens[0].var)
            else:
                hit = self.power(g, k - 1) * self.gens[g]
            self.cache[key] = hit
        return hit

    def image(self, exps) -> HalfLaurentSeries:
        out = None
        for g, k in enumerate(exps):
            if k:
                p = self.power(g, k)
                out = p if out is None else out * p
        return out if out is not None else HalfLaurentSeries.constant(1, self.gens[0].var)


def _polar_functionals(images, chart: int) -> dict:
    """Map each polar coefficient key to its column vector over the basis."""
    rows: dict = {}
    for col, img in enumerate(images):
        for e, c in img.terms.items():
            if e >= 0:
                continue
            for mono_exps, coeff in c.terms.items():
                key = (chart, e, mono_exps)
                rows.setdefault(key, {})[col] = coeff
    return rows


def _integer_rows(rows: dict, ncols: int) -> list:
    out = []
    for entries in rows.values():
        den = 1
        for c in entries.values():
            den = lcm(den, Fraction(c).denominator)
        row = [0] * ncols
        for col, c in entries.items():
            row[col] = int(Fraction(c) * den)
        out.append(row)
    return out


def kernel_codim(m: int, n: int, charts=(1, 2)) -> int:
    """Codimension of the regular subspace in the (m, n) graded piece."""
    basis = [(j, n - j, i, m - i) for i in range(m + 1) for j in range(n + 1)]
    rows: dict = {}
    for chart in charts:
        pc = _PowerCache(chart)
        rows.update(_polar_functionals([pc.image(b) for b in basis], chart))
    if not rows:
        return 0
    return int_rank(_integer_rows(rows, len(basis)))


def chi0_a1_by_kernel(m: int, cap: int = KERNEL_CAP, charts=(1, 2)) -> int:
    """chi^0 from an exact kernel computation on the blow-up charts."""
    _check_m(m)
    if m > cap:
        raise ValueError(f"m={m} exceeds the enumeration cap {cap}")
    return sum(kernel_codim(m, n, charts) for n in range(m % 2, m, 2))


@dataclass(frozen=True)
class HalfIntValuation:
    """A value in (1/2)Z, or infinity for the zero element."""

    half_units: int | None

    @property
    def is_infinite(self) -> bool:
        return self.half_units is None

    @property
    def value(self):
        if self.half_units is None:
            return float("inf")
        return Fraction(self.half_units, 2)

    def __add__(self, other: "HalfIntValuation") -> "HalfIntValuation":
        if self.half_units is None or other.half_units is None:
            return HalfIntValuation(None)
        return HalfIntValuation(self.half_units + other.half_units)

    def __lt__(self, other: "HalfIntValuation"):
        if self.half_units is None:
            return False
        if other.half_units is None:
            return True
        return self.half_units < other.half_units

    def __str__(self):
        return "inf" if self.half_units is None else str(self.value)


_ORD_VARS = ("z1", "z2", "dz1", "dz2")


def ord_E(element: SparsePolynomial) -> HalfIntValuation:
    """Order of vanishing along the exceptional curve, in half-units."""
    if not isinstance(element, SparsePolynomial):
        raise TypeError("ord_E expects a polynomial in z1, z2, dz1, dz2")
    if not element:
        raise ValueError("ord_E of zero")
    extra = set(element.used_vars()) - set(_ORD_VARS)
    if extra:
        raise ValueError(f"unexpected variables {sorted(extra)}")
    p = element.with_vars(_ORD_VARS)
    pc = _PowerCache(1)
    total = None
    for exps, c in p.terms.items():
        term = pc.image(exps) * c
        total = term if total is None else total + term
    v = total.valuation()
    return HalfIntValuation(v)


def chi0_logtwist_vanishes(m: int, h: int) -> bool:
    return 2 * h < m + 1


def chi1_logtwist_vanishes(m: int, h: int) -> bool:
    return 2 * h > m - 2


def chi_logtwist_vanishing_h(m: int) -> int:
    return (m + 1) // 2
