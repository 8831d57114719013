"""Chern classes of symmetric powers and twists, and Riemann-Roch on surfaces.

Intersection numbers come from a small declared lattice: a list of basis
names with a symmetric Gram matrix.  Second Chern classes are stored as
numbers, already evaluated on the fundamental class.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from typing import Iterable, Sequence

__all__ = [
    "DivisorLattice", "DivisorClass", "BundleData", "SurfaceInvariants",
    "chern_sym_power", "chern_twist", "hrr_euler", "euler_sym_twist",
    "euler_sym_twist_direct", "euler_sym_cotangent", "log_lattice",
    "log_cotangent_bundle", "cotangent_bundle", "euler_log_twist_delta",
    "euler_log_twist_delta_literal", "ci_invariants", "is_general_type",
    "quadric_ci_invariants", "quadric_euler_sym", "quadric_euler_constant",
]


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class DivisorLattice:
    """Named basis with a symmetric rational Gram matrix."""

    def __init__(self, names: Sequence[str], gram: Sequence[Sequence]):
        names = tuple(names)
        n = len(names)
        if len(set(names)) != n:
            raise ValueError("duplicate basis name")
        if len(gram) != n or any(len(row) != n for row in gram):
            raise ValueError(f"Gram matrix must be {n}x{n}")
        g = tuple(tuple(_q(x) for x in row) for row in gram)
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i},{j})")
        self.names = names
        self.gram = g

    @property
    def dim(self) -> int:
        return len(self.names)

    def cls(self, name: str) -> "DivisorClass":
        try:
            i = self.names.index(name)
        except ValueError:
            raise KeyError(f"no basis element {name!r}") from None
        return DivisorClass(self, tuple(Fraction(int(k == i)) for k in range(self.dim)))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (Fraction(0),) * self.dim)

    def element(self, coords: Iterable) -> "DivisorClass":
        return DivisorClass(self, tuple(_q(c) for c in coords))

    def pair(self, a: "DivisorClass", b: "DivisorClass") -> Fraction:
        if a.lattice is not self or b.lattice is not self:
            if a.lattice != self or b.lattice != self:
                raise ValueError("classes from different lattices")
        g = self.gram
        total = Fraction(0)
        for i, ai in enumerate(a.coords):
            if ai:
                row = g[i]
                for j, bj in enumerate(b.coords):
                    if bj:
                        total += ai * row[j] * bj
        return total

    def __eq__(self, other):
        return isinstance(other, DivisorLattice) and self.names == other.names and self.gram == other.gram

    def __hash__(self):
        return hash((self.names, self.gram))

    def __repr__(self):
        return f"DivisorLattice({list(self.names)}, {[[str(x) for x in r] for r in self.gram]})"


@dataclass(frozen=True)
class DivisorClass:
    lattice: DivisorLattice
    coords: tuple

    def _check(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass):
            return False
        if other.lattice != self.lattice:
            raise ValueError("classes from different lattices")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return DivisorClass(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return DivisorClass(self.lattice, tuple(-a for a in self.coords))

    def __mul__(self, k):
        if isinstance(k, (int, Fraction)):
            return DivisorClass(self.lattice, tuple(k * a for a in self.coords))
        return NotImplemented

    __rmul__ = __mul__

    def dot(self, other: "DivisorClass") -> Fraction:
        return self.lattice.pair(self, other)

    def square(self) -> Fraction:
        return self.dot(self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        parts = []
        for name, c in zip(self.lattice.names, self.coords):
            if c:
                parts.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class BundleData:
    rank: int
    c1: DivisorClass
    c2: Fraction

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        object.__setattr__(self, "c2", _q(self.c2))


@dataclass(frozen=True)
class SurfaceInvariants:
    K2: int
    chiTop: int


def chern_sym_power(b: BundleData, m: int) -> BundleData:
    """Chern data of the m-th symmetric power of a rank-2 bundle."""
    if b.rank != 2:
        raise ValueError(f"symmetric power formula needs rank 2, got {b.rank}")
    if m < 0:
        raise ValueError("m must be non-negative")
    c1sq = b.c1.square()
    c2 = Fraction((3 * m + 2) * (m + 1) * m * (m - 1), 24) * c1sq \
        + Fraction(m * (m + 1) * (m + 2), 6) * b.c2
    return BundleData(m + 1, comb(m + 1, 2) * b.c1, c2)


def chern_twist(b: BundleData, L: DivisorClass) -> BundleData:
    """Chern data of ``b`` tensored with the line bundle ``L``."""
    r = b.rank
    c1 = b.c1 + r * L
    c2 = b.c2 + (r - 1) * b.c1.dot(L) + comb(r, 2) * L.square()
    return BundleData(r, c1, c2)


def hrr_euler(f: BundleData, K: DivisorClass, chiTop) -> Fraction:
    """Hirzebruch-Riemann-Roch on a surface with canonical class ``K``."""
    chiTop = _q(chiTop)
    return (-Fraction(1, 2) * f.c1.dot(K) + Fraction(1, 2) * f.c1.square() - f.c2
            + Fraction(f.rank, 12) * (K.square() + chiTop))


def euler_sym_twist(e: BundleData, L: DivisorClass, K: DivisorClass, chiTop, m: int) -> Fraction:
    """Euler characteristic of S^m(e) (x) L through the Chern-class route."""
    return hrr_euler(chern_twist(chern_sym_power(e, m), L), K, chiTop)


def euler_sym_twist_direct(e: BundleData, L: DivisorClass, K: DivisorClass, chiTop, m: int) -> Fraction:
    """The same Euler characteristic from its closed cubic polynomial in m."""
    if e.rank != 2:
        raise ValueError("closed form needs a rank-2 bundle")
    chiTop = _q(chiTop)
    c1, c2 = e.c1, e.c2
    c1sq, c1K, c1L = c1.square(), c1.dot(K), c1.dot(L)
    K2, LK, L2 = K.square(), L.dot(K), L.square()
    a3 = Fraction(1, 6) * (c1sq - c2)
    a2 = -Fraction(1, 4) * (c1K - c1sq - 2 * c1L + 2 * c2)
    a1 = Fraction(1, 12) * (K2 - 3 * c1K + c1sq - 6 * LK + 6 * c1L + 6 * L2 - 4 * c2 + chiTop)
    a0 = Fraction(1, 12) * (K2 - 6 * LK + 6 * L2 + chiTop)
    return ((a3 * m + a2) * m + a1) * m + a0


def euler_sym_cotangent(K2, chiTop, m: int) -> Fraction:
    """Euler characteristic of S^m of the cotangent bundle."""
    K2, chiTop = _q(K2), _q(chiTop)
    return Fraction(1, 12) * (2 * (K2 - chiTop) * m ** 3 - 6 * chiTop * m ** 2
                              - (K2 + 3 * chiTop) * m + K2 + chiTop)


def log_lattice(K2=0) -> DivisorLattice:
    """Basis (K, E) with KE = 0 and E a (-2)-curve."""
    return DivisorLattice(("K", "E"), ((K2, 0), (0, -2)))


def cotangent_bundle(lat: DivisorLattice, chiTop) -> BundleData:
    return BundleData(2, lat.cls("K"), _q(chiTop))


def log_cotangent_bundle(lat: DivisorLattice, chiTop) -> BundleData:
    """Cotangent bundle with log poles along E: c1 = K + E, c2 = chi - 2."""
    return BundleData(2, lat.cls("K") + lat.cls("E"), _q(chiTop) - 2)


def euler_log_twist_delta(m: int, h: int, K2=0, chiTop=0) -> Fraction:
    """chi(S^m cotangent) minus chi(S^m log-cotangent (x) O(-hE)).

    Computed along the Chern route; the answer does not depend on the
    surface invariants, which only enter as a consistency check.
    """
    lat = log_lattice(K2)
    K, E = lat.cls("K"), lat.cls("E")
    a = euler_sym_twist(cotangent_bundle(lat, chiTop), lat.zero(), K, chiTop, m)
    b = euler_sym_twist(log_cotangent_bundle(lat, chiTop), -h * E, K, chiTop, m)
    return a - b


def euler_log_twist_delta_literal(m: int, h: int) -> Fraction:
    """The correction (m+1)(h^2 + hm - m/2), which differs from the Chern route in the sign of hm."""
    return (m + 1) * (h * h + h * m - Fraction(m, 2))


def _sym(degrees: Sequence[int]):
    d = prod(degrees)
    s1 = sum(degrees)
    s2 = sum(degrees[i] * degrees[j] for i in range(len(degrees)) for j in range(i + 1, len(degrees)))
    return d, s1, s2


def _check_ci(n: int, degrees: Sequence[int]):
    if n < 3:
        raise ValueError("ambient dimension must be at least 3")
    if len(degrees) != n - 2:
        raise ValueError(f"a surface in P^{n} needs {n - 2} degrees, got {len(degrees)}")
    if any(int(d) != d or d < 1 for d in degrees):
        raise ValueError("degrees must be positive integers")


def ci_invariants(n: int, degrees: Sequence[int]) -> SurfaceInvariants:
    """(K^2, c_2) of a smooth complete intersection surface in P^n."""
    _check_ci(n, degrees)
    d, s1, s2 = _sym(list(degrees))
    k = n + 1 - s1
    return SurfaceInvariants(k * k * d, (comb(n + 1, 2) - k * s1 - s2) * d)


def is_general_type(n: int, degrees: Sequence[int]) -> bool:
    _check_ci(n, degrees)
    return sum(degrees) > n + 1


def quadric_ci_invariants(n: int) -> SurfaceInvariants:
    """Closed forms for n-2 quadrics in P^n."""
    return SurfaceInvariants((n - 5) ** 2 * 2 ** (n - 2), (n * n - 7 * n + 16) * 2 ** (n - 3))


def quadric_euler_constant(n: int, literal: bool = False) -> int:
    """Constant inside the bracket of the quadric Euler characteristic.

    The value consistent with the general formula is 3n^2 - 27n + 66;
    ``literal=True`` returns 3n^2 - 27 + 66, the variant without the n.
    """
    return 3 * n * n - 27 + 66 if literal else 3 * n * n - 27 * n + 66


def quadric_euler_sym(n: int, m: int, literal: bool = False) -> Fraction:
    """chi(S^m cotangent) for a smooth complete intersection of quadrics in P^n."""
    c = quadric_euler_constant(n, literal)
    bracket = (2 * (n * n - 13 * n + 34) * m ** 3 - 6 * (n * n - 7 * n + 16) * m ** 2
               - (5 * n * n - 41 * n + 98) * m + c)
    return Fraction(2) ** (n - 5) * bracket / 3
