"""Lower bounds for h^0 of symmetric differentials on nodal surfaces.

A bound is a piecewise cubic in m with six pieces indexed by m mod 6.
Every piece shares the Euler characteristic of the resolution and picks
up local corrections from the A1 tables, which are periodic mod 6 and
mod 3.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, lcm
from typing import Sequence

from .chern import ci_invariants, euler_sym_cotangent, is_general_type
from .local_euler import CHI0_COEFFS, CHI1_COEFFS, chi0_a1

__all__ = [
    "SurfaceSpec", "BoundProfile", "ThresholdResult", "CertificateReport",
    "bound_chi", "bound_h0", "bound_partial_chi", "bound_partial_h0",
    "threshold", "certify", "lmin_quadrics", "hypersurface_node_thresholds",
    "miyaoka_max_nodes", "segre_nodes", "segre_satisfies_criterion",
    "presets", "preset", "PRESETS", "GeneralTypeWarning",
]


class GeneralTypeWarning(UserWarning):
    """The surface is not of general type, so the bound carries no meaning."""


@dataclass(frozen=True)
class SurfaceSpec:
    n: int
    degrees: tuple
    nodes: int
    name: str | None = None
    node_type: str = "A1"

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.degrees) != self.n - 2:
            raise ValueError(f"a surface in P^{self.n} needs {self.n - 2} degrees, got {len(self.degrees)}")
        if self.nodes < 0:
            raise ValueError("node count must be non-negative")

    @property
    def general_type(self) -> bool:
        return is_general_type(self.n, self.degrees)

    @property
    def invariants(self):
        return ci_invariants(self.n, self.degrees)

    def label(self) -> str:
        return self.name or f"P^{self.n}{list(self.degrees)} with {self.nodes} nodes"

    def to_dict(self) -> dict:
        return {"name": self.name, "ambient": self.n, "degrees": list(self.degrees),
                "nodes": self.nodes, "node_type": self.node_type}


Cubic = tuple  # (a3, a2, a1, a0)


def _eval(c: Cubic, m: int) -> Fraction:
    a3, a2, a1, a0 = c
    return ((a3 * m + a2) * m + a1) * m + a0


@dataclass(frozen=True)
class BoundProfile:
    pieces: tuple  # six cubics, index m mod 6
    floor: int
    method: str = "chi"

    def __post_init__(self):
        if len(self.pieces) != 6:
            raise ValueError("a profile has six residue pieces")

    def piece(self, m: int) -> Cubic:
        return self.pieces[m % 6]

    def __call__(self, m: int) -> Fraction:
        if m < self.floor:
            raise ValueError(f"bound only valid for m >= {self.floor}")
        return _eval(self.piece(m), m)

    @property
    def leading(self) -> Fraction:
        """The m^3 coefficient (common to all pieces)."""
        return min(p[0] for p in self.pieces)

    def leading_coefficients(self) -> tuple:
        return tuple(p[0] for p in self.pieces)

    def plus(self, other: "BoundProfile") -> "BoundProfile":
        pieces = tuple(tuple(a + b for a, b in zip(p, q)) for p, q in zip(self.pieces, other.pieces))
        return BoundProfile(pieces, max(self.floor, other.floor), self.method)


def _check_a1(s: SurfaceSpec):
    if s.node_type != "A1":
        raise ValueError(f"only A1 nodes are supported, got {s.node_type!r}")
    if not s.general_type:
        warnings.warn(f"{s.label()} is not of general type", GeneralTypeWarning, stacklevel=3)


def _chi_cubic(K2, chiTop) -> Cubic:
    K2, chiTop = Fraction(K2), Fraction(chiTop)
    return (Fraction(2, 12) * (K2 - chiTop), -Fraction(6, 12) * chiTop,
            -Fraction(1, 12) * (K2 + 3 * chiTop), Fraction(1, 12) * (K2 + chiTop))


def _profile(s: SurfaceSpec, r: int, method: str) -> BoundProfile:
    inv = s.invariants
    base = _chi_cubic(inv.K2, inv.chiTop)
    pieces = []
    for res in range(6):
        c1 = CHI1_COEFFS[res % 3]
        c0 = CHI0_COEFFS[res]
        pieces.append(tuple(b + s.nodes * x + r * y for b, x, y in zip(base, c1, c0)))
    return BoundProfile(tuple(pieces), 3, method)


def bound_chi(s: SurfaceSpec) -> BoundProfile:
    """chi(Y, S^m) + l * chi^1, valid for m >= 3."""
    _check_a1(s)
    return _profile(s, 0, "chi")


def bound_partial_chi(s: SurfaceSpec, r: int) -> BoundProfile:
    """Bound for differentials regular on r of the exceptional curves."""
    if r < 0 or r > s.nodes:
        raise ValueError(f"r must lie in [0, {s.nodes}], got {r}")
    _check_a1(s)
    return _profile(s, r, "chi" if r == 0 else f"chi_partial(r={r})")


def bound_h0(h0_hat: int, nodes: int, m: int) -> int:
    if m < 1:
        raise ValueError("bound only valid for m >= 1")
    return h0_hat - nodes * chi0_a1(m)


def bound_partial_h0(h0_hat: int, nodes: int, r: int, m: int) -> int:
    if r < 0 or r > nodes:
        raise ValueError(f"r must lie in [0, {nodes}], got {r}")
    if m < 1:
        raise ValueError("bound only valid for m >= 1")
    return h0_hat - (nodes - r) * chi0_a1(m)


@dataclass(frozen=True)
class ThresholdResult:
    ok: bool
    m: int | None = None
    value: Fraction | None = None
    tail_bound: int | None = None
    stable_from: int | None = None
    reason: str | None = None

    def as_tuple(self):
        return (self.m, self.value) if self.ok else self.reason


LEADING_FAILURE = "leading coefficient <= 0"


def _cauchy_bound(c: Cubic) -> int:
    a3 = c[0]
    return ceil(1 + max(abs(x) for x in c[1:]) / a3)


def threshold(profile: BoundProfile) -> ThresholdResult:
    """First m from the validity floor at which the bound is positive.

    The scan continues to a Cauchy root bound so that positivity for
    every larger m is certified; ``stable_from`` is the least m beyond
    which the profile never returns to a non-positive value.
    """
    if any(p[0] <= 0 for p in profile.pieces):
        return ThresholdResult(False, reason=LEADING_FAILURE)
    tail = max(_cauchy_bound(p) for p in profile.pieces)
    # integer pieces for a fast exact scan
    den = 1
    for p in profile.pieces:
        for x in p:
            den = lcm(den, x.denominator)
    ip = [tuple(int(x * den) for x in p) for p in profile.pieces]
    first = None
    last_bad = profile.floor - 1
    top = max(tail, profile.floor)
    m = profile.floor
    while m <= top or first is None:
        a3, a2, a1, a0 = ip[m % 6]
        v = ((a3 * m + a2) * m + a1) * m + a0
        if v > 0:
            if first is None:
                first = m
                top = max(top, m)
        else:
            last_bad = m
        m += 1
    return ThresholdResult(True, first, profile(first), tail, last_bad + 1)


@dataclass
class CertificateReport:
    surface: SurfaceSpec
    method: str
    leading: Fraction
    threshold: int | None
    value: Fraction | None
    tail_bound: int | None = None
    stable_from: int | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        def s(x):
            return None if x is None else str(x)

        return {
            "surface": self.surface.to_dict(),
            "method": self.method,
            "leading_coefficient": s(self.leading),
            "threshold": self.threshold if self.threshold is not None else "none",
            "value": s(self.value),
            "tail_bound": self.tail_bound,
            "stable_from": self.stable_from,
            "notes": list(self.notes),
        }


def certify(s: SurfaceSpec, r: int = 0) -> CertificateReport:
    notes = []
    if not s.general_type:
        notes.append("surface is not of general type")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GeneralTypeWarning)
        prof = bound_partial_chi(s, r) if r else bound_chi(s)
    res = threshold(prof)
    if not res.ok:
        notes.append(res.reason)
        return CertificateReport(s, prof.method, prof.leading, None, None, notes=notes)
    if res.stable_from != res.m:
        notes.append(f"bound dips again before m={res.stable_from}")
    return CertificateReport(s, prof.method, prof.leading, res.m, res.value,
                             res.tail_bound, res.stable_from, notes)


def lmin_quadrics(n: int) -> int:
    """Least node count making the cubic coefficient positive for n-2 quadrics in P^n."""
    if n < 6:
        raise ValueError("needs n >= 6")
    inv = ci_invariants(n, [2] * (n - 2))
    diff = inv.chiTop - inv.K2
    if diff < 0:
        return 0
    # need l * 4/27 > (chi - K^2)/6
    return floor(Fraction(9 * diff, 8)) + 1


def hypersurface_node_thresholds(d: int) -> tuple:
    """Node counts needed in degree d: (this method, orbifold method, corrected Serre-duality method)."""
    base = 2 * d * d - 5 * d
    return (Fraction(9, 4) * base, Fraction(8, 3) * base, Fraction(36, 11) * base)


def miyaoka_max_nodes(d: int) -> int:
    return (4 * d * (d - 1) ** 2) // 9


def segre_nodes(d: int) -> int:
    if d % 2:
        raise ValueError("construction needs even degree")
    return d * d * (d - 1) // 4


def segre_satisfies_criterion(d: int) -> bool:
    return segre_nodes(d) > hypersurface_node_thresholds(d)[0]


PRESETS = {
    "barth-sextic": SurfaceSpec(3, (6,), 65, "barth-sextic"),
    "barth-decic": SurfaceSpec(3, (10,), 345, "barth-decic"),
    "sarti": SurfaceSpec(3, (12,), 600, "sarti"),
    "perfect-cuboid": SurfaceSpec(6, (2, 2, 2, 2), 48, "perfect-cuboid"),
    "magic-squares": SurfaceSpec(8, (2,) * 6, 256, "magic-squares"),
}


def presets() -> list:
    return list(PRESETS.values())


def preset(name: str) -> SurfaceSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None
