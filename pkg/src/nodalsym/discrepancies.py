"""Known inconsistencies between stated reference values and recomputation.

Each record recomputes its numbers on construction, so the reports stay
tied to the code paths that produce them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import SurfaceSpec, bound_chi, threshold
from .chern import (ci_invariants, euler_log_twist_delta, euler_log_twist_delta_literal,
                    euler_sym_cotangent, quadric_ci_invariants, quadric_euler_constant,
                    quadric_euler_sym)
from .local_euler import chi0_logtwist_vanishes, chi1_logtwist_vanishes, chi_a1, chi_logtwist_vanishing_h

__all__ = ["Discrepancy", "discrepancies", "discrepancy", "report"]


@dataclass(frozen=True)
class Discrepancy:
    key: str
    title: str
    stated: str
    computed: str
    detail: str
    resolution: str
    data: dict = field(default_factory=dict)

    def to_text(self) -> str:
        return (f"[{self.key}] {self.title}\n"
                f"  stated:     {self.stated}\n"
                f"  computed:   {self.computed}\n"
                f"  detail:     {self.detail}\n"
                f"  resolution: {self.resolution}")

    def to_dict(self) -> dict:
        return {"key": self.key, "title": self.title, "stated": self.stated,
                "computed": self.computed, "detail": self.detail,
                "resolution": self.resolution,
                "data": {k: str(v) for k, v in self.data.items()}}


def _cubic(c) -> str:
    a3, a2, a1, a0 = c
    return f"({a3})m^3 + ({a2})m^2 + ({a1})m + ({a0})"


def _decic() -> Discrepancy:
    stated = (Fraction(2, 9), Fraction(-538, 3), Fraction(-82), Fraction(85))
    p345 = bound_chi(SurfaceSpec(3, (10,), 345))
    p339 = bound_chi(SurfaceSpec(3, (10,), 339))
    t345, t339 = threshold(p345), threshold(p339)
    match = next(l for l in range(300, 400) if bound_chi(SurfaceSpec(3, (10,), l)).piece(0) == stated)
    return Discrepancy(
        "decic-profile",
        "Barth decic bound profile with 345 nodes, residue m = 0 mod 6",
        _cubic(stated),
        _cubic(p345.piece(0)),
        (f"the stated cubic equals the profile for {match} nodes; with 345 nodes the "
         f"threshold is m = {t345.m} with value {t345.value}, with {match} nodes it is "
         f"m = {t339.m} with value {t339.value}"),
        "thresholds are computed with 345 nodes; the stated cubic is reported, not used",
        {"matching_nodes": match, "threshold_345": t345.m, "value_345": t345.value,
         "threshold_339": t339.m, "value_339": t339.value},
    )


def _chi_sym2() -> Discrepancy:
    inv = ci_invariants(6, (2, 2, 2, 2))
    base = euler_sym_cotangent(inv.K2, inv.chiTop, 2)
    local = chi_a1(2)
    total = base + 48 * local
    return Discrepancy(
        "cuboid-chi-sym2",
        "Euler characteristic of the reflexive second symmetric power on the cuboid surface",
        "7",
        str(total),
        (f"chi(Y, S^2) = {base} for (K^2, c2) = ({inv.K2}, {inv.chiTop}); each of the 48 nodes "
         f"adds chi(s, S^2) = {local}; {base} + 48*{local} = {total}"),
        "both values are reported; neither is asserted",
        {"chi_Y": base, "local": local, "total": total},
    )


def _log_twist() -> Discrepancy:
    m, h = 3, 2
    lit = euler_log_twist_delta_literal(m, h)
    chern = euler_log_twist_delta(m, h)
    alt = (m + 1) * (h * h - h * m - Fraction(m, 2))
    return Discrepancy(
        "log-twist-sign",
        "Correction between chi(S^m cotangent) and chi(S^m log-cotangent (x) O(-hE))",
        f"(m+1)(h^2 + hm - m/2) = {lit} at (m, h) = ({m}, {h})",
        f"{chern} at (m, h) = ({m}, {h})",
        (f"with E^2 = -2 and K.E = 0 the Chern route gives (m+1)(h^2 - hm - m/2) = {alt}, "
         "so the hm term carries the opposite sign"),
        "only the Chern-route identity is asserted; the other expression is exposed as-is",
        {"stated": lit, "chern": chern},
    )


def _quadric_constant() -> Discrepancy:
    n = 6
    inv = quadric_ci_invariants(n)
    agree = all(quadric_euler_sym(n, m) == euler_sym_cotangent(inv.K2, inv.chiTop, m) for m in range(8))
    agree_lit = all(quadric_euler_sym(n, m, literal=True) == euler_sym_cotangent(inv.K2, inv.chiTop, m)
                    for m in range(8))
    return Discrepancy(
        "quadric-constant",
        "Constant term in the bracket of chi(S^m cotangent) for intersections of quadrics",
        f"3n^2 - 27 + 66 (= {quadric_euler_constant(n, literal=True)} at n = {n})",
        f"3n^2 - 27n + 66 (= {quadric_euler_constant(n)} at n = {n})",
        (f"against the general cubic at n = {n}: with the n {'agrees' if agree else 'disagrees'}, "
         f"without it {'agrees' if agree_lit else 'disagrees'}"),
        "both evaluations are exposed; the general cubic is used by the engine",
        {"with_n": quadric_euler_constant(n), "without_n": quadric_euler_constant(n, literal=True)},
    )


def _omega5() -> Discrepancy:
    return Discrepancy(
        "omega5-exponent",
        "Last term of the fifth degree-2 cuboid form",
        "(dx3)^3",
        "(dx3)^2",
        "a cubic differential monomial inside a quadratic form breaks homogeneity",
        "the data file uses (dx3)^2",
    )


def _k2_notation() -> Discrepancy:
    return Discrepancy(
        "k2-notation",
        "Symbol K^2 in the cubic Euler characteristic",
        "K^2 = c1(Y)",
        "K^2 = c1(Y)^2",
        "K^2 is a self-intersection number, so it is the square of the first Chern class",
        "the code uses c1(Y)^2",
    )


def _chi_half() -> Discrepancy:
    rows = []
    for m in (3, 5, 7):
        h = chi_logtwist_vanishing_h(m)
        rows.append((m, h, chi0_logtwist_vanishes(m, h), chi1_logtwist_vanishes(m, h)))
    desc = "; ".join(f"m={m}, h={h}: chi0 zero {a}, chi1 zero {b}" for m, h, a, b in rows)
    return Discrepancy(
        "vanishing-tension",
        "Local vanishing criteria at h = ceil(m/2) for odd m",
        "chi(s, B_h) = 0 exactly at h = ceil(m/2)",
        desc,
        "the chi0 criterion (2h < m+1) fails at h = (m+1)/2 while the chi1 criterion (2h > m-2) holds",
        "both criteria are implemented exactly as stated; the tension is left open",
        {f"m{m}": (a, b) for m, h, a, b in rows},
    )


def discrepancies() -> list:
    """All records, in a fixed order."""
    return [_decic(), _chi_sym2(), _log_twist(), _quadric_constant(), _omega5(), _k2_notation(),
            _chi_half()]


def discrepancy(key: str) -> Discrepancy:
    for d in discrepancies():
        if d.key == key:
            return d
    raise KeyError(key)


def report() -> str:
    return "\n\n".join(d.to_text() for d in discrepancies())
