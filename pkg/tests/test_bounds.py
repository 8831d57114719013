from __future__ import annotations

import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nodalsym.bounds import (LEADING_FAILURE, GeneralTypeWarning, SurfaceSpec, bound_chi, bound_h0,
                             bound_partial_chi, bound_partial_h0, certify, hypersurface_node_thresholds,
                             lmin_quadrics, miyaoka_max_nodes, preset, presets, segre_nodes,
                             segre_satisfies_criterion, threshold)
from nodalsym.chern import ci_invariants, euler_sym_cotangent
from nodalsym.local_euler import chi0_a1, chi1_a1

DECIC = preset("barth-decic")
SARTI = preset("sarti")
MAGIC = preset("magic-squares")
CUBOID = preset("perfect-cuboid")
SEXTIC = preset("barth-sextic")


def test_registry():
    names = sorted(p.name for p in presets())
    assert names == ["barth-decic", "barth-sextic", "magic-squares", "perfect-cuboid", "sarti"]
    assert (SEXTIC.n, SEXTIC.degrees, SEXTIC.nodes) == (3, (6,), 65)
    assert (CUBOID.n, CUBOID.degrees, CUBOID.nodes) == (6, (2, 2, 2, 2), 48)
    assert (MAGIC.n, MAGIC.degrees, MAGIC.nodes) == (8, (2,) * 6, 256)
    with pytest.raises(KeyError):
        preset("kummer")


def test_surface_validation():
    with pytest.raises(ValueError):
        SurfaceSpec(3, (2, 2), 1)
    with pytest.raises(ValueError):
        SurfaceSpec(3, (10,), -1)
    with pytest.raises(ValueError):
        bound_chi(SurfaceSpec(3, (10,), 4, node_type="A2"))
    with pytest.warns(GeneralTypeWarning):
        bound_chi(SurfaceSpec(3, (4,), 0))


def test_profile_definition():
    prof = bound_chi(DECIC)
    inv = DECIC.invariants
    for m in range(3, 80):
        assert prof(m) == euler_sym_cotangent(inv.K2, inv.chiTop, m) + 345 * chi1_a1(m)
    with pytest.raises(ValueError):
        prof(2)


def test_exact_reproductions():
    d, s, q = bound_chi(DECIC), bound_chi(SARTI), bound_chi(MAGIC)
    assert (d(160), d(159)) == (15755, -12635)
    assert (s(28), s(27)) == (7646, -2480)
    assert q(47) == 8448 and q(46) < 0
    assert threshold(d).as_tuple() == (160, 15755)
    assert threshold(s).as_tuple() == (28, 7646)
    assert threshold(q).as_tuple() == (47, 8448)


def test_cuboid_threshold_failure_and_partial():
    full = bound_chi(CUBOID)
    assert full.leading == Fraction(-96, 27)
    assert threshold(full).as_tuple() == LEADING_FAILURE
    part = bound_partial_chi(CUBOID, 35)
    assert part.leading == Fraction(1, 108)
    assert set(part.leading_coefficients()) == {Fraction(1, 108)}
    assert threshold(part).m == 862
    with pytest.raises(ValueError):
        bound_partial_chi(CUBOID, 49)


def test_certify_reports():
    rep = certify(DECIC)
    assert (rep.threshold, rep.value) == (160, 15755)
    assert rep.leading > 0 and rep.to_dict()["value"] == "15755"
    bad = certify(SEXTIC)
    assert bad.threshold is None and LEADING_FAILURE in bad.notes
    assert certify(CUBOID, 35).threshold == 862


@pytest.mark.parametrize("surface", presets(), ids=lambda s: s.name)
def test_r_zero_matches(surface):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GeneralTypeWarning)
        a, b = bound_chi(surface), bound_partial_chi(surface, 0)
    for m in range(3, 101):
        assert a(m) == b(m)


@given(st.integers(3, 400), st.integers(0, 47))
def test_monotone_in_r(m, r):
    assert bound_partial_chi(CUBOID, r)(m) <= bound_partial_chi(CUBOID, r + 1)(m)


@pytest.mark.parametrize("surface", [DECIC, SARTI, MAGIC, ("cuboid", 35)], ids=str)
def test_certified_tail(surface):
    prof = bound_partial_chi(CUBOID, 35) if isinstance(surface, tuple) else bound_chi(surface)
    res = threshold(prof)
    assert res.ok and res.tail_bound is not None
    rng = random.Random(7)
    start = max(res.tail_bound, res.stable_from)
    for m in rng.sample(range(start, start + 10 ** 6), 50):
        assert prof(m) > 0
    assert prof(res.m) > 0 and all(prof(m) > 0 for m in range(res.stable_from, start + 1))


def test_lmin_table():
    assert [lmin_quadrics(n) for n in range(6, 11)] == [73, 145, 217, 145, 0]
    with pytest.raises(ValueError):
        lmin_quadrics(5)
    assert MAGIC.nodes >= lmin_quadrics(8)


@pytest.mark.parametrize("n", range(6, 13))
def test_lmin_boundary(n):
    lm = lmin_quadrics(n)
    degs = (2,) * (n - 2)
    assert bound_chi(SurfaceSpec(n, degs, lm)).leading > 0
    if lm > 0:
        assert bound_chi(SurfaceSpec(n, degs, lm - 1)).leading <= 0


def test_bound_h0():
    assert bound_h0(13, 48, 2) == -131
    assert bound_h0(13, 0, 5) == 13
    assert bound_h0(13, 48, 1) == 13
    with pytest.raises(ValueError):
        bound_h0(13, 48, 0)
    assert bound_partial_h0(13, 48, 44, 2) == 1
    assert bound_partial_h0(13, 48, 48, 9) == 13
    assert bound_partial_h0(13, 48, 35, 2) == -26
    assert bound_partial_h0(13, 48, 43, 2) <= 0
    with pytest.raises(ValueError):
        bound_partial_h0(13, 48, 50, 2)


@given(st.integers(1, 200), st.integers(0, 500))
def test_h0_formula(m, nodes):
    assert bound_h0(10 ** 6, nodes, m) == 10 ** 6 - nodes * chi0_a1(m)


def test_hypersurface_criteria():
    ours, rr, bdo = hypersurface_node_thresholds(10)
    assert (ours, rr, bdo) == (Fraction(675, 2), 400, Fraction(5400, 11))
    assert [345 > t for t in (ours, rr, bdo)] == [True, False, False]
    assert hypersurface_node_thresholds(6)[0] == Fraction(189, 2) > 65
    # 2*144 - 5*12 = 228
    assert hypersurface_node_thresholds(12)[0] == 513 < 600


def test_miyaoka_and_segre():
    assert miyaoka_max_nodes(10) == 360
    assert miyaoka_max_nodes(6) == 66
    assert miyaoka_max_nodes(1) == 0
    assert (segre_nodes(18), segre_nodes(16), segre_nodes(2)) == (1377, 960, 1)
    assert segre_satisfies_criterion(18) and not segre_satisfies_criterion(16)
    assert next(d for d in range(6, 60, 2) if segre_satisfies_criterion(d)) == 18
    with pytest.raises(ValueError):
        segre_nodes(7)


@pytest.mark.parametrize("d", range(5, 15))
def test_hypersurface_cubic_recomputed(d):
    inv = ci_invariants(3, [d])
    prof = bound_chi(SurfaceSpec(3, (d,), 0))
    for m in range(3, 12):
        assert prof(m) == euler_sym_cotangent(inv.K2, inv.chiTop, m)
