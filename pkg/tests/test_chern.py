from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nodalsym.chern import (BundleData, DivisorLattice, chern_sym_power, chern_twist, ci_invariants,
                            cotangent_bundle, euler_log_twist_delta, euler_log_twist_delta_literal,
                            euler_sym_cotangent, euler_sym_twist, euler_sym_twist_direct, hrr_euler,
                            is_general_type, log_cotangent_bundle, log_lattice, quadric_ci_invariants,
                            quadric_euler_constant, quadric_euler_sym)
from nodalsym.local_euler import chi_a1


def _pair(inv):
    return (inv.K2, inv.chiTop)


def _line_lattice(h2):
    return DivisorLattice(("H",), ((h2,),))


def test_sym_power_small_cases():
    lat = _line_lattice(5)
    b = BundleData(2, lat.cls("H"), 55)
    assert chern_sym_power(b, 1) == b
    s0 = chern_sym_power(b, 0)
    assert (s0.rank, s0.c1.is_zero(), s0.c2) == (1, True, 0)
    s2 = chern_sym_power(b, 2)
    assert s2.rank == 3 and s2.c1 == 3 * lat.cls("H") and s2.c2 == 230


def test_twist_cases():
    lat = log_lattice(7)
    K, E = lat.cls("K"), lat.cls("E")
    b = BundleData(2, K + E, Fraction(11) - 2)
    assert chern_twist(b, lat.zero()) == b
    line = BundleData(1, K, 0)
    t = chern_twist(line, E)
    assert t.c1 == K + E and t.c2 == 0
    t2 = chern_twist(b, -E)
    assert t2.c1 == K - E and t2.c2 == Fraction(11) - 2


def test_hrr_examples():
    lat = log_lattice(360)
    K = lat.cls("K")
    assert hrr_euler(BundleData(1, lat.zero(), 0), K, 660) == 85
    assert hrr_euler(BundleData(2, K, 660), K, 660) == -490
    assert hrr_euler(BundleData(1, log_lattice(0).zero(), 0), log_lattice(0).cls("K"), 0) == 0


def test_cotangent_examples():
    assert euler_sym_cotangent(360, 660, 2) == -2025
    assert euler_sym_cotangent(16, 80, 2) == -280
    for m in range(6):
        assert euler_sym_cotangent(360, 660, m) == -50 * m ** 3 - 330 * m ** 2 - 195 * m + 85
    assert euler_sym_cotangent(13, 47, 0) == Fraction(13 + 47, 12)


lattice_data = st.tuples(st.integers(-20, 20), st.integers(-10, 10), st.integers(-10, 10),
                         st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6),
                         st.integers(-30, 30), st.integers(-50, 50), st.integers(0, 50))


@given(lattice_data)
def test_path_independence(data):
    k2, ke, e2, c1k, c1e, lk, le, c2, chi, m = data
    lat = DivisorLattice(("K", "E"), ((k2, ke), (ke, e2)))
    K = lat.cls("K")
    e = BundleData(2, lat.element((c1k, c1e)), c2)
    L = lat.element((lk, le))
    assert euler_sym_twist(e, L, K, chi, m) == euler_sym_twist_direct(e, L, K, chi, m)


@pytest.mark.parametrize("k2,chi", [(0, 0), (360, 660), (16, 80), (-3, 17)])
def test_cotangent_specialization(k2, chi):
    lat = log_lattice(k2)
    for m in range(51):
        assert euler_sym_twist(cotangent_bundle(lat, chi), lat.zero(), lat.cls("K"), chi, m) \
            == euler_sym_cotangent(k2, chi, m)


@pytest.mark.parametrize("k2,chi", [(0, 0), (360, 660), (16, 80)])
def test_local_bridge(k2, chi):
    lat = log_lattice(k2)
    K, E = lat.cls("K"), lat.cls("E")
    for m in range(1, 51):
        h = (m + 1) // 2
        b = euler_sym_twist(log_cotangent_bundle(lat, chi), -h * E, K, chi, m)
        assert b - euler_sym_cotangent(k2, chi, m) == chi_a1(m)


def test_log_twist_delta():
    assert euler_log_twist_delta(3, 2) == -14
    assert euler_log_twist_delta(1, 1) == -1
    assert euler_log_twist_delta(3, 2, 360, 660) == -14
    assert euler_log_twist_delta_literal(3, 2) == 34


@given(st.integers(0, 30), st.integers(-10, 10), st.integers(-50, 500), st.integers(-50, 800))
def test_log_twist_delta_closed_form(m, h, k2, chi):
    assert euler_log_twist_delta(m, h, k2, chi) == (m + 1) * (h * h - h * m - Fraction(m, 2))


def test_ci_invariants():
    assert _pair(ci_invariants(3, [10])) == (360, 660)
    assert _pair(ci_invariants(6, [2, 2, 2, 2])) == (16, 80)
    assert _pair(ci_invariants(8, [2] * 6)) == (576, 768)
    for d in range(5, 21):
        assert _pair(ci_invariants(3, [d])) == (d * (d - 4) ** 2, d * (d * d - 4 * d + 6))
    with pytest.raises(ValueError):
        ci_invariants(4, [2])


def test_general_type():
    assert is_general_type(3, [10])
    assert is_general_type(6, [2, 2, 2, 2])
    assert not is_general_type(3, [4])


@pytest.mark.parametrize("n", range(6, 13))
def test_quadric_closed_forms(n):
    assert _pair(quadric_ci_invariants(n)) == _pair(ci_invariants(n, [2] * (n - 2)))
    inv = quadric_ci_invariants(n)
    for m in range(8):
        assert quadric_euler_sym(n, m) == euler_sym_cotangent(inv.K2, inv.chiTop, m)


def test_quadric_constant_variants():
    assert quadric_euler_constant(6) == 12
    assert quadric_euler_constant(6, literal=True) == 147
    inv = quadric_ci_invariants(6)
    assert quadric_euler_sym(6, 0, literal=True) != euler_sym_cotangent(inv.K2, inv.chiTop, 0)
