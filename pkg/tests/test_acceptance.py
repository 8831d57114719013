"""Acceptance gate: fifteen numbered criteria, each with a time limit.

Every criterion prints one PASS/FAIL line with its measured runtime.
"""
from __future__ import annotations

import random
import time
import warnings
from fractions import Fraction

import pytest

from nodalsym.bounds import (SurfaceSpec, bound_chi, bound_partial_chi, hypersurface_node_thresholds,
                             lmin_quadrics, miyaoka_max_nodes, preset, segre_satisfies_criterion, threshold)
from nodalsym.chern import euler_sym_cotangent, euler_sym_twist, log_cotangent_bundle, log_lattice
from nodalsym.discrepancies import discrepancy
from nodalsym.exact import RationalFunction, parse_expression
from nodalsym.local_euler import chi0_a1, chi0_a1_by_kernel, chi0_a1_by_summation, chi1_a1, chi_a1
from nodalsym.symdiff import (Parametrization, chi0_by_obstructions, cuboid, data_path, eta,
                              extension_obstructions, parse_form_text, pullback, read_parametrization,
                              resultant_locus, sylvester_resultant)

MS = 1e-3


def c1_local_table():
    want = (0, 3, 5, 12, 21, 34, 49, 75, 98, 134, 174, 222)
    return tuple(chi0_a1(m) for m in range(1, 13)) == want


def c2a_summation():
    return all(chi0_a1(m) == chi0_a1_by_summation(m) for m in range(61))


def c2b_kernel():
    return all(chi0_a1(m) == chi0_a1_by_kernel(m) for m in range(11))


def c3_decomposition():
    return all(chi0_a1(m) + chi1_a1(m) == chi_a1(m) for m in range(501))


def c4_chern_bridge():
    for k2, chi in ((0, 0), (360, 660), (16, 80)):
        lat = log_lattice(k2)
        K, E = lat.cls("K"), lat.cls("E")
        e = log_cotangent_bundle(lat, chi)
        if (e.rank, e.c1, e.c2) != (2, K + E, chi - 2):
            return False
        for m in range(1, 51):
            h = (m + 1) // 2
            if euler_sym_twist(e, -h * E, K, chi, m) - euler_sym_cotangent(k2, chi, m) != chi_a1(m):
                return False
    return True


def c5_decic():
    p = bound_chi(preset("barth-decic"))
    return threshold(p).as_tuple() == (160, 15755) and p(159) == -12635


def c6_sarti():
    p = bound_chi(preset("sarti"))
    return threshold(p).as_tuple() == (28, 7646) and p(27) == -2480


def c7_magic():
    p = bound_chi(preset("magic-squares"))
    return threshold(p).as_tuple() == (47, 8448) and p(46) < 0


def c8_lmin():
    if tuple(lmin_quadrics(n) for n in range(6, 11)) != (73, 145, 217, 145, 0):
        return False
    for n in range(6, 11):
        lm, degs = lmin_quadrics(n), (2,) * (n - 2)
        if not bound_chi(SurfaceSpec(n, degs, lm)).leading > 0:
            return False
        if lm > 0 and bound_chi(SurfaceSpec(n, degs, lm - 1)).leading > 0:
            return False
    return True


def c9_cuboid_partial():
    p = bound_partial_chi(preset("perfect-cuboid"), 35)
    return p.leading == Fraction(1, 108) and threshold(p).m == 862


def c10_hypersurface():
    t = hypersurface_node_thresholds(10)
    if t != (Fraction(675, 2), 400, Fraction(5400, 11)):
        return False
    if [345 > x for x in t] != [True, False, False]:
        return False
    first = next(d for d in range(6, 40, 2) if segre_satisfies_criterion(d))
    return first == 18 and miyaoka_max_nodes(10) == 360


def _tangent_lines(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        s = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
        c = Fraction(rng.randint(1, 9), rng.randint(1, 5))
        if not s:
            continue
        # A^2 + B^2 + C^2 = 0 with A + iB = s and A - iB = -C^2/s
        a = (s - c * c / s) / 2
        b = (s + c * c / s) / 2
        out.append(Parametrization.from_strings("t", {"x2": "t", "x3": f"(({b})*I*t - ({a}))/({c})"}, sqrt=-1))
    return out


def c11_eta_curves():
    e = eta()
    if not all(pullback(e, line).is_zero() for line in _tangent_lines(20, 2024)):
        return False
    if not pullback(e, read_parametrization(data_path("eta_conic.json"))).is_zero():
        return False
    flat = pullback(e, read_parametrization(data_path("line_x3_zero.json")))
    return flat.m == 2 and flat.coefficient == RationalFunction(parse_expression("1", vars=("t",)),
                                                               normalize=False)


def c12_table_coherence():
    cuboid.cuboid_form_file.cache_clear()
    forms = cuboid.cuboid_forms()
    ring = cuboid.cuboid_ring()
    if len(forms) != 13:
        return False
    g = ring.from_expression(parse_expression("y1*y2*y3*z^2", vars=ring.all_vars))
    if forms[6].scale(g) != eta(ring):
        return False
    res = resultant_locus(forms[0], forms[9], "x2", "x3")
    return not res.is_zero


def c13_node_charts():
    ff = parse_form_text("vars: x1, x2, x3\ndiffs: dx1, dx2, dx3\nregular = x1*dx2^2\npolar = dx2^2/x1\n")
    if extension_obstructions(ff["regular"]):
        return False
    polar = extension_obstructions(ff["polar"]).entries
    u2 = RationalFunction(parse_expression("u^2", vars=("u",)), normalize=False)
    if [o.as_tuple() for o in polar] != [(-1, u2, "dt^2")]:
        return False
    return all(chi0_by_obstructions(m) == chi0_a1(m) for m in range(5))


def _gcd_positive(f, g):
    def trim(p):
        while p and p[-1] == 0:
            p = p[:-1]
        return p

    f, g = trim(list(f)), trim(list(g))
    while g:
        r = list(f)
        while r and len(r) >= len(g):
            q = r[-1] / g[-1]
            off = len(r) - len(g)
            for i, c in enumerate(g):
                r[off + i] -= q * c
            r = trim(r)
        f, g = g, r
    return len(f) > 1


def _common_root(a, b):
    return (a[-1] == 0 and b[-1] == 0) or _gcd_positive(a, b)


def _random_pair(rng):
    m = rng.randint(1, 3)

    def q():
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))

    if rng.random() < 0.5:
        r0, r1 = q(), q()
        if not (r0 or r1):
            r1 = Fraction(1)

        def times_root(p):
            out = [Fraction(0)] * (len(p) + 1)
            for i, c in enumerate(p):
                out[i] += c * r0
                out[i + 1] += c * r1
            return out

        return times_root([q() for _ in range(m)]), times_root([q() for _ in range(m)])
    return [q() for _ in range(m + 1)], [q() for _ in range(m + 1)]


def c14_sylvester():
    if sylvester_resultant([1, 0, 0], [0, 0, 1]) != 1:
        return False
    rng = random.Random(14)
    done = 0
    while done < 100:
        a, b = _random_pair(rng)
        if not any(a) or not any(b):
            continue
        m = len(a) - 1
        r = sylvester_resultant(a, b)
        if sylvester_resultant(a, a) != 0:
            return False
        if (r == 0) != _common_root(a, b):
            return False
        if sylvester_resultant(b, a) != (-1) ** (m * m) * r:
            return False
        done += 1
    return True


DISCLOSURE = ("not reproduced: the Magma h0 module computations for the Barth sextic and decic, "
              "and the genus 0 and genus 1 curve classifications; covered instead by the property "
              "suites and the reports below")


def c15_disclosure(emit):
    emit(DISCLOSURE)
    keys = ("decic-profile", "cuboid-chi-sym2", "log-twist-sign")
    for k in keys:
        emit(discrepancy(k).to_text())
    return (discrepancy("cuboid-chi-sym2").data["total"] == 8
            and discrepancy("log-twist-sign").data["chern"] == -14
            and discrepancy("decic-profile").data["matching_nodes"] == 339)


CRITERIA = [
    ("1", "local chi0 table m = 1..12", c1_local_table, 1 * MS),
    ("2a", "chi0 = summation oracle, m <= 60", c2a_summation, 100 * MS),
    ("2b", "chi0 = kernel oracle, m <= 10", c2b_kernel, 5.0),
    ("3", "chi0 + chi1 = chi, m <= 500", c3_decomposition, 100 * MS),
    ("4", "Chern bridge, m <= 50, three (K^2, chi)", c4_chern_bridge, 100 * MS),
    ("5", "Barth decic threshold (160, 15755), value -12635 at 159", c5_decic, 100 * MS),
    ("6", "Sarti threshold (28, 7646), value -2480 at 27", c6_sarti, 100 * MS),
    ("7", "magic squares threshold (47, 8448), negative at 46", c7_magic, 100 * MS),
    ("8", "lmin table and boundary for n = 6..10", c8_lmin, 100 * MS),
    ("9", "cuboid r = 35: leading 1/108, threshold 862", c9_cuboid_partial, 100 * MS),
    ("10", "hypersurface criteria, Segre d = 18, Miyaoka 360", c10_hypersurface, 1 * MS),
    ("11", "eta on tangent lines, conic and x3 = 0", c11_eta_curves, 1.0),
    ("12", "cuboid table coherence and res(omega1, y1*omega7)", c12_table_coherence, 10.0),
    ("13", "node-chart obstructions and V_mn rank, m <= 4", c13_node_charts, 10.0),
    ("14", "Sylvester laws and gcd oracle, 100 pairs", c14_sylvester, 5.0),
    ("15", "non-reproduced results disclosed with reports", c15_disclosure, 1.0),
]


@pytest.mark.parametrize("num,title,check,limit", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(capsys, num, title, check, limit):
    emitted = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        t0 = time.perf_counter()
        ok = check(emitted.append) if check is c15_disclosure else check()
        dt = time.perf_counter() - t0
    fast = dt < limit
    status = "PASS" if ok and fast else "FAIL"
    line = f"[{status}] criterion {num}: {title} ({dt * 1e3:.2f} ms, limit {limit * 1e3:g} ms)"
    with capsys.disabled():
        print()
        print(line)
        for text in emitted:
            print(text)
    assert ok, f"criterion {num} wrong result"
    assert fast, f"criterion {num} took {dt:.4f} s, limit {limit} s"
