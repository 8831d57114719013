from __future__ import annotations

from fractions import Fraction

import pytest

from nodalsym.discrepancies import discrepancies, discrepancy, report

KEYS = ["decic-profile", "cuboid-chi-sym2", "log-twist-sign", "quadric-constant", "omega5-exponent",
        "k2-notation", "vanishing-tension"]


def _emit(capsys, text):
    with capsys.disabled():
        print()
        print(text)


def test_keys_in_order():
    assert [d.key for d in discrepancies()] == KEYS
    with pytest.raises(KeyError):
        discrepancy("none-such")


@pytest.mark.parametrize("key", KEYS)
def test_report_emitted(capsys, key):
    d = discrepancy(key)
    text = d.to_text()
    _emit(capsys, text)
    assert text.startswith(f"[{key}]")
    assert d.to_dict()["key"] == key


def test_decic_profile_values():
    d = discrepancy("decic-profile")
    assert d.data["matching_nodes"] == 339
    assert (d.data["threshold_345"], d.data["value_345"]) == (160, 15755)
    assert (d.data["threshold_339"], d.data["value_339"]) == (808, 78935)
    assert d.stated == "(2/9)m^3 + (-538/3)m^2 + (-82)m + (85)"


def test_chi_sym2_values():
    d = discrepancy("cuboid-chi-sym2")
    assert d.stated == "7"
    assert (d.data["chi_Y"], d.data["local"], d.data["total"]) == (-280, 6, 8)


def test_log_twist_values():
    d = discrepancy("log-twist-sign")
    assert (d.data["stated"], d.data["chern"]) == (34, -14)


def test_quadric_constant_values():
    d = discrepancy("quadric-constant")
    assert (d.data["with_n"], d.data["without_n"]) == (12, 147)
    assert "with the n agrees" in d.detail and "without it disagrees" in d.detail


def test_vanishing_tension_values():
    d = discrepancy("vanishing-tension")
    assert all(v == (False, True) for v in d.data.values())


def test_full_report(capsys):
    text = report()
    _emit(capsys, text)
    assert text.count("[") >= len(KEYS)
    assert all(isinstance(v, str) for d in discrepancies() for v in d.to_dict()["data"].values())
    assert Fraction(discrepancy("cuboid-chi-sym2").computed) == 8
