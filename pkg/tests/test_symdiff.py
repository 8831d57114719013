from __future__ import annotations

import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nodalsym.exact import HalfLaurentSeries, RationalFunction, SparsePolynomial, parse_expression
from nodalsym.local_euler import chi0_a1
from nodalsym.symdiff import (FORM_LABELS, FormFileError, FormUndefinedError, IdenticallyZeroResultant,
                              InconsistentParametrization, MultiQuadraticRing, NodeChartError, Parametrization,
                              SymmetricForm, ZeroDivisorError, chart_from_dict, chi0_by_obstructions,
                              cone_chart, cuboid_forms, cuboid_node_chart, cuboid_ring, curve_in_locus,
                              data_path, determinant, eta, extension_obstructions,
                              hyperplane_vanishing_extends, lift_node_branch, node_expand, obstruction_rank,
                              omega7_projective, parse_form_text, pullback, pythagorean_conic,
                              read_form_file, read_json, read_parametrization, resultant_locus,
                              sylvester_matrix, sylvester_resultant, v_mn_forms)

PLANE = MultiQuadraticRing(("x2", "x3"))


def _forms(text):
    return parse_form_text("vars: x1, x2, x3\ndiffs: dx1, dx2, dx3\n" + text)


def _cone_form(expr):
    return _forms(f"w = {expr}\n")[0]


# pullback ------------------------------------------------------------------------------------

def test_eta_coefficients():
    e = eta()
    assert e.m == 2
    assert e.coefficient("x2", "x2") == e.ring.from_expression(parse_expression("x3^2 + 1", vars=("x2", "x3")))
    assert e.coefficient("x2", "x3") == e.ring.from_expression(parse_expression("-2*x2*x3", vars=("x2", "x3")))
    assert e.to_string() == "(x3^2 + 1)*dx2^2 - 2*x2*x3*dx2*dx3 + (x2^2 + 1)*dx3^2"


def test_eta_symbolic_line():
    line = Parametrization.from_strings("t", {"x2": "t", "x3": "(-B*t - A)/C"}, constants=("A", "B", "C"))
    got = pullback(eta(), line)
    assert got.m == 2
    assert got.coefficient == parse_expression("(A^2 + B^2 + C^2)/C^2", vars=("t", "A", "B", "C"))


def test_eta_special_curves():
    assert pullback(eta(), read_parametrization(data_path("line_x3_zero.json"))).to_string() == "dt^2"
    assert pullback(eta(), read_parametrization(data_path("tangent_line.json"))).is_zero()
    assert pullback(eta(), read_parametrization(data_path("eta_conic.json"))).is_zero()
    conic = Parametrization.from_strings("t", {"x2": "-I*(1 - t^2)/(t^2 + 1)", "x3": "2*I*t/(t^2 + 1)"},
                                         sqrt=-1)
    assert pullback(eta(), conic).is_zero()


def test_random_tangent_lines():
    rng = random.Random(11)
    count = 0
    while count < 20:
        s, c = Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(1, 7), rng.randint(1, 4))
        if not s:
            continue
        # A + iB = s, A - iB = -C^2/s
        a0 = (s - c * c / s) / 2
        b0 = (s + c * c / s) / 2  # B = -i*b0
        line = Parametrization.from_strings(
            "t", {"x2": "t", "x3": f"(({b0})*I*t - ({a0}))/({c})"}, sqrt=-1)
        assert pullback(eta(), line).is_zero()
        count += 1


def test_undefined_and_constant_curves():
    form = parse_form_text("vars: x2, x3\ndiffs: dx2, dx3\nw = dx2^2/x3\n")[0]
    with pytest.raises(FormUndefinedError):
        pullback(form, read_parametrization(data_path("line_x3_zero.json")))
    with pytest.raises(ValueError):
        Parametrization.from_strings("t", {"x2": "1", "x3": "2"})


poly2 = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=4)
upoly = st.lists(st.integers(-3, 3), min_size=1, max_size=3)


def _param(c2, c3):
    t = ("t",)
    p2 = SparsePolynomial(t, {(i + 2,): c for i, c in enumerate(c2) if c}) + SparsePolynomial.variable("t", t) + 1
    p3 = SparsePolynomial(t, {(i,): c for i, c in enumerate(c3) if c})
    return Parametrization("t", {"x2": p2, "x3": p3})


def _on_curve(f, p):
    v = RationalFunction(f, normalize=False).evaluate({"x2": p.value("x2"), "x3": p.value("x3")})
    if isinstance(v, RationalFunction):
        return v
    return RationalFunction(SparsePolynomial.constant(v, ("t",)), normalize=False)


@given(poly2, upoly, upoly)
def test_pullback_scaling(gterms, c2, c3):
    g = SparsePolynomial(("x2", "x3"), gterms)
    p = _param(c2, c3)
    e = eta()
    lhs = pullback(e.scale(e.ring.from_expression(g)), p).coefficient
    rhs = pullback(e, p).coefficient * _on_curve(g, p)
    assert lhs == rhs


@given(poly2, upoly, upoly)
def test_pullback_leibniz(fterms, c2, c3):
    f = SparsePolynomial(("x2", "x3"), fterms)
    p = _param(c2, c3)
    df = SymmetricForm(PLANE, 1, {("x2",): f.diff("x2"), ("x3",): f.diff("x3")}, ("x2", "x3"))
    got = pullback(df, p).coefficient
    composite = _on_curve(f, p)
    assert got == composite.diff("t")


# cuboid data --------------------------------------------------------------------------------------

def test_cuboid_forms_parse():
    forms = cuboid_forms()
    assert len(forms) == 13 == len(FORM_LABELS)
    assert all(f.m == 2 for f in forms)
    assert not forms[3].coefficient("x2", "x3")
    assert cuboid_ring().gens == ("y1", "y2", "y3", "z")


def test_omega7_times_product_is_eta():
    ring = cuboid_ring()
    w7 = cuboid_forms()[6]
    g = ring.from_expression(parse_expression("y1*y2*y3*z^2", vars=ring.all_vars))
    assert w7.scale(g) == eta(ring)
    assert not (w7.scale(g) - eta(ring))


def test_omega_multiples_match():
    forms = cuboid_forms()
    ring = cuboid_ring()
    for i, name in enumerate(("x2", "x3", "y1", "y2", "y3", "z")):
        assert forms[7 + i] == forms[6].scale(ring.variable(name))


def test_pythagorean_conic():
    conic = pythagorean_conic()
    ring = read_form_file(data_path("cuboid_omega7_projective.forms")).ring
    conic.check_generators(ring)
    x1 = ring.variable("x1")
    x2 = ring.variable("x2")
    assert curve_in_locus(x1, conic)
    assert not curve_in_locus(x2, conic)
    bad = Parametrization.from_strings("t", {"x1": "0", "x2": "1 - t^2", "x3": "2*t"},
                                       {"y1": "1 + t", "y2": "2*t", "y3": "1 - t^2", "z": "1 + t^2"})
    with pytest.raises(InconsistentParametrization):
        curve_in_locus(x1, bad)


# resultants --------------------------------------------------------------------------------------

def test_resultant_examples():
    assert sylvester_resultant([1, 0, 0], [0, 0, 1]) == 1
    assert sylvester_resultant([1, 2, 3], [1, 2, 3]) == 0
    rs = ("r", "s")
    one = SparsePolynomial.constant(1, rs)
    r, s = SparsePolynomial.variable("r", rs), SparsePolynomial.variable("s", rs)
    got = sylvester_resultant([one, one.zero(), -s], [one, one.zero(), -r])
    assert got == (r - s) ** 2
    assert len(sylvester_matrix([1, 2, 3], [4, 5, 6])) == 4


def _poly_gcd_degree(f, g):
    def trim(p):
        while p and p[-1] == 0:
            p = p[:-1]
        return p

    f, g = trim([Fraction(x) for x in f]), trim([Fraction(x) for x in g])
    while g:
        r = list(f)
        while len(r) >= len(g) and r:
            q = r[-1] / g[-1]
            off = len(r) - len(g)
            for i, c in enumerate(g):
                r[off + i] -= q * c
            r = trim(r[:-1] if r[-1] == 0 else r)
        f, g = g, r
    return len(f) - 1


def _share_root(a, b):
    # a_i multiplies X^i Y^(m-i); Y = 0 is a root iff the top coefficient vanishes
    if a[-1] == 0 and b[-1] == 0:
        return True
    return _poly_gcd_degree(a, b) > 0


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def form_pairs(draw):
    m = draw(st.integers(1, 3))
    if draw(st.booleans()):
        root = [draw(coeffs), draw(coeffs)]
        if not any(root):
            root = [Fraction(1), Fraction(0)]

        def mul(p):
            out = [Fraction(0)] * (len(p) + 1)
            for i, c in enumerate(p):
                out[i] += c * root[0]
                out[i + 1] += c * root[1]
            return out

        a = mul([draw(coeffs) for _ in range(m)])
        b = mul([draw(coeffs) for _ in range(m)])
    else:
        a = [draw(coeffs) for _ in range(m + 1)]
        b = [draw(coeffs) for _ in range(m + 1)]
    return a, b


@settings(max_examples=100)
@given(form_pairs())
def test_resultant_vanishes_iff_common_root(pair):
    a, b = pair
    if not any(a) or not any(b):
        return
    assert (sylvester_resultant(a, b) == 0) == _share_root(a, b)


@given(st.integers(1, 4).flatmap(lambda m: st.tuples(st.lists(coeffs, min_size=m + 1, max_size=m + 1),
                                                      st.lists(coeffs, min_size=m + 1, max_size=m + 1))),
       coeffs)
def test_swap_and_scaling(pair, lam):
    a, b = pair
    m = len(a) - 1
    r = sylvester_resultant(a, b)
    assert sylvester_resultant(b, a) == (-1) ** (m * m) * r
    assert sylvester_resultant([lam * x for x in a], b) == lam ** m * r


@given(st.integers(4, 5).flatmap(lambda m: st.tuples(st.lists(st.integers(-4, 4), min_size=m + 1, max_size=m + 1),
                                                      st.lists(st.integers(-4, 4), min_size=m + 1, max_size=m + 1))))
def test_bareiss_matches_laplace_size(pair):
    # sizes 8 and 10 route through fraction-free elimination; compare polynomial entries
    a, b = pair
    xs = ("x",)
    x = SparsePolynomial.variable("x", xs)
    pa = [SparsePolynomial.constant(c, xs) + x * (i % 2) for i, c in enumerate(a)]
    pb = [SparsePolynomial.constant(c, xs) for c in b]
    got = SparsePolynomial.constant(0, xs) + sylvester_resultant(pa, pb)
    for val in (0, 1, -2):
        num = sylvester_resultant([c + val * (i % 2) for i, c in enumerate(a)], b)
        assert got.evaluate({"x": val}) == num


def test_determinant_routes():
    m = [[Fraction(1, 2), 2], [3, Fraction(1, 3)]]
    assert determinant(m) == Fraction(1, 6) - 6
    ring = MultiQuadraticRing(("x",), [("y", "x")])
    y = ring.variable("y")
    assert determinant([[y, ring.one()], [ring.from_expression(parse_expression("x", vars=("x",))), y]]) == ring.zero()


def test_bareiss_zero_divisor():
    # the ring Q[x][y]/(y^2 - x^2) is not a domain: (y - x)(y + x) = 0
    ring = MultiQuadraticRing(("x",), [("y", "x^2")])
    x, y, one = ring.variable("x"), ring.variable("y"), ring.one()
    zero = ring.zero()
    n = 7
    mat = [[zero] * n for _ in range(n)]
    mat[0][0] = y - x
    mat[1][0] = y + x
    mat[1][1] = one
    for i in range(n):
        if i > 1:
            mat[i][i] = one
    mat[0][1] = one
    with pytest.raises(ZeroDivisorError):
        determinant(mat)


def test_resultant_locus_cuboid():
    forms = cuboid_forms()
    res = resultant_locus(forms[0], forms[9], "x2", "x3")
    assert not res.is_zero
    assert len(res.cleared) == 2
    with pytest.warns(IdenticallyZeroResultant):
        z = resultant_locus(forms[0], forms[0], "x2", "x3")
    assert z.is_zero and z.notes
    with pytest.warns(IdenticallyZeroResultant):
        assert resultant_locus(forms[0], forms[0].scale(cuboid_ring().variable("x2")), "x2", "x3").is_zero
    with pytest.raises(ValueError):
        resultant_locus(forms[0], eta(), "x2", "x3")


def test_hyperplane_predicate():
    w = omega7_projective()
    x1 = SparsePolynomial.variable("x1", w.ring.base_vars)
    assert hyperplane_vanishing_extends(w.scale(w.ring.variable("x1")), x1)
    assert not hyperplane_vanishing_extends(w, x1)
    assert hyperplane_vanishing_extends(w.zero_like(), x1)
    polar = _cone_form("x2*dx2^2/x1")
    assert not hyperplane_vanishing_extends(polar, SparsePolynomial.variable("x1", polar.ring.base_vars))
    with pytest.raises(ValueError):
        hyperplane_vanishing_extends(w, x1 * x1)


# node charts ------------------------------------------------------------------------------------

def test_cone_lift_exact():
    c = cone_chart(5)
    assert c.exact and c.check()
    u = SparsePolynomial.variable("u", ("u",))
    assert c.lift["x1"] == HalfLaurentSeries.gen("t")
    assert c.lift["x2"] == HalfLaurentSeries({2: u}, None, "t")
    assert c.lift["x3"] == HalfLaurentSeries({2: u * u}, None, "t")


def test_lifter_errors():
    with pytest.raises(NodeChartError):
        lift_node_branch(["x1*x3 + x2^2 + x1^3"], ("x1", "x2", "x3"), 4, vars=("x1", "x2", "x3"))
    with pytest.raises(NodeChartError):
        lift_node_branch(["x1*x3 - x2^2"], ("x1", "x2", "x3"), 1, vars=("x1", "x2", "x3"))
    with pytest.raises(NodeChartError):
        lift_node_branch(["x1*x3 - x2^2"], ("x1", "x2", "x3"), 4)


def test_perturbed_cone_lift():
    c = lift_node_branch(["x1*x3 - x2^2 + x1^3 + x2*x3^2"], ("x1", "x2", "x3"), 6, vars=("x1", "x2", "x3"))
    assert c.check() and not c.exact
    assert all(min(r.terms, default=99) >= 14 for r in c.residuals())


def test_lift_with_extra_coordinate():
    eqs = ["x1*x3 - x2^2 - x4*x1", "x4 - x1^2 - x2*x3"]
    c = lift_node_branch(eqs, ("x1", "x2", "x3"), 5, vars=("x1", "x2", "x3", "x4"))
    assert c.check()
    assert min(c.lift["x4"].terms) >= 4


def test_cuboid_chart():
    c = cuboid_node_chart(4)
    assert c.check()
    c2 = chart_from_dict(read_json(data_path("cuboid_node_chart.json")), order=4)
    assert c2.check()
    for v in ("x2", "x3", "y1", "y2", "y3", "z"):
        assert c.image(v).agrees_with(c2.image(v))


def test_node_expansions():
    regular = node_expand(_cone_form("x1*dx2^2"))
    assert regular.to_string() == "(u^2*t)*dt^2 + (2*u*t^2)*dt*du + (t^3)*du^2"
    polar = node_expand(_cone_form("dx2^2/x1"))
    assert polar.to_string() == "(u^2*t^(-1))*dt^2 + (2*u)*dt*du + (t)*du^2"
    assert node_expand(_cone_form("dx1^2")).to_string() == "(1)*dt^2"
    with pytest.raises(FormUndefinedError):
        node_expand(_cone_form("dx1^2/(x1*x3 - x2^2)"))


def test_obstruction_examples():
    assert not extension_obstructions(_cone_form("x1*dx2^2"))
    polar = extension_obstructions(_cone_form("dx2^2/x1"))
    u = parse_expression("u^2", vars=("u",))
    assert [o.as_tuple() for o in polar] == [(-1, RationalFunction(u, normalize=False), "dt^2")]
    assert not extension_obstructions(_cone_form("dx1^2"))


def test_vmn_spanning_set():
    assert len(v_mn_forms(2, 0)) == 3
    assert len(v_mn_forms(3, 1)) == 8
    with pytest.raises(ValueError):
        v_mn_forms(2, 1)


@pytest.mark.parametrize("m", range(0, 5))
def test_obstruction_space_dimension(m):
    assert chi0_by_obstructions(m) == chi0_a1(m)


def test_obstruction_rank_regular_degree():
    # for n >= m every invariant monomial extends
    assert obstruction_rank(v_mn_forms(2, 2)) == 0
    assert obstruction_rank(v_mn_forms(2, 0)) == 3


def test_cuboid_node_obstructions():
    forms = cuboid_forms()
    chart = cuboid_node_chart()
    clean = {"omega1", "omega4", "x2*omega7", "x3*omega7", "y1*omega7"}
    for label, f in zip(FORM_LABELS, forms):
        obs = extension_obstructions(f, chart)
        if label in clean:
            assert not obs, label
        else:
            assert [(o.exponent, o.monomial()) for o in obs] == [(-1, "dt^2")], label


def test_form_file_errors(tmp_path):
    with pytest.raises(FormFileError):
        parse_form_text("vars: x\nw = x*dx\n")
    with pytest.raises(FormFileError):
        parse_form_text("vars: x, y\ndiffs: dx, dy\nw = dx + dy^2\n")
    with pytest.raises(FormFileError):
        read_form_file(tmp_path / "missing.forms")


def test_form_print_roundtrip():
    ring = cuboid_ring()
    header = "vars: x2, x3\ndiffs: dx2, dx3\n" + "".join(
        f"gen {g}: {g}^2 = {q}\n" for g, q in zip(ring.gens, ring.squares))
    forms = cuboid_forms() + [eta(ring)]
    back = parse_form_text(header + "\n".join(f.to_string() for f in forms) + "\n")
    assert back.forms == forms
