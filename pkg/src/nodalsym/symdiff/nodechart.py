"""Branch lifts at an A1 node and the expansion of forms along the exceptional curve.

The resolved surface near the exceptional curve is parametrized by
``x1 = t``, ``x2 = t u``, ``x3 = t u^2 + O(t^2)`` with the remaining chart
coordinates solved order by order.  A symmetric form pulled back along
this lift is a Laurent series in t whose negative part lists the
conditions for the form to extend over the exceptional curve.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .._kernels import int_rank
from ..exact.parser import Context, ParseError, parse_expression
from ..exact.poly import SparsePolynomial, _SCALARS
from ..exact.ratfunc import RationalFunction
from ..exact.series import HalfLaurentSeries, SeriesOrderError
from .cover import CoverElement, MultiQuadraticRing
from .forms import FormUndefinedError, SymmetricForm

__all__ = [
    "NodeChart", "NodeChartError", "NodeExpansion", "Obstruction", "ObstructionList",
    "lift_node_branch", "cone_chart", "cuboid_node_chart", "chart_from_dict",
    "node_expand", "extension_obstructions", "obstruction_rank",
    "v_mn_forms", "chi0_by_obstructions", "BUILTIN_CHARTS",
]

U = ("u",)


class NodeChartError(ValueError):
    """The equations do not present a nondegenerate node in the designated coordinates."""


def _u_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, SparsePolynomial):
        return RationalFunction(x.with_vars(U), normalize=False)
    return RationalFunction(SparsePolynomial.constant(x, U), normalize=False)


def _linear_part(p: SparsePolynomial, vars: tuple) -> list:
    row = [Fraction(0)] * len(vars)
    for exps, c in p.terms.items():
        if sum(exps) == 1:
            row[exps.index(1)] = Fraction(c)
    return row


def _homogeneous_part(p: SparsePolynomial, deg: int) -> SparsePolynomial:
    return SparsePolynomial(p.vars, {e: c for e, c in p.terms.items() if sum(e) == deg})


def _nullspace_left(rows: list) -> list:
    """Basis of {mu : sum_i mu_i rows[i] = 0} over the rationals."""
    n = len(rows)
    if not n:
        return []
    width = len(rows[0])
    # transpose, row-reduce, read off the kernel
    mat = [[Fraction(rows[i][j]) for i in range(n)] for j in range(width)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, width) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(width):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -mat[i][fc]
        basis.append(v)
    return basis


def _solve(mat: list, rhs: list) -> list:
    """Solve a square system over rational functions of u."""
    n = len(mat)
    a = [list(row) + [b] for row, b in zip(mat, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            raise NodeChartError("singular linearized system: the node is degenerate in these coordinates")
        a[c], a[piv] = a[piv], a[c]
        inv = a[c][c].inverse()
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


def _series(terms: Mapping[int, object], prec=None) -> HalfLaurentSeries:
    return HalfLaurentSeries({2 * k: _u_rf(c) for k, c in terms.items()}, prec, "t")


def _coefficient(s: HalfLaurentSeries, k: int) -> RationalFunction:
    c = s.coefficient(2 * k)
    return _u_rf(c) if c else _u_rf(0)


@dataclass
class NodeChart:
    vars: tuple
    designated: tuple
    equations: tuple
    lift: dict
    order: int
    embedding: dict = field(default_factory=dict)
    name: str | None = None
    exact: bool = False

    @property
    def others(self) -> tuple:
        return tuple(v for v in self.vars if v not in self.designated)

    def relift(self, order: int) -> "NodeChart":
        c = lift_node_branch(self.equations, self.designated, order, vars=self.vars)
        c.embedding = dict(self.embedding)
        c.name = self.name
        return c

    def image(self, var: str) -> HalfLaurentSeries:
        """Series of an ambient variable along the lift."""
        if var in self.lift:
            return self.lift[var]
        if var in self.embedding:
            return _evaluate(self.embedding[var], self.lift)
        raise KeyError(f"chart has no image for variable {var!r}")

    def residuals(self) -> list:
        return [_evaluate(f, self.lift) for f in self.equations]

    def check(self) -> bool:
        """All equations vanish below t^(order+1)."""
        bound = 2 * (self.order + 1)
        return all(all(e >= bound for e in r.terms) for r in self.residuals())


def _evaluate(p: SparsePolynomial, values: Mapping[str, HalfLaurentSeries]) -> HalfLaurentSeries:
    v = p.evaluate({x: values[x] for x in p.vars})
    if isinstance(v, HalfLaurentSeries):
        return v
    return HalfLaurentSeries({0: _u_rf(v)} if v else {}, None, "t")


def _parse_equations(equations, vars: tuple | None) -> tuple:
    polys = []
    texts = [e for e in equations if isinstance(e, str)]
    if texts and vars is None:
        raise NodeChartError("string equations need an explicit variable list")
    for e in equations:
        if isinstance(e, str):
            try:
                p = parse_expression(e, Context(vars=vars))
            except (ParseError, ZeroDivisionError) as exc:
                raise NodeChartError(f"cannot parse equation {e!r}: {exc}") from None
            if isinstance(p, RationalFunction):
                if not p.is_polynomial():
                    raise NodeChartError("equations must be polynomials")
                p = p.as_polynomial()
            polys.append(p)
        elif isinstance(e, RationalFunction):
            polys.append(e.as_polynomial())
        else:
            polys.append(e)
    if vars is None:
        seen: list = []
        for p in polys:
            for x in p.vars:
                if x not in seen:
                    seen.append(x)
        vars = tuple(seen)
    return tuple(p.with_vars(vars) for p in polys), tuple(vars)


def lift_node_branch(equations: Sequence, designated: Sequence[str], order: int,
                     vars: Sequence[str] | None = None) -> NodeChart:
    """Lift the blow-up branch through the node at the origin to order t^order."""
    if order < 2:
        raise NodeChartError("lift order must be at least 2")
    eqs, vars = _parse_equations(equations, tuple(vars) if vars is not None else None)
    designated = tuple(designated)
    if len(designated) != 3 or any(d not in vars for d in designated):
        raise NodeChartError("need three designated coordinates among the chart variables")
    for f in eqs:
        if f.constant_term():
            raise NodeChartError("the origin is not a solution of the equations")
    x1, x2, x3 = designated
    others = tuple(v for v in vars if v not in designated)
    lin = [_linear_part(f, vars) for f in eqs]
    null = _nullspace_left(lin)
    if len(null) != 1:
        raise NodeChartError(
            f"expected exactly one combination without linear part, found {len(null)}")
    mu = null[0]
    drop = max(i for i, c in enumerate(mu) if c)
    f0 = None
    for c, f in zip(mu, eqs):
        if c:
            f0 = f * c if f0 is None else f0 + f * c
    rest = [f for i, f in enumerate(eqs) if i != drop]
    if len(rest) != len(others):
        raise NodeChartError("the equations do not cut out a surface in these coordinates")
    idx = {v: i for i, v in enumerate(vars)}
    lam_w = [[Fraction(_linear_part(f, vars)[idx[w]]) for w in others] for f in rest]
    lam_x = [[Fraction(_linear_part(f, vars)[idx[x]]) for x in designated] for f in rest]

    # first order: w = W x on the tangent space
    u = _u_rf(SparsePolynomial.variable("u", U))
    first_x = [_u_rf(1), u, u * u]
    if others:
        rhs = [-sum((a * b for a, b in zip(row, first_x)), _u_rf(0)) for row in lam_x]
        try:
            e1 = _solve([[_u_rf(a) for a in row] for row in lam_w], rhs)
        except NodeChartError:
            raise NodeChartError("designated coordinates do not span the tangent space") from None
    else:
        e1 = []
    q0 = _homogeneous_part(f0, 2)
    # tangent cone check on the designated coordinates
    xv = {x: SparsePolynomial.variable(x, designated) for x in designated}
    if others:
        lw = [[_u_rf(a) for a in row] for row in lam_w]
        # W = -lam_w^{-1} lam_x, column by column
        wcols = []
        for j in range(3):
            col = _solve(lw, [_u_rf(-lam_x[i][j]) for i in range(len(rest))])
            wcols.append([c.constant_value() for c in col])
        for k, w in enumerate(others):
            xv[w] = sum((SparsePolynomial.constant(wcols[j][k], designated) * xv[designated[j]]
                         for j in range(3)), SparsePolynomial.constant(0, designated))
    cone = q0.evaluate(xv)
    cone = cone if isinstance(cone, SparsePolynomial) else SparsePolynomial.constant(cone, designated)
    target = SparsePolynomial.variable(x1, designated) * SparsePolynomial.variable(x3, designated) \
        - SparsePolynomial.variable(x2, designated) ** 2
    scale = cone.terms.get(tuple(1 if v in (x1, x3) else 0 for v in designated))
    if not scale or cone != target * scale:
        raise NodeChartError(f"tangent cone is not proportional to {x1}*{x3} - {x2}^2")

    # linearization in (c_k, e_k)
    point = {x1: _u_rf(1), x2: u, x3: u * u}
    point.update(dict(zip(others, e1)))
    alpha = _u_rf(q0.diff(x3).evaluate(point))
    beta = [_u_rf(q0.diff(w).evaluate(point)) for w in others]
    mat = [[alpha] + beta]
    for i in range(len(rest)):
        mat.append([_u_rf(lam_x[i][2])] + [_u_rf(a) for a in lam_w[i]])

    c = {1: u * u}
    e = {w: ({1: e1[j]} if e1[j] else {}) for j, w in enumerate(others)}

    def approx(prec):
        vals = {x1: _series({1: 1}), x2: _series({1: u}), x3: _series(c, prec)}
        for w in others:
            vals[w] = _series(e[w], prec)
        return vals

    for k in range(2, order + 1):
        vals = approx(2 * (k + 2))
        r0 = _coefficient(_evaluate(f0, vals), k + 1)
        rr = [_coefficient(_evaluate(f, vals), k) for f in rest]
        sol = _solve(mat, [-r0] + [-r for r in rr])
        if sol[0]:
            c[k] = sol[0]
        for j, w in enumerate(others):
            if sol[j + 1]:
                e[w][k] = sol[j + 1]

    prec = 2 * (order + 1)
    exact_vals = approx(None)
    exact = all(not _evaluate(f, exact_vals) for f in eqs)
    lift = approx(None if exact else prec)
    chart = NodeChart(tuple(vars), designated, eqs, lift, order, exact=exact)
    if not chart.check():
        raise NodeChartError("lift failed its self-check")
    return chart


def cone_chart(order: int = 5) -> NodeChart:
    """The standard cone x1*x3 = x2^2; its branch lift is exact."""
    return lift_node_branch(["x1*x3 - x2^2"], ("x1", "x2", "x3"), order, vars=("x1", "x2", "x3"))


CUBOID_NODE = {
    "name": "cuboid-y1",
    "vars": ["X1", "X2", "X3", "X4", "X5", "X6"],
    "designated": ["X1", "X2", "X3"],
    "equations": [
        "X1*X3 - X2^2",
        "2*X4 + X4^2 - X2^2",
        "2*X5 + X5^2 - (X3 - X1)^2/4",
        "2*X6 + X6^2 - (X3 - X1)^2/4 - X2^2",
    ],
    # patch x1 = 1, node at (x2, x3, y1, y2, y3, z) = (0, 0, 0, 1, 1, 1)
    "embedding": {
        "x2": "(X3 - X1)/2", "y1": "(X1 + X3)/2", "x3": "X2",
        "y2": "X4 + 1", "y3": "X5 + 1", "z": "X6 + 1",
    },
}


def chart_from_dict(data: Mapping, order: int = 4) -> NodeChart:
    try:
        vars = tuple(data["vars"])
        designated = tuple(data["designated"])
        equations = list(data["equations"])
    except KeyError as e:
        raise NodeChartError(f"chart description lacks {e}") from None
    chart = lift_node_branch(equations, designated, int(data.get("order", order)), vars=vars)
    ctx = Context(vars=vars)
    emb = {}
    for k, v in (data.get("embedding") or {}).items():
        try:
            p = parse_expression(v, ctx)
        except (ParseError, ZeroDivisionError) as exc:
            raise NodeChartError(f"cannot parse embedding of {k}: {exc}") from None
        if isinstance(p, RationalFunction):
            if not p.is_polynomial():
                raise NodeChartError("embedding entries must be polynomials")
            p = p.as_polynomial()
        emb[k] = p.with_vars(vars)
    chart.embedding = emb
    chart.name = data.get("name")
    return chart


def cuboid_node_chart(order: int = 4) -> NodeChart:
    """Adapted chart at the cuboid node with y1 = 0 on the patch x1 = 1."""
    return chart_from_dict(CUBOID_NODE, order)


BUILTIN_CHARTS = {"cone": cone_chart, "cuboid-y1": cuboid_node_chart}


# expansion ------------------------------------------------------------------------------

@dataclass
class NodeExpansion:
    """``sum_i terms[i] * dt^i du^(m-i)`` with series coefficients in t over k(u)."""

    m: int
    terms: dict
    order: int

    @property
    def prec(self):
        ps = [s.prec for s in self.terms.values() if s.prec is not None]
        return min(ps) if ps else None

    def coefficient(self, dt_power: int) -> HalfLaurentSeries:
        return self.terms.get(dt_power, HalfLaurentSeries({}, None, "t"))

    def is_zero(self) -> bool:
        return not any(s.terms for s in self.terms.values())

    def to_string(self) -> str:
        parts = []
        for i in sorted(self.terms, reverse=True):
            s = self.terms[i]
            if not s.terms and s.prec is None:
                continue
            mono = _dmono(i, self.m - i)
            body = s.to_string()
            parts.append(f"({body})*{mono}" if mono else body)
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.to_string()


def _dmono(i: int, j: int) -> str:
    out = []
    if i:
        out.append("dt" if i == 1 else f"dt^{i}")
    if j:
        out.append("du" if j == 1 else f"du^{j}")
    return "*".join(out)


def _u_diff(s: HalfLaurentSeries) -> HalfLaurentSeries:
    return s.map_coeffs(lambda c: c.diff("u"))


def _rf_on_branch(rf: RationalFunction, values: dict, prec_hint: int) -> HalfLaurentSeries:
    num = _evaluate(rf.num, values)
    den = _evaluate(rf.den, values)
    if not den.terms:
        if den.prec is None:
            raise FormUndefinedError("form undefined on branch: a denominator vanishes identically")
        raise SeriesOrderError("order insufficient: denominator vanishes to the computed order")
    if den.prec is None and len(den.terms) > 1:
        inv = den.inverse(prec_hint - 2 * min(den.terms))
    else:
        inv = den.inverse()
    return num * inv


def _element_on_branch(c: CoverElement, values: dict, prec_hint: int) -> HalfLaurentSeries:
    ring = c.ring
    total = HalfLaurentSeries({}, None, "t")
    for mask, rf in c.comps.items():
        s = _rf_on_branch(rf, values, prec_hint)
        for j, g in enumerate(ring.gens):
            if mask >> j & 1:
                s = s * values[g]
        total = total + s
    return total


def _expand_once(form: SymmetricForm, chart: NodeChart) -> NodeExpansion:
    ring = form.ring
    names = set(ring.all_vars) | set(form.coords)
    values = {}
    for v in names:
        try:
            values[v] = chart.image(v)
        except KeyError:
            raise ValueError(f"chart does not map variable {v!r}") from None
    for v in chart.vars:
        values.setdefault(v, chart.lift[v])
    hint = 2 * (chart.order + 1)
    dvals = {}
    for x in set(k for key in form.coeffs for k in key):
        s = values[x]
        dvals[x] = (s.diff(), _u_diff(s))
    out: dict = {}
    for key, c in form.coeffs.items():
        poly = {0: _element_on_branch(c, values, hint)}
        for x in key:
            a, b = dvals[x]
            nxt: dict = {}
            for i, s in poly.items():
                for di, f in ((i + 1, a), (i, b)):
                    p = s * f
                    nxt[di] = nxt[di] + p if di in nxt else p
            poly = nxt
        for i, s in poly.items():
            out[i] = out[i] + s if i in out else s
    terms = {i: s for i, s in out.items() if s.terms or s.prec is not None}
    return NodeExpansion(form.m, terms, chart.order)


def _sufficient(exp: NodeExpansion) -> bool:
    p = exp.prec
    return p is None or p >= 0


def node_expand(form: SymmetricForm, chart: NodeChart | None = None, order: int | None = None) -> NodeExpansion:
    """Expand a form along the lifted branch, retrying once at doubled order."""
    if chart is None:
        chart = cone_chart()
    n = order if order is not None else form.m + 2
    if not chart.exact and chart.order < n:
        chart = chart.relift(n)
    exp = _expand_once_safe(form, chart)
    if exp is None or not _sufficient(exp):
        if chart.exact:
            if exp is None:
                raise SeriesOrderError("order insufficient")
            return exp
        chart = chart.relift(2 * max(chart.order, n))
        exp = _expand_once_safe(form, chart)
        if exp is None or not _sufficient(exp):
            raise SeriesOrderError("order insufficient: polar part not determined at doubled lift order")
    return exp


def _expand_once_safe(form, chart):
    try:
        return _expand_once(form, chart)
    except SeriesOrderError:
        return None


@dataclass(frozen=True)
class Obstruction:
    exponent: int | Fraction
    coefficient: RationalFunction
    dt_power: int
    du_power: int

    def monomial(self) -> str:
        return _dmono(self.dt_power, self.du_power) or "1"

    def as_tuple(self):
        return (self.exponent, self.coefficient, self.monomial())


@dataclass
class ObstructionList:
    entries: list
    order: int

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __bool__(self):
        return bool(self.entries)


def _expansion_obstructions(exp: NodeExpansion) -> ObstructionList:
    entries = []
    for i, s in exp.terms.items():
        for e, c in s.terms.items():
            if e < 0:
                a = e // 2 if e % 2 == 0 else Fraction(e, 2)
                entries.append(Obstruction(a, _u_rf(c), i, exp.m - i))
    entries.sort(key=lambda o: (o.exponent, -o.dt_power))
    return ObstructionList(entries, exp.order)


def extension_obstructions(form: SymmetricForm, chart: NodeChart | None = None,
                           order: int | None = None) -> ObstructionList:
    """Negative-exponent terms of the branch expansion."""
    return _expansion_obstructions(node_expand(form, chart, order))


# obstruction spaces ------------------------------------------------------------------------

def _functionals(obs: ObstructionList, den: SparsePolynomial) -> dict:
    out = {}
    for o in obs:
        p = o.coefficient * RationalFunction(den, normalize=False)
        if not p.is_polynomial():
            raise ArithmeticError("coefficient denominators were not cleared")
        for exps, c in p.as_polynomial().terms.items():
            out[(o.exponent, o.dt_power, exps)] = c
    return out


def obstruction_rank(forms: Iterable[SymmetricForm], chart: NodeChart | None = None,
                     order: int | None = None) -> int:
    """Dimension of the span of the polar parts of the given forms."""
    obs = [extension_obstructions(f, chart, order) for f in forms]
    dens = []
    for ob in obs:
        for o in ob:
            d = o.coefficient.den
            if not d.is_constant() and not any(d == x for x in dens):
                dens.append(d)
    den = SparsePolynomial.constant(1, U)
    for d in dens:
        den = den * d
    rows_f = [_functionals(ob, den) for ob in obs]
    keys = sorted({k for r in rows_f for k in r}, key=repr)
    if not keys:
        return 0
    col = {k: i for i, k in enumerate(keys)}
    rows = []
    for r in rows_f:
        vals = [Fraction(0)] * len(keys)
        for k, v in r.items():
            vals[col[k]] = Fraction(v)
        d = 1
        for v in vals:
            d = lcm(d, v.denominator)
        rows.append([int(v * d) for v in vals])
    return int_rank(rows)


_CONE_RING = MultiQuadraticRing(("x1", "x2", "x3"))


def v_mn_forms(m: int, n: int) -> list:
    """The monomials z1^j z2^(n-j) dz1^i dz2^(m-i) written on the cone x1 = z1^2, x2 = z1 z2, x3 = z2^2."""
    if (n - m) % 2:
        raise ValueError("only n = m mod 2 descends to the cone")
    ring = _CONE_RING
    vars = ring.base_vars
    x1, x2, x3 = (RationalFunction(SparsePolynomial.variable(v, vars), normalize=False) for v in vars)
    scale = Fraction(1, 2 ** m)
    out = []
    for j in range(n + 1):
        for i in range(m + 1):
            a = j - i
            b = n - j - (m - i)
            c = RationalFunction.constant(scale, vars) * x1 ** (a // 2) * x3 ** (b // 2)
            if a % 2:
                c = c * x2
            key = ("x1",) * i + ("x3",) * (m - i)
            out.append(SymmetricForm(ring, m, {key: c}, vars))
    return out


def chi0_by_obstructions(m: int, chart: NodeChart | None = None) -> int:
    """Sum over n < m of the obstruction rank of V_{m,n} on the cone chart."""
    chart = chart or cone_chart()
    return sum(obstruction_rank(v_mn_forms(m, n), chart) for n in range(m % 2, m, 2))
