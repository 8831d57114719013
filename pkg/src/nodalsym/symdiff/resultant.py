"""Sylvester resultants of binary forms and resultant loci of symmetric differentials."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .._kernels import int_det
from ..exact.poly import SparsePolynomial
from ..exact.ratfunc import RationalFunction
from .cover import CoverElement, ZeroDivisorError
from .forms import SymmetricForm

__all__ = ["sylvester_matrix", "sylvester_resultant", "determinant", "ResultantLocus",
           "resultant_locus", "IdenticallyZeroResultant", "hyperplane_vanishing_extends"]

CUTOFF = 6


class IdenticallyZeroResultant(UserWarning):
    """The resultant vanishes identically and gives no locus."""


def sylvester_matrix(a: Sequence, b: Sequence) -> list:
    if len(a) != len(b):
        raise ValueError("both forms need the same degree")
    m = len(a) - 1
    if m < 1:
        raise ValueError("forms must have degree at least 1")
    zero = _zero_like(a, b)
    n = 2 * m
    rows = []
    for coeffs in (a, b):
        for i in range(m):
            row = [zero] * n
            for j, c in enumerate(coeffs):
                row[i + j] = c
            rows.append(row)
    return rows


def _zero_like(a, b):
    for x in list(a) + list(b):
        if isinstance(x, CoverElement):
            return x.ring.zero()
    for x in list(a) + list(b):
        if isinstance(x, (SparsePolynomial, RationalFunction)):
            return x * 0
    return 0


def _exact_div(x, y):
    if isinstance(x, int) and isinstance(y, int):
        if x % y:
            return Fraction(x, y)
        return x // y
    if isinstance(y, CoverElement) or isinstance(x, CoverElement):
        try:
            return x * (y.inverse() if isinstance(y, CoverElement) else 1 / y)
        except ZeroDivisorError:
            raise ZeroDivisorError("zero divisor met during elimination; input ring is not a domain") from None
    if isinstance(x, SparsePolynomial) and isinstance(y, SparsePolynomial):
        q = x.divide_exact(y)
        if q is None:
            raise ZeroDivisorError("inexact division during elimination")
        return q
    return x / y


def _is_zero(x) -> bool:
    return not x


def _laplace(mat: list):
    n = len(mat)
    memo: dict = {}

    def det(row: int, cols: tuple):
        if row == n:
            return 1
        key = (row, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = None
        sign = 1
        for idx, c in enumerate(cols):
            entry = mat[row][c]
            if not _is_zero(entry):
                minor = det(row + 1, cols[:idx] + cols[idx + 1:])
                if not _is_zero(minor):
                    term = entry * minor
                    if sign < 0:
                        term = -term
                    total = term if total is None else total + term
            sign = -sign
        if total is None:
            total = 0
        memo[key] = total
        return total

    return det(0, tuple(range(n)))


def _bareiss(mat: list):
    m = [list(r) for r in mat]
    n = len(m)
    prev = 1
    sign = 1
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for r in range(k + 1, n):
                if not _is_zero(m[r][k]):
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        p = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = m[i][j] * p - m[i][k] * m[k][j]
                m[i][j] = v if (isinstance(prev, int) and prev == 1) else _exact_div(v, prev)
        prev = p
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def determinant(mat: list):
    """Exact determinant; integer matrices go to the compiled kernel."""
    n = len(mat)
    if n == 0:
        return 1
    flat = [x for row in mat for x in row]
    if all(isinstance(x, int) for x in flat):
        return int_det(mat)
    if all(isinstance(x, (int, Fraction)) for x in flat):
        scale = 1
        rows = []
        for row in mat:
            d = 1
            for x in row:
                d = lcm(d, Fraction(x).denominator)
            scale *= d
            rows.append([int(Fraction(x) * d) for x in row])
        return Fraction(int_det(rows), scale)
    if n <= CUTOFF:
        return _laplace(mat)
    return _bareiss(mat)


def sylvester_resultant(a: Sequence, b: Sequence):
    """Resultant of sum a_i X^i Y^(m-i) and sum b_i X^i Y^(m-i)."""
    return determinant(sylvester_matrix(a, b))


@dataclass
class ResultantLocus:
    value: object
    x: str
    y: str
    cleared: tuple = ()
    notes: list = field(default_factory=list)

    @property
    def is_zero(self) -> bool:
        return not self.value


def _denominator(coeffs: Sequence[CoverElement]) -> SparsePolynomial:
    seen = []
    den = None
    for c in coeffs:
        for rf in c.comps.values():
            d = rf.den
            if d.is_constant() or any(d == s for s in seen):
                continue
            seen.append(d)
            den = d if den is None else den * d
    if den is None:
        ring = coeffs[0].ring
        den = SparsePolynomial.constant(1, ring.base_vars)
    return den


def resultant_locus(w1: SymmetricForm, w2: SymmetricForm, x: str, y: str) -> ResultantLocus:
    """Sylvester resultant of two forms in the chart differentials dx, dy.

    Denominators are cleared first; the cleared base polynomials are
    returned with the result so that their zero sets can be excluded.
    """
    if w1.m != w2.m:
        raise ValueError("forms must have the same degree")
    if w1.ring != w2.ring:
        raise ValueError("forms must live over the same ring")
    a = w1.binary_coefficients(x, y)
    b = w2.binary_coefficients(x, y)
    d1, d2 = _denominator(a), _denominator(b)
    a = [c * d1 for c in a]
    b = [c * d2 for c in b]
    value = sylvester_resultant(a, b)
    if not isinstance(value, CoverElement):
        value = w1.ring.from_expression(value)
    notes = []
    if not value:
        msg = "resultant vanishes identically; no locus information"
        notes.append(msg)
        warnings.warn(msg, IdenticallyZeroResultant, stacklevel=2)
    return ResultantLocus(value, x, y, (d1, d2), notes)


def hyperplane_vanishing_extends(form: SymmetricForm, h) -> bool:
    """Check that every coefficient is divisible by h^(m // 2) with a denominator prime to h."""
    if isinstance(h, RationalFunction):
        h = h.as_polynomial()
    if not isinstance(h, SparsePolynomial) or h.total_degree() != 1:
        raise ValueError("h must be a linear polynomial")
    k = form.m // 2
    base = form.ring.base_vars
    h = h.with_vars(base)
    hk = h ** k
    for c in form.coeffs.values():
        for rf in c.comps.values():
            num, den = rf.num.with_vars(base), rf.den.with_vars(base)
            while True:
                q = den.divide_exact(h)
                if q is None:
                    break
                nq = num.divide_exact(h)
                if nq is None:
                    return False  # pole along h
                num, den = nq, q
            if k and num.divide_exact(hk) is None:
                return False
    return True
