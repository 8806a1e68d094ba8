"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from typing import List, Sequence

from hypertrans import ratsol
from hypertrans.field import FieldElem, KPoly, ParamScalar, QPoly
from hypertrans.linsys import (DiffSystem, MatrixK, SeriesMatrix,
                               series_fundamental)
from hypertrans.ore import OreOperator
from hypertrans.parse import parse_expr, parse_operator


# ---------------------------------------------------------------------------
# random element generators (all deterministic via an explicit rng)


def rand_qpoly(rng: random.Random, deg: int) -> QPoly:
    c = [rng.randint(-3, 3) for _ in range(deg + 1)]
    if not any(c):
        c[0] = 1
    return QPoly(c)


def rand_scalar(rng: random.Random, tdeg: int = 1) -> ParamScalar:
    return ParamScalar(rand_qpoly(rng, rng.randint(0, tdeg)))


def rand_kpoly(rng: random.Random, xdeg: int, tdeg: int = 1) -> KPoly:
    return KPoly([rand_scalar(rng, tdeg) for _ in range(xdeg + 1)])


def rand_fieldelem(rng: random.Random, xdeg: int = 2, tdeg: int = 1,
                   den_deg: int = 0) -> FieldElem:
    num = rand_kpoly(rng, xdeg, tdeg)
    if den_deg == 0:
        return FieldElem(num)
    den = rand_kpoly(rng, den_deg, tdeg)
    while den.is_zero():
        den = rand_kpoly(rng, den_deg, tdeg)
    return FieldElem(num, den)


def rand_matrix(rng: random.Random, n: int, xdeg: int = 1, tdeg: int = 1,
                den_deg: int = 0) -> MatrixK:
    return MatrixK([[rand_fieldelem(rng, xdeg, tdeg, den_deg)
                     for _ in range(n)] for _ in range(n)])


def rand_rational_g(rng: random.Random) -> FieldElem:
    """num/den degree <= 3 in x and <= 2 in t, denominator nonzero."""
    num = rand_kpoly(rng, rng.randint(0, 3), rng.randint(0, 2))
    den = KPoly()
    while den.is_zero():
        den = rand_kpoly(rng, rng.randint(0, 3), rng.randint(0, 2))
    if num.is_zero():
        num = KPoly.const(1)
    return FieldElem(num, den)


def ordinary_point(*matrices: MatrixK) -> ParamScalar:
    """A rational x0 where no entry denominator vanishes (for any t)."""
    for cand in range(0, 40):
        x0 = ParamScalar.const(cand)
        ok = True
        for m in matrices:
            for row in m.entries:
                for v in row:
                    if v.den.eval(x0).is_zero():
                        ok = False
        if ok:
            return x0
    raise AssertionError("no ordinary point found below 40")


# ---------------------------------------------------------------------------
# series combinators for the construction oracle


def skron(u1: SeriesMatrix, u2: SeriesMatrix) -> SeriesMatrix:
    """Kronecker product of two truncated series (same x0)."""
    order = min(u1.order, u2.order)
    zero = ParamScalar.const(0)
    rows, cols = u1.rows * u2.rows, u1.cols * u2.cols
    out = []
    for m in range(order):
        acc = [[zero] * cols for _ in range(rows)]
        for j in range(m + 1):
            a, b = u1.coeffs[j], u2.coeffs[m - j]
            for i1 in range(u1.rows):
                for j1 in range(u1.cols):
                    av = a[i1][j1]
                    if av.is_zero():
                        continue
                    for i2 in range(u2.rows):
                        for j2 in range(u2.cols):
                            r, c = i1 * u2.rows + i2, j1 * u2.cols + j2
                            acc[r][c] = acc[r][c] + av * b[i2][j2]
        out.append(acc)
    return SeriesMatrix(u1.x0, order, out)


def sblock(grid: Sequence[Sequence[SeriesMatrix]]) -> SeriesMatrix:
    """Assemble a block series from a grid of same-order series blocks."""
    order = min(b.order for row in grid for b in row)
    out = []
    for m in range(order):
        rows = []
        for brow in grid:
            height = brow[0].rows
            for r in range(height):
                line: List[ParamScalar] = []
                for b in brow:
                    line.extend(b.coeffs[m][r])
                rows.append(line)
        out.append(rows)
    return SeriesMatrix(grid[0][0].x0, order, out)


def szero(rows: int, cols: int, x0: ParamScalar, order: int) -> SeriesMatrix:
    zero = ParamScalar.const(0)
    c = [[zero] * cols for _ in range(rows)]
    return SeriesMatrix(x0, order, [c] * order)


def scolumn(entries: Sequence[List[ParamScalar]], x0: ParamScalar,
            order: int) -> SeriesMatrix:
    """Column series from per-entry coefficient lists."""
    out = []
    for m in range(order):
        out.append([[e[m]] for e in entries])
    return SeriesMatrix(x0, order, out)


# ---------------------------------------------------------------------------
# exhaustive-ansatz oracle for homogeneous rational solutions


def _kpoly_pow(p: KPoly, n: int) -> KPoly:
    out = KPoly.const(1)
    for _ in range(n):
        out = out * p
    return out


def oracle_scalar_dimension(op: OreOperator, den_power: int = 8,
                            extra_deg: int = 8) -> int:
    """Dimension of the homogeneous solution space by brute-force ansatz
    y = p(x) / sqfree(lc)^den_power with deg p <= extra_deg + deg of that
    denominator.  Independent of the solver's bound machinery."""
    coeffs, _ = ratsol._clear_denominators(op, None)
    lc = coeffs[-1]
    if lc.degree > 0:
        g = lc.gcd(lc.deriv())
        sf, _ = lc.divmod(g)
    else:
        sf = KPoly.const(1)
    den = _kpoly_pow(sf, den_power) if sf.degree > 0 else KPoly.const(1)
    num_deg = extra_deg + max(int(den.degree), 0)
    den_elem = FieldElem(den)
    x = FieldElem.x()
    ansatz = [(x ** i) / den_elem for i in range(num_deg + 1)]
    images = [op.apply(b) for b in ansatz]
    cden = KPoly.const(1)
    for f in images:
        if f.is_zero():
            continue
        g = cden.gcd(f.den)
        cden = cden * f.den.divmod(g)[0]
    polys = [f.num * cden.divmod(f.den)[0] if not f.is_zero() else KPoly()
             for f in images]
    top = max((int(p.degree) for p in polys if not p.is_zero()), default=0)
    rows = [[p.coeff(e) for p in polys] for e in range(top + 1)]
    _, null = ratsol._solve_k(rows, None)
    # the ansatz elements are k-linearly independent, so each nullspace
    # vector is a distinct exact solution
    for vec in null:
        y = FieldElem.const(0)
        for c, b in zip(vec, ansatz):
            y = y + FieldElem.from_scalar(c) * b
        assert op.apply(y).is_zero()
    return len(null)


# ---------------------------------------------------------------------------
# fixed operator corpora


def bessel() -> OreOperator:
    return parse_operator("D^2 + (1/x)*D + (1 - t^2/x^2)")


def five_operator_corpus() -> List[OreOperator]:
    return [
        bessel(),
        parse_operator("D^2"),
        parse_operator("D^2 - x"),
        parse_operator("x*D - t"),
        parse_operator("D^2 + (t/x)*D - 1/x^2"),
    ]
