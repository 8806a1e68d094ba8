"""Complete rational-solution solver over K = Q(t)(x).

Scalar operators are handled by the classical local-bound pipeline:
universal denominator from indicial roots at the finite places, degree
bound from the indicial polynomial at infinity, then exact linear algebra
over k = Q(t) on the numerator ansatz.  Systems are reduced to the scalar
case through a cyclic vector and transformed back.

Every certified bound that degenerates raises (UnsupportedPlace,
BudgetExceeded) instead of guessing; every solution returned has been
re-substituted into the input and has exactly zero residual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from .errors import BudgetExceeded, UnsupportedPlace
from .field import NEG_INF, FieldElem, KPoly, ParamScalar, QPoly, Q
from .linsys import DiffSystem, MatrixK, cyclic_vector
from .ore import OreOperator


DEFAULT_MAX_DEGREE = 64

INFINITY = "infinity"


@dataclass(frozen=True)
class PlaceBound:
    """Certified upper bound on pole order at a finite place (or on the
    degree excess at infinity)."""

    place: object  # KPoly or the INFINITY marker
    max_order: int


@dataclass
class SolutionSpace:
    """k-basis of rational solutions plus an optional particular solution."""

    basis: List[Tuple[FieldElem, ...]]
    particular: Optional[Tuple[FieldElem, ...]]
    denominator_used: KPoly
    degree_bound: int
    diagnostics: Dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.basis)


# ---------------------------------------------------------------------------
# helpers


def _falling_factorial_poly(i: int) -> KPoly:
    """lam*(lam-1)*...*(lam-i+1) as a polynomial (KPoly reused in lam)."""
    out = KPoly.const(1)
    lam = KPoly.x()
    for j in range(i):
        out = out * (lam - KPoly.const(j))
    return out


def _falling_int(j: int, i: int) -> int:
    out = 1
    for m in range(i):
        out *= j - m
    return out


def _clear_denominators(op: OreOperator, rhs: Optional[FieldElem]):
    """Multiply L(y) = rhs by a polynomial so that all data is in k[x].

    Returns (coeffs as KPoly list, rhs as KPoly or None).
    """
    den = KPoly.const(1)
    targets = [c for c in op.coeffs] + ([rhs] if rhs is not None else [])
    for c in targets:
        if c is None or c.is_zero():
            continue
        g = den.gcd(c.den)
        extra, _ = c.den.divmod(g)
        den = den * extra
    coeffs = []
    for c in op.coeffs:
        if c.is_zero():
            coeffs.append(KPoly())
        else:
            q, r = den.divmod(c.den)
            assert r.is_zero()
            coeffs.append(c.num * q)
    rhs_poly = None
    if rhs is not None:
        if rhs.is_zero():
            rhs_poly = KPoly()
        else:
            q, r = den.divmod(rhs.den)
            assert r.is_zero()
            rhs_poly = rhs.num * q
    return coeffs, rhs_poly


def squarefree_factors(p: KPoly) -> List[Tuple[KPoly, int]]:
    """Yun's algorithm; returns monic squarefree factors with multiplicity."""
    p = p.monic()
    if p.degree <= 0:
        return []
    out = []
    g = p.gcd(p.deriv())
    w, _ = p.divmod(g)
    mult = 1
    while w.degree > 0:
        y = w.gcd(g)
        fac, _ = w.divmod(y)
        if fac.degree > 0:
            out.append((fac.monic(), mult))
        w = y
        g, _ = g.divmod(y)
        mult += 1
    return out


# ---------------------------------------------------------------------------
# integer roots of polynomials over k


def _sample_int_poly(n: KPoly, t0: int) -> Optional[List[int]]:
    """Specialize the k[lam] polynomial at t = t0 and clear to Z[lam]."""
    try:
        vals = [c.eval_t(Q(t0)) for c in n.c]
    except Exception:
        return None
    if all(v == 0 for v in vals):
        return None
    from math import gcd as igcd

    m = 1
    for v in vals:
        d = int(v.denominator)
        m = m * d // igcd(m, d)
    return [int(v * m) for v in vals]


def integer_roots(n: KPoly) -> List[int]:
    """All integer roots of a nonzero polynomial in lam over k, certified.

    Candidates come from the gcd of several integer specializations in t
    (an integer root of N survives every specialization); each candidate
    is then verified by exact evaluation over k.
    """
    if n.is_zero():
        raise UnsupportedPlace("identically zero indicial polynomial")
    samples = []
    t0 = 1
    while len(samples) < 3 and t0 < 60:
        img = _sample_int_poly(n, t0)
        if img is not None:
            samples.append(img)
        t0 += 1
    if not samples:
        raise UnsupportedPlace("could not specialize the indicial polynomial")
    from .field import _zp_gcd

    g = samples[0]
    for img in samples[1:]:
        g = _zp_gcd(g, img)
    lam = sympy.Symbol("lam")
    poly = sympy.Poly(list(reversed(g)), lam)
    candidates = set()
    for root, _mult in poly.ground_roots().items():
        if root == int(root):
            candidates.add(int(root))
    out = []
    for cand in sorted(candidates):
        if n.eval(ParamScalar.const(cand)).is_zero():
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# indicial data


def _local_data(coeffs: List[KPoly], p: KPoly):
    """Valuations and the argmin set at a finite monic squarefree place."""
    vals = {}
    reduced = {}
    for i, c in enumerate(coeffs):
        if c.is_zero():
            continue
        v = c.valuation(p)
        vals[i] = v
        cur = c
        for _ in range(v):
            cur, _r = cur.divmod(p)
        reduced[i] = cur
    sigma = min(vals[i] - i for i in vals)
    arg = [i for i in vals if vals[i] - i == sigma]
    return vals, reduced, sigma, arg


def _indicial_linear(coeffs: List[KPoly], p: KPoly) -> Tuple[KPoly, int]:
    """Indicial polynomial N(lam) at the monic linear place p = x - r."""
    vals, reduced, sigma, arg = _local_data(coeffs, p)
    r = -p.coeff(0)
    n = KPoly()
    for i in arg:
        ci = reduced[i].eval(r)
        if not ci.is_zero():
            n = n + _falling_factorial_poly(i).scale(ci)
    return n, sigma


class _ResultantPlace:
    """Indicial data at a squarefree place of degree > 1.

    Holds p and the bivariate I_p(x, lam) = sum c_i(x) p'(x)^{v_i} ff(lam, i)
    over the argmin set; N(lam) = Res_x(p, I_p).
    """

    def __init__(self, coeffs: List[KPoly], p: KPoly):
        vals, reduced, sigma, arg = _local_data(coeffs, p)
        self.p = p
        self.sigma = sigma
        dp = p.deriv()
        # lam-coefficients of I_p as KPoly's in x, reduced mod p
        terms: Dict[int, KPoly] = {}
        for i in arg:
            ci = reduced[i]
            _, ci = ci.divmod(p)
            weight = KPoly.const(1)
            for _ in range(vals[i]):
                weight = weight * dp
                _, weight = weight.divmod(p)
            base = ci * weight
            _, base = base.divmod(p)
            ff = _falling_factorial_poly(i)
            for j, fc in enumerate(ff.c):
                if not fc.is_zero():
                    terms[j] = terms.get(j, KPoly()) + base.scale(fc)
        self.lam_coeffs = terms
        self.lam_degree = max(terms) if terms else -1

    def degenerate(self) -> bool:
        """True when Res_x(p, I_p) vanishes identically."""
        g = KPoly()
        for c in self.lam_coeffs.values():
            g = g.gcd(c)
        return self.p.gcd(g).degree >= 1

    def eval_lam(self, lam0) -> KPoly:
        out = KPoly()
        power = ParamScalar.const(1)
        for j in range(self.lam_degree + 1):
            c = self.lam_coeffs.get(j)
            if c is not None:
                out = out + c.scale(power)
            power = power * lam0
        return out

    def has_root(self, lam0: int) -> bool:
        return self.p.gcd(self.eval_lam(ParamScalar.const(lam0))).degree >= 1

    def integer_roots(self) -> List[int]:
        if self.degenerate():
            raise UnsupportedPlace(
                f"degenerate indicial resultant at place {self.p}")
        cands = self._candidates()
        return sorted(c for c in cands if self.has_root(c))

    def _candidates(self):
        lam = sympy.Symbol("lam")
        polys = []
        t0 = 1
        while len(polys) < 2 and t0 < 60:
            img = self._sample_resultant(t0, lam)
            if img is not None:
                polys.append(img)
            t0 += 1
        if not polys:
            raise UnsupportedPlace(
                f"could not specialize the resultant at place {self.p}")
        g = sympy.gcd(polys[0], polys[1]) if len(polys) > 1 else polys[0]
        g = sympy.Poly(g, lam)
        out = set()
        for root, _m in g.ground_roots().items():
            if root == int(root):
                out.add(int(root))
        return out

    def _sample_resultant(self, t0: int, lam):
        """Res_x(p, I_p) at t = t0 as a sympy polynomial in lam, or None."""
        xs = sympy.Symbol("xs")
        try:
            p_img = sum(sympy.Rational(str(c.eval_t(Q(t0)))) * xs ** i
                        for i, c in enumerate(self.p.c))
            i_img = sympy.Integer(0)
            for j, c in self.lam_coeffs.items():
                cj = sum(sympy.Rational(str(v.eval_t(Q(t0)))) * xs ** i
                         for i, v in enumerate(c.c))
                i_img += cj * lam ** j
        except Exception:
            return None
        if i_img == 0:
            return None
        res = sympy.resultant(sympy.Poly(p_img, xs),
                              sympy.Poly(i_img, xs, lam).as_poly(xs), xs)
        res = sympy.Poly(res, lam)
        if res.is_zero:
            return None
        return res

    def exact_polynomial(self) -> KPoly:
        """N(lam) = Res_x(p, I_p) computed exactly by lam-interpolation."""
        if self.degenerate():
            raise UnsupportedPlace(
                f"degenerate indicial resultant at place {self.p}")
        deg = self.p.degree * max(self.lam_degree, 0)
        points = []
        values = []
        for lam0 in range(deg + 1):
            g = self.eval_lam(ParamScalar.const(lam0))
            points.append(ParamScalar.const(lam0))
            values.append(_resultant_k(self.p, g))
        return _lagrange(points, values)


def _resultant_k(f: KPoly, g: KPoly) -> ParamScalar:
    """Resultant of two polynomials over k via the Euclidean recursion."""
    if f.is_zero() or g.is_zero():
        return ParamScalar.const(0)
    sign = 1
    res = ParamScalar.const(1)
    while True:
        df, dg = int(f.degree), int(g.degree)
        if dg == 0:
            return res * g.lc() ** df * (1 if sign > 0 else -1)
        if df < dg:
            f, g = g, f
            if df % 2 == 1 and dg % 2 == 1:
                sign = -sign
            continue
        _, r = f.divmod(g)
        if r.is_zero():
            return ParamScalar.const(0)
        dr = int(r.degree)
        res = res * g.lc() ** (df - dr)
        if df % 2 == 1 and dg % 2 == 1:
            sign = -sign
        f, g = g, r


def _lagrange(points: List[ParamScalar], values: List[ParamScalar]) -> KPoly:
    out = KPoly()
    for i, (xi, yi) in enumerate(zip(points, values)):
        if yi.is_zero():
            continue
        numer = KPoly.const(1)
        denom = ParamScalar.const(1)
        for j, xj in enumerate(points):
            if j != i:
                numer = numer * (KPoly.x() - KPoly.const(xj))
                denom = denom * (xi - xj)
        out = out + numer.scale(yi / denom)
    return out


def indicial_data(op: OreOperator, place) -> KPoly:
    """Indicial polynomial N(lam) over k at a finite place or at infinity.

    `place` is a KPoly (monic squarefree, or x - r), a ParamScalar r
    standing for the place x - r, or the string "infinity".
    """
    if op.is_zero():
        raise ValueError("zero operator has no indicial data")
    if place == INFINITY:
        coeffs, _ = _clear_denominators(_infinity_transform(op), None)
        n, _sigma = _indicial_linear(coeffs, KPoly.x())
        if n.is_zero():
            raise UnsupportedPlace("degenerate indicial polynomial at infinity")
        return n
    if isinstance(place, ParamScalar):
        place = KPoly.x() - KPoly.const(place)
    if isinstance(place, FieldElem):
        place = KPoly.x() - KPoly.const(place.as_scalar())
    place = place.monic()
    coeffs, _ = _clear_denominators(op, None)
    if place.degree == 1:
        n, _sigma = _indicial_linear(coeffs, place)
        if n.is_zero():
            raise UnsupportedPlace(f"degenerate indicial polynomial at {place}")
        return n
    return _ResultantPlace(coeffs, place).exact_polynomial()


def _infinity_transform(op: OreOperator) -> OreOperator:
    """Image of the operator under x -> 1/w, d/dx -> -w^2 d/dw."""
    w = FieldElem.x()
    d = OreOperator.d()
    dw = OreOperator.from_field(-w * w) * d
    out = OreOperator.zero()
    power = OreOperator((FieldElem.const(1),))
    for i, a in enumerate(op.coeffs):
        if i:
            power = dw * power
        if a.is_zero():
            continue
        a_inv = _substitute_inverse(a)
        out = out + OreOperator.from_field(a_inv) * power
    return out


def _substitute_inverse(a: FieldElem) -> FieldElem:
    """a(1/w) as an element of K in the variable w (reusing x)."""
    w = FieldElem.x()
    num = FieldElem.const(0)
    inv = 1 / w
    for i in range(len(a.num.c) - 1, -1, -1):
        num = num * inv + FieldElem.from_scalar(a.num.c[i])
    den = FieldElem.const(0)
    for i in range(len(a.den.c) - 1, -1, -1):
        den = den * inv + FieldElem.from_scalar(a.den.c[i])
    return num / den


# ---------------------------------------------------------------------------
# universal denominator and the scalar solver


def universal_denominator(op: OreOperator, rhs: Optional[FieldElem] = None,
                          max_degree: int = DEFAULT_MAX_DEGREE) -> KPoly:
    """Polynomial d with den(y) | d for every rational solution of L(y)=rhs."""
    if op.is_zero():
        raise ValueError("zero operator")
    coeffs, rhs_poly = _clear_denominators(op, rhs)
    lead = coeffs[-1]
    d = KPoly.const(1)
    for p, _mult in squarefree_factors(lead):
        bound = _place_bound(coeffs, rhs_poly, p)
        if bound * p.degree > max_degree:
            raise BudgetExceeded(
                f"pole bound {bound} at place {p} exceeds cap {max_degree}")
        for _ in range(bound):
            d = d * p
    return d


def _place_bound(coeffs: List[KPoly], rhs_poly: Optional[KPoly], p: KPoly) -> int:
    if p.degree == 1:
        n, sigma = _indicial_linear(coeffs, p)
        if n.is_zero():
            raise UnsupportedPlace(f"degenerate indicial polynomial at {p}")
        roots = integer_roots(n)
    else:
        rp = _ResultantPlace(coeffs, p)
        sigma = rp.sigma
        roots = rp.integer_roots()
    bound = 0
    if roots:
        bound = max(bound, -min(roots))
    if rhs_poly is not None and not rhs_poly.is_zero():
        w = rhs_poly.valuation(p)
        bound = max(bound, sigma - w)
    return bound


def _poly_elem(p: KPoly) -> FieldElem:
    return FieldElem(p)


def rational_solutions_scalar(op: OreOperator, rhs: Optional[FieldElem] = None,
                              max_degree: int = DEFAULT_MAX_DEGREE) -> SolutionSpace:
    """The complete k-space of rational solutions of L(y) = 0, plus one
    particular solution of L(y) = rhs when it exists."""
    if op.is_zero():
        raise ValueError("zero operator")
    if rhs is not None and rhs.is_zero():
        rhs = None
    if op.order == 0:
        particular = None
        if rhs is not None:
            y = rhs / op.coeffs[0]
            particular = (y,)
        return SolutionSpace([], particular, KPoly.const(1), 0)

    denom = universal_denominator(op, rhs, max_degree)
    denom_elem = _poly_elem(denom)

    # substitute y = z / d and clear denominators again
    shifted = op * OreOperator.from_field(1 / denom_elem)
    coeffs, rhs_poly = _clear_denominators(shifted, rhs)

    n_order = int(op.order)
    degs = {i: int(c.degree) for i, c in enumerate(coeffs) if not c.is_zero()}
    tau = max(degs[i] - i for i in degs)
    n_inf = KPoly()
    for i in degs:
        if degs[i] - i == tau:
            n_inf = n_inf + _falling_factorial_poly(i).scale(coeffs[i].lc())
    if n_inf.is_zero():
        raise UnsupportedPlace("degenerate indicial polynomial at infinity")
    roots = integer_roots(n_inf)
    bound = max(roots) if roots else -1
    if rhs_poly is not None and not rhs_poly.is_zero():
        bound = max(bound, int(rhs_poly.degree) - tau)
    if bound > max_degree:
        raise BudgetExceeded(f"degree bound {bound} exceeds cap {max_degree}")

    basis_vecs: List[Tuple[FieldElem, ...]] = []
    particular: Optional[Tuple[FieldElem, ...]] = None
    if bound >= 0:
        images = []
        for j in range(bound + 1):
            img = KPoly()
            for i in degs:
                f = _falling_int(j, i)
                if f:
                    img = img + coeffs[i].scale(ParamScalar.const(f)).shift(j - i) \
                        if j - i >= 0 else img
            images.append(img)
        max_row = max([int(img.degree) for img in images if not img.is_zero()]
                      + ([int(rhs_poly.degree)] if rhs_poly is not None and
                         not rhs_poly.is_zero() else [0]) + [0])
        a_rows = [[images[j].coeff(e) for j in range(bound + 1)]
                  for e in range(max_row + 1)]
        b_col = None
        if rhs_poly is not None:
            b_col = [rhs_poly.coeff(e) for e in range(max_row + 1)]
        part, null = _solve_k(a_rows, b_col)
        if rhs is not None and part is None:
            particular = None
        elif part is not None and rhs is not None:
            z = KPoly([c for c in part])
            particular = (_poly_elem(z) / denom_elem,)
        for vec in null:
            z = KPoly([c for c in vec])
            if z.is_zero():
                continue
            basis_vecs.append((_poly_elem(z) / denom_elem,))
    elif rhs is not None:
        particular = None

    # exact verification; completeness is certified by the bounds
    for (y,) in basis_vecs:
        assert op.apply(y).is_zero(), "homogeneous residual must vanish"
    if particular is not None:
        assert (op.apply(particular[0]) - rhs).is_zero(), \
            "particular residual must vanish"
    assert len(basis_vecs) <= n_order
    return SolutionSpace(basis_vecs, particular, denom, max(bound, -1),
                         diagnostics={"degree_bound": bound,
                                      "denominator": str(denom)})


def _complexity(v: ParamScalar) -> int:
    return len(v.num.c) + len(v.den.c)


def _solve_k(a_rows: List[List[ParamScalar]], b_col: Optional[List[ParamScalar]]):
    """Solve A c = b over k; returns (particular or None, nullspace basis).

    When b_col is None only the nullspace is computed (particular = zero).
    """
    zero = ParamScalar.const(0)
    rows = [list(r) for r in a_rows]
    ncols = len(rows[0]) if rows else 0
    b = list(b_col) if b_col is not None else [zero] * len(rows)
    pivots: List[Tuple[int, int]] = []  # (row, col)
    rank = 0
    for col in range(ncols):
        best = None
        for r in range(rank, len(rows)):
            if not rows[r][col].is_zero():
                if best is None or _complexity(rows[r][col]) < _complexity(rows[best][col]):
                    best = r
        if best is None:
            continue
        rows[rank], rows[best] = rows[best], rows[rank]
        b[rank], b[best] = b[best], b[rank]
        inv = rows[rank][col].invert()
        rows[rank] = [v * inv for v in rows[rank]]
        b[rank] = b[rank] * inv
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[rank])]
                b[r] = b[r] - f * b[rank]
        pivots.append((rank, col))
        rank += 1
    # consistency
    particular = None
    consistent = all(b[r].is_zero() for r in range(rank, len(rows)))
    if consistent:
        sol = [zero] * ncols
        for r, c in pivots:
            sol[c] = b[r]
        particular = sol
    pivot_cols = {c for _, c in pivots}
    null = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = [zero] * ncols
        vec[free] = ParamScalar.const(1)
        for r, c in pivots:
            vec[c] = -rows[r][free]
        null.append(vec)
    return particular, null


def rational_solutions_system(s: DiffSystem, seed: int = 0,
                              max_degree: int = DEFAULT_MAX_DEGREE) -> SolutionSpace:
    """Complete k-basis of rational solution vectors of dY = A Y."""
    from .linsys import augment

    if not s.homogeneous:
        s = augment(s)
    n = s.size
    if n == 1:
        return _system_from_scalar_basis(
            s, OreOperator((-s.A[0, 0], FieldElem.const(1))),
            MatrixK.identity(1), max_degree)
    op, t_mat = cyclic_vector(s, seed=seed)
    return _system_from_scalar_basis(s, op, t_mat, max_degree)


def _system_from_scalar_basis(s: DiffSystem, op: OreOperator, t_mat: MatrixK,
                              max_degree: int) -> SolutionSpace:
    n = s.size
    scalar = rational_solutions_scalar(op, None, max_degree)
    basis = []
    for (u,) in scalar.basis:
        stack = [u]
        for _ in range(n - 1):
            stack.append(stack[-1].d_x())
        col = MatrixK([[v] for v in stack])
        y = t_mat * col
        vec = tuple(y[i, 0] for i in range(n))
        resid = [vec[i].d_x() -
                 sum((s.A[i, j] * vec[j] for j in range(n)), FieldElem.const(0))
                 for i in range(n)]
        assert all(r.is_zero() for r in resid), "system residual must vanish"
        basis.append(vec)
    return SolutionSpace(basis, None, scalar.denominator_used,
                         scalar.degree_bound, dict(scalar.diagnostics))
