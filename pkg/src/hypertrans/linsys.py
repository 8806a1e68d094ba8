"""Linear differential systems dY = A Y and the module-level constructions.

Conventions, fixed once for the whole package:
  * vec() stacks columns, so hom(S1, S2) has matrix I (x) A2 - A1^T (x) I
    and tensor(S1, S2) has matrix A1 (x) I + I (x) A2;
  * gauge(S, P) reads Y = P X and returns dX = (P^-1 A P - P^-1 P') X.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import lcm as _ilcm
from typing import List, Optional, Sequence, Tuple

from .errors import (CyclicSearchExhausted, SingularExpansionPoint,
                     SingularGauge, ZeroRhs)
from .field import (FieldElem, KPoly, ParamScalar, QPoly, _bx_divexact,
                    _bx_mul, _bx_sub)


class MatrixK:
    """Dense matrix over K, row-major, immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: Sequence[Sequence[FieldElem]]):
        self.entries: Tuple[Tuple[FieldElem, ...], ...] = tuple(
            tuple(v if isinstance(v, FieldElem) else FieldElem.const(v) for v in row)
            for row in rows)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")

    @staticmethod
    def identity(n: int) -> "MatrixK":
        one, zero = FieldElem.const(1), FieldElem.const(0)
        return MatrixK([[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "MatrixK":
        z = FieldElem.const(0)
        return MatrixK([[z] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "MatrixK") -> "MatrixK":
        return MatrixK([[a + b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "MatrixK") -> "MatrixK":
        return MatrixK([[a - b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "MatrixK":
        return MatrixK([[-a for a in r] for r in self.entries])

    def __mul__(self, other: "MatrixK") -> "MatrixK":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append([sum((a * b for a, b in zip(row, col)), FieldElem.const(0))
                        for col in cols])
        return MatrixK(out)

    def scale(self, f: FieldElem) -> "MatrixK":
        return MatrixK([[f * a for a in r] for r in self.entries])

    def transpose(self) -> "MatrixK":
        return MatrixK(list(zip(*self.entries))) if self.entries else self

    def d_x(self) -> "MatrixK":
        return MatrixK([[a.d_x() for a in r] for r in self.entries])

    def d_t(self) -> "MatrixK":
        return MatrixK([[a.d_t() for a in r] for r in self.entries])

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.entries for a in r)

    def col(self, j: int) -> List[FieldElem]:
        return [r[j] for r in self.entries]

    def vec(self) -> List[FieldElem]:
        """Column-stacking vectorization."""
        return [self.entries[i][j] for j in range(self.cols) for i in range(self.rows)]

    @staticmethod
    def unvec(v: Sequence[FieldElem], rows: int, cols: int) -> "MatrixK":
        out = [[None] * cols for _ in range(rows)]
        for j in range(cols):
            for i in range(rows):
                out[i][j] = v[j * rows + i]
        return MatrixK(out)

    def inverse(self) -> "MatrixK":
        # Fraction-free Gauss-Jordan (one-step Bareiss): clear each row to an
        # integer bivariate representative in Z[t][x], keep entries there
        # through the elimination, and only build reduced fractions at the
        # very end.  Plain elimination over K reduces a fraction at every
        # arithmetic step and is far too slow beyond 3x3.
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        w: List[List] = []
        for i, row in enumerate(self.entries):
            d = KPoly.const(1)
            for v in row:
                g = d.gcd(v.den)
                d = d * v.den.divmod(g)[0]
            polys = [v.num * d.divmod(v.den)[0] for v in row]
            polys += [KPoly() if j != i else d for j in range(n)]
            w.append(_bx_clear_row(polys))
        prev = [[1]]
        for k in range(n):
            piv = next((r for r in range(k, n) if w[r][k]), None)
            if piv is None:
                raise SingularGauge("matrix is singular over K")
            if piv != k:
                w[k], w[piv] = w[piv], w[k]
            p = w[k][k]
            for i in range(n):
                if i == k:
                    continue
                f = w[i][k]
                row = w[i]
                for j in range(2 * n):
                    if j == k:
                        continue
                    row[j] = _bx_divexact(
                        _bx_sub(_bx_mul(p, row[j]), _bx_mul(f, w[k][j])), prev)
                row[k] = []
            prev = p
        return MatrixK([[FieldElem(_kpoly_from_bx(w[i][n + j]),
                                   _kpoly_from_bx(w[i][i]))
                         for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixK) and self.entries == other.entries

    def __str__(self):
        return "[" + "; ".join(", ".join(str(v) for v in r) for r in self.entries) + "]"

    def __repr__(self):
        return f"MatrixK({self})"


def _bx_clear_row(polys: Sequence[KPoly]) -> List[List[List[int]]]:
    """Scale a row of KPoly by a common k-unit so every entry lands in Z[t][x]."""
    dt = QPoly.const(1)
    for p in polys:
        for s in p.c:
            g = dt.gcd(s.den)
            dt = dt * s.den.divmod(g)[0]
    cleared = [[s.num * dt.divmod(s.den)[0] for s in p.c] for p in polys]
    di = 1
    for qc in cleared:
        for q in qc:
            for v in q.c:
                di = _ilcm(di, int(v.denominator))
    return [[[int(v * di) for v in q.c] for q in qc] for qc in cleared]


def _kpoly_from_bx(lst) -> KPoly:
    return KPoly([ParamScalar(QPoly(c)) for c in lst])


def kron(a: MatrixK, b: MatrixK) -> MatrixK:
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            row = []
            for j in range(a.cols):
                aij = a[i, j]
                row.extend(aij * b[k, l] for l in range(b.cols))
            out.append(row)
    return MatrixK(out)


def block_matrix(blocks: Sequence[Sequence[Optional[MatrixK]]]) -> MatrixK:
    """Assemble from a grid of blocks; None means a zero block."""
    row_sizes = [next(b.rows for b in brow if b is not None) for brow in blocks]
    col_sizes = [next(blocks[i][j].cols for i in range(len(blocks))
                      if blocks[i][j] is not None)
                 for j in range(len(blocks[0]))]
    out = []
    for bi, brow in enumerate(blocks):
        grid = [b if b is not None else MatrixK.zero(row_sizes[bi], col_sizes[bj])
                for bj, b in enumerate(brow)]
        for r in range(row_sizes[bi]):
            row = []
            for b in grid:
                row.extend(b.entries[r])
            out.append(row)
    return MatrixK(out)


@dataclass(frozen=True)
class DiffSystem:
    """dY = A Y (+ rhs)."""

    A: MatrixK
    rhs: Optional[Tuple[FieldElem, ...]] = None

    def __post_init__(self):
        if self.A.rows != self.A.cols:
            raise ValueError("system matrix must be square")
        if self.rhs is not None:
            object.__setattr__(self, "rhs", tuple(self.rhs))
            if len(self.rhs) != self.A.rows:
                raise ValueError("rhs length mismatch")

    @property
    def size(self) -> int:
        return self.A.rows

    @property
    def homogeneous(self) -> bool:
        return self.rhs is None or all(v.is_zero() for v in self.rhs)


@dataclass(frozen=True)
class ExtensionSystem:
    """Block-triangular system dY = [[A2, C], [0, A1]] Y for 0 -> L2 -> U -> L1 -> 0."""

    A2: MatrixK
    A1: MatrixK
    C: MatrixK

    def __post_init__(self):
        if self.A2.rows != self.A2.cols or self.A1.rows != self.A1.cols:
            raise ValueError("blocks must be square")
        if self.C.rows != self.A2.rows or self.C.cols != self.A1.rows:
            raise ValueError("extension block shape mismatch")

    @property
    def n2(self) -> int:
        return self.A2.rows

    @property
    def n1(self) -> int:
        return self.A1.rows

    def full_matrix(self) -> MatrixK:
        return block_matrix([[self.A2, self.C], [None, self.A1]])


# ---------------------------------------------------------------------------
# constructions


def direct_sum(s1: DiffSystem, s2: DiffSystem) -> DiffSystem:
    return DiffSystem(block_matrix([[s1.A, None], [None, s2.A]]))


def tensor(s1: DiffSystem, s2: DiffSystem) -> DiffSystem:
    i1 = MatrixK.identity(s1.size)
    i2 = MatrixK.identity(s2.size)
    return DiffSystem(kron(s1.A, i2) + kron(i1, s2.A))


def dual(s: DiffSystem) -> DiffSystem:
    return DiffSystem(-s.A.transpose())


def hom(s1: DiffSystem, s2: DiffSystem) -> DiffSystem:
    """System on vec(Z), Z in K^{n2 x n1}, realizing dZ = A2 Z - Z A1."""
    i1 = MatrixK.identity(s1.size)
    i2 = MatrixK.identity(s2.size)
    return DiffSystem(kron(i1, s2.A) - kron(s1.A.transpose(), i2))


def prolong(s: DiffSystem) -> DiffSystem:
    return DiffSystem(block_matrix([[s.A, s.A.d_t()], [None, s.A]]))


def reduce_extension(e: ExtensionSystem) -> DiffSystem:
    """Size n1*n2 + 1 system whose solutions (vec F, lam) satisfy
    dF = A2 F - F A1 + lam * C with lam a d/dx-constant."""
    h = hom(DiffSystem(e.A1), DiffSystem(e.A2)).A
    vc = MatrixK([[v] for v in e.C.vec()])
    zero_row = MatrixK.zero(1, h.cols + 1)
    top = block_matrix([[h, vc]])
    return DiffSystem(block_matrix([[top], [zero_row]]))


def extension_from_scalar(l, b: FieldElem) -> ExtensionSystem:
    """Extension encoding L(y) = b: A2 = companion(L), A1 = [[0]],
    C = (b / lc(L)) * e_n, matching the monic normalization of the
    companion form."""
    from .ore import companion

    if b.is_zero():
        raise ZeroRhs("the inhomogeneity must be a nonzero element of K")
    a2 = companion(l).A
    n = a2.rows
    zero = FieldElem.const(0)
    b = b / l.coeffs[-1]
    c = MatrixK([[b if i == n - 1 else zero] for i in range(n)])
    return ExtensionSystem(a2, MatrixK([[zero]]), c)


def gauge(s: DiffSystem, p: MatrixK) -> DiffSystem:
    """Change of basis Y = P X; requires P invertible over K."""
    pinv = p.inverse()
    return DiffSystem(pinv * s.A * p - pinv * p.d_x())


def augment(s: DiffSystem) -> DiffSystem:
    """Homogenize an inhomogeneous system by the standard size-(n+1) trick."""
    if s.rhs is None:
        return s
    col = MatrixK([[v] for v in s.rhs])
    zero_row = MatrixK.zero(1, s.size + 1)
    top = block_matrix([[s.A, col]])
    return DiffSystem(block_matrix([[top], [zero_row]]))


# ---------------------------------------------------------------------------
# cyclic vector


def _row_times_matrix(row: List[FieldElem], a: MatrixK) -> List[FieldElem]:
    return [sum((row[i] * a[i, j] for i in range(a.rows)), FieldElem.const(0))
            for j in range(a.cols)]


def _independent_rows(rows: List[List[FieldElem]]) -> bool:
    n = len(rows)
    a = [list(r) for r in rows]
    for col_rank, _ in enumerate(range(n)):
        piv = None
        pcol = None
        for c in range(len(a[0])):
            for r in range(col_rank, n):
                if not a[r][c].is_zero():
                    piv, pcol = r, c
                    break
            if piv is not None:
                break
        if piv is None:
            return False
        a[col_rank], a[piv] = a[piv], a[col_rank]
        inv = a[col_rank][pcol].invert()
        a[col_rank] = [v * inv for v in a[col_rank]]
        for r in range(n):
            if r != col_rank and not a[r][pcol].is_zero():
                f = a[r][pcol]
                a[r] = [v - f * w for v, w in zip(a[r], a[col_rank])]
    return True


def _candidate_rows(n: int, seed: int):
    """Start vectors: standard basis first, then small polynomial vectors."""
    zero, one = FieldElem.const(0), FieldElem.const(1)
    for i in range(n):
        yield [one if j == i else zero for j in range(n)]
    x = FieldElem.x()
    rng = random.Random(seed)
    while True:
        yield [FieldElem.const(rng.randint(-2, 2)) +
               FieldElem.const(rng.randint(-1, 1)) * x ** rng.randint(1, 2)
               for _ in range(n)]


def cyclic_vector(s: DiffSystem, seed: int = 0, budget: int = 64):
    """Returns (L, T) with gauge(s, T) = companion(L) and ord L = size of s.

    The rows c_0 = e, c_{k+1} = c_k' + c_k A span K^n for a cyclic covector
    e; T is the inverse of the matrix R with rows c_k.
    """
    from .ore import OreOperator

    n = s.size
    tried = 0
    for start in _candidate_rows(n, seed):
        tried += 1
        if tried > budget:
            break
        rows = [start]
        for _ in range(n - 1):
            prev = rows[-1]
            rows.append([v.d_x() + w for v, w in
                         zip(prev, _row_times_matrix(prev, s.A))])
        if not _independent_rows(rows):
            continue
        last = rows[-1]
        c_n = [v.d_x() + w for v, w in zip(last, _row_times_matrix(last, s.A))]
        t_mat = MatrixK(rows).inverse()
        # c_n = sum beta_k c_k, i.e. beta = c_n * R^-1; then L = D^n - sum beta_k D^k
        beta = _row_times_matrix(c_n, t_mat)
        op = OreOperator([-beta[k] for k in range(n)] + [FieldElem.const(1)])
        return op, t_mat
    raise CyclicSearchExhausted(f"no cyclic vector found in {budget} attempts")


# ---------------------------------------------------------------------------
# power-series oracle


def _series_inv(c: List[ParamScalar], order: int) -> List[ParamScalar]:
    if not c or c[0].is_zero():
        raise SingularExpansionPoint("series has no invertible constant term")
    inv0 = c[0].invert()
    out = [inv0]
    for m in range(1, order):
        acc = ParamScalar.const(0)
        for j in range(1, m + 1):
            cj = c[j] if j < len(c) else ParamScalar.const(0)
            acc = acc + cj * out[m - j]
        out.append(-inv0 * acc)
    return out


def _elem_series(f: FieldElem, x0: ParamScalar, order: int) -> List[ParamScalar]:
    """Taylor coefficients of f at x = x0 up to (excluding) the given order."""
    num = f.num.compose_shift(x0)
    den = f.den.compose_shift(x0)
    dc = list(den.c) + [ParamScalar.const(0)] * max(0, order - len(den.c))
    if den.eval(ParamScalar.const(0)).is_zero():
        raise SingularExpansionPoint(f"denominator of {f} vanishes at x0")
    inv = _series_inv(dc[:order], order)
    nc = list(num.c) + [ParamScalar.const(0)] * max(0, order - len(num.c))
    out = []
    for m in range(order):
        acc = ParamScalar.const(0)
        for j in range(m + 1):
            acc = acc + nc[j] * inv[m - j]
        out.append(acc)
    return out


class SeriesMatrix:
    """Truncated matrix power series at x = x0: sum_m C_m (x - x0)^m, m < order.

    Coefficient matrices live over k = Q(t) (lists of lists of ParamScalar).
    """

    __slots__ = ("x0", "order", "coeffs", "rows", "cols")

    def __init__(self, x0: ParamScalar, order: int, coeffs):
        self.x0 = x0
        self.order = order
        self.coeffs = [tuple(tuple(r) for r in c) for c in coeffs]
        if not self.coeffs:
            raise ValueError("series needs at least the constant coefficient")
        zero = ParamScalar.const(0)
        pad = tuple(tuple(zero for _ in row) for row in self.coeffs[0])
        while len(self.coeffs) < order:
            self.coeffs.append(pad)
        self.rows = len(self.coeffs[0])
        self.cols = len(self.coeffs[0][0]) if self.rows else 0

    @staticmethod
    def identity(n: int, x0: ParamScalar, order: int) -> "SeriesMatrix":
        one, zero = ParamScalar.const(1), ParamScalar.const(0)
        c0 = [[one if i == j else zero for j in range(n)] for i in range(n)]
        zc = [[zero] * n for _ in range(n)]
        return SeriesMatrix(x0, order, [c0] + [zc] * (order - 1))

    @staticmethod
    def from_matrix(a: MatrixK, x0: ParamScalar, order: int) -> "SeriesMatrix":
        per_entry = [[_elem_series(a[i, j], x0, order) for j in range(a.cols)]
                     for i in range(a.rows)]
        coeffs = [[[per_entry[i][j][m] for j in range(a.cols)]
                   for i in range(a.rows)] for m in range(order)]
        return SeriesMatrix(x0, order, coeffs)

    def coeff(self, m: int):
        return self.coeffs[m]

    def _zip(self, other, fn):
        out = [[[fn(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(c1, c2)]
               for c1, c2 in zip(self.coeffs, other.coeffs)]
        return SeriesMatrix(self.x0, min(self.order, other.order), out)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        order = min(self.order, other.order)
        zero = ParamScalar.const(0)
        out = []
        for m in range(order):
            acc = [[zero] * other.cols for _ in range(self.rows)]
            for j in range(m + 1):
                a, b = self.coeffs[j], other.coeffs[m - j]
                for i in range(self.rows):
                    for l in range(other.cols):
                        s = acc[i][l]
                        for kk in range(self.cols):
                            aik = a[i][kk]
                            if not aik.is_zero():
                                s = s + aik * b[kk][l]
                        acc[i][l] = s
            out.append(acc)
        return SeriesMatrix(self.x0, order, out)

    def d_x(self) -> "SeriesMatrix":
        out = []
        for m in range(1, self.order):
            out.append([[v * m for v in row] for row in self.coeffs[m]])
        zero = ParamScalar.const(0)
        out.append([[zero] * self.cols for _ in range(self.rows)])
        return SeriesMatrix(self.x0, self.order, out)

    def d_t(self) -> "SeriesMatrix":
        # entries are functions of t; x0 must be t-free for this to be the
        # honest parameter derivative of the series (we only use x0 in Q)
        return SeriesMatrix(self.x0, self.order,
                            [[[v.d_t() for v in row] for row in c]
                             for c in self.coeffs])

    def transpose(self) -> "SeriesMatrix":
        return SeriesMatrix(self.x0, self.order,
                            [list(zip(*c)) for c in self.coeffs])

    def inverse(self) -> "SeriesMatrix":
        """Series inverse; the constant term must be invertible over k."""
        n = self.rows
        c0 = [list(r) for r in self.coeffs[0]]
        inv0 = _k_matrix_inverse(c0)
        inv_coeffs = [inv0]
        zero = ParamScalar.const(0)
        for m in range(1, self.order):
            acc = [[zero] * n for _ in range(n)]
            for j in range(1, m + 1):
                cj = self.coeffs[j]
                prev = inv_coeffs[m - j]
                for i in range(n):
                    for l in range(n):
                        s = acc[i][l]
                        for kk in range(n):
                            s = s + cj[i][kk] * prev[kk][l]
                        acc[i][l] = s
            term = _k_matmul(inv0, acc)
            inv_coeffs.append([[-v for v in row] for row in term])
        return SeriesMatrix(self.x0, self.order, inv_coeffs)

    def truncate(self, order: int) -> "SeriesMatrix":
        return SeriesMatrix(self.x0, order, self.coeffs[:order])

    def is_zero_mod(self, order: int) -> bool:
        return all(v.is_zero() for c in self.coeffs[:order] for row in c for v in row)


def _k_matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    zero = ParamScalar.const(0)
    out = [[zero] * p for _ in range(n)]
    for i in range(n):
        for kk in range(m):
            aik = a[i][kk]
            if not aik.is_zero():
                for j in range(p):
                    out[i][j] = out[i][j] + aik * b[kk][j]
    return out


def _k_matrix_inverse(a):
    n = len(a)
    a = [list(r) for r in a]
    zero, one = ParamScalar.const(0), ParamScalar.const(1)
    inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            raise SingularExpansionPoint("constant term not invertible")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        s = a[col][col].invert()
        a[col] = [v * s for v in a[col]]
        inv[col] = [v * s for v in inv[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                inv[r] = [v - f * w for v, w in zip(inv[r], inv[col])]
    return inv


def series_fundamental(s: DiffSystem, x0: ParamScalar, order: int) -> SeriesMatrix:
    """Truncated fundamental matrix U with U(x0) = I and dU = A U mod (x-x0)^order."""
    n = s.size
    a_series = SeriesMatrix.from_matrix(s.A, x0, order)
    zero, one = ParamScalar.const(0), ParamScalar.const(1)
    u = [[[one if i == j else zero for j in range(n)] for i in range(n)]]
    for m in range(order - 1):
        acc = [[zero] * n for _ in range(n)]
        for j in range(m + 1):
            prod = _k_matmul(a_series.coeffs[j], u[m - j])
            for i in range(n):
                for l in range(n):
                    acc[i][l] = acc[i][l] + prod[i][l]
        inv = ParamScalar.const(1) / (m + 1)
        u.append([[v * inv for v in row] for row in acc])
    return SeriesMatrix(x0, order, u)


def series_residual(s: DiffSystem, u: SeriesMatrix) -> SeriesMatrix:
    """dU - A U as a series (valid one order lower than U)."""
    a_series = SeriesMatrix.from_matrix(s.A, u.x0, u.order)
    return u.d_x() - a_series * u
