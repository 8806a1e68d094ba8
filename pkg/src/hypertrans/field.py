"""Exact arithmetic for k = Q(t) and K = Q(t)(x) with the derivations d/dx, d/dt.

Everything is kept in canonical reduced form: fractions are reduced by
polynomial gcd and denominators are monic, so equality of elements is
equality of representatives.  All values are immutable.

The gcd kernel clears denominators and runs a primitive polynomial
remainder sequence over Z (resp. Z[t]) to avoid the coefficient blowup of
naive fraction Euclid.
"""

from __future__ import annotations

from math import gcd as _igcd
from typing import Iterable, Tuple

from .errors import DivisionByZero, PoleAtPoint

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# integer polynomial kernel (lists of int, low-to-high, trimmed)

def _zp_trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _zp_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _zp_trim(out)


def _zp_content(a):
    g = 0
    for c in a:
        g = _igcd(g, c)
    return g


def _zp_prim(a):
    g = _zp_content(a)
    if g in (0, 1):
        return list(a)
    return [c // g for c in a]


def _zp_prem(a, b):
    """Pseudo-remainder of a by b over Z."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da, la = len(a) - 1, a[-1]
        a = [c * lb for c in a]
        shift = da - db
        for j, bj in enumerate(b):
            a[shift + j] -= la * bj
        a = _zp_trim(a)
    return a


def _zp_gcd(a, b):
    a, b = _zp_trim(list(a)), _zp_trim(list(b))
    if not a:
        return [-c for c in b] if b and b[-1] < 0 else b
    if not b:
        return [-c for c in a] if a and a[-1] < 0 else a
    if len(a) == 1 or len(b) == 1:
        return [_igcd(_zp_content(a), _zp_content(b))]
    cont = _igcd(_zp_content(a), _zp_content(b))
    a, b = _zp_prim(a), _zp_prim(b)
    while b:
        r = _zp_prem(a, b)
        a, b = b, _zp_prim(r)
    if a[-1] < 0:
        a = [-c for c in a]
    return [c * cont for c in a]


# bivariate kernel: polynomials in x whose coefficients are Z[t] int lists

def _bx_trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return c[:n]


def _bx_scale(a, s):
    """Multiply every x-coefficient (a Z[t] list) by the Z[t] list s."""
    return [_zp_mul(c, s) for c in a]


def _bx_prem(a, b):
    a = [list(c) for c in a]
    db, lb = len(b) - 1, b[-1]
    while a and len(a) - 1 >= db:
        da, la = len(a) - 1, a[-1]
        a = [_zp_mul(c, lb) for c in a]
        shift = da - db
        for j, bj in enumerate(b):
            prod = _zp_mul(la, bj)
            cur = a[shift + j]
            m = max(len(cur), len(prod))
            cur = cur + [0] * (m - len(cur))
            for i2, p in enumerate(prod):
                cur[i2] -= p
            a[shift + j] = _zp_trim(cur)
        a = _bx_trim(a)
    return a


def _bx_content(a):
    g = []
    for c in a:
        g = _zp_gcd(g, c)
    return g


def _bx_divexact_zp(a, g):
    """Divide every x-coefficient exactly by the Z[t] list g."""
    out = []
    for c in a:
        q, r = _zp_divmod_exact(c, g)
        out.append(q)
    return out


def _zp_divmod_exact(a, b):
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    db, lb = len(b) - 1, b[-1]
    while a and len(a) - 1 >= db:
        la = a[-1]
        if la % lb != 0:
            raise ArithmeticError("inexact Z[t] division")
        coef = la // lb
        shift = len(a) - 1 - db
        q[shift] = coef
        for j, bj in enumerate(b):
            a[shift + j] -= coef * bj
        a = _zp_trim(a)
    if a:
        raise ArithmeticError("inexact Z[t] division")
    return q, a


def _bx_prim(a):
    a = _bx_trim(a)
    if not a:
        return a
    g = _bx_content(a)
    if len(g) == 1 and g[0] in (1, -1):
        return a
    return _bx_divexact_zp(a, g)


def _bx_mul(a, b):
    if not a or not b:
        return []
    out = [[] for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if not cb:
                continue
            p = _zp_mul(ca, cb)
            tgt = out[i + j]
            if len(tgt) < len(p):
                tgt.extend([0] * (len(p) - len(tgt)))
            for k, v in enumerate(p):
                tgt[k] += v
    return _bx_trim([_zp_trim(c) for c in out])


def _bx_sub(a, b):
    m = max(len(a), len(b))
    out = []
    for i in range(m):
        ca = a[i] if i < len(a) else []
        cb = b[i] if i < len(b) else []
        mm = max(len(ca), len(cb))
        c = [(ca[j] if j < len(ca) else 0) - (cb[j] if j < len(cb) else 0)
             for j in range(mm)]
        out.append(_zp_trim(c))
    return _bx_trim(out)


def _bx_divexact(a, b):
    """Exact division in Z[t][x]; raises ArithmeticError if inexact."""
    a = [list(c) for c in a]
    if not b:
        raise ZeroDivisionError("bivariate division by zero")
    db, lb = len(b) - 1, b[-1]
    if len(a) - 1 < db:
        if _bx_trim(a):
            raise ArithmeticError("inexact bivariate division")
        return []
    q = [[] for _ in range(len(a) - db)]
    for k in range(len(a) - 1 - db, -1, -1):
        c = _zp_trim(a[k + db])
        if not c:
            continue
        qc, _ = _zp_divmod_exact(c, lb)
        q[k] = qc
        for j, bj in enumerate(b):
            if not bj:
                continue
            p = _zp_mul(qc, bj)
            cur = a[k + j]
            if len(cur) < len(p):
                cur.extend([0] * (len(p) - len(cur)))
            for i2, v in enumerate(p):
                cur[i2] -= v
    for j in range(db):
        if _zp_trim(a[j]):
            raise ArithmeticError("inexact bivariate division")
    return _bx_trim(q)


def _zp_eval(c, t0):
    v = 0
    for co in reversed(c):
        v = v * t0 + co
    return v


def _bx_gcd(a, b):
    """Gcd in x of two primitive bivariate polynomials, up to a k-unit."""
    a, b = _bx_trim(a), _bx_trim(b)
    if not a:
        return b
    if not b:
        return a
    a, b = _bx_prim(a), _bx_prim(b)
    # Specializing t can only enlarge the gcd (when it preserves the leading
    # terms), so a coprime image proves coprimality and skips the PRS, whose
    # pseudo-remainders are expensive for inputs of even moderate degree.
    for t0 in (2, 3, 5, 7, 11):
        if _zp_eval(a[-1], t0) and _zp_eval(b[-1], t0):
            ga = _zp_gcd([_zp_eval(c, t0) for c in a],
                         [_zp_eval(c, t0) for c in b])
            if len(ga) == 1:
                return [[1]]
            break
    if max(len(a), len(b)) > 4 or max(len(c) for c in a + b) > 4:
        return _bx_gcd_modular(a, b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _bx_prem(a, b)
        a, b = b, _bx_prim(r)
    return a


def _bx_gcd_modular(a, b):
    """Nontrivial bivariate gcd via sympy; the primitive PRS blows up here."""
    import sympy
    ts, xs = sympy.symbols("t x")
    def lift(p):
        return sympy.Poly.from_dict(
            {(i, j): c for i, cl in enumerate(p) for j, c in enumerate(cl) if c},
            xs, ts)
    g = lift(a).gcd(lift(b))
    out: list = []
    for (i, j), c in g.terms():
        while len(out) <= i:
            out.append([])
        cl = out[i]
        while len(cl) <= j:
            cl.append(0)
        cl[j] = int(c)
    return _bx_trim([_zp_trim(c) for c in out])


# ---------------------------------------------------------------------------
# Q[t]


class QPoly:
    """Univariate polynomial in t with rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Q(v) for v in coeffs]
        n = len(c)
        while n and c[n - 1] == 0:
            n -= 1
        self.c: Tuple = tuple(c[:n])

    @staticmethod
    def const(v) -> "QPoly":
        return QPoly((Q(v),))

    @staticmethod
    def t() -> "QPoly":
        return QPoly((0, 1))

    @property
    def degree(self):
        return len(self.c) - 1 if self.c else NEG_INF

    def is_zero(self) -> bool:
        return not self.c

    def lc(self):
        return self.c[-1] if self.c else Q(0)

    def __add__(self, other: "QPoly") -> "QPoly":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return QPoly(out)

    def __neg__(self) -> "QPoly":
        return QPoly(tuple(-v for v in self.c))

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other: "QPoly") -> "QPoly":
        a, b = self.c, other.c
        if not a or not b:
            return QPoly()
        out = [Q(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return QPoly(out)

    def scale(self, s) -> "QPoly":
        return QPoly(tuple(v * s for v in self.c))

    def divmod(self, other: "QPoly"):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        a = list(self.c)
        b = other.c
        db, lb = len(b) - 1, b[-1]
        q = [Q(0)] * max(0, len(a) - db)
        while a and len(a) - 1 >= db:
            coef = a[-1] / lb
            shift = len(a) - 1 - db
            q[shift] = coef
            for j, bj in enumerate(b):
                a[shift + j] -= coef * bj
            while a and a[-1] == 0:
                a.pop()
        return QPoly(q), QPoly(a)

    def _int_image(self):
        """Clear Fraction denominators; returns list of int (up to Q-unit)."""
        if not self.c:
            return []
        m = 1
        for v in self.c:
            d = int(v.denominator)
            m = m * d // _igcd(m, d)
        return [int(v * m) for v in self.c]

    def gcd(self, other: "QPoly") -> "QPoly":
        g = _zp_gcd(self._int_image(), other._int_image())
        if not g:
            return QPoly()
        p = QPoly(g)
        return p.scale(1 / p.lc())

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc())

    def deriv(self) -> "QPoly":
        return QPoly(tuple(self.c[i] * i for i in range(1, len(self.c))))

    def eval(self, v):
        acc = Q(0)
        for coef in reversed(self.c):
            acc = acc * v + coef
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"QPoly({list(self.c)})"


def _fmt_q(v) -> str:
    n, d = v.numerator, v.denominator
    return str(n) if d == 1 else f"{n}/{d}"


class ParamScalar:
    """Element of k = Q(t): a reduced fraction of QPoly with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: QPoly, den: QPoly = None, _reduced: bool = False):
        if den is None:
            den = QPoly.const(1)
        if den.is_zero():
            raise DivisionByZero("zero denominator in Q(t)")
        if num.is_zero():
            num, den = QPoly(), QPoly.const(1)
        elif not _reduced:
            if den.degree > 0:
                g = num.gcd(den)
                if g.degree > 0:
                    num, _ = num.divmod(g)
                    den, _ = den.divmod(g)
            lc = den.lc()
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        self.num = num
        self.den = den

    @staticmethod
    def const(v) -> "ParamScalar":
        return ParamScalar(QPoly.const(v), QPoly.const(1), _reduced=True)

    @staticmethod
    def t() -> "ParamScalar":
        return ParamScalar(QPoly.t(), QPoly.const(1), _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _coerce(self, other):
        if isinstance(other, ParamScalar):
            return other
        if isinstance(other, int):
            return ParamScalar.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.degree == 0 and other.den.degree == 0:
            return ParamScalar(self.num + other.num, QPoly.const(1),
                               _reduced=True)
        # with coprime denominators the cross sum is already reduced
        g = self.den.gcd(other.den)
        if g.degree == 0:
            return ParamScalar(self.num * other.den + other.num * self.den,
                               self.den * other.den, _reduced=True)
        d1, _ = self.den.divmod(g)
        d2, _ = other.den.divmod(g)
        return ParamScalar(self.num * d2 + other.num * d1,
                           self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n1, d1 = self.num, self.den
        n2, d2 = other.num, other.den
        if d2.degree > 0 and not n1.is_zero():
            g = n1.gcd(d2)
            if g.degree > 0:
                n1, _ = n1.divmod(g)
                d2, _ = d2.divmod(g)
        if d1.degree > 0 and not n2.is_zero():
            g = n2.gcd(d1)
            if g.degree > 0:
                n2, _ = n2.divmod(g)
                d1, _ = d1.divmod(g)
        den = d1 * d2
        lc = den.lc()
        num = n1 * n2
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        return ParamScalar(num, den, _reduced=True)

    __rmul__ = __mul__

    def invert(self) -> "ParamScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(t)")
        return ParamScalar(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        out = ParamScalar.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def d_t(self) -> "ParamScalar":
        return ParamScalar(self.num.deriv() * self.den - self.num * self.den.deriv(),
                           self.den * self.den)

    def eval_t(self, v):
        """Value at a rational t; raises PoleAtPoint on a denominator zero."""
        d = self.den.eval(v)
        if d == 0:
            raise PoleAtPoint(f"pole at t={v}")
        return self.num.eval(v) / d

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = ParamScalar.const(other)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        num = _fmt_qpoly(self.num, "t")
        if self.den == QPoly.const(1):
            return num
        return f"({num})/({_fmt_qpoly(self.den, 't')})"

    def __repr__(self):
        return f"ParamScalar({self})"


def _fmt_qpoly(p: QPoly, var: str) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.c) - 1, -1, -1):
        v = p.c[i]
        if v == 0:
            continue
        if i == 0:
            term = _fmt_q(v)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            term = mono if v == 1 else (f"-{mono}" if v == -1 else f"{_fmt_q(v)}*{mono}")
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


# ---------------------------------------------------------------------------
# k[x] and K = k(x)


class KPoly:
    """Univariate polynomial in x with ParamScalar coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[ParamScalar] = ()):
        c = list(coeffs)
        n = len(c)
        while n and c[n - 1].is_zero():
            n -= 1
        self.c: Tuple[ParamScalar, ...] = tuple(c[:n])

    @staticmethod
    def const(v) -> "KPoly":
        if isinstance(v, int):
            v = ParamScalar.const(v)
        return KPoly((v,))

    @staticmethod
    def x() -> "KPoly":
        return KPoly((ParamScalar.const(0), ParamScalar.const(1)))

    @property
    def degree(self):
        return len(self.c) - 1 if self.c else NEG_INF

    def is_zero(self) -> bool:
        return not self.c

    def lc(self) -> ParamScalar:
        return self.c[-1] if self.c else ParamScalar.const(0)

    def coeff(self, i: int) -> ParamScalar:
        return self.c[i] if 0 <= i < len(self.c) else ParamScalar.const(0)

    def __add__(self, other: "KPoly") -> "KPoly":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return KPoly(out)

    def __neg__(self) -> "KPoly":
        return KPoly(tuple(-v for v in self.c))

    def __sub__(self, other: "KPoly") -> "KPoly":
        return self + (-other)

    def __mul__(self, other: "KPoly") -> "KPoly":
        a, b = self.c, other.c
        if not a or not b:
            return KPoly()
        out = [ParamScalar.const(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai.is_zero():
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return KPoly(out)

    def scale(self, s: ParamScalar) -> "KPoly":
        return KPoly(tuple(v * s for v in self.c))

    def shift(self, k: int) -> "KPoly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return KPoly((ParamScalar.const(0),) * k + self.c)

    def divmod(self, other: "KPoly"):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        a = list(self.c)
        b = other.c
        db = len(b) - 1
        inv_lb = b[-1].invert()
        q = [ParamScalar.const(0)] * max(0, len(a) - db)
        while a and len(a) - 1 >= db:
            coef = a[-1] * inv_lb
            shift = len(a) - 1 - db
            q[shift] = coef
            for j, bj in enumerate(b):
                a[shift + j] = a[shift + j] - coef * bj
            while a and a[-1].is_zero():
                a.pop()
        return KPoly(q), KPoly(a)

    def _int_image(self):
        """Clear all t-denominators and Q-denominators; bivariate int lists."""
        if not self.c:
            return []
        den = QPoly.const(1)
        for v in self.c:
            g = den.gcd(v.den)
            extra, _ = v.den.divmod(g)
            den = den * extra
        rows = []
        m = 1
        cleared = []
        for v in self.c:
            q, r = den.divmod(v.den)
            assert r.is_zero()
            cleared.append(v.num * q)
        for p in cleared:
            for coef in p.c:
                d = int(coef.denominator)
                m = m * d // _igcd(m, d)
        for p in cleared:
            rows.append([int(coef * m) for coef in p.c])
        return rows

    def gcd(self, other: "KPoly") -> "KPoly":
        """Monic gcd in k[x]."""
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        g = _bx_gcd(self._int_image(), other._int_image())
        coeffs = [ParamScalar(QPoly([Q(v) for v in zp]), QPoly.const(1))
                  for zp in g]
        return KPoly(coeffs).monic()

    def monic(self) -> "KPoly":
        if self.is_zero():
            return self
        return self.scale(self.lc().invert())

    def deriv(self) -> "KPoly":
        return KPoly(tuple(self.c[i] * i for i in range(1, len(self.c))))

    def d_t(self) -> "KPoly":
        return KPoly(tuple(v.d_t() for v in self.c))

    def eval(self, v: ParamScalar) -> ParamScalar:
        acc = ParamScalar.const(0)
        for coef in reversed(self.c):
            acc = acc * v + coef
        return acc

    def compose_shift(self, x0: ParamScalar) -> "KPoly":
        """p(y + x0) as a polynomial in y, via repeated synthetic division."""
        work = list(self.c)
        out = []
        while work:
            if len(work) == 1:
                out.append(work[0])
                break
            quot = [None] * (len(work) - 1)
            quot[-1] = work[-1]
            for i in range(len(work) - 2, 0, -1):
                quot[i - 1] = work[i] + x0 * quot[i]
            out.append(work[0] + x0 * quot[0])
            work = quot
        return KPoly(out)

    def valuation(self, p: "KPoly") -> int:
        """Multiplicity of the monic polynomial p in self (self nonzero)."""
        v = 0
        cur = self
        while True:
            q, r = cur.divmod(p)
            if not r.is_zero():
                return v
            v += 1
            cur = q

    def __eq__(self, other) -> bool:
        return isinstance(other, KPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __str__(self):
        return _fmt_kpoly(self)

    def __repr__(self):
        return f"KPoly({self})"


def _fmt_kpoly(p: KPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.c) - 1, -1, -1):
        v = p.c[i]
        if v.is_zero():
            continue
        vs = str(v)
        simple = vs.lstrip("-").replace("/", "").replace(".", "").isdigit() or (
            "(" not in vs and "+" not in vs and " - " not in vs)
        coef = vs if simple else f"({vs})"
        if i == 0:
            parts.append(coef)
        else:
            mono = "x" if i == 1 else f"x^{i}"
            parts.append(mono if vs == "1" else f"{coef}*{mono}")
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-") and not term.startswith("-("):
            out += f" - {term[1:]}"
        else:
            out += f" + {term}"
    return out


class FieldElem:
    """Element of K = Q(t)(x): reduced fraction of KPoly, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: KPoly, den: KPoly = None, _reduced: bool = False):
        if den is None:
            den = KPoly.const(1)
        if den.is_zero():
            raise DivisionByZero("zero denominator in K")
        if num.is_zero():
            num, den = KPoly(), KPoly.const(1)
        elif not _reduced:
            g = num.gcd(den)
            if g.degree > 0:
                num, _ = num.divmod(g)
                den, _ = den.divmod(g)
            lc = den.lc()
            if not (lc == 1):
                inv = lc.invert()
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    # constructors -----------------------------------------------------
    @staticmethod
    def const(v) -> "FieldElem":
        return FieldElem(KPoly.const(ParamScalar.const(v)), _reduced=True)

    @staticmethod
    def from_scalar(s: ParamScalar) -> "FieldElem":
        return FieldElem(KPoly.const(s), _reduced=True)

    @staticmethod
    def x() -> "FieldElem":
        return FieldElem(KPoly.x(), _reduced=True)

    @staticmethod
    def t() -> "FieldElem":
        return FieldElem(KPoly.const(ParamScalar.t()), _reduced=True)

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_scalar(self) -> bool:
        """True when the element lies in k = Q(t)."""
        return self.den.degree == 0 and self.num.degree <= 0

    def as_scalar(self) -> ParamScalar:
        if not self.is_scalar():
            raise ValueError(f"{self} is not in Q(t)")
        if self.is_zero():
            return ParamScalar.const(0)
        return self.num.coeff(0)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElem):
            return other
        if isinstance(other, int):
            return FieldElem.const(other)
        if isinstance(other, ParamScalar):
            return FieldElem.from_scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        g = self.den.gcd(other.den)
        if g.degree <= 0:
            return FieldElem(self.num * other.den + other.num * self.den,
                             self.den * other.den)
        d1, _ = self.den.divmod(g)
        d2, _ = other.den.divmod(g)
        num = self.num * d2 + other.num * d1
        return FieldElem(num, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return FieldElem(KPoly())
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = self.num, other.den
        if g1.degree > 0:
            n1, _ = n1.divmod(g1)
            d2, _ = d2.divmod(g1)
        n2, d1 = other.num, self.den
        if g2.degree > 0:
            n2, _ = n2.divmod(g2)
            d1, _ = d1.divmod(g2)
        out = FieldElem(n1 * n2, d1 * d2)
        return out

    __rmul__ = __mul__

    def invert(self) -> "FieldElem":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in K")
        return FieldElem(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        out = FieldElem.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # derivations ------------------------------------------------------
    def d_x(self) -> "FieldElem":
        if self.is_zero():
            return self
        num = self.num.deriv() * self.den - self.num * self.den.deriv()
        return FieldElem(num, self.den * self.den)

    def d_t(self) -> "FieldElem":
        if self.is_zero():
            return self
        num = self.num.d_t() * self.den - self.num * self.den.d_t()
        return FieldElem(num, self.den * self.den)

    def eval_at_x(self, x0: ParamScalar) -> ParamScalar:
        d = self.den.eval(x0)
        if d.is_zero():
            raise PoleAtPoint(f"pole at x = {x0}")
        return self.num.eval(x0) / d

    # misc -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        num = _fmt_kpoly(self.num)
        if self.den.degree == 0:
            return num
        return f"({num})/({_fmt_kpoly(self.den)})"

    def __repr__(self):
        return f"FieldElem({self})"


ZERO = FieldElem.const(0)
ONE = FieldElem.const(1)
