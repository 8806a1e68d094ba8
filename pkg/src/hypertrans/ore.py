"""The skew polynomial ring K[D] with the commutation rule D*a = a*D + a'."""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .errors import DivisionByZeroOperator, OrderZero
from .field import NEG_INF, FieldElem


class OreOperator:
    """Differential operator sum a_i * D^i, coefficients low-to-high in K.

    Coefficients are stored as supplied (no implicit monic normalization);
    the zero operator has an empty coefficient list.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[FieldElem]):
        c = [v if isinstance(v, FieldElem) else FieldElem.const(v) for v in coeffs]
        n = len(c)
        while n and c[n - 1].is_zero():
            n -= 1
        self.coeffs: Tuple[FieldElem, ...] = tuple(c[:n])

    @staticmethod
    def zero() -> "OreOperator":
        return OreOperator(())

    @staticmethod
    def d() -> "OreOperator":
        return OreOperator((FieldElem.const(0), FieldElem.const(1)))

    @staticmethod
    def from_field(f: FieldElem) -> "OreOperator":
        return OreOperator((f,))

    @property
    def order(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> FieldElem:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else FieldElem.const(0)

    def lc(self) -> FieldElem:
        if self.is_zero():
            return FieldElem.const(0)
        return self.coeffs[-1]

    def __add__(self, other: "OreOperator") -> "OreOperator":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return OreOperator(out)

    def __neg__(self) -> "OreOperator":
        return OreOperator(tuple(-v for v in self.coeffs))

    def __sub__(self, other: "OreOperator") -> "OreOperator":
        return self + (-other)

    def __mul__(self, other: "OreOperator") -> "OreOperator":
        """Product in K[D]: composition of the operators."""
        if self.is_zero() or other.is_zero():
            return OreOperator.zero()
        result = [FieldElem.const(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            # a * D^i * other: push D^i through the coefficients of other
            layer = list(other.coeffs)
            shift = 0
            # D * (c D^j) = c D^{j+1} + c' D^j, applied i times
            acc = {j: c for j, c in enumerate(layer)}
            for _ in range(i):
                nxt = {}
                for j, c in acc.items():
                    if c.is_zero():
                        continue
                    nxt[j + 1] = nxt.get(j + 1, FieldElem.const(0)) + c
                    dc = c.d_x()
                    if not dc.is_zero():
                        nxt[j] = nxt.get(j, FieldElem.const(0)) + dc
                acc = nxt
            for j, c in acc.items():
                result[j] = result[j] + a * c
        return OreOperator(result)

    def scale(self, f: FieldElem) -> "OreOperator":
        return OreOperator(tuple(f * c for c in self.coeffs))

    def apply(self, f: FieldElem) -> FieldElem:
        out = FieldElem.const(0)
        df = f
        for i, a in enumerate(self.coeffs):
            if i:
                df = df.d_x()
            if not a.is_zero():
                out = out + a * df
        return out

    def right_divmod(self, other: "OreOperator"):
        """Quotient q and remainder r with self = q*other + r, ord r < ord other."""
        if other.is_zero():
            raise DivisionByZeroOperator("right division by the zero operator")
        q = OreOperator.zero()
        r = self
        while not r.is_zero() and r.order >= other.order:
            k = int(r.order - other.order)
            c = r.lc() / (OreOperator.monomial(k) * other).lc()
            term = OreOperator((FieldElem.const(0),) * k + (c,))
            q = q + term
            r = r - term * other
        return q, r

    @staticmethod
    def monomial(k: int) -> "OreOperator":
        return OreOperator((FieldElem.const(0),) * k + (FieldElem.const(1),))

    def monic(self) -> "OreOperator":
        if self.is_zero():
            return self
        inv = self.lc().invert()
        return OreOperator(tuple(inv * c for c in self.coeffs))

    def __eq__(self, other) -> bool:
        return isinstance(other, OreOperator) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("D" if i == 1 else f"D^{i}")
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                needs_paren = any(s in cs for s in (" + ", " - ")) or cs.startswith("-")
                parts.append(f"({cs})*{mono}" if needs_paren else f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"OreOperator({self})"


def ore_mul(l1: OreOperator, l2: OreOperator) -> OreOperator:
    return l1 * l2


def apply_operator(l: OreOperator, f: FieldElem) -> FieldElem:
    return l.apply(f)


def right_divide(l1: OreOperator, l2: OreOperator):
    return l1.right_divmod(l2)


def companion(l: OreOperator):
    """Companion system of a monic-normalized operator of order >= 1."""
    from .linsys import DiffSystem, MatrixK

    if l.is_zero() or l.order < 1:
        raise OrderZero("companion form needs an operator of order >= 1")
    mon = l.monic()
    n = int(mon.order)
    zero, one = FieldElem.const(0), FieldElem.const(1)
    rows = [[one if j == i + 1 else zero for j in range(n)] for i in range(n - 1)]
    rows.append([-mon.coeff(j) for j in range(n)])
    return DiffSystem(MatrixK(rows))
