"""Recursive-descent parser for field expressions and differential operators.

Grammar (a superset of the published one: unary minus is also accepted):

    expr   := ["-"] term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := atom ("^" nonneg-integer)?
    atom   := "x" | "t" | integer | "(" expr ")"

Operators are sums of terms `expr "*" D^k`, `D^k`, or bare `expr`; the
symbol D commutes with nothing once the operator is built, but the parser
only ever sees it as a formal generator multiplied by a left coefficient.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .errors import ParseError
from .field import FieldElem


_TOKENS = {"+", "-", "*", "/", "^", "(", ")"}


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    """Returns (kind, value, position) triples; kind in {op, int, name}."""
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKENS:
            out.append(("op", ch, i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            out.append(("name", text[i:j], i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    return out


class _Parser:
    def __init__(self, text: str, allow_d: bool = False):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0
        self.allow_d = allow_d

    def peek(self, offset: int = 0):
        i = self.pos + offset
        return self.toks[i] if i < len(self.toks) else ("eof", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, val, at = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", at)

    def at_d(self, offset: int = 0) -> bool:
        kind, val, _ = self.peek(offset)
        return kind == "name" and val == "D"

    # expression level -------------------------------------------------
    def parse_expr(self) -> FieldElem:
        negate = False
        if self.peek()[1] == "-":
            self.next()
            negate = True
        value = self.parse_term()
        if negate:
            value = -value
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self, stop_before_d: bool = False) -> FieldElem:
        value = self.parse_factor()
        while self.peek()[1] in ("*", "/"):
            if stop_before_d and self.peek()[1] == "*" and self.at_d(1):
                break
            op = self.next()[1]
            rhs = self.parse_factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", self.peek()[2])
                value = value / rhs
        return value

    def parse_factor(self) -> FieldElem:
        value = self.parse_atom()
        if self.peek()[1] == "^":
            self.next()
            kind, val, at = self.next()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", at)
            value = value ** int(val)
        return value

    def parse_atom(self) -> FieldElem:
        kind, val, at = self.next()
        if kind == "int":
            return FieldElem.const(int(val))
        if kind == "name":
            if val == "x":
                return FieldElem.x()
            if val == "t":
                return FieldElem.t()
            raise ParseError(f"unknown symbol {val!r}", at)
        if val == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if val == "-":
            return -self.parse_atom()
        raise ParseError(f"unexpected token {val or 'end of input'!r}", at)

    # operator level ---------------------------------------------------
    def parse_operator_terms(self) -> List[Tuple[FieldElem, int]]:
        """Returns (coefficient, D-power) terms."""
        terms = []
        sign = 1
        if self.peek()[1] == "-":
            self.next()
            sign = -1
        terms.append(self.parse_operator_term(sign))
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            terms.append(self.parse_operator_term(1 if op == "+" else -1))
        kind, val, at = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected token {val!r}", at)
        return terms

    def parse_operator_term(self, sign: int) -> Tuple[FieldElem, int]:
        if self.at_d():
            self.next()
            power = self.parse_d_power()
            coeff = FieldElem.const(sign)
            return coeff, power
        coeff = self.parse_term(stop_before_d=True)
        if sign < 0:
            coeff = -coeff
        if self.peek()[1] == "*" and self.at_d(1):
            self.next()
            self.next()
            return coeff, self.parse_d_power()
        return coeff, 0

    def parse_d_power(self) -> int:
        if self.peek()[1] == "^":
            self.next()
            kind, val, at = self.next()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", at)
            return int(val)
        return 1


def parse_expr(text: str) -> FieldElem:
    p = _Parser(text)
    value = p.parse_expr()
    kind, val, at = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected token {val!r}", at)
    return value


def parse_operator(text: str):
    from .ore import OreOperator

    p = _Parser(text, allow_d=True)
    terms = p.parse_operator_terms()
    order = max(k for _, k in terms)
    coeffs = [FieldElem.const(0)] * (order + 1)
    for coeff, k in terms:
        coeffs[k] = coeffs[k] + coeff
    return OreOperator(coeffs)
