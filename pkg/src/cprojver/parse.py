"""Text grammar for exact polynomials and vector fields.

Grammar (whitespace-insensitive)::

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' ['-'] integer | '^' '(' ['-'] integer ')']
    atom   := integer | 'I' | variable | denominator-name
            | 'D' '(' variable ')'            (vector-field basis, fields only)
            | '(' expr ')'

Coefficients are exact: `3/4`, `1/2*I`, `-5`.  `/` is exact division; dividing
by a declared denominator polynomial records it in the denominator tag.
Negative exponents are accepted only on laurent-flagged variables.  Printing
and parsing round-trip.
"""

from __future__ import annotations

import re

from .poly import LaurentPoly, PolyError
from .scalars import GaussQ


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line = line
        self.col = col
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(f"{msg}{where}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^,;])|(\S))")


def tokenize(text, line=None):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos and not m.group(0).strip():
            break
        if m.group(4):
            raise ParseError(f"unexpected character {m.group(4)!r}", line, m.start(4) + 1)
        if m.group(1):
            out.append(("int", int(m.group(1)), m.start(1) + 1))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2) + 1))
        elif m.group(3):
            out.append(("op", m.group(3), m.start(3) + 1))
        pos = m.end()
    return out


class FieldValue:
    """A vector field: map direction-variable -> coefficient polynomial."""

    __slots__ = ("table", "comps")

    def __init__(self, table, comps=None):
        self.table = table
        self.comps = {}
        for k, v in (comps or {}).items():
            if not v.is_zero():
                self.comps[k] = v

    def __add__(self, other):
        if isinstance(other, FieldValue):
            out = dict(self.comps)
            for k, v in other.comps.items():
                s = out.get(k)
                s = v if s is None else s + v
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
            return FieldValue(self.table, out)
        raise PolyError("cannot add a scalar to a vector field")

    def __neg__(self):
        return FieldValue(self.table, {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FieldValue):
            raise PolyError("cannot multiply two vector fields")
        return FieldValue(self.table, {k: v * other for k, v in self.comps.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, FieldValue):
            raise PolyError("cannot divide by a vector field")
        return FieldValue(self.table, {k: v / other for k, v in self.comps.items()})


class _Parser:
    def __init__(self, tokens, table, line=None, allow_fields=False):
        self.toks = tokens
        self.i = 0
        self.table = table
        self.line = line
        self.allow_fields = allow_fields

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, None)

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        col = (tok or self.peek())[2]
        raise ParseError(msg, self.line, col)

    def parse(self):
        v = self.expr()
        if self.i != len(self.toks):
            self.fail(f"trailing input at token {self.peek()[1]!r}")
        return v

    def expr(self):
        neg = False
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            neg = val == "-"
        v = self.term()
        if neg:
            v = -v
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                v = v - rhs if val == "-" else v + rhs
            else:
                return v

    def term(self):
        v = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                try:
                    v = v / rhs if val == "/" else v * rhs
                except PolyError as exc:
                    self.fail(str(exc))
            else:
                return v

    def factor(self):
        v = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            e = self.exponent()
            if isinstance(v, FieldValue):
                self.fail("cannot exponentiate a vector field")
            try:
                v = v**e
            except PolyError as exc:
                self.fail(str(exc))
        return v

    def exponent(self):
        tok = self.peek()
        kind, val = tok[0], tok[1]
        paren = kind == "op" and val == "("
        if paren:
            self.next()
            kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val == "-":
            self.next()
            sign = -1
            kind, val, _ = self.peek()
        if kind != "int":
            self.fail("expected integer exponent", tok)
        self.next()
        if paren:
            k2, v2, _ = self.next()
            if (k2, v2) != ("op", ")"):
                self.fail("expected ')' after exponent", tok)
        return sign * val

    def atom(self):
        tok = self.peek()
        kind, val = tok[0], tok[1]
        if kind == "int":
            self.next()
            return LaurentPoly.const(self.table, val)
        if kind == "op" and val == "(":
            self.next()
            v = self.expr()
            k2, v2, _ = self.peek()
            if (k2, v2) != ("op", ")"):
                self.fail("expected ')'")
            self.next()
            return v
        if kind == "name":
            self.next()
            if val == "I":
                return LaurentPoly.const(self.table, GaussQ(0, 1))
            if val == "D" and self.allow_fields:
                k2, v2, _ = self.peek()
                if (k2, v2) == ("op", "("):
                    self.next()
                    k3, name, _ = self.next()
                    if k3 != "name" or name not in self.table.names:
                        self.fail(f"unknown direction variable {name!r}", tok)
                    k4, v4, _ = self.next()
                    if (k4, v4) != ("op", ")"):
                        self.fail("expected ')' after D(...)", tok)
                    return FieldValue(
                        self.table, {name: LaurentPoly.const(self.table, 1)}
                    )
            if val in self.table.names:
                return LaurentPoly.var(self.table, val)
            if val in self.table.den_names:
                return self.table.denominator_poly(self.table.den_names.index(val))
            self.fail(f"unknown name {val!r} (registry: {self.table.names})", tok)
        self.fail("expected a polynomial atom")


def parse_poly(text, table, line=None) -> LaurentPoly:
    v = _Parser(tokenize(text, line), table, line).parse()
    if isinstance(v, FieldValue):
        raise ParseError("expected a polynomial, got a vector field", line)
    return v


def parse_field(text, table, line=None) -> dict:
    """Parse a vector field expression; returns {direction: LaurentPoly}."""
    v = _Parser(tokenize(text, line), table, line, allow_fields=True).parse()
    if isinstance(v, LaurentPoly):
        if v.is_zero():
            return {}
        raise ParseError("expected a vector field, got a polynomial", line)
    return dict(v.comps)


def format_coeff(c: GaussQ, lead=False):
    """Render a coefficient as grammar text plus a separable sign."""
    if c.is_real():
        s = str(c.re)
    elif not c.re:
        if c.im == 1:
            s = "I"
        elif c.im == -1:
            s = "-I"
        else:
            s = f"{c.im}*I"
    else:
        return ("+", f"({c})") if lead is False else ("", f"({c})")
    if s.startswith("-"):
        return "-", s[1:]
    return "+", s


def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    chunks = []
    for exps in p.monomials():
        c = p.terms[exps]
        sign, cs = format_coeff(c)
        factors = []
        for name, e in zip(p.table.names, exps):
            if e == 0:
                continue
            factors.append(name if e == 1 else f"{name}^{e if e > 0 else f'({e})'}")
        if not factors:
            body = cs
        elif cs == "1":
            body = "*".join(factors)
        elif cs == "I":
            body = "*".join(["I"] + factors)
        else:
            body = "*".join([cs] + factors)
        chunks.append((sign, body))
    out = ""
    for i, (sign, body) in enumerate(chunks):
        if i == 0:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f"{sign}{body}"
    for k, m in enumerate(p.den):
        for _ in range(m):
            out = f"({out})/{p.table.den_names[k]}"
    return out


def format_field(comps, table) -> str:
    if not comps:
        return "0"
    parts = []
    for name in table.names:
        if name in comps and not comps[name].is_zero():
            parts.append(f"({format_poly(comps[name])})*D({name})")
    return " + ".join(parts)
