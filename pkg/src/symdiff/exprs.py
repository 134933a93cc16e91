"""Polynomial expression grammar shared by the CLI and the job format.

Tokens: variable identifiers, the parameter t, integer literals, fraction
literals a/b, operators + - * ^ with the usual precedence (^ binds
tightest, then unary -, then * and /, then + and -), and parentheses.
Implicit multiplication is rejected.  Division is restricted to constant
divisors; each coefficient of the numerator must divide exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .coeff import DomainSpec, Scalar
from .errors import ParseError, SymdiffError, UndeclaredVariable
from .poly import Polynomial, PolyRing

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


@dataclass
class _Token:
    kind: str   # num | name | op | end
    text: str
    col: int


def _tokenize(text: str, line: int | None = None):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start():
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                break
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        pos = m.end()
        if m.group("num"):
            out.append(_Token("num", m.group("num"), m.start("num") + 1))
        elif m.group("name"):
            out.append(_Token("name", m.group("name"), m.start("name") + 1))
        else:
            out.append(_Token("op", m.group("op"), m.start("op") + 1))
    out.append(_Token("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, tokens, ring: PolyRing, line=None):
        self.toks = tokens
        self.i = 0
        self.ring = ring
        self.line = line

    def peek(self) -> _Token:
        return self.toks[self.i]

    def take(self) -> _Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col)

    def parse(self) -> Polynomial:
        out = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            if tok.kind in ("name", "num") or tok.text == "(":
                self.fail("implicit multiplication is not allowed; write '*'", tok)
            self.fail(f"unexpected {tok.text!r}", tok)
        return out

    def expr(self) -> Polynomial:
        out = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Polynomial:
        out = self.factor()
        while self.peek().text in ("*", "/"):
            tok = self.take()
            rhs = self.factor()
            if tok.text == "*":
                out = out * rhs
            else:
                out = self._divide(out, rhs, tok)
        # implicit multiplication shows up as an atom starting right here
        nxt = self.peek()
        if nxt.kind in ("name", "num") or nxt.text == "(":
            self.fail("implicit multiplication is not allowed; write '*'", nxt)
        return out

    def _divide(self, num: Polynomial, den: Polynomial, tok) -> Polynomial:
        if not den.is_constant():
            self.fail("division is only allowed by constants", tok)
        c = den.constant_value()
        if c.is_zero():
            self.fail("division by zero", tok)
        try:
            return Polynomial(num.ring, {e: v / c for e, v in num.terms.items()})
        except SymdiffError as exc:
            self.fail(f"division leaves the coefficient ring: {exc}", tok)

    def factor(self) -> Polynomial:
        if self.peek().text == "-":
            self.take()
            return -self.factor()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "num":
                self.fail("exponent must be a non-negative integer literal", tok)
            self.take()
            return base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "num":
            return self.ring.from_int(int(tok.text))
        if tok.kind == "name":
            if tok.text == "t":
                if not self.ring.domain.has_t:
                    raise UndeclaredVariable(
                        f"'t' is not available over {self.ring.domain}")
                return self.ring.from_scalar(self.ring.domain.t)
            try:
                return self.ring.var(tok.text)
            except KeyError:
                raise UndeclaredVariable(
                    f"variable {tok.text!r} is not declared in {self.ring}") from None
        if tok.text == "(":
            inner = self.expr()
            closing = self.take()
            if closing.text != ")":
                self.fail("expected ')'", closing)
            return inner
        self.fail(f"unexpected {tok.text or 'end of input'!r}", tok)


def parse_polynomial(text: str, ring: PolyRing, line: int | None = None) -> Polynomial:
    """Parse an expression into a polynomial of the given ring."""
    return _Parser(_tokenize(text, line), ring, line).parse()


def parse_scalar(text: str, domain: DomainSpec) -> Scalar:
    """Parse a constant expression ("3/5", "(2*t+4)/(t+1)") into a scalar."""
    ring = PolyRing(domain, ())
    poly = parse_polynomial(text, ring)
    return poly.constant_value()
