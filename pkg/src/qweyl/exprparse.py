"""Expression parser and canonical printer for the CLI and data files.

Grammar (EBNF):

    expr     := term (('+' | '-') term)*
    term     := factor+                      juxtaposition is the product
    factor   := atom ('^' exponent)? ('~')*  postfix ~ applies the star
    exponent := signed-int | '(' signed-int ('/' unsigned-int)? ')'
    atom     := ident | rational | '(' expr ')' | '[' expr ',' expr ']'
    rational := int ('/' int)?
    ident    := letter (letter | digit | '_')*

'i' is the imaginary unit and 'q' the deformation parameter (q^(1/2)
exponents written q^(1/2), q^(-3/2), ...); every other identifier must
name a generator of the presentation in scope.  g^-k resolves to the
declared inverse generator of g.  '[a, b]' is the commutator ab - ba.

parse(print(e)) = e for the canonical printers in this package.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .coeff import GaussianRational, Scalar
from .errors import ExprSyntax
from .freealg import Element, Presentation

__all__ = ["parse_expression", "parse_scalar", "tokenize"]

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()\[\],~])
""", re.VERBOSE)


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExprSyntax(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, pres: Optional[Presentation]):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.pres = pres

    # -- token plumbing --------------------------------------------------

    def peek(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value, expected):
        kind, val, pos = self.peek()
        if val != value:
            raise ExprSyntax(f"found {val or 'end of input'!r}", pos,
                             expected=expected)
        return self.advance()

    # -- grammar -----------------------------------------------------------

    def parse(self):
        v = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntax(f"trailing input {val!r}", pos,
                             expected={"+", "-", "end of input"})
        return v

    def expr(self):
        v = self.term()
        while True:
            kind, val, pos = self.peek()
            if val == "+":
                self.advance()
                v = v + self.term()
            elif val == "-":
                self.advance()
                v = v - self.term()
            else:
                return v

    _TERM_START = ("num", "ident")

    def term(self):
        # optional leading sign
        kind, val, pos = self.peek()
        neg = False
        while val in ("+", "-"):
            if val == "-":
                neg = not neg
            self.advance()
            kind, val, pos = self.peek()
        v = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind in self._TERM_START or val in ("(", "["):
                v = v * self.factor()
            else:
                break
        return -v if neg else v

    def factor(self):
        v = self.atom()
        kind, val, pos = self.peek()
        if val == "^":
            self.advance()
            v = self._power(v, pos)
        while self.peek()[1] == "~":
            _, _, pos = self.advance()
            if self.pres is None or not isinstance(v, Element):
                raise ExprSyntax("star applies to algebra elements only", pos)
            v = self.pres.apply_star(v)
        return v

    def _power(self, v, op_pos):
        num, den = self._exponent()
        if den == 2:
            # only the deformation parameter carries half-integer powers
            if isinstance(v, Scalar) and v == Scalar.q_power(1):
                return Scalar.s_power(num)
            raise ExprSyntax("half-integer exponents apply to q only", op_pos)
        n = num
        if isinstance(v, Scalar):
            return v ** n
        if isinstance(v, Element):
            if n >= 0:
                return v ** n
            # negative powers resolve through declared inverse generators
            w = _single_generator(v)
            if w is not None and w in v.pres.inverses:
                inv = v.pres.inverses[w]
                out = Element(v.pres, {(inv,) * (-n): v.pres.coeff_one})
                return out
            raise ExprSyntax("negative power of a non-invertible element",
                             op_pos)
        raise ExprSyntax("cannot exponentiate this value", op_pos)

    def _exponent(self):
        kind, val, pos = self.peek()
        sign = 1
        if val == "(":
            self.advance()
            kind, val, pos = self.peek()
            if val == "-":
                sign = -1
                self.advance()
            kind, val, pos = self.peek()
            if kind != "num":
                raise ExprSyntax(f"found {val!r}", pos, expected={"integer"})
            num = sign * int(self.advance()[1])
            den = 1
            if self.peek()[1] == "/":
                self.advance()
                kind, val, pos = self.peek()
                if kind != "num":
                    raise ExprSyntax(f"found {val!r}", pos, expected={"integer"})
                den = int(self.advance()[1])
                if den not in (1, 2):
                    raise ExprSyntax("exponent denominator must be 1 or 2", pos)
            self.expect(")", {")"})
            return num, den
        if val == "-":
            self.advance()
            sign = -1
            kind, val, pos = self.peek()
        if kind != "num":
            raise ExprSyntax(f"found {val or 'end of input'!r}", pos,
                             expected={"integer", "(", "-"})
        return sign * int(self.advance()[1]), 1

    def atom(self):
        kind, val, pos = self.advance()
        if kind == "num":
            n = int(val)
            if self.peek()[1] == "/":
                save = self.i
                self.advance()
                k2, v2, p2 = self.peek()
                if k2 == "num":
                    self.advance()
                    return Scalar.from_fraction(Fraction(n, int(v2)))
                self.i = save
            return Scalar.from_int(n)
        if kind == "ident":
            if val == "i":
                return Scalar.i()
            if val == "q":
                return Scalar.q_power(1)
            if val == "h":
                raise ExprSyntax(
                    "h belongs to the series layer, not to algebra "
                    "expressions", pos)
            if self.pres is None:
                raise ExprSyntax(f"unexpected identifier {val!r} in a scalar",
                                 pos)
            if not self.pres.has_gen(val):
                raise ExprSyntax(
                    f"unknown generator {val!r} for {self.pres.name}", pos,
                    expected={g.name for g in self.pres.generators})
            return self.pres.gen_element(val)
        if val == "(":
            v = self.expr()
            self.expect(")", {")"})
            return v
        if val == "[":
            a = self.expr()
            self.expect(",", {","})
            b = self.expr()
            self.expect("]", {"]"})
            return a * b - b * a
        raise ExprSyntax(f"found {val or 'end of input'!r}", pos,
                         expected={"identifier", "number", "(", "["})


def _single_generator(e: Element):
    if len(e.terms) != 1:
        return None
    (w, c), = e.terms.items()
    if len(w) == 1 and c == e.pres.coeff_one:
        return w[0]
    return None


def parse_expression(text: str, pres: Presentation) -> Element:
    """Parse an algebra expression in the context of a presentation."""
    v = _Parser(text, pres).parse()
    if isinstance(v, Scalar):
        return pres.one() * v
    return v


def parse_scalar(text: str) -> Scalar:
    """Parse a pure scalar (Laurent polynomial in q^(1/2) over Q(i))."""
    v = _Parser(text, None).parse()
    if not isinstance(v, Scalar):
        raise ExprSyntax("expected a scalar expression", 0)
    return v
