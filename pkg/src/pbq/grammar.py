"""Text syntax for elements of pB_q.

Grammar (LL(1); juxtaposition binds tighter than ``+``/``-``)::

    expr    := sign? term (("+" | "-") term)*
    term    := power ("*"? power)*
    power   := primary ("^" int)?
    primary := NUMBER ("/" NUMBER)?
             | "a+" | "a-" | "K" | "q"
             | "zeta" "(" NUMBER ")"
             | "(" expr ")"
    int     := ("+" | "-")? NUMBER | "(" ("+" | "-")? NUMBER ")"

``K^-1`` is simply ``K`` raised to ``-1``. ``zeta(N)`` is the primitive
N-th root of unity ``exp(2*pi*i/N)``; N must divide the field order of the
algebra. Negative powers are allowed only on invertible factors
(scalars and single ``K`` monomials).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Union

from .exactnum import ApproxComplex, CyclotomicNumber, to_complex

if TYPE_CHECKING:
    from .algebra import AlgebraElement, ParaBoseAlgebra

__all__ = [
    "ParseError",
    "UnboundParameterError",
    "parse",
    "parse_expression",
    "pretty_print",
]


class ParseError(ValueError):
    """Syntax error or unknown symbol, with the 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = "") -> None:
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnboundParameterError(ParseError):
    """The expression needs q but no (m, k) was supplied."""


# --------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<gen>a[+-])
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, gen, name, op, end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        mo = _TOKEN_RE.match(text, pos)
        if mo is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = mo.lastgroup
        if kind != "ws":
            tok = mo.group()
            if kind == "name" and tok not in ("K", "q", "zeta"):
                raise ParseError(f"unknown symbol {tok!r}", pos, text)
            out.append(Token(kind, tok, pos))
        pos = mo.end()
    out.append(Token("end", "", len(text)))
    return out


# --------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Atom:
    name: str  # "a+", "a-", "K", "q"
    pos: int


@dataclass(frozen=True)
class Zeta:
    order: int
    pos: int


@dataclass(frozen=True)
class Pow:
    base: Node
    exponent: int
    pos: int


@dataclass(frozen=True)
class Prod:
    factors: tuple[Node, ...]


@dataclass(frozen=True)
class Sum:
    terms: tuple[tuple[int, Node], ...]  # (sign, term)


Node = Union[Num, Atom, Zeta, Pow, Prod, Sum]

_PRIMARY_START = {"num", "gen", "name"}


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.pos, self.text)

    def take(self, kind: str, text: str | None = None) -> Token:
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            got = tok.text or "end of input"
            raise self.error(f"expected {want!r}, found {got!r}")
        self.i += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        return self.tok.kind == kind and (text is None or self.tok.text == text)

    def parse(self) -> Node:
        if self.at("end"):
            raise self.error("empty expression")
        node = self.expr()
        if not self.at("end"):
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        terms = []
        sign = 1
        if self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take("op").text == "-" else 1
        terms.append((sign, self.term()))
        while self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take("op").text == "-" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def starts_primary(self) -> bool:
        return self.tok.kind in _PRIMARY_START or self.at("op", "(")

    def term(self) -> Node:
        factors = [self.power()]
        while True:
            if self.at("op", "*"):
                self.take("op")
                factors.append(self.power())
            elif self.starts_primary():
                factors.append(self.power())
            else:
                break
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def power(self) -> Node:
        base = self.primary()
        if self.at("op", "^"):
            caret = self.take("op")
            return Pow(base, self.integer(), caret.pos)
        return base

    def integer(self) -> int:
        paren = self.at("op", "(")
        if paren:
            self.take("op")
        sign = 1
        if self.at("op", "-") or self.at("op", "+"):
            sign = -1 if self.take("op").text == "-" else 1
        n = int(self.take("num").text)
        if paren:
            self.take("op", ")")
        return sign * n

    def primary(self) -> Node:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            value = Fraction(int(tok.text))
            if self.at("op", "/"):
                self.take("op")
                den = self.take("num")
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.pos, self.text)
                value /= int(den.text)
            return Num(value, tok.pos)
        if tok.kind == "gen":
            self.i += 1
            return Atom(tok.text, tok.pos)
        if tok.kind == "name":
            self.i += 1
            if tok.text == "zeta":
                self.take("op", "(")
                n = self.take("num")
                self.take("op", ")")
                if int(n.text) < 1:
                    raise ParseError("zeta order must be positive", n.pos, self.text)
                return Zeta(int(n.text), tok.pos)
            return Atom(tok.text, tok.pos)
        if self.at("op", "("):
            self.take("op")
            node = self.expr()
            self.take("op", ")")
            return node
        got = tok.text or "end of input"
        raise self.error(f"unexpected {got!r}")


def parse(text: str) -> Node:
    """Parse ``text`` into a syntax tree without binding q."""
    return _Parser(text).parse()


def _first_q(node: Node) -> int | None:
    if isinstance(node, Atom) and node.name == "q":
        return node.pos
    children: tuple = ()
    if isinstance(node, Pow):
        children = (node.base,)
    elif isinstance(node, Prod):
        children = node.factors
    elif isinstance(node, Sum):
        children = tuple(t for _, t in node.terms)
    for child in children:
        pos = _first_q(child)
        if pos is not None:
            return pos
    return None


def parse_expression(text: str, algebra: ParaBoseAlgebra | None = None) -> AlgebraElement:
    """Parse ``text`` and return its normal form in ``algebra``.

    >>> from pbq.algebra import ParaBoseAlgebra
    >>> alg = ParaBoseAlgebra.at_root(1, 2)
    >>> str(parse_expression("2 a+ + a+", alg))
    '3 a+'
    """
    tree = parse(text)
    if algebra is None:
        pos = _first_q(tree)
        if pos is not None:
            raise UnboundParameterError("q-literal used before (m, k) is bound", pos, text)
        raise UnboundParameterError("normal ordering needs (m, k) to be bound", 0, text)
    return _evaluate(tree, algebra, text)


def _evaluate(node: Node, alg: ParaBoseAlgebra, text: str) -> AlgebraElement:
    if isinstance(node, Num):
        return alg.scalar(node.value)
    if isinstance(node, Atom):
        if node.name == "q":
            return alg.scalar(alg.q.q_pow(1))
        return {"a+": alg.a_plus, "a-": alg.a_minus, "K": alg.K}[node.name]
    if isinstance(node, Zeta):
        return alg.scalar(_zeta_value(alg, node, text))
    if isinstance(node, Pow):
        base = _evaluate(node.base, alg, text)
        try:
            return base ** node.exponent
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot raise to power {node.exponent}: {exc}", node.pos, text) from None
    if isinstance(node, Prod):
        out = _evaluate(node.factors[0], alg, text)
        for f in node.factors[1:]:
            out = out * _evaluate(f, alg, text)
        return out
    out = alg.zero
    for sign, t in node.terms:
        val = _evaluate(t, alg, text)
        out = out + val if sign > 0 else out - val
    return out


def _zeta_value(alg: ParaBoseAlgebra, node: Zeta, text: str):
    q = alg.q
    if q.exact:
        if q.order % node.order:
            raise ParseError(f"zeta({node.order}) is not in Q(zeta_{q.order})", node.pos, text)
        return CyclotomicNumber.zeta(node.order).lift(q.order)
    return to_complex(CyclotomicNumber.zeta(node.order), q.digits)


# --------------------------------------------------------------------------
# printing


def _monomial_text(i: int, j: int, s: int) -> str:
    parts = []
    if i:
        parts.append("a+" if i == 1 else f"a+^{i}")
    if j:
        parts.append("a-" if j == 1 else f"a-^{j}")
    if s:
        parts.append("K" if s == 1 else f"K^{s}")
    return " ".join(parts)


def _coeff_text(c, order: int | None) -> tuple[int, str]:
    """Return (sign, unsigned text) for a coefficient; text is '' for 1."""
    if isinstance(c, CyclotomicNumber):
        if c.is_rational():
            r = c.rational_value()
            sign = -1 if r < 0 else 1
            r = abs(r)
            return sign, "" if r == 1 else str(r)
        pieces = []
        for e, a in enumerate(c.coeffs):
            if a == 0:
                continue
            z = f"zeta({c.order})" + ("" if e == 1 else f"^{e}")
            body = z if e else ""
            mag = abs(a)
            if e == 0:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag} {body}"
            if not pieces:
                pieces.append(("-" if a < 0 else "") + piece)
            else:
                pieces.append((" - " if a < 0 else " + ") + piece)
        return 1, "(" + "".join(pieces) + ")"
    if isinstance(c, ApproxComplex):
        return 1, f"({c})"
    return 1, str(c)


def pretty_print(e: AlgebraElement) -> str:
    """Canonical text for a normal form; :func:`parse_expression` inverts it
    for exact coefficients."""
    if e.is_zero():
        return "0"
    out = []
    for (i, j, s), c in e.items():
        sign, ctext = _coeff_text(c, None)
        mono = _monomial_text(i, j, s)
        body = " ".join(x for x in (ctext, mono) if x) or "1"
        if not out:
            out.append(("-" if sign < 0 else "") + body)
        else:
            out.append((" - " if sign < 0 else " + ") + body)
    return "".join(out)
