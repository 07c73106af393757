"""Parser, printer and evaluator for the ring-construction DSL.

Grammar (whitespace insignificant, "x" left-associative):

    expr  := term { "x" term }
    term  := "Z" int
           | "M" int "(" expr ")"
           | "T" int "(" expr [";" endo] ")"
           | "TrivExt" "(" expr ")"
           | "Poly" "(" expr "," int ")"
           | "(" expr ")"
    endo  := "id" | "swap"

The DSL is the wire format for CLI arguments, catalog files (one
expression per line, '#' comments) and ring labels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from . import constructions
from .core import DEFAULT_SIZE_CAP, FiniteRing
from .errors import IntegerOverflow, InvalidEndomorphism, ParseError

MAX_INT_LITERAL = 2 ** 63


@dataclass(frozen=True)
class Zn:
    n: int


@dataclass(frozen=True)
class Product:
    left: "RingExpr"
    right: "RingExpr"


@dataclass(frozen=True)
class Mat:
    k: int
    inner: "RingExpr"


@dataclass(frozen=True)
class Tri:
    k: int
    inner: "RingExpr"


@dataclass(frozen=True)
class SkewTri:
    k: int
    inner: "RingExpr"
    endo: str  # "id" | "swap"


@dataclass(frozen=True)
class TrivExt:
    inner: "RingExpr"


@dataclass(frozen=True)
class Poly:
    inner: "RingExpr"
    n: int


RingExpr = Union[Zn, Product, Mat, Tri, SkewTri, TrivExt, Poly]


_TOKEN_RE = re.compile(r"\s*(?:(?P<word>[A-Za-z]+)(?P<arity>\d+)?|(?P<num>\d+)|(?P<punct>[(),;]))")


@dataclass(frozen=True)
class _Token:
    kind: str  # ZN, MK, TK, TRIVEXT, POLY, X, ID, SWAP, NUM, (, ), ,, ;, EOF
    value: Optional[int]
    offset: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            offset = len(text) - len(stripped)
            raise ParseError(offset, {"Z<int>", "M<int>", "T<int>", "TrivExt", "Poly", "x", "(", ")"},
                             f"unexpected character {stripped[0]!r}")
        pos = m.end()
        offset = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group("word") is not None:
            word, arity = m.group("word"), m.group("arity")
            if word in ("Z", "M", "T"):
                if arity is None:
                    raise ParseError(offset, {f"{word}<int>"}, f"{word!r} needs an integer arity")
                if len(arity) > 19:
                    raise IntegerOverflow(offset, arity)
                value = int(arity)
                if value >= MAX_INT_LITERAL:
                    raise IntegerOverflow(offset, arity)
                if value < 1:
                    raise ParseError(offset, {f"{word}<positive int>"}, "arity must be at least 1")
                tokens.append(_Token({"Z": "ZN", "M": "MK", "T": "TK"}[word], value, offset))
            elif arity is not None:
                raise ParseError(offset, {"Z<int>", "M<int>", "T<int>"},
                                 f"unknown construction {word + arity!r}")
            elif word == "TrivExt":
                tokens.append(_Token("TRIVEXT", None, offset))
            elif word == "Poly":
                tokens.append(_Token("POLY", None, offset))
            elif word == "x":
                tokens.append(_Token("X", None, offset))
            elif word == "id":
                tokens.append(_Token("ID", None, offset))
            elif word == "swap":
                tokens.append(_Token("SWAP", None, offset))
            else:
                raise ParseError(offset, {"Z<int>", "M<int>", "T<int>", "TrivExt", "Poly", "x"},
                                 f"unknown word {word!r}")
        elif m.group("num") is not None:
            lit = m.group("num")
            if len(lit) > 19 or int(lit) >= MAX_INT_LITERAL:
                raise IntegerOverflow(offset, lit)
            tokens.append(_Token("NUM", int(lit), offset))
        else:
            tokens.append(_Token(m.group("punct"), None, offset))
    tokens.append(_Token("EOF", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != kind:
            raise ParseError(tok.offset, {kind})
        self.pos += 1
        return tok

    def parse_expr(self) -> RingExpr:
        node = self.parse_term()
        while self.peek().kind == "X":
            self.take("X")
            node = Product(node, self.parse_term())
        return node

    def parse_term(self) -> RingExpr:
        tok = self.peek()
        if tok.kind == "ZN":
            self.take("ZN")
            return Zn(tok.value)
        if tok.kind == "MK":
            self.take("MK")
            self.take("(")
            inner = self.parse_expr()
            self.take(")")
            return Mat(tok.value, inner)
        if tok.kind == "TK":
            self.take("TK")
            self.take("(")
            inner = self.parse_expr()
            if self.peek().kind == ";":
                self.take(";")
                etok = self.peek()
                if etok.kind not in ("ID", "SWAP"):
                    raise ParseError(etok.offset, {"id", "swap"})
                self.pos += 1
                self.take(")")
                return SkewTri(tok.value, inner, "id" if etok.kind == "ID" else "swap")
            self.take(")")
            return Tri(tok.value, inner)
        if tok.kind == "TRIVEXT":
            self.take("TRIVEXT")
            self.take("(")
            inner = self.parse_expr()
            self.take(")")
            return TrivExt(inner)
        if tok.kind == "POLY":
            self.take("POLY")
            self.take("(")
            inner = self.parse_expr()
            self.take(",")
            ntok = self.take("NUM")
            if ntok.value < 1:
                raise ParseError(ntok.offset, {"positive integer"})
            self.take(")")
            return Poly(inner, ntok.value)
        if tok.kind == "(":
            self.take("(")
            inner = self.parse_expr()
            self.take(")")
            return inner
        raise ParseError(tok.offset, {"Z<int>", "M<int>", "T<int>", "TrivExt", "Poly", "("})


def parse(text: str) -> RingExpr:
    """Parse a ring expression; errors carry the byte offset and the
    expected-token set."""
    parser = _Parser(text)
    node = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise ParseError(tok.offset, {"x", "end of input"})
    return node


def print_expr(expr: RingExpr) -> str:
    """Canonical rendering; parse(print_expr(e)) == e."""
    if isinstance(expr, Zn):
        return f"Z{expr.n}"
    if isinstance(expr, Product):
        right = print_expr(expr.right)
        if isinstance(expr.right, Product):
            right = f"({right})"
        return f"{print_expr(expr.left)} x {right}"
    if isinstance(expr, Mat):
        return f"M{expr.k}({print_expr(expr.inner)})"
    if isinstance(expr, Tri):
        return f"T{expr.k}({print_expr(expr.inner)})"
    if isinstance(expr, SkewTri):
        return f"T{expr.k}({print_expr(expr.inner)}; {expr.endo})"
    if isinstance(expr, TrivExt):
        return f"TrivExt({print_expr(expr.inner)})"
    if isinstance(expr, Poly):
        return f"Poly({print_expr(expr.inner)}, {expr.n})"
    raise TypeError(f"not a ring expression: {expr!r}")


def predicted_size(expr: RingExpr) -> int:
    """Element count the expression would construct, computed symbolically."""
    if isinstance(expr, Zn):
        return expr.n
    if isinstance(expr, Product):
        return predicted_size(expr.left) * predicted_size(expr.right)
    if isinstance(expr, Mat):
        return predicted_size(expr.inner) ** (expr.k * expr.k)
    if isinstance(expr, Tri):
        return predicted_size(expr.inner) ** (expr.k * (expr.k + 1) // 2)
    if isinstance(expr, SkewTri):
        return predicted_size(expr.inner) ** expr.k
    if isinstance(expr, TrivExt):
        return predicted_size(expr.inner) ** 2
    if isinstance(expr, Poly):
        return predicted_size(expr.inner) ** expr.n
    raise TypeError(f"not a ring expression: {expr!r}")


def eval_expr(expr: RingExpr, cap: int = DEFAULT_SIZE_CAP) -> FiniteRing:
    """Construct the ring, checking the predicted size against the cap
    before building anything. `swap` requires the inner expression to be
    a self-product (structurally identical sides)."""
    from .errors import SizeCapExceeded

    predicted = predicted_size(expr)
    if predicted > cap:
        raise SizeCapExceeded(predicted, cap)

    if isinstance(expr, Zn):
        return constructions.zn(expr.n, cap)
    if isinstance(expr, Product):
        return constructions.product(eval_expr(expr.left, cap),
                                     eval_expr(expr.right, cap), cap)
    if isinstance(expr, Mat):
        return constructions.matrix_ring(eval_expr(expr.inner, cap), expr.k, cap)
    if isinstance(expr, Tri):
        return constructions.upper_triangular(eval_expr(expr.inner, cap), expr.k, cap)
    if isinstance(expr, SkewTri):
        inner = eval_expr(expr.inner, cap)
        if expr.endo == "id":
            alpha = constructions.RingEndomorphism.identity(inner)
        else:
            if not (isinstance(expr.inner, Product) and expr.inner.left == expr.inner.right):
                raise InvalidEndomorphism(
                    "swap needs a self-product inner ring (S x S with identical sides)")
            alpha = constructions.swap_endomorphism(inner, predicted_size(expr.inner.left))
        return constructions.skew_triangular(inner, expr.k, alpha, cap)
    if isinstance(expr, TrivExt):
        return constructions.trivial_extension(eval_expr(expr.inner, cap), cap)
    if isinstance(expr, Poly):
        inner = eval_expr(expr.inner, cap)
        alpha = constructions.RingEndomorphism.identity(inner)
        return constructions.poly_quotient(inner, expr.n, alpha, cap)
    raise TypeError(f"not a ring expression: {expr!r}")


def load_catalog(text: str) -> List[Tuple[int, RingExpr]]:
    """Parse a catalog file: one expression per line, '#' comments.

    Returns (line_number, expr) pairs; parse errors are re-raised with the
    offending line number in the message.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append((lineno, parse(line)))
        except ParseError as exc:
            raise ParseError(exc.offset, exc.expected,
                             f"catalog line {lineno}: {exc}") from exc
    return out
