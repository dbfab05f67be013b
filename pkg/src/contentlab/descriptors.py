"""Recursive-descent parser for ring, algebra and element descriptors.

Grammar::

    ring    := "Z/" INT | "trunc(" ring "," INT ")" | "prod(" ring "," ring ")"
             | "quot(" ring ";" elem ("," elem)* ")"
    algebra := "id" | "trunc(" INT ")" | "quad(" elem ")" | "group(Z/" INT ")"
             | "monoid(" PATH ")"
    elem    := term (("+" | "-") term)*
    term    := factor (["*"] factor)*
    factor  := "-" factor | atom ["^" INT]
    atom    := INT | NAME | "(" elem ")" | "[" elem "," elem "]"

``[a,b]`` is an element of a product ring.  Juxtaposition multiplies, so
``2x`` and ``x^2*y`` both parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import (
    DEFAULT_MAX_ALG,
    AlgebraElement,
    FreeAlgebra,
    MonoidTable,
    alg_group,
    alg_identity,
    alg_monoid,
    alg_quadratic,
    alg_truncated,
)
from .errors import ContentLabError, DescriptorSyntaxError
from .finring import (
    DEFAULT_MAX_RING,
    FiniteRing,
    make_product,
    make_quotient,
    make_truncated_poly_ring,
    make_zmod,
)
from .ideals import ideal_generate

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "punct" or "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(Token("int", m.group(1), start))
        elif m.group(2):
            tokens.append(Token("name", m.group(2), start))
        else:
            tokens.append(Token("punct", m.group(3), start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def _with_position(exc: ContentLabError, pos: int) -> ContentLabError:
    exc.position = pos
    exc.args = (f"{exc.args[0] if exc.args else exc} at position {pos}",)
    return exc


class Parser:
    def __init__(self, text: str, max_ring: int | None = DEFAULT_MAX_RING, max_alg: int | None = DEFAULT_MAX_ALG):
        if not text or not text.strip():
            raise DescriptorSyntaxError("empty descriptor", 0, "a descriptor")
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.max_ring = max_ring
        self.max_alg = max_alg

    # -- token helpers --

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            raise DescriptorSyntaxError(f"unexpected {self._show(self.tok)}", self.tok.pos, repr(text))
        return self.advance()

    def expect_int(self) -> tuple[int, int]:
        tok = self.tok
        if tok.kind != "int":
            raise DescriptorSyntaxError(f"unexpected {self._show(tok)}", tok.pos, "an integer")
        self.advance()
        return int(tok.text), tok.pos

    def finish(self) -> None:
        if self.tok.kind != "end":
            raise DescriptorSyntaxError(f"trailing input {self._show(self.tok)}", self.tok.pos, "end of input")

    @staticmethod
    def _show(tok: Token) -> str:
        return "end of input" if tok.kind == "end" else repr(tok.text)

    # -- rings --

    def ring(self) -> FiniteRing:
        tok = self.tok
        if tok.kind != "name":
            raise DescriptorSyntaxError(f"unexpected {self._show(tok)}", tok.pos, "a ring constructor")
        self.advance()
        if tok.text == "Z":
            self.expect("/")
            n, pos = self.expect_int()
            return self._build(lambda: make_zmod(n, self.max_ring), pos)
        if tok.text == "trunc":
            self.expect("(")
            base = self.ring()
            self.expect(",")
            d, pos = self.expect_int()
            self.expect(")")
            return self._build(lambda: make_truncated_poly_ring(base, d, self.max_ring)[0], pos)
        if tok.text == "prod":
            self.expect("(")
            left = self.ring()
            self.expect(",")
            right = self.ring()
            self.expect(")")
            return self._build(lambda: make_product(left, right, self.max_ring), tok.pos)
        if tok.text == "quot":
            self.expect("(")
            base = self.ring()
            self.expect(";")
            gens = [self.element_in(base)]
            while self.tok.text == ",":
                self.advance()
                gens.append(self.element_in(base))
            self.expect(")")
            return self._build(lambda: make_quotient(base, ideal_generate(base, gens))[0], tok.pos)
        raise DescriptorSyntaxError(f"unknown ring constructor {tok.text!r}", tok.pos, "Z, trunc, prod or quot")

    @staticmethod
    def _build(factory, pos: int):
        try:
            return factory()
        except ContentLabError as exc:
            if getattr(exc, "position", None) is None:
                raise _with_position(exc, pos)
            raise
        except ValueError as exc:
            raise DescriptorSyntaxError(str(exc), pos) from None

    # -- algebras --

    def algebra(self, base: FiniteRing) -> FreeAlgebra:
        tok = self.tok
        if tok.kind != "name":
            raise DescriptorSyntaxError(f"unexpected {self._show(tok)}", tok.pos, "an algebra constructor")
        self.advance()
        if tok.text == "id":
            return self._build(lambda: alg_identity(base, self.max_alg), tok.pos)
        if tok.text == "trunc":
            self.expect("(")
            d, pos = self.expect_int()
            self.expect(")")
            return self._build(lambda: alg_truncated(base, d, self.max_alg), pos)
        if tok.text == "quad":
            self.expect("(")
            a = self.element_in(base)
            self.expect(")")
            return self._build(lambda: alg_quadratic(base, a, self.max_alg), tok.pos)
        if tok.text == "group":
            self.expect("(")
            self.expect("Z")
            self.expect("/")
            n, pos = self.expect_int()
            self.expect(")")
            return self._build(lambda: alg_group(base, n, self.max_alg), pos)
        if tok.text == "monoid":
            path, pos = self._raw_path()
            return self._build(lambda: alg_monoid(base, MonoidTable.from_file(path), self.max_alg), pos)
        raise DescriptorSyntaxError(
            f"unknown algebra constructor {tok.text!r}", tok.pos, "id, trunc, quad, group or monoid"
        )

    def _raw_path(self) -> tuple[str, int]:
        open_tok = self.expect("(")
        start = open_tok.pos + 1
        close = self.text.find(")", start)
        if close < 0:
            raise DescriptorSyntaxError("unterminated monoid path", len(self.text), "')'")
        path = self.text[start:close].strip()
        if not path:
            raise DescriptorSyntaxError("empty monoid path", start, "a file path")
        while self.tok.kind != "end" and self.tok.pos < close:
            self.advance()
        self.expect(")")
        return path, start

    # -- element expressions --

    def expr(self) -> tuple:
        node = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "punct":
            op = "add" if self.advance().text == "+" else "sub"
            node = (op, node, self.term())
        return node

    def term(self) -> tuple:
        node = self.factor()
        while True:
            tok = self.tok
            if tok.kind == "punct" and tok.text == "*":
                self.advance()
                node = ("mul", node, self.factor())
            elif tok.kind in ("int", "name") or (tok.kind == "punct" and tok.text in "(["):
                node = ("mul", node, self.factor())
            else:
                return node

    def factor(self) -> tuple:
        if self.tok.kind == "punct" and self.tok.text == "-":
            self.advance()
            return ("neg", self.factor())
        node = self.atom()
        if self.tok.kind == "punct" and self.tok.text == "^":
            self.advance()
            k, _ = self.expect_int()
            node = ("pow", node, k)
        return node

    def atom(self) -> tuple:
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            return ("int", int(tok.text))
        if tok.kind == "name":
            self.advance()
            return ("sym", tok.text, tok.pos)
        if tok.kind == "punct" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "punct" and tok.text == "[":
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return ("pair", left, right)
        raise DescriptorSyntaxError(f"unexpected {self._show(tok)}", tok.pos, "an element expression")

    def element_in(self, target) -> int | AlgebraElement:
        start = self.tok.pos
        node = self.expr()
        known = _known_symbols(target)
        for name, pos in _symbols(node):
            if name not in known:
                raise DescriptorSyntaxError(f"unknown symbol {name!r}", pos, " or ".join(sorted(known)) or "no symbols")
        try:
            return target.evaluate(node)
        except (KeyError, ValueError) as exc:
            raise DescriptorSyntaxError(f"cannot evaluate element: {exc}", start) from None


def _symbols(node: tuple):
    if node[0] == "sym":
        yield node[1], node[2]
    for child in node[1:]:
        if isinstance(child, tuple):
            yield from _symbols(child)


def _known_symbols(target) -> set[str]:
    if isinstance(target, FreeAlgebra):
        return set(target.basis_names) - {"1"} | target.base.all_symbols()
    return target.all_symbols()


def parse_ring(text: str, max_size: int | None = DEFAULT_MAX_RING) -> FiniteRing:
    p = Parser(text, max_ring=max_size)
    ring = p.ring()
    p.finish()
    return ring


def parse_algebra(text: str, base: FiniteRing, max_size: int | None = DEFAULT_MAX_ALG) -> FreeAlgebra:
    p = Parser(text, max_alg=max_size)
    algebra = p.algebra(base)
    p.finish()
    return algebra


def parse_element(text: str, target: FiniteRing | FreeAlgebra):
    """Element of a ring (returned as an index) or of an algebra."""
    p = Parser(text)
    value = p.element_in(target)
    p.finish()
    if isinstance(target, FiniteRing):
        return target.elem(value)
    return value


def parse_descriptor(
    text: str,
    base: FiniteRing | None = None,
    algebra: FreeAlgebra | None = None,
    max_ring: int | None = DEFAULT_MAX_RING,
    max_alg: int | None = DEFAULT_MAX_ALG,
):
    """Ring descriptor by default; an algebra over ``base``; an element of ``algebra``."""
    if algebra is not None:
        return parse_element(text, algebra)
    if base is not None:
        return parse_algebra(text, base, max_alg)
    return parse_ring(text, max_ring)
