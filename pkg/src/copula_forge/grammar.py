"""Recursive-descent parser for copula spec strings.

::

    expr  := prim | "t(" expr ")" | "s(" expr ")" | "sym(" expr ")"
           | "rad(" expr ")" | "mix(" wlist ")"
    prim  := "pi" | "m" | "w" | "mo:" num "," num | "pp:" num | "pq:" num
    wlist := num "*" expr { "+" num "*" expr }

Whitespace between tokens is ignored. ``t``/``s`` are transpose and survival,
``sym``/``rad`` the symmetrization and radial symmetrization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .catalog import (
    Independence,
    LowerFrechet,
    MarshallOlkin,
    PerturbedP,
    PerturbedQ,
    UpperFrechet,
    independence,
    lower_frechet,
    marshall_olkin,
    perturbed_p,
    perturbed_q,
    upper_frechet,
)
from .core import CopulaExpr, Mix, Survival, Transpose
from .transforms import mix, radial_symmetrize, survival, symmetrize, transpose

__all__ = ["CopulaSpecError", "SpecParameterError", "parse_copula_spec", "unparse"]


class CopulaSpecError(ValueError):
    """Malformed spec text; ``offset`` is the byte offset of the offending token."""

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        super().__init__(message)
        self.offset = offset
        self.expected = expected


class SpecParameterError(CopulaSpecError):
    """Well-formed text whose parameters a constructor rejects."""


_TOKEN = re.compile(
    r"(?P<num>-?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z]+)"
    r"|(?P<punct>[()*+,:])"
)

_UNARY = {"t": transpose, "s": survival, "sym": symmetrize, "rad": radial_symmetrize}
_NULLARY = {"pi": independence, "m": upper_frechet, "w": lower_frechet}
_NAMES = frozenset(_UNARY) | frozenset(_NULLARY) | {"mix", "mo", "pp", "pq"}


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "name", "punct" or "end"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            toks.append(_Tok("end", "", len(text.encode())))
            return toks
        m = _TOKEN.match(text, pos)
        if m is None:
            off = len(text[:pos].encode())
            raise CopulaSpecError(
                f"syntax error at offset {off}: unexpected character {text[pos]!r}", off
            )
        toks.append(_Tok(m.lastgroup, m.group(), len(text[:pos].encode())))
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected) -> CopulaSpecError:
        tok = self.peek()
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        exp = frozenset(expected)
        return CopulaSpecError(
            f"syntax error at offset {tok.offset}: expected one of "
            f"{', '.join(sorted(exp))}; found {found}",
            tok.offset,
            exp,
        )

    def punct(self, ch: str) -> None:
        tok = self.peek()
        if tok.kind != "punct" or tok.text != ch:
            raise self.fail({repr(ch)})
        self.i += 1

    def number(self) -> float:
        tok = self.peek()
        if tok.kind != "num":
            raise self.fail({"number"})
        self.i += 1
        return float(tok.text)

    def expr(self) -> CopulaExpr:
        tok = self.peek()
        if tok.kind != "name" or tok.text not in _NAMES:
            raise self.fail(_NAMES)
        self.i += 1
        name = tok.text
        if name in _NULLARY:
            return _NULLARY[name]()
        if name in _UNARY:
            self.punct("(")
            child = self.expr()
            self.punct(")")
            return _UNARY[name](child)
        if name == "mix":
            self.punct("(")
            weights, children = [], []
            while True:
                weights.append(self.number())
                self.punct("*")
                children.append(self.expr())
                nxt = self.peek()
                if nxt.kind == "punct" and nxt.text == "+":
                    self.i += 1
                    continue
                if nxt.kind == "punct" and nxt.text == ")":
                    break
                raise self.fail({"'+'", "')'"})
            self.punct(")")
            return self.build(name, tok.offset, mix, weights, children)
        self.punct(":")
        if name == "mo":
            alpha = self.number()
            self.punct(",")
            beta = self.number()
            return self.build(name, tok.offset, marshall_olkin, alpha, beta)
        theta = self.number()
        return self.build(name, tok.offset, perturbed_p if name == "pp" else perturbed_q, theta)

    @staticmethod
    def build(name, offset, ctor, *args):
        try:
            return ctor(*args)
        except ValueError as exc:
            raise SpecParameterError(f"{name}: {exc}", offset) from None


def parse_copula_spec(text: str) -> CopulaExpr:
    p = _Parser(text)
    expr = p.expr()
    if p.peek().kind != "end":
        raise p.fail({"end of input"})
    return expr


def _num(x: float) -> str:
    return repr(float(x))


def unparse(expr: CopulaExpr) -> str:
    """Spec text for ``expr``; ``parse_copula_spec(unparse(e)) == e`` for parseable trees."""
    if isinstance(expr, Independence):
        return "pi"
    if isinstance(expr, UpperFrechet):
        return "m"
    if isinstance(expr, LowerFrechet):
        return "w"
    if isinstance(expr, MarshallOlkin):
        return f"mo:{_num(expr.alpha)},{_num(expr.beta)}"
    if isinstance(expr, PerturbedP):
        return f"pp:{_num(expr.theta)}"
    if isinstance(expr, PerturbedQ):
        return f"pq:{_num(expr.theta)}"
    if isinstance(expr, Transpose):
        return f"t({unparse(expr.child)})"
    if isinstance(expr, Survival):
        return f"s({unparse(expr.child)})"
    if isinstance(expr, Mix):
        if expr.weights == (0.5, 0.5):
            first, second = expr.children
            if second == Transpose(first):
                return f"sym({unparse(first)})"
            if second == Survival(first):
                return f"rad({unparse(first)})"
        terms = "+".join(f"{_num(w)}*{unparse(c)}" for w, c in zip(expr.weights, expr.children))
        return f"mix({terms})"
    raise TypeError(f"cannot unparse {expr!r}")
