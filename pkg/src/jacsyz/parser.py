"""Polynomial expressions and problem input files.

Grammar (explicit ``*`` is required; ``/`` only divides by constants)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INTEGER)?
    atom   := INTEGER | NAME | '(' expr ')'

Input files are UTF-8 text with ``vars:``, ``f:`` and ``points:`` sections;
``#`` starts a comment.  Points are bracketed comma-separated rationals, one
per line, e.g. ``[-1, 1, 1/2, 1]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import InputError
from .polyring import HomogeneousPoly, Poly, evaluate, partial_derivative

__all__ = ["ParseError", "parse_poly", "parse_expression", "parse_point", "ProblemInput", "load_problem", "parse_problem"]


class ParseError(InputError):
    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class Token(NamedTuple):
    kind: str
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(Token("num", num, start))
        elif name is not None:
            tokens.append(Token("name", name, start))
        else:
            tokens.append(Token(op, op, start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.vars = {v: i for i, v in enumerate(variables)}
        self.n = len(variables)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self, kind: str | None = None) -> Token:
        tok = self.tokens[self.i]
        if kind is not None and tok.kind != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok.kind == "end" else repr(tok.value)
            raise ParseError(f"expected {want}, found {got}", tok.pos, self.text)
        self.i += 1
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        self.take("end")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek().kind in "+-":
            op = self.take().kind
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op.kind == "*":
                p = p * q
            else:
                if q.total_degree() > 0:
                    raise ParseError("division by a non-constant", op.pos, self.text)
                c = q.coefficient((0,) * self.n)
                if c == 0:
                    raise ParseError("division by zero", op.pos, self.text)
                p = p * (1 / c)
        return p

    def unary(self) -> Poly:
        tok = self.peek()
        if tok.kind == "-":
            self.take()
            return -self.unary()
        if tok.kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek().kind in ("^", "**"):
            self.take()
            exp = self.take("num")
            return base ** int(exp.value)
        return base

    def atom(self) -> Poly:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return Poly.constant(self.n, int(tok.value))
        if tok.kind == "name":
            self.take()
            if tok.value not in self.vars:
                raise ParseError(f"unknown variable {tok.value!r}", tok.pos, self.text)
            return Poly.variable(self.n, self.vars[tok.value])
        if tok.kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        got = "end of input" if tok.kind == "end" else repr(tok.value)
        raise ParseError(f"unexpected {got}", tok.pos, self.text)


def parse_expression(text: str, variables: Sequence[str]) -> Poly:
    """Parse any polynomial expression (no homogeneity requirement)."""
    return _Parser(text, variables).parse()


def parse_poly(text: str, variables: Sequence[str]) -> HomogeneousPoly:
    """Parse a homogeneous polynomial; non-homogeneous input is rejected."""
    p = parse_expression(text, variables)
    degrees = sorted({sum(e) for e in p.terms})
    if len(degrees) > 1:
        top = degrees[-1]
        offending = Poly(p.num_vars, {e: c for e, c in p.terms.items() if sum(e) != top})
        raise InputError(
            f"polynomial is not homogeneous: top degree {top}, offending terms {offending.format(variables)}"
        )
    return HomogeneousPoly.from_poly(p)


def parse_point(text: str, size: int | None = None) -> tuple[Fraction, ...]:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise InputError(f"point {text.strip()!r} must be written as [a, b, ...]")
    try:
        coords = tuple(Fraction(c.strip()) for c in s[1:-1].split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad coordinate in point {s!r}: {exc}") from None
    if size is not None and len(coords) != size:
        raise InputError(f"point {s} has {len(coords)} coordinates, expected {size}")
    if not any(coords):
        raise InputError(f"point {s} is the zero vector")
    return coords


@dataclass
class ProblemInput:
    variables: tuple[str, ...]
    f_text: str
    f: HomogeneousPoly
    singular_points: list[tuple[Fraction, ...]] = field(default_factory=list)

    def validate_points(self) -> None:
        """Each point must lie on V and annihilate every partial derivative."""
        f = self.f
        parts = [partial_derivative(f, i) for i in range(f.num_vars)]
        for k, q in enumerate(self.singular_points, 1):
            label = "[" + ", ".join(str(x) for x in q) + "]"
            if evaluate(f, q) != 0:
                raise InputError(f"point {k} {label} does not lie on f = 0")
            bad = [self.variables[i] for i, p in enumerate(parts) if evaluate(p, q) != 0]
            if bad:
                raise InputError(
                    f"point {k} {label} is not singular: partial derivative(s) in {', '.join(bad)} do not vanish")


_SECTION_RE = re.compile(r"^\s*(vars|f|points)\s*:(.*)$")


def parse_problem(text: str) -> ProblemInput:
    sections: dict[str, list[str]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _SECTION_RE.match(line)
        if m:
            current = m.group(1)
            if current in sections:
                raise InputError(f"section {current!r} given twice")
            sections[current] = [m.group(2)] if m.group(2).strip() else []
            continue
        if current is None:
            raise InputError(f"text outside a section: {line.strip()!r}")
        sections[current].append(line)
    for key in ("vars", "f"):
        if key not in sections:
            raise InputError(f"missing section {key!r}")
    variables = tuple(v.strip() for v in " ".join(sections["vars"]).replace(",", " ").split())
    if len(variables) < 2 or len(set(variables)) != len(variables):
        raise InputError("need at least two distinct variable names")
    f_text = " ".join(s.strip() for s in sections["f"])
    f = parse_poly(f_text, variables)
    if f.is_zero() or f.degree < 2:
        raise InputError("f must be a nonzero form of degree at least 2")
    points = [parse_point(p, len(variables)) for p in sections.get("points", [])]
    problem = ProblemInput(variables, f_text, f, points)
    problem.validate_points()
    return problem


def load_problem(path) -> ProblemInput:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text)
