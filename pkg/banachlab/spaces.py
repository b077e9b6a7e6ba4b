"""
Space expressions: the textual language describing the Banach spaces built from primitive
norms and unconditional sums.

Grammar (whitespace-insensitive)::

    expr   := "T" | "T*" | "M" | "c0" | "l1" | "lp(" P ")" | "lpn(" P "," N ")"
            | "S(" gauge ")" | "sum(" expr "," inner ")" | "xpq(" P "," P "," N ["," N] ")"
    inner  := "repeat(" expr ")" | "indexed(" expr-with-# ")"
    P      := positive rational | "inf"

``c0`` is ``lp(inf)`` and ``l1`` is ``lp(1)``. In ``indexed`` the placeholder ``#`` is replaced
textually by the outer coordinate before the template is parsed.
"""

from __future__ import annotations

import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from banachlab.errors import MalformedInputError, SpaceSemanticError, SpaceSyntaxError
from banachlab.gauges import get_gauge
from banachlab.vectors import CoordPath, SparseVec, format_path

INF = math.inf
INDEXED_CHECK_LENGTH = 64
PLACEHOLDER = "#"

Exponent = Union[Fraction, float]

TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9]*)|(?P<number>\d+(?:/\d+)?)|(?P<symbol>[(),*#]))")


def format_exponent(p: Exponent) -> str:
    if p == INF:
        return "inf"
    p = Fraction(p)
    return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"


class SpaceExpr(ABC):
    @property
    @abstractmethod
    def depth(self) -> int:
        pass

    def __str__(self) -> str:
        return format_space(self)


@dataclass(frozen=True)
class Lp(SpaceExpr):
    p: Exponent

    @property
    def depth(self) -> int:
        return 1


@dataclass(frozen=True)
class LpN(SpaceExpr):
    p: Exponent
    n: int

    @property
    def depth(self) -> int:
        return 1


@dataclass(frozen=True)
class Tsirelson(SpaceExpr):
    @property
    def depth(self) -> int:
        return 1


@dataclass(frozen=True)
class TsirelsonDual(SpaceExpr):
    @property
    def depth(self) -> int:
        return 1


@dataclass(frozen=True)
class ModifiedTsirelson(SpaceExpr):
    @property
    def depth(self) -> int:
        return 1


@dataclass(frozen=True)
class Schlumprecht(SpaceExpr):
    gauge: str = "log2"

    @property
    def depth(self) -> int:
        return 1


@dataclass(frozen=True)
class Xpq(SpaceExpr):
    """Truncation of ``X^{q,k}_p = R (+)_q l_p^width(X^{q,k-1}_p)`` with ``X^{q,0}_p = R``."""

    p: Exponent
    q: Exponent
    k: int
    width: int = 8

    @property
    def depth(self) -> int:
        return self.k + 1

    def lower(self) -> Xpq:
        return Xpq(self.p, self.q, self.k - 1, self.width)


@dataclass(frozen=True)
class Repeat:
    inner: SpaceExpr

    def at(self, index: int) -> SpaceExpr:  # pylint: disable=unused-argument
        return self.inner


@dataclass(frozen=True)
class Indexed:
    template: str

    def at(self, index: int) -> SpaceExpr:
        return parse_space(self.template.replace(PLACEHOLDER, str(index)))


InnerFamily = Union[Repeat, Indexed]


@dataclass(frozen=True)
class Sum(SpaceExpr):
    outer: SpaceExpr
    family: InnerFamily

    @property
    def depth(self) -> int:
        return 1 + self.family.at(1).depth

    def inner(self, index: int) -> SpaceExpr:
        return self.family.at(index)


class SpaceParser:
    def __init__(self, text: str):
        self.__text = text
        self.__position = 0

    def parse(self) -> SpaceExpr:
        expr = self.__expr()
        self.__skip_whitespace()
        if self.__position != len(self.__text):
            self.__fail(f"unexpected '{self.__text[self.__position]}'")
        return expr

    def __offset(self, position: Optional[int] = None) -> int:
        position = self.__position if position is None else position
        return len(self.__text[:position].encode("utf8"))

    def __fail(self, message: str, position: Optional[int] = None):
        raise SpaceSyntaxError(message, self.__offset(position))

    def __skip_whitespace(self):
        while self.__position < len(self.__text) and self.__text[self.__position].isspace():
            self.__position += 1

    def __peek(self) -> Optional[re.Match]:
        return TOKEN.match(self.__text, self.__position)

    def __next(self) -> re.Match:
        match = self.__peek()
        if match is None:
            self.__skip_whitespace()
            if self.__position >= len(self.__text):
                self.__fail("unexpected end of input")
            self.__fail(f"unexpected '{self.__text[self.__position]}'")
        self.__position = match.end()
        return match

    def __expect(self, symbol: str):
        match = self.__next()
        if match.group("symbol") != symbol:
            self.__fail(f"expected '{symbol}'", match.start(match.lastgroup))

    def __peek_symbol(self, symbol: str) -> bool:
        match = self.__peek()
        return match is not None and match.group("symbol") == symbol

    def __exponent(self) -> Exponent:
        match = self.__next()
        if match.group("ident") == "inf":
            return INF
        if match.group("number") is None:
            self.__fail("expected a positive rational or 'inf'", match.start(match.lastgroup))
        numerator, _, denominator = match.group("number").partition("/")
        if denominator and int(denominator) == 0:
            self.__fail("zero denominator", match.start(match.lastgroup))
        value = Fraction(int(numerator), int(denominator or 1))
        if value < 1:
            raise SpaceSemanticError(f"exponent {format_exponent(value)} is below 1")
        return value

    def __integer(self, name: str) -> int:
        match = self.__next()
        number = match.group("number")
        if number is None or "/" in number:
            self.__fail(f"expected integer {name}", match.start(match.lastgroup))
        return int(number)

    def __expr(self) -> SpaceExpr:
        match = self.__next()
        ident = match.group("ident")
        if ident is None:
            self.__fail("expected a space expression", match.start(match.lastgroup))
        if ident == "T":
            if self.__peek_symbol("*"):
                self.__next()
                return TsirelsonDual()
            return Tsirelson()
        if ident == "M":
            return ModifiedTsirelson()
        if ident == "c0":
            return Lp(INF)
        if ident == "l1":
            return Lp(Fraction(1))
        if ident == "lp":
            self.__expect("(")
            p = self.__exponent()
            self.__expect(")")
            return Lp(p)
        if ident == "lpn":
            self.__expect("(")
            p = self.__exponent()
            self.__expect(",")
            n = self.__integer("n")
            self.__expect(")")
            if n < 1:
                raise SpaceSemanticError(f"lpn dimension {n} is below 1")
            return LpN(p, n)
        if ident == "S":
            self.__expect("(")
            gauge = self.__next()
            if gauge.group("ident") is None:
                self.__fail("expected a gauge name", gauge.start(gauge.lastgroup))
            self.__expect(")")
            get_gauge(gauge.group("ident"))
            return Schlumprecht(gauge.group("ident"))
        if ident == "sum":
            self.__expect("(")
            outer = self.__expr()
            if outer.depth != 1:
                raise SpaceSemanticError(f"outer space '{format_space(outer)}' must act on depth-1 vectors")
            self.__expect(",")
            family = self.__family()
            self.__expect(")")
            return Sum(outer, family)
        if ident == "xpq":
            self.__expect("(")
            p = self.__exponent()
            self.__expect(",")
            q = self.__exponent()
            self.__expect(",")
            k = self.__integer("k")
            width = 8
            if self.__peek_symbol(","):
                self.__next()
                width = self.__integer("width")
            self.__expect(")")
            if width < 1:
                raise SpaceSemanticError(f"xpq width {width} is below 1")
            return Xpq(p, q, k, width)
        self.__fail(f"unknown space '{ident}'", match.start("ident"))
        return None  # unreachable

    def __family(self) -> InnerFamily:
        match = self.__next()
        ident = match.group("ident")
        if ident == "repeat":
            self.__expect("(")
            inner = self.__expr()
            self.__expect(")")
            return Repeat(inner)
        if ident == "indexed":
            self.__expect("(")
            start = self.__position
            depth = 1
            while depth > 0:
                if self.__position >= len(self.__text):
                    self.__fail("unbalanced parentheses in indexed template")
                char = self.__text[self.__position]
                depth += {"(": 1, ")": -1}.get(char, 0)
                self.__position += 1
            template = "".join(self.__text[start : self.__position - 1].split())
            return _checked_template(template, start)
        self.__fail("expected 'repeat(' or 'indexed('", match.start(match.lastgroup or 0))
        return None  # unreachable


def _checked_template(template: str, offset: int) -> Indexed:
    if template == "":
        raise SpaceSyntaxError("empty indexed template", offset)
    family = Indexed(template)
    depths = set()
    for index in range(1, INDEXED_CHECK_LENGTH + 1):
        try:
            depths.add(family.at(index).depth)
        except SpaceSemanticError as e:
            raise SpaceSemanticError(f"indexed template at index {index}: {e.reason}") from e
        except SpaceSyntaxError as e:
            raise SpaceSyntaxError(f"indexed template at index {index}: {e}", offset) from e
    if len(depths) != 1:
        raise SpaceSemanticError(f"indexed template '{template}' instantiates to spaces of different depth")
    return family


@lru_cache(maxsize=None)
def parse_space(text: str) -> SpaceExpr:
    return SpaceParser(text).parse()


def format_space(expr: SpaceExpr) -> str:  # pylint: disable=too-many-return-statements
    if isinstance(expr, Tsirelson):
        return "T"
    if isinstance(expr, TsirelsonDual):
        return "T*"
    if isinstance(expr, ModifiedTsirelson):
        return "M"
    if isinstance(expr, Lp):
        return f"lp({format_exponent(expr.p)})"
    if isinstance(expr, LpN):
        return f"lpn({format_exponent(expr.p)},{expr.n})"
    if isinstance(expr, Schlumprecht):
        return f"S({expr.gauge})"
    if isinstance(expr, Xpq):
        return f"xpq({format_exponent(expr.p)},{format_exponent(expr.q)},{expr.k},{expr.width})"
    if isinstance(expr, Sum):
        if isinstance(expr.family, Repeat):
            inner = f"repeat({format_space(expr.family.inner)})"
        else:
            inner = f"indexed({expr.family.template})"
        return f"sum({format_space(expr.outer)},{inner})"
    raise TypeError(f"unknown space expression {expr!r}")


def describe_space(expr: SpaceExpr) -> dict:
    node = {"type": type(expr).__name__}
    if isinstance(expr, (Lp, LpN, Xpq)):
        node["p"] = format_exponent(expr.p)
    if isinstance(expr, LpN):
        node["n"] = expr.n
    if isinstance(expr, Xpq):
        node.update({"q": format_exponent(expr.q), "k": expr.k, "width": expr.width})
    if isinstance(expr, Schlumprecht):
        node["gauge"] = expr.gauge
    if isinstance(expr, Sum):
        node["outer"] = describe_space(expr.outer)
        if isinstance(expr.family, Repeat):
            node["inner"] = {"type": "Repeat", "space": describe_space(expr.family.inner)}
        else:
            node["inner"] = {"type": "Indexed", "template": expr.family.template}
    return node


def path_error(space: SpaceExpr, path: CoordPath) -> Optional[str]:
    if len(path) != space.depth:
        return f"depth {len(path)} against depth-{space.depth} space"
    if isinstance(space, LpN) and path[0] > space.n:
        return f"index {path[0]} exceeds dimension {space.n}"
    if isinstance(space, Sum):
        reason = path_error(space.outer, path[:1])
        if reason is None:
            reason = path_error(space.inner(path[0]), path[1:])
        return reason
    if isinstance(space, Xpq):
        return _xpq_path_error(space, path)
    return None


def _xpq_path_error(space: Xpq, path: CoordPath) -> Optional[str]:
    if space.k == 0:
        return None if path == (1,) else "X^0 is one-dimensional"
    if path[0] == 1:
        return None if all(index == 1 for index in path) else "head coordinate must be 1.1...1"
    if path[0] - 1 > space.width:
        return f"copy {path[0] - 1} exceeds truncation width {space.width}"
    return _xpq_path_error(space.lower(), path[1:])


def validate_vector(space: SpaceExpr, x: SparseVec):
    """Raise :class:`MalformedInputError` naming the first path of ``x`` that ``space`` rejects."""
    if not x and x.depth != space.depth:
        raise MalformedInputError(f"zero vector of depth {x.depth} against depth-{space.depth} space")
    for path in x.support():
        reason = path_error(space, path)
        if reason is not None:
            raise MalformedInputError(f"coordinate {format_path(path)}: {reason}")
