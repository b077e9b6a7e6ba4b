from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from banachlab.config import DEFAULT_CAPS, Caps
from banachlab.errors import MalformedInputError
from banachlab.norms import engine_for
from banachlab.spaces import Repeat, Sum, TsirelsonDual
from banachlab.vectors import CoordPath, NormValue, SparseVec

TSTAR_TSTAR = Sum(TsirelsonDual(), Repeat(TsirelsonDual()))

INFINITY = float("inf")


@dataclass(frozen=True)
class Rectangle:
    """``(row_low, row_high] x (column_low, column_high]``; an infinite bound leaves a side open."""

    row_low: float = 0
    row_high: float = INFINITY
    column_low: float = 0
    column_high: float = INFINITY

    def __contains__(self, path: CoordPath) -> bool:
        return self.row_low < path[0] <= self.row_high and self.column_low < path[1] <= self.column_high

    @property
    def empty(self) -> bool:
        return self.row_high <= self.row_low or self.column_high <= self.column_low


@dataclass(frozen=True)
class Region:
    include: Rectangle
    exclude: Optional[Rectangle] = None

    def __contains__(self, path: CoordPath) -> bool:
        return path in self.include and (self.exclude is None or path not in self.exclude)


class GridVec:
    def __init__(self, vector: SparseVec):
        if vector and vector.depth != 2:
            raise MalformedInputError(f"grid vectors have depth 2, got depth {vector.depth}")
        self.__vector = vector if vector else SparseVec(depth=2)

    @classmethod
    def parse(cls, text: str) -> GridVec:
        return cls(SparseVec.parse(text))

    @property
    def vector(self) -> SparseVec:
        return self.__vector

    def row(self, i: int) -> SparseVec:
        return self.__vector.component(i)

    def project(self, region) -> GridVec:
        return GridVec(self.__vector.restrict_paths(lambda path: path in region))

    def rows(self) -> Tuple[int, ...]:
        return tuple(self.__vector.leading_support())

    def columns(self) -> Tuple[int, ...]:
        return tuple(sorted({path[1] for path in self.__vector.support()}))

    def norm(self, caps: Caps = DEFAULT_CAPS) -> NormValue:
        return engine_for(TSTAR_TSTAR, caps).norm(self.__vector)

    def row_norms(self, k: int, caps: Caps = DEFAULT_CAPS) -> Tuple[NormValue, ...]:
        engine = engine_for(TsirelsonDual(), caps)
        return tuple(engine.norm(self.row(i)) for i in range(1, k + 1))

    def normalized(self, caps: Caps = DEFAULT_CAPS) -> GridVec:
        value = self.norm(caps)
        if value == 0:
            raise MalformedInputError("cannot normalize the zero vector")
        return GridVec(self.__vector / value)

    def __add__(self, other: GridVec) -> GridVec:
        return GridVec(self.__vector + other.vector)

    def __mul__(self, scalar) -> GridVec:
        return GridVec(self.__vector * scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, GridVec) and self.__vector == other.vector

    def __hash__(self) -> int:
        return hash(self.__vector)

    def __bool__(self) -> bool:
        return bool(self.__vector)

    def __reduce__(self):
        return GridVec, (self.__vector,)

    def __str__(self) -> str:
        return str(self.__vector)

    def __repr__(self) -> str:
        return f"GridVec('{self}')"
