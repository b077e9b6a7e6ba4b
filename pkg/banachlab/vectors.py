from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

from banachlab import RATIONAL, VECTOR_TERM
from banachlab.errors import MalformedInputError

CoordPath = Tuple[int, ...]
NormValue = Union[Fraction, float]
Scalar = Union[Fraction, int]


def parse_rational(text: str) -> Fraction:
    match = RATIONAL.match(text)
    if match is None:
        raise MalformedInputError(f"'{text}' is not an integer or p/q fraction")
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise MalformedInputError(f"'{text}' has zero denominator")
    return Fraction(int(match.group(1)), denominator)


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def format_path(path: CoordPath) -> str:
    return ".".join(str(index) for index in path)


class FinSet(frozenset):

    def precedes(self, other: Iterable[int]) -> bool:
        other = FinSet(other)
        if not self or not other:
            return True
        return max(self) < min(other)


class SparseVec:
    """Immutable sparse vector with exact rational coefficients.

    Zero coefficients are never stored and all paths share one depth, so two vectors are
    equal exactly when their entry maps are equal.
    """

    def __init__(self, entries: Mapping[CoordPath, Scalar] | None = None, depth: int | None = None):
        cleaned: Dict[CoordPath, Fraction] = {}
        for path, value in (entries or {}).items():
            path = tuple(path)
            if len(path) == 0 or any(not isinstance(index, int) or index < 1 for index in path):
                raise MalformedInputError(f"coordinate path {path} must be a nonempty sequence of positive integers")
            value = Fraction(value)
            if value != 0:
                cleaned[path] = value
        depths = {len(path) for path in cleaned}
        if len(depths) > 1:
            raise MalformedInputError(f"coordinate paths of mixed depth {sorted(depths)}")
        if depths:
            actual = depths.pop()
            if depth is not None and depth != actual:
                raise MalformedInputError(f"coordinate paths have depth {actual}, expected {depth}")
            depth = actual
        self.__depth = 1 if depth is None else depth
        self.__entries = MappingProxyType(dict(sorted(cleaned.items())))
        self.__key = tuple(self.__entries.items())

    @classmethod
    def parse(cls, text: str) -> SparseVec:
        text = text.strip()
        if text in ("", "0"):
            return cls()
        entries: Dict[CoordPath, Fraction] = {}
        for term in text.split(","):
            match = VECTOR_TERM.match(term)
            if match is None:
                raise MalformedInputError(f"'{term.strip()}' is not a path:value term")
            path = tuple(int(index) for index in match.group(1).split("."))
            if path in entries:
                raise MalformedInputError(f"coordinate {match.group(1)} given twice")
            entries[path] = parse_rational(match.group(2))
        return cls(entries)

    @classmethod
    def unit(cls, *path: int) -> SparseVec:
        return cls({tuple(path): 1})

    @classmethod
    def indicator(cls, indices: Iterable[int], value: Scalar = 1) -> SparseVec:
        return cls({(index,): value for index in indices})

    @classmethod
    def from_components(cls, components: Mapping[int, SparseVec], depth: int | None = None) -> SparseVec:
        entries = {}
        for leading, component in components.items():
            for path, value in component.items():
                entries[(leading,) + path] = value
        return cls(entries, depth)

    @property
    def depth(self) -> int:
        return self.__depth

    @property
    def entries(self) -> Mapping[CoordPath, Fraction]:
        return self.__entries

    def key(self) -> Tuple[Tuple[CoordPath, Fraction], ...]:
        return self.__key

    def items(self) -> Iterator[Tuple[CoordPath, Fraction]]:
        return iter(self.__key)

    def support(self) -> List[CoordPath]:
        return list(self.__entries)

    def leading_support(self) -> List[int]:
        return sorted({path[0] for path in self.__entries})

    def __getitem__(self, path) -> Fraction:
        if isinstance(path, int):
            path = (path,)
        return self.__entries.get(tuple(path), Fraction(0))

    def __len__(self) -> int:
        return len(self.__entries)

    def __bool__(self) -> bool:
        return bool(self.__entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVec):
            return NotImplemented
        return self.__key == other.key() and (bool(self.__key) or self.__depth == other.depth)

    def __hash__(self) -> int:
        return hash(self.__key)

    def __reduce__(self):
        return SparseVec, (dict(self.__entries), self.__depth)

    def __repr__(self) -> str:
        return f"SparseVec('{self}')"

    def __str__(self) -> str:
        if not self.__entries:
            return "0"
        return ",".join(f"{format_path(path)}:{_format_coefficient(value)}" for path, value in self.__key)

    def __combine(self, other: SparseVec, sign: int) -> SparseVec:
        if not isinstance(other, SparseVec):
            return NotImplemented
        if self and other and self.depth != other.depth:
            raise MalformedInputError(f"cannot combine vectors of depth {self.depth} and {other.depth}")
        entries = dict(self.__entries)
        for path, value in other.items():
            entries[path] = entries.get(path, Fraction(0)) + sign * value
        return SparseVec(entries, self.depth if self else other.depth)

    def __add__(self, other: SparseVec) -> SparseVec:
        return self.__combine(other, 1)

    def __sub__(self, other: SparseVec) -> SparseVec:
        return self.__combine(other, -1)

    def __neg__(self) -> SparseVec:
        return self * -1

    def __mul__(self, scalar: Scalar) -> SparseVec:
        scalar = Fraction(scalar)
        return SparseVec({path: scalar * value for path, value in self.__key}, self.depth)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> SparseVec:
        return self * (1 / Fraction(scalar))

    def __abs__(self) -> SparseVec:
        return SparseVec({path: abs(value) for path, value in self.__key}, self.depth)

    def restrict(self, indices: Iterable[int]) -> SparseVec:
        """``E(x)``: keep the entries whose leading index lies in ``indices``."""
        indices = frozenset(indices)
        return SparseVec({path: value for path, value in self.__key if path[0] in indices}, self.depth)

    def restrict_paths(self, keep) -> SparseVec:
        return SparseVec({path: value for path, value in self.__key if keep(path)}, self.depth)

    def inner(self, other: SparseVec) -> Fraction:
        if self.depth != other.depth:
            raise MalformedInputError(f"inner product of vectors of depth {self.depth} and {other.depth}")
        small, large = (self, other) if len(self) <= len(other) else (other, self)
        return sum((value * large[path] for path, value in small.items()), Fraction(0))

    def support_min_max(self) -> Tuple[int, int]:
        if not self.__entries:
            raise MalformedInputError("support of the zero vector is undefined")
        leading = self.leading_support()
        return leading[0], leading[-1]

    def sup_norm(self) -> Fraction:
        return max((abs(value) for value in self.__entries.values()), default=Fraction(0))

    def l1_norm(self) -> Fraction:
        return sum((abs(value) for value in self.__entries.values()), Fraction(0))

    def component(self, leading: int) -> SparseVec:
        if self.depth < 2:
            raise MalformedInputError("components are defined for vectors of depth at least 2")
        return SparseVec({path[1:]: value for path, value in self.__key if path[0] == leading}, self.depth - 1)

    def components(self) -> Dict[int, SparseVec]:
        if self.depth < 2:
            raise MalformedInputError("components are defined for vectors of depth at least 2")
        grouped: Dict[int, Dict[CoordPath, Fraction]] = {}
        for path, value in self.__key:
            grouped.setdefault(path[0], {})[path[1:]] = value
        return {leading: SparseVec(entries, self.depth - 1) for leading, entries in grouped.items()}

    def coefficients(self) -> Dict[int, Fraction]:
        if self.depth != 1:
            raise MalformedInputError(f"expected a depth-1 vector, got depth {self.depth}")
        return {path[0]: value for path, value in self.__key}


def _format_coefficient(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else format_rational(value)


def restrict(x: SparseVec, indices: Iterable[int]) -> SparseVec:
    return x.restrict(indices)


def inner_product(x: SparseVec, f: SparseVec) -> Fraction:
    return x.inner(f)


def support_min_max(x: SparseVec) -> Tuple[int, int]:
    return x.support_min_max()


def disjoint_supports(vectors: Iterable[SparseVec]) -> bool:
    seen = set()
    for vector in vectors:
        paths = set(vector.support())
        if seen & paths:
            return False
        seen |= paths
    return True
