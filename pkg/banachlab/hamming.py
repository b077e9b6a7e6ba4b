from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from banachlab.config import DEFAULT_CAPS, Caps
from banachlab.errors import MalformedInputError, PreconditionError
from banachlab.norms import NormEngine, engine_for
from banachlab.sharding import merge_max, run_sharded, split
from banachlab.spaces import SpaceExpr, format_space, parse_space
from banachlab.vectors import NormValue, SparseVec

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class KSubset:
    elements: Tuple[int, ...]

    def __post_init__(self):
        if len(self.elements) == 0:
            raise MalformedInputError("a k-subset needs at least one element")
        if any(not isinstance(m, int) or m < 1 for m in self.elements):
            raise MalformedInputError(f"k-subset {self.elements} must contain positive integers")
        if any(b <= a for a, b in zip(self.elements, self.elements[1:])):
            raise MalformedInputError(f"k-subset {self.elements} is not strictly increasing")

    @classmethod
    def parse(cls, text: str) -> KSubset:
        try:
            return cls(tuple(int(term) for term in text.split(",")))
        except ValueError as e:
            if isinstance(e, MalformedInputError):
                raise
            raise MalformedInputError(f"'{text}' is not a comma-separated list of integers") from e

    @classmethod
    def of(cls, *elements: int) -> KSubset:
        return cls(tuple(elements))

    @property
    def k(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __getitem__(self, position: int) -> int:
        return self.elements[position]

    def __str__(self) -> str:
        return ",".join(str(m) for m in self.elements)


def all_subsets(n: int, k: int) -> List[KSubset]:
    return [KSubset(elements) for elements in itertools.combinations(range(1, n + 1), k)]


def _check_k(m: KSubset, n: KSubset):
    if m.k != n.k:
        raise MalformedInputError(f"k-subsets of different size {m.k} and {n.k}")


def differing_positions(m: KSubset, n: KSubset) -> List[int]:
    _check_k(m, n)
    return [j for j, (a, b) in enumerate(zip(m, n), start=1) if a != b]


def hamming_distance(m: KSubset, n: KSubset) -> int:
    return len(differing_positions(m, n))


def johnson_distance(m: KSubset, n: KSubset) -> Fraction:
    _check_k(m, n)
    return Fraction(len(set(m) ^ set(n)), 2)


@dataclass(frozen=True)
class HammingSpace:
    """``([N]^k, d_e)`` for the unit vector basis of ``generator``."""

    k: int
    generator: SpaceExpr

    def __post_init__(self):
        if self.k < 1:
            raise MalformedInputError(f"k must be positive, got {self.k}")
        if self.generator.depth != 1:
            raise MalformedInputError(f"generator '{format_space(self.generator)}' must act on depth-1 vectors")

    def engine(self, caps: Caps = DEFAULT_CAPS) -> NormEngine:
        return engine_for(self.generator, caps)

    def distance(self, m: KSubset, n: KSubset, caps: Caps = DEFAULT_CAPS) -> NormValue:
        if m.k != self.k:
            raise MalformedInputError(f"expected {self.k}-subsets, got {m.k}-subsets")
        return self.engine(caps).norm(SparseVec.indicator(differing_positions(m, n)))

    def diameter(self, caps: Caps = DEFAULT_CAPS) -> NormValue:
        return self.engine(caps).norm(SparseVec.indicator(range(1, self.k + 1)))


def d_e(space: HammingSpace, m: KSubset, n: KSubset, caps: Caps = DEFAULT_CAPS) -> NormValue:
    return space.distance(m, n, caps)


def diameter(space: HammingSpace, caps: Caps = DEFAULT_CAPS) -> NormValue:
    return space.diameter(caps)


def pair_count(n: int, k: int) -> int:
    return math.comb(n, k) ** 2


def _diameter_shard(shard: Tuple[str, int, int, Sequence[int], Caps]) -> Optional[Tuple]:
    generator, k, n, firsts, caps = shard
    space = HammingSpace(k, parse_space(generator))
    subsets = all_subsets(n, k)
    best = None
    for first in firsts:
        for second in range(first + 1, len(subsets)):
            value = space.distance(subsets[first], subsets[second], caps)
            if best is None or value > best[0]:
                best = (value, str(subsets[first]), str(subsets[second]))
    return best


def diameter_brute(space: HammingSpace, n: int, caps: Caps = DEFAULT_CAPS, workers: int = 1) -> NormValue:
    if n < 2 * space.k:
        raise PreconditionError(f"n={n} must be at least 2k={2 * space.k}")
    caps.check("pairs", pair_count(n, space.k), f"pairs of [{n}]^{space.k}")
    firsts = list(range(math.comb(n, space.k)))
    shards = [(format_space(space.generator), space.k, n, chunk, caps) for chunk in split(firsts, max(1, workers))]
    best = merge_max(run_sharded(_diameter_shard, shards, workers))
    log.info(f"diameter of [{n}]^{space.k} under {format_space(space.generator)}: {best[0]} at {best[1]} / {best[2]}")
    return best[0]
