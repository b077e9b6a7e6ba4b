"""
Norm evaluation for every space expression.

A :class:`NormEngine` binds one :class:`~banachlab.spaces.SpaceExpr` to a tree of evaluators,
one per subexpression. Implicitly defined norms are computed by dynamic programming:

* Tsirelson ``T``: over intervals of the support, splitting into ``n`` successive intervals with
  ``n <= min`` of the first one.
* modified Tsirelson ``M``: over set partitions of ``supp(x) n [n, oo)`` into ``n`` blocks.
* Schlumprecht ``S(f)``: over interval partitions into ``l`` parts scaled by ``1/f(l)``.

Results are exact :class:`~fractions.Fraction` values except where an irrational gauge or an
``l_p`` norm with ``1 < p < oo`` is involved, which give floats.
"""

from __future__ import annotations

import itertools
import logging
import math
from abc import ABC, abstractmethod
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Sequence, Tuple

from banachlab import dual
from banachlab.config import DEFAULT_CAPS, Caps
from banachlab.errors import MalformedInputError
from banachlab.gauges import get_gauge
from banachlab.spaces import (
    INF,
    Exponent,
    Lp,
    LpN,
    ModifiedTsirelson,
    Schlumprecht,
    SpaceExpr,
    Sum,
    Tsirelson,
    TsirelsonDual,
    Xpq,
    validate_vector,
)
from banachlab.vectors import NormValue, SparseVec

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)

Items = Tuple[Tuple[int, Fraction], ...]


def as_fraction(value: NormValue) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def lp_combine(values: Sequence[NormValue], p: Exponent) -> NormValue:
    if not values:
        return Fraction(0)
    if p == INF:
        return max(values)
    if p == 1:
        return sum(values, Fraction(0)) if all(isinstance(v, Fraction) for v in values) else float(sum(values))
    exponent = float(p)
    return math.fsum(float(value) ** exponent for value in values) ** (1 / exponent)


def magnitudes(x: SparseVec) -> Items:
    if x.depth != 1:
        raise MalformedInputError(f"expected a depth-1 vector, got depth {x.depth}")
    return tuple((path[0], abs(value)) for path, value in x.items())


class NormEvaluator(ABC):
    def __init__(self, engine: NormEngine):
        self.engine = engine
        self.memo: Dict = {}

    @property
    def caps(self) -> Caps:
        return self.engine.caps

    @abstractmethod
    def evaluate(self, x: SparseVec) -> NormValue:
        pass


class LpNorm(NormEvaluator):
    def __init__(self, engine: NormEngine, p: Exponent):
        super().__init__(engine)
        self.__p = p

    def evaluate(self, x: SparseVec) -> NormValue:
        return lp_combine([value for _, value in magnitudes(x)], self.__p)


class IntervalPartitionNorm(NormEvaluator):
    """Shared interval DP: ``N(I) = max(N(I minus first), ||x_I||_oo, max_n w(n) * P(I, n))`` where
    ``P(I, n)`` is the best sum over partitions of ``I`` into ``n`` consecutive nonempty intervals."""

    @abstractmethod
    def part_counts(self, items: Items) -> Iterable[int]:
        pass

    @abstractmethod
    def weight(self, parts: int) -> NormValue:
        pass

    def evaluate(self, x: SparseVec) -> NormValue:
        return self.interval(magnitudes(x))

    def interval(self, items: Items) -> NormValue:
        if not items:
            return Fraction(0)
        cached = self.memo.get(items)
        if cached is not None:
            return cached
        best = max(value for _, value in items)
        if len(items) > 1:
            best = max(best, self.interval(items[1:]))
            partitions: Dict[Tuple[int, int], NormValue] = {}

            def partition(start: int, parts: int) -> NormValue:
                if parts == 1:
                    return self.interval(items[start:])
                key = (start, parts)
                if key not in partitions:
                    partitions[key] = max(
                        self.interval(items[start:cut]) + partition(cut, parts - 1)
                        for cut in range(start + 1, len(items) - parts + 2)
                    )
                return partitions[key]

            for parts in self.part_counts(items):
                best = max(best, self.weight(parts) * partition(0, parts))
        self.memo[items] = best
        return best


class TsirelsonNorm(IntervalPartitionNorm):
    def part_counts(self, items: Items) -> Iterable[int]:
        return range(2, min(items[0][0], len(items)) + 1)

    def weight(self, parts: int) -> NormValue:
        return HALF


class SchlumprechtNorm(IntervalPartitionNorm):
    def __init__(self, engine: NormEngine, gauge: str):
        super().__init__(engine)
        self.__gauge = get_gauge(gauge)

    def part_counts(self, items: Items) -> Iterable[int]:
        return range(2, len(items) + 1)

    def weight(self, parts: int) -> NormValue:
        return 1 / self.__gauge(parts)

    def evaluate(self, x: SparseVec) -> NormValue:
        return float(super().evaluate(x))


class ModifiedTsirelsonNorm(NormEvaluator):
    def evaluate(self, x: SparseVec) -> NormValue:
        self.caps.check("modified", len(x), "modified Tsirelson support")
        return self.subset(magnitudes(x))

    def subset(self, items: Items) -> Fraction:
        if not items:
            return Fraction(0)
        cached = self.memo.get(items)
        if cached is not None:
            return cached
        best = max(value for _, value in items)
        total = sum((value for _, value in items), Fraction(0))
        for parts in range(2, len(items) + 1):
            eligible = tuple(item for item in items if item[0] >= parts)
            if len(eligible) < parts:
                break
            if best == total:
                break
            if HALF * sum(value for _, value in eligible) <= best:
                continue
            best = max(best, HALF * self.__partition(eligible, parts))
        self.memo[items] = best
        return best

    def __partition(self, items: Items, parts: int) -> Fraction:
        """Best ``sum ||E_k(x)||_M`` over partitions of ``items`` into exactly ``parts`` blocks."""
        table: Dict[Tuple[int, int], Fraction] = {}

        def members(mask: int) -> Items:
            return tuple(item for bit, item in enumerate(items) if mask >> bit & 1)

        def best(mask: int, count: int) -> Fraction:
            if count == 1:
                return self.subset(members(mask))
            key = (mask, count)
            if key in table:
                return table[key]
            lowest = mask & -mask
            rest = mask ^ lowest
            result = Fraction(0)
            block = rest
            while True:
                remaining = rest ^ block
                if bin(remaining).count("1") >= count - 1:
                    result = max(result, self.subset(members(lowest | block)) + best(remaining, count - 1))
                if block == 0:
                    break
                block = (block - 1) & rest
            table[key] = result
            return result

        return best((1 << len(items)) - 1, parts)


class TsirelsonDualNorm(NormEvaluator):
    def evaluate(self, x: SparseVec) -> NormValue:
        return dual.dual_norm(x, self.caps).value


class SumNorm(NormEvaluator):
    def __init__(self, engine: NormEngine, space: Sum):
        super().__init__(engine)
        self.__space = space
        self.__outer = engine.evaluator(space.outer)

    def evaluate(self, x: SparseVec) -> NormValue:
        inner = {
            leading: self.engine.evaluator(self.__space.inner(leading)).evaluate(component)
            for leading, component in x.components().items()
        }
        exact = all(isinstance(value, Fraction) for value in inner.values())
        outer = self.__outer.evaluate(SparseVec({(leading,): as_fraction(value) for leading, value in inner.items()}))
        return outer if exact else float(outer)


class XpqNorm(NormEvaluator):
    """``||x|| = ||(|head|, ||(||x_c||)_c||_p)||_q`` level by level."""

    def __init__(self, engine: NormEngine, space: Xpq):
        super().__init__(engine)
        self.__space = space

    def evaluate(self, x: SparseVec) -> NormValue:
        return self.__level(x, self.__space.k)

    def __level(self, x: SparseVec, k: int) -> NormValue:
        if k == 0:
            return abs(x[(1,)])
        head = abs(x[(1,) * (k + 1)])
        copies = [self.__level(component, k - 1) for leading, component in x.components().items() if leading != 1]
        return lp_combine([head, lp_combine(copies, self.__space.p)], self.__space.q)


EVALUATORS: Dict[type, Callable[[NormEngine, SpaceExpr], NormEvaluator]] = {
    Lp: lambda engine, space: LpNorm(engine, space.p),
    LpN: lambda engine, space: LpNorm(engine, space.p),
    Tsirelson: lambda engine, space: TsirelsonNorm(engine),
    TsirelsonDual: lambda engine, space: TsirelsonDualNorm(engine),
    ModifiedTsirelson: lambda engine, space: ModifiedTsirelsonNorm(engine),
    Schlumprecht: lambda engine, space: SchlumprechtNorm(engine, space.gauge),
    Sum: SumNorm,
    Xpq: XpqNorm,
}


class NormEngine:

    def __init__(self, space: SpaceExpr, caps: Caps = DEFAULT_CAPS):
        self.__space = space
        self.__caps = caps
        self.__evaluators: Dict[SpaceExpr, NormEvaluator] = {}
        self.__memo: Dict = {}
        self.__root = self.evaluator(space)

    @property
    def space(self) -> SpaceExpr:
        return self.__space

    @property
    def caps(self) -> Caps:
        return self.__caps

    @property
    def memo_size(self) -> int:
        return len(self.__memo) + sum(len(evaluator.memo) for evaluator in self.__evaluators.values())

    def evaluator(self, space: SpaceExpr) -> NormEvaluator:
        evaluator = self.__evaluators.get(space)
        if evaluator is None:
            evaluator = EVALUATORS[type(space)](self, space)
            self.__evaluators[space] = evaluator
        return evaluator

    def norm(self, x: SparseVec) -> NormValue:
        key = x.key()
        cached = self.__memo.get(key)
        if cached is not None:
            return cached
        validate_vector(self.__space, x)
        value = self.__root.evaluate(x)
        self.__memo[key] = value
        return value


@lru_cache(maxsize=64)
def engine_for(space: SpaceExpr, caps: Caps = DEFAULT_CAPS) -> NormEngine:
    return NormEngine(space, caps)


def norm(space: SpaceExpr, x: SparseVec, caps: Caps = DEFAULT_CAPS) -> NormValue:
    return engine_for(space, caps).norm(x)


def brute_force_tsirelson(x: SparseVec, caps: Caps = DEFAULT_CAPS) -> Fraction:
    """``||x||_T`` straight from the implicit equation, over every admissible family of successive
    nonempty subsets of the support, without memoization."""
    caps.check("tsirelson", len(x), "brute-force Tsirelson support")
    return _brute_force(magnitudes(x))


def _brute_force(items: Items) -> Fraction:
    if not items:
        return Fraction(0)
    best = max(value for _, value in items)
    for size in range(2, len(items) + 1):
        for used in itertools.combinations(items, size):
            for parts in range(2, min(used[0][0], size) + 1):
                for cuts in itertools.combinations(range(1, size), parts - 1):
                    bounds = (0,) + cuts + (size,)
                    total = sum((_brute_force(used[a:b]) for a, b in zip(bounds, bounds[1:])), Fraction(0))
                    best = max(best, HALF * total)
    return best
