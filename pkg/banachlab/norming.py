"""Norming set of Tsirelson's space on a finite coordinate set, generated on its positive part."""

from __future__ import annotations

import bisect
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from banachlab.config import DEFAULT_CAPS, Caps
from banachlab.vectors import FinSet, SparseVec

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)

Coefficients = Tuple[Tuple[int, Fraction], ...]


@dataclass(frozen=True)
class Functional:
    coefficients: SparseVec
    depth: int = 0

    def __call__(self, y: SparseVec) -> Fraction:
        return self.coefficients.inner(y)

    def support(self) -> FinSet:
        return FinSet(self.coefficients.leading_support())

    def __str__(self) -> str:
        return str(self.coefficients)


class _Generator:
    """Semi-naive closure of the unit functionals under admissible averaging.

    With ``reduced`` only the coordinatewise maximal functionals of every support are kept; a
    dominated member can always be replaced inside an average by one dominating it with the same
    support, so the maximal members of the closure are generated from maximal members only.
    """

    def __init__(self, coordinates: Sequence[int], reduced: bool):
        self.__reduced = reduced
        self.__depths: Dict[Coefficients, int] = {}
        self.__by_support: Dict[Tuple[int, ...], List[Coefficients]] = {}
        for j in coordinates:
            self.__add(((j, Fraction(1)),), 0)

    def __add(self, coefficients: Coefficients, depth: int) -> bool:
        if coefficients in self.__depths:
            return False
        support = tuple(position for position, _ in coefficients)
        siblings = self.__by_support.setdefault(support, [])
        if self.__reduced:
            if any(_dominates(other, coefficients) for other in siblings):
                return False
            for other in [other for other in siblings if _dominates(coefficients, other)]:
                siblings.remove(other)
                del self.__depths[other]
        siblings.append(coefficients)
        self.__depths[coefficients] = depth
        return True

    def run(self) -> Dict[Coefficients, int]:
        fresh = set(self.__depths)
        depth = 0
        while fresh:
            depth += 1
            members = sorted(self.__depths, key=lambda member: (member[0][0], member))
            starts = [member[0][0] for member in members]
            created = []
            for first in members:
                if first[0][0] >= 2:
                    self.__chains(members, starts, [first], first in fresh, fresh, created)
            fresh = set()
            for coefficients in created:
                if self.__add(coefficients, depth):
                    fresh.add(coefficients)
            fresh &= set(self.__depths)
            log.debug(f"norming set pass {depth}: {len(fresh)} new, {len(self.__depths)} total")
        return dict(self.__depths)

    def __chains(self, members, starts, chain, has_fresh, fresh, created):
        # pylint: disable=too-many-arguments
        if len(chain) >= 2 and has_fresh:
            created.append(_average(chain))
        if len(chain) == chain[0][0][0]:
            return
        position = bisect.bisect_right(starts, chain[-1][-1][0])
        for member in members[position:]:
            chain.append(member)
            self.__chains(members, starts, chain, has_fresh or member in fresh, fresh, created)
            chain.pop()


def _average(chain: Iterable[Coefficients]) -> Coefficients:
    return tuple((position, HALF * value) for member in chain for position, value in member)


def _dominates(upper: Coefficients, lower: Coefficients) -> bool:
    return all(a >= b for (_, a), (_, b) in zip(upper, lower))


_CACHE: Dict[Tuple[FrozenSet[int], bool], Dict[Coefficients, int]] = {}


def _positive_members(coordinates: FrozenSet[int], reduced: bool) -> Dict[Coefficients, int]:
    cached = _CACHE.get((coordinates, reduced))
    if cached is not None:
        return cached
    for (superset, superset_reduced), members in _CACHE.items():
        if superset_reduced == reduced and coordinates <= superset:
            # A member of K+_U only ever averages members supported in U.
            result = {
                key: depth for key, depth in members.items() if all(position in coordinates for position, _ in key)
            }
            break
    else:
        result = _Generator(sorted(coordinates), reduced).run()
        log.debug(f"norming set on {len(coordinates)} coordinates: {len(result)} functionals")
    _CACHE[(coordinates, reduced)] = result
    return result


def positive_norming_set(
    coordinates: Iterable[int],
    caps: Caps = DEFAULT_CAPS,
    reduced: bool = False,
    warm: Optional[int] = None,
    cap: str = "tsirelson",
) -> List[Functional]:
    """``K+_S`` as a list ordered by coefficient map.

    ``warm`` names an upper coordinate: when ``[1, warm]`` contains ``S`` and stays within the
    cap, the set for ``[1, warm]`` is generated once and later requests are filtered from it.
    """
    coordinates = frozenset(coordinates)
    caps.check(cap, len(coordinates), "norming set support")
    if warm is not None and coordinates and max(coordinates) <= warm <= getattr(caps, cap):
        _positive_members(frozenset(range(1, warm + 1)), reduced)
    members = _positive_members(coordinates, reduced)
    return [
        Functional(SparseVec({(position,): value for position, value in key}), depth)
        for key, depth in sorted(members.items())
    ]


def norming_set(coordinates: Iterable[int], caps: Caps = DEFAULT_CAPS) -> List[Functional]:
    functionals = []
    for functional in positive_norming_set(coordinates, caps):
        entries = list(functional.coefficients.items())
        for signs in itertools.product((1, -1), repeat=len(entries)):
            signed = {path: sign * value for (path, value), sign in zip(entries, signs)}
            functionals.append(Functional(SparseVec(signed), functional.depth))
    return functionals


def norming_value(coordinates: Iterable[int], y: SparseVec, caps: Caps = DEFAULT_CAPS) -> Fraction:
    magnitude = abs(y)
    return max(
        (functional(magnitude) for functional in positive_norming_set(coordinates, caps, reduced=True)),
        default=Fraction(0),
    )


def undominated(functionals: Sequence[Functional], coordinates: Sequence[int]) -> List[Functional]:
    """Drop every functional coordinatewise below another one.

    Coefficients are dyadic rationals of bounded depth, so the float comparison is exact.
    """
    if len(functionals) <= 1:
        return list(functionals)
    column = {position: index for index, position in enumerate(coordinates)}
    dense = np.zeros((len(functionals), len(coordinates)))
    for row, functional in enumerate(functionals):
        for (position,), value in functional.coefficients.items():
            dense[row, column[position]] = float(value)
    # members are distinct, so domination is strict
    above = (dense[:, None, :] >= dense[None, :, :]).all(axis=2)
    np.fill_diagonal(above, False)
    dropped = above.any(axis=0)
    return [functional for functional, drop in zip(functionals, dropped) if not drop]
