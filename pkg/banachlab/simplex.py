"""
Exact simplex method over :class:`fractions.Fraction` in dictionary form.

The dictionary stores the basic variables as affine functions of the nonbasic ones::

    z     = C[0, 0] + sum_j C[0, j+1] x_N[j]
    x_B[i] = C[i+1, 0] + sum_j C[i+1, j+1] x_N[j]

Variables are numbered from 1: ``1..n`` are the structural variables, the following ones are
slack (or artificial) variables. Pivots follow Bland's rule so the method never cycles.
"""

from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

log = logging.getLogger(__name__)


class LPStatus(Enum):
    OPTIMAL = 1
    INFEASIBLE = 2
    UNBOUNDED = 3


def _fractions(rows) -> np.ndarray:
    matrix = np.empty((len(rows), len(rows[0]) if len(rows) else 0), dtype=object)
    for i, row in enumerate(rows):
        matrix[i, :] = [Fraction(value) for value in row]
    return matrix


class Dictionary:
    def __init__(self, c: Sequence, A: Sequence[Sequence], b: Sequence):
        """Slack dictionary of ``max c.x subject to A x <= b, x >= 0``; requires ``b >= 0``."""
        m, n = len(A), len(c)
        if any(Fraction(value) < 0 for value in b):
            raise ValueError("slack basis is infeasible: right-hand side has a negative entry")
        self.C = np.empty((m + 1, n + 1), dtype=object)
        self.C[0, 0] = Fraction(0)
        self.C[0, 1:] = [Fraction(value) for value in c]
        for i in range(m):
            self.C[i + 1, 0] = Fraction(b[i])
            self.C[i + 1, 1:] = [-Fraction(value) for value in A[i]]
        self.N: List[int] = list(range(1, n + 1))
        self.B: List[int] = list(range(n + 1, n + m + 1))
        self.structural = n
        self.pivots = 0

    @classmethod
    def phase_one(cls, A: Sequence[Sequence], b: Sequence) -> Dictionary:
        """Auxiliary dictionary of ``A x = b, x >= 0`` with one artificial variable per row.

        Rows are negated where needed so the artificial basis is feasible; the objective is
        ``max -sum(artificials)``.
        """
        rows = _fractions(A) if len(A) else np.empty((0, 0), dtype=object)
        rhs = [Fraction(value) for value in b]
        for i, value in enumerate(rhs):
            if value < 0:
                rows[i, :] = -rows[i, :]
                rhs[i] = -value
        dictionary = cls([0] * rows.shape[1], rows.tolist(), rhs)
        dictionary.C[0, 0] = -sum(rhs, Fraction(0))
        for j in range(rows.shape[1]):
            dictionary.C[0, j + 1] = sum(rows[:, j], Fraction(0))
        return dictionary

    def pivot(self, k: int, l: int):
        pivot_coefficient = self.C[l + 1, k + 1]
        column = self.C[:, k + 1].copy()
        self.C[:, k + 1] = Fraction(0)
        self.C[l + 1, k + 1] = Fraction(-1)
        self.C[l + 1, :] = self.C[l + 1, :] / (-pivot_coefficient)
        for i in range(self.C.shape[0]):
            if i != l + 1 and column[i] != 0:
                self.C[i, :] = self.C[i, :] + column[i] * self.C[l + 1, :]
        self.N[k], self.B[l] = self.B[l], self.N[k]
        self.pivots += 1

    def value(self) -> Fraction:
        return self.C[0, 0]

    def basic_solution(self) -> Dict[int, Fraction]:
        solution = {variable: Fraction(0) for variable in self.N}
        for i, variable in enumerate(self.B):
            solution[variable] = self.C[i + 1, 0]
        return solution

    def structural_solution(self) -> List[Fraction]:
        solution = self.basic_solution()
        return [solution[variable] for variable in range(1, self.structural + 1)]

    def drop_row(self, l: int):
        self.C = np.delete(self.C, l + 1, axis=0)
        del self.B[l]

    def drop_column(self, k: int):
        self.C = np.delete(self.C, k + 1, axis=1)
        del self.N[k]

    def set_objective(self, c: Sequence):
        """Replace the objective by ``max c.x`` over the structural variables, expressed in the
        current basis."""
        self.C[0, :] = Fraction(0)
        for variable, cost in enumerate(c, start=1):
            cost = Fraction(cost)
            if cost == 0:
                continue
            if variable in self.N:
                self.C[0, self.N.index(variable) + 1] += cost
            else:
                self.C[0, :] = self.C[0, :] + cost * self.C[self.B.index(variable) + 1, :]

    def __str__(self) -> str:
        lines = [f"z = {' + '.join(f'{v}*x{n}' for v, n in zip(self.C[0, 1:], self.N))} + {self.C[0, 0]}"]
        for i, variable in enumerate(self.B):
            terms = " + ".join(f"{v}*x{n}" for v, n in zip(self.C[i + 1, 1:], self.N))
            lines.append(f"x{variable} = {self.C[i + 1, 0]} + {terms}")
        return "\n".join(lines)


def bland(dictionary: Dictionary) -> Tuple[Optional[int], Optional[int]]:
    """Entering position ``k`` and leaving position ``l`` by Bland's rule.

    ``k`` is None when the dictionary is optimal, ``l`` is None when it is unbounded.
    """
    candidates = [k for k in range(len(dictionary.N)) if dictionary.C[0, k + 1] > 0]
    if not candidates:
        return None, None
    k = min(candidates, key=lambda position: dictionary.N[position])
    best = None
    for i in range(len(dictionary.B)):
        coefficient = dictionary.C[i + 1, k + 1]
        if coefficient >= 0:
            continue
        ratio = dictionary.C[i + 1, 0] / -coefficient
        if best is None or (ratio, dictionary.B[i]) < best[0]:
            best = ((ratio, dictionary.B[i]), i)
    return k, None if best is None else best[1]


def run(dictionary: Dictionary) -> LPStatus:
    while True:
        k, l = bland(dictionary)
        if k is None:
            log.debug(f"simplex optimal after {dictionary.pivots} pivots")
            return LPStatus.OPTIMAL
        if l is None:
            return LPStatus.UNBOUNDED
        dictionary.pivot(k, l)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> Tuple[LPStatus, Dictionary]:
    dictionary = Dictionary(c, A, b)
    return run(dictionary), dictionary


def minimize_equality(c: Sequence, A: Sequence[Sequence], b: Sequence) -> Tuple[LPStatus, Optional[Dictionary]]:
    dictionary = Dictionary.phase_one(A, b)
    run(dictionary)
    if dictionary.value() < 0:
        return LPStatus.INFEASIBLE, None
    structural = dictionary.structural
    for l in reversed(range(len(dictionary.B))):
        if dictionary.B[l] <= structural:
            continue
        row = dictionary.C[l + 1]
        k = next((k for k, variable in enumerate(dictionary.N) if variable <= structural and row[k + 1] != 0), None)
        if k is None:
            dictionary.drop_row(l)
        else:
            dictionary.pivot(k, l)
    for k in reversed(range(len(dictionary.N))):
        if dictionary.N[k] > structural:
            dictionary.drop_column(k)
    dictionary.set_objective([-Fraction(cost) for cost in c])
    status = run(dictionary)
    if status is LPStatus.OPTIMAL:
        dictionary.C[0, :] = -dictionary.C[0, :]
    return status, dictionary


def rank(rows: Sequence[Sequence]) -> int:
    if len(rows) == 0:
        return 0
    matrix = _fractions(rows)
    result = 0
    for column in range(matrix.shape[1]):
        pivot = next((i for i in range(result, matrix.shape[0]) if matrix[i, column] != 0), None)
        if pivot is None:
            continue
        matrix[[result, pivot], :] = matrix[[pivot, result], :]
        for i in range(result + 1, matrix.shape[0]):
            if matrix[i, column] != 0:
                matrix[i, :] = matrix[i, :] - (matrix[i, column] / matrix[result, column]) * matrix[result, :]
        result += 1
        if result == matrix.shape[0]:
            break
    return result
