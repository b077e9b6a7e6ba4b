"""The dual norm of Tsirelson's space as an exact linear program over ``u = |y|``."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from banachlab import norms
from banachlab.config import DEFAULT_CAPS, Caps
from banachlab.errors import MalformedInputError, PreconditionError, VerificationError
from banachlab.norming import Functional, norming_set, positive_norming_set, undominated
from banachlab.simplex import LPStatus, maximize, minimize_equality, rank
from banachlab.spaces import Tsirelson
from banachlab.vectors import SparseVec

log = logging.getLogger(__name__)

DECOMPOSITION_LIMIT = 5


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    witness: SparseVec
    certificate: Tuple[SparseVec, ...] = field(default=())
    constraints: int = 0

    def certificate_rank(self) -> int:
        """Rank of the active constraint normals; equals ``|supp(x)|`` at a vertex."""
        if not self.certificate:
            return 0
        coordinates = sorted({path for normal in self.certificate for path in normal.support()})
        return rank([[normal[path] for path in coordinates] for normal in self.certificate])


def _sign(value: Fraction) -> int:
    return 1 if value > 0 else -1


def dual_norm(x: SparseVec, caps: Caps = DEFAULT_CAPS) -> LPResult:
    if x.depth != 1:
        raise MalformedInputError(f"T* acts on depth-1 vectors, got depth {x.depth}")
    if not x:
        return LPResult(Fraction(0), SparseVec())
    coordinates = x.leading_support()
    caps.check("dual", len(coordinates), "T* support")
    functionals = undominated(
        positive_norming_set(coordinates, caps, reduced=True, warm=coordinates[-1], cap="dual"), coordinates
    )
    rows = [[functional.coefficients[j] for j in coordinates] for functional in functionals]
    objective = [abs(x[j]) for j in coordinates]
    status, dictionary = maximize(objective, rows, [1] * len(rows))
    if status is not LPStatus.OPTIMAL:
        raise VerificationError(f"T* program for {x} is {status.name.lower()}")
    u = dictionary.structural_solution()
    witness = SparseVec({(j,): _sign(x[j]) * value for j, value in zip(coordinates, u)})
    certificate = []
    for variable in sorted(dictionary.N):
        if variable <= len(coordinates):
            certificate.append(SparseVec.unit(coordinates[variable - 1]))
        else:
            functional = functionals[variable - len(coordinates) - 1]
            certificate.append(
                SparseVec({path: _sign(x[path]) * value for path, value in functional.coefficients.items()})
            )
    log.debug(f"T* norm of {x}: {dictionary.value()} over {len(rows)} functionals, {dictionary.pivots} pivots")
    return LPResult(dictionary.value(), witness, tuple(certificate), len(rows))


def verify_duality(x: SparseVec, y: SparseVec, caps: Caps = DEFAULT_CAPS) -> bool:
    return x.inner(y) <= dual_norm(x, caps).value * norms.norm(Tsirelson(), y, caps)


def dual_norm_by_decomposition(x: SparseVec, caps: Caps = DEFAULT_CAPS) -> Fraction:
    """``min { sum t_f : x = sum t_f f, t_f >= 0, f in K_S }``, the gauge of the convex hull of
    ``K_S``; an independent route to ``||x||_{T*}`` for small supports."""
    if x.depth != 1:
        raise MalformedInputError(f"T* acts on depth-1 vectors, got depth {x.depth}")
    if not x:
        return Fraction(0)
    coordinates = x.leading_support()
    if len(coordinates) > DECOMPOSITION_LIMIT:
        raise PreconditionError(
            f"decomposition program supports at most {DECOMPOSITION_LIMIT} coordinates, got {len(coordinates)}"
        )
    functionals: List[Functional] = norming_set(coordinates, caps)
    columns = [[functional.coefficients[j] for j in coordinates] for functional in functionals]
    rows = [list(column) for column in zip(*columns)]
    status, dictionary = minimize_equality([1] * len(functionals), rows, [x[j] for j in coordinates])
    if status is not LPStatus.OPTIMAL:
        raise VerificationError(f"decomposition program for {x} is {status.name.lower()}")
    return dictionary.value()

