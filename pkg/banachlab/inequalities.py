"""
Desk-scale verifiers for the block inequalities of ``T*`` and ``T*(T*)``.

Bounds with explicit constants are hard assertions (``passed`` is a bool); bounds involving the
constants of the modified Tsirelson equivalence, whose values are not known, are reported
(``passed == "reported"``) and only checked against the configurable sanity ceiling.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from banachlab.config import DEFAULT_CAPS, Caps
from banachlab.embeddings import ell_infty_equivalence, sign_supremum
from banachlab.errors import CapExceededError, MalformedInputError, PreconditionError, VerificationError
from banachlab.generators import PATTERNS, l2_sample, random_vector, sample_rng
from banachlab.grid import TSTAR_TSTAR, GridVec, Rectangle
from banachlab.norms import engine_for
from banachlab.sharding import merge_max, run_sharded, split
from banachlab.spaces import ModifiedTsirelson, SpaceExpr, Tsirelson, TsirelsonDual, format_space
from banachlab.vectors import NormValue, SparseVec

log = logging.getLogger(__name__)

UNKNOWN_CONSTANT = "unknown constant"
REPORTED = "reported"
SPREADING_BOUND = 6
CM_SUPPORT_LIMIT = 8

Verdict = Union[bool, str]


@dataclass
class VerifierReport:
    lemma: str
    params: Dict[str, Any]
    samples: int
    max_ratio: NormValue
    witness: Dict[str, Any]
    bound_claimed: Union[NormValue, str]
    passed: Verdict
    seed: Optional[int] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.passed is False


def _blocks(elements: Sequence[int]) -> Iterator[List[Tuple[int, ...]]]:
    for labels in itertools.product((0, 1, 2), repeat=len(elements)):
        # 0 skips the element, 1 extends the current block, 2 opens a new block
        blocks: List[List[int]] = []
        valid = True
        for element, label in zip(elements, labels):
            if label == 2:
                blocks.append([element])
            elif label == 1:
                if not blocks:
                    valid = False
                    break
                blocks[-1].append(element)
        if valid and blocks:
            yield [tuple(block) for block in blocks]


def _block_c0_shard(shard) -> Optional[Tuple]:
    max_support, variant, first_labels, caps = shard
    engine = engine_for(TsirelsonDual(), caps)
    best = None
    count = 0
    elements = list(range(1, max_support + 1))
    for blocks in _blocks(elements):
        if blocks[0][0] not in first_labels:
            continue
        anchor = blocks[0] if variant == "strict" or len(blocks) == 1 else blocks[1]
        if len(blocks) > 1 and len(blocks) > anchor[0]:
            continue
        count += 1
        largest = max(engine.norm(SparseVec.indicator(block)) for block in blocks)
        total = engine.norm(SparseVec.indicator(element for block in blocks for element in block))
        ratio = total / largest
        if best is None or ratio > best[0]:
            best = (ratio, blocks, count)
    return None if best is None else (best[0], best[1], count)


def verify_block_c0(
    max_support: int, variant: str = "strict", caps: Caps = DEFAULT_CAPS, workers: int = 1
) -> VerifierReport:
    """``||sum x_j||_{T*} <= 2 max ||x_j||`` for ``n <= min supp x_1`` (strict) and ``<= 3 max`` for
    ``n <= min supp x_2`` (relaxed), over all 0/1 block sequences supported in ``[1, max_support]``."""
    if max_support < 1:
        raise MalformedInputError(f"max_support must be positive, got {max_support}")
    if variant not in ("strict", "relaxed"):
        raise MalformedInputError(f"unknown variant '{variant}', expected strict or relaxed")
    caps.check("dual", max_support, "block support range")
    firsts = list(range(1, max_support + 1))
    shards = [(max_support, variant, frozenset(chunk), caps) for chunk in split(firsts, max(1, workers))]
    results = run_sharded(_block_c0_shard, shards, workers)
    samples = sum(result[2] for result in results if result is not None)
    best = merge_max(results)
    bound = Fraction(2) if variant == "strict" else Fraction(3)
    log.info(f"block-c0 {variant}: {samples} block sequences, max ratio {best[0]}")
    return VerifierReport(
        lemma="block-c0",
        params={"max_support": max_support, "variant": variant},
        samples=samples,
        max_ratio=best[0],
        witness={"blocks": [list(block) for block in best[1]]},
        bound_claimed=bound,
        passed=best[0] <= bound,
    )


def family_ratio(vectors: Sequence[SparseVec], space: SpaceExpr = TsirelsonDual(), caps: Caps = DEFAULT_CAPS):
    engine = engine_for(space, caps)
    total = sum(vectors, SparseVec(depth=vectors[0].depth))
    return engine.norm(total) / max(engine.norm(vector) for vector in vectors)


def _disjoint_families(elements: Sequence[int], n: int) -> Iterator[List[Tuple[int, ...]]]:
    for labels in itertools.product(range(n + 1), repeat=len(elements)):
        # blocks are numbered by first appearance, label 0 leaves the element out
        seen = 0
        canonical = True
        for label in labels:
            if label > seen + 1:
                canonical = False
                break
            seen = max(seen, label)
        if not canonical or seen != n:
            continue
        yield [tuple(e for e, label in zip(elements, labels) if label == block) for block in range(1, n + 1)]


def estimate_DM(n: int, max_support: int, caps: Caps = DEFAULT_CAPS) -> VerifierReport:  # pylint: disable=invalid-name
    """Largest ``||sum x_k||_{T*} / max ||x_k||_{T*}`` over ``n`` disjointly supported 0/1 vectors with
    ``min supp x_k >= n``: an empirical lower bound for the disjoint-support constant."""
    if n < 1:
        raise MalformedInputError(f"n must be positive, got {n}")
    caps.check("dual", max_support, "support range")
    elements = list(range(n, max_support + 1))
    caps.check("pairs", (n + 1) ** len(elements), "disjoint families")
    engine = engine_for(TsirelsonDual(), caps)
    best = None
    samples = 0
    for family in _disjoint_families(elements, n):
        samples += 1
        ratio = engine.norm(SparseVec.indicator(e for block in family for e in block)) / max(
            engine.norm(SparseVec.indicator(block)) for block in family
        )
        if best is None or ratio > best[0]:
            best = (ratio, family)
    if best is None:
        raise PreconditionError(f"no family of {n} disjoint sets fits in [{n}, {max_support}]")
    log.info(f"D_M search n={n}: {samples} families, max ratio {best[0]}")
    return VerifierReport(
        lemma="dm",
        params={"n": n, "max_support": max_support},
        samples=samples,
        max_ratio=best[0],
        witness={"blocks": [list(block) for block in best[1]]},
        bound_claimed=UNKNOWN_CONSTANT,
        passed=REPORTED,
    )


def estimate_CM(  # pylint: disable=invalid-name
    max_support: int, samples: int = 200, seed: Optional[int] = None, caps: Caps = DEFAULT_CAPS
) -> VerifierReport:
    """Largest ``||x||_M / ||x||_T`` over every 0/1 vector and ``samples`` random rational vectors
    supported in ``[1, max_support]``; ``||x||_T <= ||x||_M`` is asserted on each of them."""
    seed = caps.seed if seed is None else seed
    if max_support > CM_SUPPORT_LIMIT:
        raise CapExceededError("modified", CM_SUPPORT_LIMIT, max_support, "C_M support range")
    caps.check("modified", max_support, "support range")
    tsirelson = engine_for(Tsirelson(), caps)
    modified = engine_for(ModifiedTsirelson(), caps)
    elements = range(1, max_support + 1)
    vectors = [
        SparseVec.indicator(subset)
        for size in range(1, max_support + 1)
        for subset in itertools.combinations(elements, size)
    ]
    vectors += [random_vector(sample_rng(seed, index), elements, max_support) for index in range(samples)]
    best = None
    violation = None
    for x in vectors:
        lower, upper = tsirelson.norm(x), modified.norm(x)
        if lower > upper and violation is None:
            violation = x
        ratio = upper / lower
        if best is None or ratio > best[0]:
            best = (ratio, x)
    log.info(f"C_M search: {len(vectors)} vectors, max ratio {best[0]}")
    report = VerifierReport(
        lemma="cm",
        params={"max_support": max_support, "random_samples": samples},
        samples=len(vectors),
        max_ratio=best[0],
        witness={"vector": str(best[1])},
        bound_claimed=UNKNOWN_CONSTANT,
        passed=REPORTED if violation is None else False,
        seed=seed,
    )
    if violation is not None:
        report.extra["lower_inequality_violated_by"] = str(violation)
    return report


def _check_cuts(k: int, cuts: Sequence[int], expected: int):
    if len(cuts) != expected:
        raise PreconditionError(f"expected {expected} cuts, got {len(cuts)}")
    if cuts[0] != k:
        raise PreconditionError(f"cuts must start at n_0 = k = {k}, got {cuts[0]}")
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise PreconditionError(f"cuts {list(cuts)} are not strictly increasing")


def verify_lemma_L2(  # pylint: disable=invalid-name
    k: int, cuts: Sequence[int], samples: int = 100, seed: Optional[int] = None, caps: Caps = DEFAULT_CAPS
) -> VerifierReport:
    """``||sum a_j z_j|| / max |a_j|`` for normalized ``z_j`` in ``P_{R_j \\ R_{j-1}}``,
    ``R_j = (k, n_j] x [1, n_j]``, over all sign vectors ``a``."""
    seed = caps.seed if seed is None else seed
    if not 1 <= k <= 3:
        raise PreconditionError(f"k must lie in 1..3, got {k}")
    if samples < 1:
        raise MalformedInputError(f"samples must be positive, got {samples}")
    _check_cuts(k, cuts, k + 1)
    caps.check("dual", cuts[-1], "rectangle size")
    best = None
    for index in range(samples):
        pattern = PATTERNS[index % len(PATTERNS)]
        z_list = l2_sample(k, cuts, seed, index, pattern, caps)
        _, value, signs = sign_supremum([z.vector for z in z_list], TSTAR_TSTAR, caps)
        if best is None or value > best[0]:
            best = (value, z_list, signs)
    log.info(f"L2 k={k}: {samples} samples, max ratio {best[0]}")
    return VerifierReport(
        lemma="l2",
        params={"k": k, "cuts": list(cuts), "samples": samples},
        samples=samples,
        max_ratio=best[0],
        witness={"vectors": [str(z) for z in best[1]], "signs": list(best[2])},
        bound_claimed=UNKNOWN_CONSTANT,
        passed=REPORTED if best[0] <= caps.ceiling else False,
        seed=seed,
        extra={"ceiling": caps.ceiling},
    )


def cell_of(values: Sequence[NormValue], k: int) -> Tuple[int, ...]:
    """Grid cube of side ``1/k`` holding a point of ``[0, 1]^k``; cell ``d`` is ``((d-1)/k, d/k]``
    and ``0`` falls in cell 1."""
    return tuple(max(1, math.ceil(Fraction(value) * k)) for value in values)


def _band_check(w_list: Sequence[GridVec], k: int, cuts: Optional[Sequence[int]]):
    previous = 0
    for j, w in enumerate(w_list, start=1):
        if any(row > k for row in w.rows()):
            raise PreconditionError(f"w_{j} has rows outside [1, {k}]")
        columns = w.columns()
        if cuts is not None:
            if columns and not (cuts[j - 1] < columns[0] and columns[-1] <= cuts[j]):
                raise PreconditionError(f"w_{j} leaves its band ({cuts[j - 1]}, {cuts[j]}]")
        elif columns:
            if columns[0] <= previous:
                raise PreconditionError(f"w_{j} overlaps the band of an earlier vector")
            previous = columns[-1]


def hat_select(
    k: int, w_list: Sequence[GridVec], cuts: Optional[Sequence[int]] = None, caps: Caps = DEFAULT_CAPS
) -> Tuple[List[int], Tuple[int, ...], VerifierReport]:
    """Pick ``k`` of the ``k^(k+1)`` band vectors whose row-norm profiles share a grid cube of
    side ``1/k`` and check ``||sum a_l w_{j_l}|| <= 2 max |a_l|``."""
    count = k ** (k + 1)
    if len(w_list) != count:
        raise PreconditionError(f"expected k^(k+1) = {count} vectors, got {len(w_list)}")
    if cuts is not None:
        _check_cuts(k, cuts, count + 1)
    _band_check(w_list, k, cuts)
    profiles = []
    for j, w in enumerate(w_list, start=1):
        if w.norm(caps) > 1:
            raise PreconditionError(f"w_{j} has norm above 1")
        profiles.append(w.row_norms(k, caps))
    members: Dict[Tuple[int, ...], List[int]] = {}
    selected = None
    for j, profile in enumerate(profiles, start=1):
        cell = cell_of(profile, k)
        members.setdefault(cell, []).append(j)
        if len(members[cell]) == k:
            selected = (members[cell], cell)
            break
    if selected is None:
        raise VerificationError(f"no grid cell holds {k} of {count} profiles")
    indices, cell = selected
    first = profiles[indices[0] - 1]
    proximity = max(
        (abs(profiles[j - 1][i] - first[i]) for j in indices for i in range(k)),
        default=Fraction(0),
    )
    _, value, signs = sign_supremum([w_list[j - 1].vector for j in indices], TSTAR_TSTAR, caps)
    passed = value <= 2 and proximity <= Fraction(1, k)
    log.info(f"hat lemma k={k}: selected {indices} in cell {cell}, max ratio {value}")
    report = VerifierReport(
        lemma="hat",
        params={"k": k, "vectors": count},
        samples=2 ** (k - 1),
        max_ratio=value,
        witness={"indices": indices, "cell": list(cell), "signs": list(signs)},
        bound_claimed=Fraction(2),
        passed=passed,
        extra={"proximity": proximity, "proximity_bound": Fraction(1, k)},
    )
    return indices, cell, report


def select_c0_subsequence(
    k: int, x_list: Sequence[GridVec], cuts: Optional[Sequence[int]] = None, caps: Caps = DEFAULT_CAPS
) -> Tuple[List[int], Tuple[NormValue, NormValue], VerifierReport]:
    """Split ``x_j = w_j + z_j`` into rows ``<= k`` and the rest, select ``k`` indices with the hat
    lemma and measure the ``l_oo^k`` equivalence of the selected ``x_j``."""
    count = k ** (k + 1)
    if len(x_list) != count:
        raise PreconditionError(f"expected k^(k+1) = {count} vectors, got {len(x_list)}")
    for j, x in enumerate(x_list, start=1):
        if x.norm(caps) != 1:
            raise PreconditionError(f"x_{j} is not normalized")
    w_list = [x.project(Rectangle(0, k)) for x in x_list]
    indices, cell, hat_report = hat_select(k, w_list, cuts, caps)
    low, high, signs = sign_supremum([x_list[j - 1].vector for j in indices], TSTAR_TSTAR, caps)
    passed: Verdict = REPORTED if high <= caps.ceiling and not hat_report.failed else False
    report = VerifierReport(
        lemma="c0-subseq",
        params={"k": k, "vectors": count},
        samples=2 ** (k - 1),
        max_ratio=high,
        witness={"indices": indices, "cell": list(cell), "signs": list(signs)},
        bound_claimed=UNKNOWN_CONSTANT,
        passed=passed,
        extra={"c_low": low, "c_up": high, "hat_ratio": hat_report.max_ratio, "ceiling": caps.ceiling},
    )
    return indices, (low, high), report


def spreading_blocks(space: SpaceExpr, block_gen: str, k: int, shift: int, caps: Caps = DEFAULT_CAPS):
    depth = space.depth
    if block_gen == "unit":
        return [SparseVec({(shift + i,) + (1,) * (depth - 1): 1}) for i in range(1, k + 1)]
    if block_gen == "diagonal":
        if depth != 2:
            raise MalformedInputError("diagonal blocks need a depth-2 space")
        return [SparseVec({(shift + i, shift + i): 1}) for i in range(1, k + 1)]
    if block_gen == "pair":
        if depth != 1:
            raise MalformedInputError("pair blocks need a depth-1 space")
        engine = engine_for(space, caps)
        blocks = []
        for i in range(1, k + 1):
            block = SparseVec.indicator((2 * (shift + i), 2 * (shift + i) + 1))
            blocks.append(block / engine.norm(block))
        return blocks
    raise MalformedInputError(f"unknown block family '{block_gen}', expected unit, diagonal or pair")


def spreading_witness(
    space: SpaceExpr, block_gen: str = "unit", k: int = 2, shift: int = 0, caps: Caps = DEFAULT_CAPS
) -> Tuple[NormValue, NormValue]:
    return ell_infty_equivalence(spreading_blocks(space, block_gen, k, shift, caps), space, caps)


def spreading_report(
    space: SpaceExpr, block_gen: str = "unit", k: int = 2, shift: int = 0, caps: Caps = DEFAULT_CAPS
) -> VerifierReport:
    blocks = spreading_blocks(space, block_gen, k, shift, caps)
    low, high, signs = sign_supremum(blocks, space, caps)
    ratio = high / low
    return VerifierReport(
        lemma="spreading",
        params={"space": format_space(space), "blocks": block_gen, "k": k, "shift": shift},
        samples=2 ** (k - 1),
        max_ratio=ratio,
        witness={"blocks": [str(block) for block in blocks], "signs": list(signs)},
        bound_claimed=Fraction(SPREADING_BOUND),
        passed=ratio <= SPREADING_BOUND,
        extra={"c_low": low, "c_up": high},
    )
