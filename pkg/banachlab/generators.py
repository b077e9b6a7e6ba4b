import random
from fractions import Fraction
from typing import List, Sequence, Tuple

from banachlab.config import DEFAULT_CAPS, Caps
from banachlab.grid import GridVec, Rectangle, Region
from banachlab.vectors import CoordPath, SparseVec

PATTERNS = ("unit", "binary", "rational")


def sample_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def random_rational(rng: random.Random, magnitude: int = 5, denominator: int = 4) -> Fraction:
    numerator = rng.randint(1, magnitude) * rng.choice((1, -1))
    return Fraction(numerator, rng.randint(1, denominator))


def random_vector(rng: random.Random, positions: Sequence[int], max_size: int) -> SparseVec:
    size = rng.randint(1, min(max_size, len(positions)))
    return SparseVec({(j,): random_rational(rng) for j in rng.sample(list(positions), size)})


def random_pattern(rng: random.Random, cells: Sequence[CoordPath], pattern: str, max_size: int = 3) -> SparseVec:
    if pattern == "unit":
        return SparseVec({rng.choice(list(cells)): 1})
    size = rng.randint(1, min(max_size, len(cells)))
    chosen = rng.sample(list(cells), size)
    if pattern == "binary":
        return SparseVec({cell: 1 for cell in chosen})
    return SparseVec({cell: random_rational(rng) for cell in chosen})


def region_cells(region, rows: int, columns: int) -> List[CoordPath]:
    return [(i, j) for i in range(1, rows + 1) for j in range(1, columns + 1) if (i, j) in region]


def band_cuts(k: int, count: int, width: int = 1) -> List[int]:
    return [k + j * width for j in range(count + 1)]


def hat_instance(
    k: int, seed: int, index: int, width: int = 1, caps: Caps = DEFAULT_CAPS
) -> Tuple[List[int], List[GridVec]]:
    """``k^(k+1)`` vectors ``w_j`` on ``[1, k] x (n_{j-1}, n_j]`` with ``||w_j|| <= 1``."""
    rng = sample_rng(seed, index)
    count = k ** (k + 1)
    cuts = band_cuts(k, count, width)
    w_list = []
    for j in range(1, count + 1):
        cells = region_cells(Rectangle(0, k, cuts[j - 1], cuts[j]), k, cuts[j])
        w = GridVec(random_pattern(rng, cells, rng.choice(PATTERNS))).normalized(caps)
        w_list.append(w * Fraction(rng.randint(1, 4), 4))
    return cuts, w_list


def c0_instance(k: int, seed: int, index: int, caps: Caps = DEFAULT_CAPS) -> Tuple[List[int], List[GridVec]]:
    """``k^(k+1)`` normalized ``x_j`` on ``[1, n_j]^2`` minus ``[1, n_{j-1}]^2``."""
    rng = sample_rng(seed, index)
    count = k ** (k + 1)
    cuts = band_cuts(k, count)
    x_list = []
    for j in range(1, count + 1):
        region = Region(Rectangle(0, cuts[j], 0, cuts[j]), Rectangle(0, cuts[j - 1], 0, cuts[j - 1]))
        cells = region_cells(region, cuts[j], cuts[j])
        x_list.append(GridVec(random_pattern(rng, cells, rng.choice(PATTERNS))).normalized(caps))
    return cuts, x_list


def l2_region(k: int, cuts: Sequence[int], j: int) -> Region:
    previous = Rectangle(k, cuts[j - 1], 0, cuts[j - 1]) if j > 1 else None
    return Region(Rectangle(k, cuts[j], 0, cuts[j]), previous)


def l2_sample(
    k: int, cuts: Sequence[int], seed: int, index: int, pattern: str, caps: Caps = DEFAULT_CAPS
) -> List[GridVec]:
    rng = sample_rng(seed, index)
    z_list = []
    for j in range(1, k + 1):
        cells = region_cells(l2_region(k, cuts, j), cuts[j], cuts[j])
        z_list.append(GridVec(random_pattern(rng, cells, pattern)).normalized(caps))
    return z_list
