from typing import List, Sequence

from banachlab.errors import MalformedInputError, PreconditionError, VerificationError


def chain(families: Sequence[Sequence[int]]) -> List[int]:
    if not families:
        raise MalformedInputError("a plegma needs at least one sequence")
    lengths = {len(family) for family in families}
    if len(lengths) != 1:
        raise MalformedInputError(f"plegma sequences have different lengths {sorted(lengths)}")
    return [family[j] for j in range(lengths.pop()) for family in families]


def is_plegma(families: Sequence[Sequence[int]]) -> bool:
    values = chain(families)
    return all(a < b for a, b in zip(values, values[1:]))


def plegma_extend(k: int, i_list: Sequence[int], l_list: Sequence[int], n: int) -> List[List[int]]:
    """Complete a ``k x m`` plegma with ``s^(i_j)_j = l_j`` and ``min s^(1) > n``.

    The prescribed values are sorted (their rows follow them); every ``l_j`` is a multiple of
    ``2k`` above ``n + k``, so consecutive prescribed values are at least ``2k`` apart, which
    leaves room for the at most ``2k - 1`` chain positions between them.
    """
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    if len(i_list) != len(l_list) or not l_list:
        raise PreconditionError(f"{len(i_list)} rows given for {len(l_list)} prescribed values")
    if len(set(l_list)) != len(l_list):
        raise PreconditionError(f"prescribed values {list(l_list)} are not pairwise distinct")
    for i, l in zip(i_list, l_list):
        if not 1 <= i <= k:
            raise PreconditionError(f"row {i} outside 1..{k}")
        if l % (2 * k) != 0:
            raise PreconditionError(f"gap violated: {l} is not a multiple of 2k={2 * k}")
        if l <= n + k:
            raise PreconditionError(f"gap violated: {l} does not exceed N+k={n + k}")
    prescribed = sorted(zip(l_list, i_list))
    width = len(prescribed)
    anchors = [(j * k + i - 1, l) for j, (l, i) in enumerate(prescribed)]
    values = []
    anchor = 0
    for position in range(k * width):
        while anchor + 1 < len(anchors) and anchors[anchor + 1][0] <= position:
            anchor += 1
        anchor_position, anchor_value = anchors[anchor]
        values.append(anchor_value + position - anchor_position)
    families = [[values[j * k + i] for j in range(width)] for i in range(k)]
    if not is_plegma(families) or families[0][0] <= n:
        raise VerificationError(f"plegma completion failed for rows {list(i_list)} and values {list(l_list)}")
    return families
