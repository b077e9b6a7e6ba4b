from fractions import Fraction

import pytest

from banachlab.config import Caps
from banachlab.errors import CapExceededError, MalformedInputError, PreconditionError
from banachlab.generators import band_cuts, c0_instance, hat_instance
from banachlab.grid import GridVec
from banachlab.inequalities import (
    REPORTED,
    UNKNOWN_CONSTANT,
    cell_of,
    estimate_CM,
    estimate_DM,
    family_ratio,
    hat_select,
    select_c0_subsequence,
    spreading_blocks,
    spreading_report,
    spreading_witness,
    verify_block_c0,
    verify_lemma_L2,
)
from banachlab.spaces import parse_space
from banachlab.vectors import SparseVec


def test_block_c0_strict():
    report = verify_block_c0(4)
    assert report.max_ratio == 2
    assert report.bound_claimed == 2
    assert report.passed is True
    assert report.samples > 0
    assert report.params == {"max_support": 4, "variant": "strict"}


def test_block_c0_relaxed():
    report = verify_block_c0(4, "relaxed")
    assert 2 <= report.max_ratio <= 3
    assert report.passed is True
    assert report.samples > verify_block_c0(4).samples


def test_block_c0_workers_agree():
    serial, parallel = verify_block_c0(5), verify_block_c0(5, workers=2)
    assert (serial.max_ratio, serial.samples) == (parallel.max_ratio, parallel.samples)


def test_block_c0_errors():
    with pytest.raises(MalformedInputError):
        verify_block_c0(0)
    with pytest.raises(MalformedInputError):
        verify_block_c0(3, "loose")
    with pytest.raises(CapExceededError):
        verify_block_c0(11)


def test_family_ratio():
    assert family_ratio([SparseVec.unit(2), SparseVec.unit(3)]) == 2
    assert family_ratio([SparseVec.unit(2), SparseVec.unit(3)], parse_space("c0")) == 1


def test_dm_single_block():
    report = estimate_DM(1, 4)
    assert report.max_ratio == 1
    assert report.passed == REPORTED
    assert report.bound_claimed == UNKNOWN_CONSTANT


def test_dm_two_blocks():
    report = estimate_DM(2, 5)
    assert report.max_ratio >= 2
    assert len(report.witness["blocks"]) == 2
    assert all(block[0] >= 2 for block in report.witness["blocks"])


def test_dm_errors():
    with pytest.raises(MalformedInputError):
        estimate_DM(0, 4)
    with pytest.raises(PreconditionError):
        estimate_DM(4, 4)
    with pytest.raises(CapExceededError):
        estimate_DM(2, 8, Caps(pairs=100))


def test_cm():
    report = estimate_CM(4, samples=10, seed=3)
    assert report.samples == 15 + 10
    assert report.max_ratio >= 1
    assert report.passed == REPORTED
    assert report.seed == 3
    assert "lower_inequality_violated_by" not in report.extra


def test_cm_is_reproducible():
    assert estimate_CM(3, samples=5).max_ratio == estimate_CM(3, samples=5).max_ratio
    assert estimate_CM(3, samples=5).seed == Caps().seed


def test_cm_cap():
    with pytest.raises(CapExceededError):
        estimate_CM(13)


def test_cm_support_limit_ignores_raised_caps():
    with pytest.raises(CapExceededError) as error:
        estimate_CM(9, samples=1, caps=Caps(modified=20))
    assert error.value.limit == 8
    assert error.value.actual == 9


def test_lemma_l2_single_row():
    report = verify_lemma_L2(1, [1, 2], samples=3, seed=1)
    assert report.max_ratio == 1
    assert report.passed == REPORTED


def test_lemma_l2_two_rows():
    report = verify_lemma_L2(2, [2, 4, 8], samples=6, seed=1)
    assert 1 <= report.max_ratio <= 2
    assert report.passed == REPORTED
    assert len(report.witness["vectors"]) == 2
    assert report.extra == {"ceiling": 12}


def test_lemma_l2_ceiling():
    report = verify_lemma_L2(2, [2, 4, 8], samples=3, seed=1, caps=Caps(ceiling=1))
    assert report.max_ratio > 1
    assert report.passed is False


@pytest.mark.parametrize(
    "k, cuts, samples, error",
    [
        (2, [2, 4], 3, PreconditionError),
        (2, [1, 4, 8], 3, PreconditionError),
        (2, [2, 2, 8], 3, PreconditionError),
        (4, [4, 5, 6, 7, 8], 3, PreconditionError),
        (1, [1, 2], 0, MalformedInputError),
        (1, [1, 20], 1, CapExceededError),
    ],
    ids=["too few cuts", "wrong start", "not increasing", "k too large", "no samples", "rectangle cap"],
)
def test_lemma_l2_errors(k, cuts, samples, error):
    with pytest.raises(error):
        verify_lemma_L2(k, cuts, samples)


@pytest.mark.parametrize(
    "values, k, expected",
    [((0, 1), 2, (1, 2)), ((Fraction(1, 2), Fraction(2, 3)), 2, (1, 2)), ((Fraction(1, 3),), 3, (1,))],
    ids=["edges", "halves", "closed right end"],
)
def test_cell_of(values, k, expected):
    assert cell_of(values, k) == expected


def test_hat_select_single_vector():
    cuts, w_list = hat_instance(1, 4, 0)
    indices, cell, report = hat_select(1, w_list, cuts)
    assert (indices, cell) == ([1], (1,))
    assert report.passed is True
    assert report.extra["proximity"] == 0


def test_hat_select_translated_vectors():
    cuts = band_cuts(2, 8)
    w_list = [GridVec(SparseVec.unit(1, cuts[j])) for j in range(1, 9)]
    indices, cell, report = hat_select(2, w_list, cuts)
    assert indices == [1, 2]
    assert cell == (2, 1)
    assert report.max_ratio == 2
    assert report.passed is True


@pytest.mark.parametrize("index", [0, 1, 2])
def test_hat_select_seeded(index):
    cuts, w_list = hat_instance(2, 17, index)
    indices, cell, report = hat_select(2, w_list, cuts)
    assert len(indices) == 2
    assert cell_of(w_list[indices[0] - 1].row_norms(2), 2) == cell
    assert report.passed is True


def test_hat_select_preconditions():
    cuts = band_cuts(2, 8)
    units = [GridVec(SparseVec.unit(1, cuts[j])) for j in range(1, 9)]
    with pytest.raises(PreconditionError, match="k\\^\\(k\\+1\\)"):
        hat_select(2, units[:7], cuts)
    with pytest.raises(PreconditionError, match="rows outside"):
        hat_select(2, units[:7] + [GridVec(SparseVec.unit(3, 10))], cuts)
    with pytest.raises(PreconditionError, match="norm above 1"):
        hat_select(2, units[:7] + [GridVec(SparseVec.unit(1, 10)) * 2], cuts)
    with pytest.raises(PreconditionError, match="band"):
        hat_select(2, units[:7] + [GridVec(SparseVec.unit(1, 3))], cuts)
    with pytest.raises(PreconditionError, match="overlaps"):
        hat_select(2, units[:7] + [GridVec(SparseVec.unit(1, 3))])


def test_select_c0_subsequence_single_vector():
    cuts, x_list = c0_instance(1, 5, 0)
    indices, (low, high), report = select_c0_subsequence(1, x_list, cuts)
    assert indices == [1]
    assert low == high == 1
    assert report.passed == REPORTED
    assert report.extra["c_up"] == 1


def test_select_c0_subsequence_seeded():
    cuts, x_list = c0_instance(2, 9, 0)
    indices, (low, high), report = select_c0_subsequence(2, x_list, cuts)
    assert len(indices) == 2
    assert 1 <= high <= 2
    assert low == 1
    assert report.passed == REPORTED


def test_select_c0_subsequence_needs_normalized_vectors():
    cuts, x_list = c0_instance(1, 5, 0)
    with pytest.raises(PreconditionError):
        select_c0_subsequence(1, [x_list[0] * 2], cuts)


def test_spreading_unit_blocks_in_tsirelson():
    assert spreading_witness(parse_space("T"), "unit", 4, 3) == (1, 2)
    report = spreading_report(parse_space("T"), "unit", 4, 3)
    assert report.max_ratio == 2
    assert report.passed is True


@pytest.mark.parametrize(
    "space, blocks, k, shift",
    [
        ("sum(T*,indexed(lpn(1,#)))", "unit", 3, 0),
        ("sum(T*,indexed(lpn(1,#)))", "diagonal", 3, 2),
        ("T*", "pair", 2, 1),
        ("T", "pair", 3, 0),
    ],
    ids=["indexed unit", "indexed diagonal", "dual pairs", "tsirelson pairs"],
)
def test_spreading_within_bound(space, blocks, k, shift):
    report = spreading_report(parse_space(space), blocks, k, shift)
    assert report.extra["c_low"] == 1
    assert report.max_ratio <= 6
    assert report.passed is True


@pytest.mark.parametrize(
    "space, blocks",
    [("T", "diagonal"), ("sum(T*,repeat(l1))", "pair"), ("T", "spiral")],
    ids=["diagonal depth one", "pair depth two", "unknown"],
)
def test_spreading_block_errors(space, blocks):
    with pytest.raises(MalformedInputError):
        spreading_blocks(parse_space(space), blocks, 2, 0)


@pytest.mark.slow
def test_block_c0_strict_on_ten_coordinates():
    report = verify_block_c0(10, workers=2)
    assert report.max_ratio == 2
    assert report.passed is True


@pytest.mark.slow
def test_block_c0_relaxed_on_ten_coordinates():
    report = verify_block_c0(10, "relaxed", workers=4)
    assert report.max_ratio <= 3
    assert report.passed is True


@pytest.mark.slow
def test_hat_select_many_seeds():
    for index in range(100):
        cuts, w_list = hat_instance(2, 8191, index)
        _, _, report = hat_select(2, w_list, cuts)
        assert report.extra["proximity"] <= Fraction(1, 2)
        assert report.max_ratio <= 2
        assert report.passed is True


@pytest.mark.slow
def test_lemma_l2_three_rows():
    report = verify_lemma_L2(3, [3, 5, 7, 9], samples=20)
    assert report.passed == REPORTED


@pytest.mark.slow
def test_dm_on_eight_coordinates():
    report = estimate_DM(2, 8)
    assert report.max_ratio >= 2
    assert report.passed == REPORTED


@pytest.mark.slow
def test_cm_on_eight_coordinates():
    report = estimate_CM(8, samples=50)
    assert report.max_ratio >= 1
    assert report.passed == REPORTED
    assert estimate_CM(8, samples=50).max_ratio == report.max_ratio


@pytest.mark.parametrize("k", [1, 2, 3])
def test_spreading_indexed_unit_blocks(k):
    report = spreading_report(parse_space("sum(T*,indexed(lpn(1,#)))"), "unit", k, 1)
    assert report.max_ratio <= 6
