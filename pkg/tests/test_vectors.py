from fractions import Fraction

import pytest

from banachlab.errors import MalformedInputError
from banachlab.vectors import (
    FinSet,
    SparseVec,
    disjoint_supports,
    inner_product,
    parse_rational,
    restrict,
    support_min_max,
)


def vec(text):
    return SparseVec.parse(text)


@pytest.mark.parametrize(
    "x, indices, expected",
    [
        ("1:1,2:1", {2}, "2:1"),
        ("1:1,2:1", set(), "0"),
        ("1:1,3:1/2", {1, 3}, "1:1,3:1/2"),
        ("1.1:1,2.3:-2/3,2.4:1", {2}, "2.3:-2/3,2.4:1"),
    ],
    ids=["single coordinate", "empty set", "full support", "leading index of depth 2"],
)
def test_restrict(x, indices, expected):
    assert str(restrict(vec(x), indices)) == expected


def test_restrict_composes_by_intersection():
    x = vec("1:1,2:-1,3:1/2,5:7")
    assert restrict(restrict(x, {1, 2, 3}), {2, 3, 5}) == restrict(x, {2, 3})


@pytest.mark.parametrize(
    "x, f, expected",
    [
        ("1:1", "1:1", 1),
        ("1:1", "2:1", 0),
        ("1:2,3:1", "1:1,3:1", 3),
        ("1:1/2,2:-1/3", "1:1/3,2:3", Fraction(-5, 6)),
    ],
    ids=["biorthogonal", "disjoint", "expansion", "rational"],
)
def test_inner_product(x, f, expected):
    assert inner_product(vec(x), vec(f)) == expected
    assert inner_product(vec(f), vec(x)) == expected


def test_inner_product_depth_mismatch():
    with pytest.raises(MalformedInputError):
        inner_product(vec("1:1"), vec("1.1:1"))


@pytest.mark.parametrize(
    "x, expected",
    [("5:1", (5, 5)), ("2:1,7:1", (2, 7)), ("3.1:1,1.9:2", (1, 3))],
    ids=["single", "pair", "leading indices"],
)
def test_support_min_max(x, expected):
    assert support_min_max(vec(x)) == expected


def test_support_min_max_of_zero():
    with pytest.raises(MalformedInputError):
        support_min_max(SparseVec())


def test_zero_coefficients_are_dropped():
    x = vec("1:1,2:0,3:2/4")
    assert x.support() == [(1,), (3,)]
    assert x[3] == Fraction(1, 2)
    assert vec("1:1") - vec("1:1") == SparseVec()


def test_support_is_lexicographic():
    assert vec("2.1:1,1.5:1,1.2:1").support() == [(1, 2), (1, 5), (2, 1)]


def test_equality_is_canonical():
    assert vec("1:2/4,3:1") == vec("3:1,1:1/2")
    assert hash(vec("1:2/4,3:1")) == hash(vec("3:1,1:1/2"))
    assert vec("1:1") != vec("1:-1")


def test_arithmetic_is_exact():
    x = vec("1:1/3,2:1")
    assert str(x * 3) == "1:1,2:3"
    assert str(x / 2) == "1:1/6,2:1/2"
    assert str(-x + x) == "0"
    assert abs(vec("1:-1/2")) == vec("1:1/2")
    assert vec("1:1,2:-3").sup_norm() == 3
    assert vec("1:1,2:-3").l1_norm() == 4


@pytest.mark.parametrize(
    "text",
    ["1:x", "1", "0.1:1", "1:1,1:2", "1:1,1.1:1", "1:1/0"],
    ids=["bad value", "missing value", "zero index", "repeated path", "mixed depth", "zero denominator"],
)
def test_parse_errors(text):
    with pytest.raises(MalformedInputError):
        SparseVec.parse(text)


def test_components():
    x = vec("1.2:1,1.3:-1,4.1:1/2")
    assert x.component(1) == vec("2:1,3:-1")
    assert x.component(2) == SparseVec()
    assert x.components() == {1: vec("2:1,3:-1"), 4: vec("1:1/2")}
    assert SparseVec.from_components(x.components()) == x


def test_finset_successive_order():
    assert FinSet({1, 2}).precedes({3, 7})
    assert not FinSet({1, 4}).precedes({3})
    assert FinSet().precedes({1})


def test_disjoint_supports():
    assert disjoint_supports([vec("1:1"), vec("2:1"), vec("3:1,4:1")])
    assert not disjoint_supports([vec("1:1,2:1"), vec("2:-1")])


@pytest.mark.parametrize(
    "text, expected",
    [("3", Fraction(3)), ("-2/4", Fraction(-1, 2)), (" 7/3 ", Fraction(7, 3))],
    ids=["integer", "lowest terms", "whitespace"],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected
