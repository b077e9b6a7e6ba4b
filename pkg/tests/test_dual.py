import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from banachlab import dual
from banachlab.config import Caps
from banachlab.dual import dual_norm, dual_norm_by_decomposition, verify_duality
from banachlab.errors import CapExceededError, MalformedInputError, PreconditionError
from banachlab.norming import positive_norming_set
from banachlab.norms import NormEngine, norm
from banachlab.spaces import TsirelsonDual
from banachlab.vectors import SparseVec


def vec(text):
    return SparseVec.parse(text)


def random_vector(rng, max_size=6, top=8):
    size = rng.randint(1, max_size)
    positions = rng.sample(range(1, top + 1), size)
    return SparseVec({(j,): Fraction(rng.randint(1, 6) * rng.choice((1, -1)), rng.randint(1, 4)) for j in positions})


nonzero = st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(lambda value: value != 0)
vectors = st.dictionaries(st.integers(min_value=1, max_value=7), nonzero, min_size=1, max_size=4).map(
    lambda entries: SparseVec({(j,): value for j, value in entries.items()})
)


@pytest.mark.parametrize(
    "x, value, witness",
    [("1:1", 1, "1:1"), ("1:1,2:1", 2, "1:1,2:1"), ("1:2", 2, "1:1"), ("1:-1,2:1", 2, "1:-1,2:1")],
    ids=["unit", "e1+e2", "homogeneity", "signs"],
)
def test_dual_norm(x, value, witness):
    result = dual_norm(vec(x))
    assert result.value == value
    assert result.witness == vec(witness)


@pytest.mark.parametrize("x", ["2:1,3:1", "4:1,5:1,6:1,7:1", "2:1/2,3:-1,5:2,8:1/3", "3:1,4:1,5:-1,6:1,7:1,8:1"])
def test_witness_and_certificate(x):
    x = vec(x)
    result = dual_norm(x)
    assert x.inner(result.witness) == result.value
    assert norm(TsirelsonDual(), x) == result.value
    for functional in positive_norming_set(x.leading_support()):
        assert functional(abs(result.witness)) <= 1
    assert result.certificate_rank() == len(x)


def test_zero_vector():
    result = dual_norm(SparseVec())
    assert result.value == 0
    assert result.witness == SparseVec()


def test_depth_two_is_malformed():
    with pytest.raises(MalformedInputError):
        dual_norm(vec("1.1:1"))


def test_cap_refusal():
    with pytest.raises(CapExceededError) as error:
        dual_norm(SparseVec.indicator(range(1, 5)), Caps(dual=3))
    assert error.value.cap == "dual"


@pytest.mark.parametrize(
    "x, y",
    [("1:1", "1:1"), ("1:1,2:1", "3:1"), ("2:1,3:1", "2:1,3:1")],
    ids=["biorthogonal", "disjoint", "e2+e3"],
)
def test_verify_duality(x, y):
    assert verify_duality(vec(x), vec(y))


def test_verify_duality_random_pairs():
    rng = random.Random(8191)
    for _ in range(100):
        assert verify_duality(random_vector(rng), random_vector(rng))


@pytest.mark.slow
def test_verify_duality_many_random_pairs():
    rng = random.Random(1000)
    for _ in range(1000):
        assert verify_duality(random_vector(rng), random_vector(rng))


@pytest.mark.parametrize(
    "x", ["1:1", "2:1,3:1", "2:1,3:-1/2,4:1", "3:1,4:1,5:1,6:1", "2:1/3,4:1,5:-2,6:1,7:1/2"]
)
def test_decomposition_agrees(x):
    assert dual_norm_by_decomposition(vec(x)) == dual_norm(vec(x)).value


def test_decomposition_support_limit():
    with pytest.raises(PreconditionError):
        dual_norm_by_decomposition(SparseVec.indicator(range(1, 7)))


@settings(max_examples=40, deadline=None)
@given(x=vectors, y=vectors, scalar=nonzero)
def test_dual_norm_axioms(x, y, scalar):
    value = dual_norm(x).value
    assert x.sup_norm() <= value <= x.l1_norm()
    assert dual_norm(x * scalar).value == abs(scalar) * value
    assert dual_norm(x + y).value <= value + dual_norm(y).value


@settings(max_examples=40, deadline=None)
@given(x=vectors, keep=st.sets(st.integers(min_value=1, max_value=7)))
def test_dual_norm_suppression(x, keep):
    assert dual_norm(x.restrict(keep)).value <= dual_norm(x).value


def test_engine_solves_each_program_once(mocker):
    spy = mocker.spy(dual, "dual_norm")
    engine = NormEngine(TsirelsonDual())
    x = vec("2:1,5:-1/2,6:1")
    assert engine.norm(x) == engine.norm(x)
    assert spy.call_count == 1
