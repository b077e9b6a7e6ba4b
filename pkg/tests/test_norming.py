import random
from fractions import Fraction

import pytest

from banachlab.config import Caps
from banachlab.errors import CapExceededError
from banachlab.norming import Functional, norming_set, norming_value, positive_norming_set, undominated
from banachlab.norms import brute_force_tsirelson, norm
from banachlab.spaces import Tsirelson
from banachlab.vectors import SparseVec


def vec(text):
    return SparseVec.parse(text)


def test_single_coordinate():
    assert sorted(str(f) for f in norming_set({1})) == ["1:-1", "1:1"]


def test_admissible_average_is_generated():
    members = {str(f) for f in positive_norming_set({2, 3})}
    assert members == {"2:1", "3:1", "2:1/2,3:1/2"}
    assert norming_value({2, 3}, vec("2:1,3:1")) == 1


def test_functionals_act_on_depth_one_vectors():
    functionals = positive_norming_set({2, 3})
    assert all(f.coefficients.depth == 1 for f in functionals)
    assert max(f(vec("2:1,3:1")) for f in functionals) == 1
    assert SparseVec.parse("2:1/2,3:1/2") in [f.coefficients for f in functionals]


def test_first_coordinate_never_starts_an_average():
    assert {str(f) for f in positive_norming_set({1, 2})} == {"1:1", "2:1"}


def test_signed_set_has_every_sign_variant():
    positive = positive_norming_set({2, 3, 4})
    signed = norming_set({2, 3, 4})
    assert len(signed) == sum(2 ** len(f.coefficients) for f in positive)
    assert len({f.coefficients for f in signed}) == len(signed)


@pytest.mark.parametrize("coordinates", [{2, 3, 4, 5}, {3, 4, 5, 6, 7}, set(range(1, 8))], ids=["4", "5", "7"])
def test_coefficients_are_dyadic_up_to_depth(coordinates):
    for functional in positive_norming_set(coordinates):
        for _, value in functional.coefficients.items():
            assert any(value == Fraction(1, 2**d) for d in range(functional.depth + 1)), str(functional)


def test_functionals_are_norming():
    rng = random.Random(3)
    functionals = norming_set(range(1, 7))
    for _ in range(30):
        y = SparseVec({(j,): Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for j in range(1, 7)})
        assert max(f(y) for f in functionals) == norm(Tsirelson(), y)


def test_reduced_set_norms_like_full_set():
    y = vec("3:1,4:1/2,5:1,6:1/4,7:1")
    full = max(f(abs(y)) for f in positive_norming_set(range(3, 8)))
    reduced = max(f(abs(y)) for f in positive_norming_set(range(3, 8), reduced=True))
    assert full == reduced == brute_force_tsirelson(y)


def test_subset_is_filtered_from_warm_cache():
    positive_norming_set(range(1, 8), warm=7)
    assert {str(f) for f in positive_norming_set({2, 3})} == {"2:1", "3:1", "2:1/2,3:1/2"}


def test_cap_refusal():
    with pytest.raises(CapExceededError) as error:
        positive_norming_set(range(1, 6), Caps(tsirelson=4))
    assert error.value.cap == "tsirelson"


def test_undominated_drops_dominated_rows():
    functionals = [
        Functional(vec("2:1/2,3:1/2")),
        Functional(vec("2:1/2,3:1/4")),
        Functional(vec("3:1")),
        Functional(vec("2:1")),
    ]
    kept = undominated(functionals, [2, 3])
    assert [str(f) for f in kept] == ["2:1/2,3:1/2", "3:1", "2:1"]
