from fractions import Fraction

import pytest

from src.errors import InvalidInstanceError, InvalidWeightError
from src.weights.instance import ProblemInstance, divisible, level_ell, level_ell_raw
from src.weights.parabolic import ParabolicPoint
from tests.conftest import P


def test_level_ell_of_the_empty_instance():
    instance = ProblemInstance(0, 2, 0, 1)
    assert level_ell(instance) == Fraction(1)
    assert divisible(instance)


def test_divisibility_examples():
    assert not divisible(ProblemInstance(0, 2, 0, 2, (P(1, 0),)))
    assert divisible(ProblemInstance(1, 2, 1, 1, (P(1, 0),)))


def test_level_ell_is_integral_exactly_when_divisible():
    for degree in range(-2, 3):
        for points in [(), (P(1, 0),), (P(2, 0), P(1, 0)), (P(1, 0), P(1, 0))]:
            instance = ProblemInstance(1, 2, degree, 2, points)
            assert (level_ell(instance).denominator == 1) == divisible(instance)


def test_level_ell_raw_with_flags():
    point = ParabolicPoint((1, 1), (0, 2))
    assert level_ell_raw(0, 2, 0, 2, [point]) == Fraction(1)


def test_instance_validation():
    with pytest.raises(InvalidInstanceError):
        ProblemInstance(-1, 2, 0, 1)
    with pytest.raises(InvalidInstanceError):
        ProblemInstance(0, 0, 0, 1)
    with pytest.raises(InvalidInstanceError):
        ProblemInstance(0, 2, 0, 2, (P(2, 1),))
    with pytest.raises(InvalidWeightError):
        ProblemInstance(0, 2, 0, 1, (P(2, 0),))


def test_build_normalizes_both_point_languages():
    instance = ProblemInstance.build(0, 2, 0, 3, [P(2, 1), ParabolicPoint((1, 1), (0, 2))])
    assert instance.points == (P(1, 0), P(2, 0))
    assert instance.total_size == 3


def test_canonical_and_description():
    instance = ProblemInstance(0, 2, 1, 2, (P(2, 0), P(1, 0)))
    assert instance.canonical().points == (P(1, 0), P(2, 0))
    assert instance.key() == instance.canonical().key()
    assert instance.euler == 3
    assert instance.describe() == {"genus": 0, "rank": 2, "degree": 1, "level": 2, "weights": "2,0;1,0"}
    assert str(ProblemInstance(0, 2, 0, 1)) == "D_0(r=2, d=0, k=1, [])"
