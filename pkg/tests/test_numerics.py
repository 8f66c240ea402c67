import cmath
import math

import pytest

from src.config import DEFAULT_ENGINE_CONFIG
from src.errors import InvalidInstanceError, PrecisionExceeded, PreconditionError
from src.numerics.identities import IdentityKind, delta_norm, identity_residual, sine_product
from src.numerics.roots import DOUBLE, EvalPoint, MultiPrecisionBackend, eval_points, root_power
from src.numerics.schur import schur_at, schur_tableau_sum, schur_values
from src.weights.partitions import WeightSet, enumerate_weights
from tests.conftest import P


def test_root_power():
    assert abs(root_power(4, 1) - 1j) < 1e-15
    assert abs(root_power(7, 0) - 1) < 1e-15
    assert abs(root_power(3, 3) - 1) < 1e-15
    assert abs(root_power(5, -1) - root_power(5, 4)) < 1e-15


def test_root_power_high_precision():
    backend = MultiPrecisionBackend(50)
    with backend.precision():
        assert abs(complex(root_power(4, 1, backend)) - 1j) < 1e-30


def test_eval_points():
    points = eval_points(2, 2)
    assert [p.v for p in points] == [(1, 0), (2, 0), (3, 0)]
    assert len(eval_points(3, 3)) == math.comb(5, 2)
    with pytest.raises(InvalidInstanceError):
        EvalPoint((1, 1), 4)
    with pytest.raises(InvalidInstanceError):
        EvalPoint((4, 0), 4)


def test_schur_examples():
    point = EvalPoint((1, 0), 3)
    zeta = cmath.exp(2j * cmath.pi / 3)
    assert abs(schur_at(P(0, 0), point) - 1) < 1e-12
    assert abs(schur_at(P(1, 0), point) - (zeta + 1)) < 1e-12


def test_schur_of_first_fundamental_is_the_power_sum():
    point = EvalPoint((4, 2, 0), 6)
    expected = sum(cmath.exp(2j * cmath.pi * v / 6) for v in point.v)
    assert abs(schur_at(P(1, 0, 0), point) - expected) < 1e-12


def test_bialternant_agrees_with_tableau_sum():
    for point in eval_points(3, 2):
        variables = [cmath.exp(2j * cmath.pi * v / point.order) for v in point.v]
        values = schur_values(enumerate_weights(3, 2, WeightSet.W), point)
        for weight, value in values.items():
            assert abs(value - schur_tableau_sum(weight, variables)) < 1e-10


def test_schur_values_condition_budget():
    with pytest.raises(PrecisionExceeded):
        schur_at(P(1, 0), EvalPoint((1, 0), 3), max_condition=1.0)


def test_delta_norm():
    for point, expected in [(EvalPoint((0,), 2), 1.0), (EvalPoint((1, 0), 3), 3.0), (EvalPoint((2, 0), 4), 4.0)]:
        delta, norm = delta_norm(point)
        assert abs(norm - expected) < 1e-12
        assert abs(abs(delta) ** 2 - norm) < 1e-12


def test_sine_product_high_precision():
    backend = MultiPrecisionBackend(40)
    with backend.precision():
        assert abs(float(sine_product(EvalPoint((1, 0), 3), backend)) - 3.0) < 1e-30


@pytest.mark.parametrize("kind", [IdentityKind.SUM_P, IdentityKind.SUM_W])
def test_sum_identities_at_level_one(kind):
    assert identity_residual(kind, 2, 1, EvalPoint((1, 0), 3)) < 1e-9


def test_orthogonality():
    residual = identity_residual(IdentityKind.ORTH, 2, 2, EvalPoint((2, 0), 4), EvalPoint((1, 0), 4))
    assert residual < 1e-9


def test_identities_over_a_small_grid():
    tol = DEFAULT_ENGINE_CONFIG.identity_tolerance
    for r in (2, 3):
        for k in (1, 2, 3):
            for point in eval_points(r, k):
                for kind in (IdentityKind.SUM_P, IdentityKind.SUM_W):
                    assert identity_residual(kind, r, k, point) < tol


def test_identities_in_high_precision():
    backend = MultiPrecisionBackend(40)
    assert identity_residual(IdentityKind.SUM_W, 3, 2, EvalPoint((3, 1, 0), 5), backend=backend) < 1e-30


def test_identity_preconditions():
    with pytest.raises(PreconditionError):
        identity_residual(IdentityKind.ORTH, 2, 2, EvalPoint((2, 0), 4))
    with pytest.raises(PreconditionError):
        identity_residual(IdentityKind.SUM_P, 2, 2, EvalPoint((1, 0), 3))
