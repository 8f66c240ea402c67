import pytest

from src.config import EngineConfig
from src.engines.evaluator import (
    EngineChoice,
    Evaluator,
    RecursiveEngine,
    reduce_degree,
    reduce_genus_once,
    split_points_once,
    verlinde_checked,
    verlinde_recursive,
)
from src.errors import EngineMismatch, PreconditionError, RecursionBudgetExceeded
from src.weights.instance import ProblemInstance
from tests.conftest import P

OMEGA = P(1, 0)


def test_reduce_degree_examples():
    assert reduce_degree(ProblemInstance(0, 2, 1, 1, (P(1, 0),))) == ProblemInstance(0, 2, 0, 1, (P(0, 0),))
    assert reduce_degree(ProblemInstance(0, 2, 1, 1)) == ProblemInstance(0, 2, 0, 1, (P(1, 0),))
    unchanged = ProblemInstance(1, 3, 0, 2, (P(1, 0, 0),))
    assert reduce_degree(unchanged) is unchanged
    assert reduce_degree(ProblemInstance(0, 2, 4, 2, (OMEGA,))).degree == 0


def test_reduce_degree_preserves_the_value(evaluator):
    for degree in range(-3, 4):
        instance = ProblemInstance(1, 3, degree, 2, (P(2, 1, 0), P(1, 0, 0)))
        assert evaluator.analytic.value(reduce_degree(instance)) == evaluator.analytic.value(instance)


def test_reduce_genus_once():
    subproblems = reduce_genus_once(ProblemInstance(1, 2, 0, 2))
    assert len(subproblems) == 3
    assert all(sub.genus == 0 and len(sub.points) == 2 for sub in subproblems)
    assert len(reduce_genus_once(ProblemInstance(2, 1, 0, 3))) == 3
    assert [len(sub.points) for sub in reduce_genus_once(ProblemInstance(1, 2, 0, 1))] == [2]
    with pytest.raises(PreconditionError):
        reduce_genus_once(ProblemInstance(0, 2, 0, 2))


def test_genus_reduction_sums_to_the_value(evaluator):
    instance = ProblemInstance(2, 2, 1, 3, (P(3, 0),))
    total = sum(evaluator.analytic.value(sub) for sub in reduce_genus_once(instance))
    assert total == evaluator.analytic.value(instance)


def test_split_points_once(evaluator):
    instance = ProblemInstance(0, 2, 0, 2, (OMEGA,) * 4)
    pairs = split_points_once(instance)
    assert [left.points[-1] for left, _ in pairs] == [P(0, 0), P(2, 0)]
    total = sum(evaluator.analytic.value(left) * evaluator.analytic.value(right) for left, right in pairs)
    assert total == 2


def test_split_of_vacuum_points(evaluator):
    instance = ProblemInstance(0, 2, 0, 2, (P(0, 0),) * 4)
    pairs = split_points_once(instance)
    total = sum(evaluator.analytic.value(left) * evaluator.analytic.value(right) for left, right in pairs)
    assert total == 1


def test_split_preconditions():
    with pytest.raises(PreconditionError):
        split_points_once(ProblemInstance(1, 2, 0, 2, (OMEGA,) * 4))
    with pytest.raises(PreconditionError):
        split_points_once(ProblemInstance(0, 2, 0, 2, (OMEGA,) * 3))
    with pytest.raises(PreconditionError):
        split_points_once(ProblemInstance(0, 2, 0, 2, (OMEGA,) * 4), pair=(1, 1))


@pytest.mark.parametrize(
    "instance, expected",
    [
        (ProblemInstance(0, 2, 0, 1), 1),
        (ProblemInstance(2, 1, 0, 2), 4),
        (ProblemInstance(1, 2, 0, 2), 3),
        (ProblemInstance(0, 2, 0, 2, (OMEGA,) * 4), 2),
        (ProblemInstance(0, 3, 0, 1, (P(1, 0, 0),) * 3), 1),
    ],
)
def test_recursive_values(instance, expected):
    assert verlinde_recursive(instance) == expected


@pytest.mark.parametrize(
    "instance",
    [
        ProblemInstance(1, 2, 1, 3, (P(3, 0),)),
        ProblemInstance(0, 3, 1, 2, (P(2, 1, 0), P(1, 0, 0), P(2, 0, 0), P(1, 1, 0))),
        ProblemInstance(2, 2, 0, 2, (P(2, 0), P(1, 0), P(1, 0))),
        ProblemInstance(1, 3, 2, 2, (P(1, 0, 0), P(2, 2, 0))),
    ],
)
def test_engines_agree(instance, evaluator):
    assert evaluator.verlinde_checked(instance, EngineChoice.BOTH) >= 0


def test_both_mode_examples():
    assert verlinde_checked(ProblemInstance(1, 2, 0, 2), EngineChoice.BOTH) == 3
    assert verlinde_checked(ProblemInstance(0, 3, 0, 1, (P(1, 0, 0),) * 3), EngineChoice.BOTH) == 1


def test_both_mode_records_a_replayable_trace(evaluator):
    evaluator.verlinde_checked(ProblemInstance(1, 2, 1, 2, (P(2, 0),)), EngineChoice.BOTH)
    trace = evaluator.last_trace
    assert trace is not None
    assert trace.replay()
    assert trace.breakdown()["degree"] == 1
    assert trace.breakdown()["genus"] == 1


def test_mismatch_carries_both_values(evaluator, monkeypatch):
    monkeypatch.setattr(evaluator.recursive, "verlinde_recursive", lambda instance, trace=False: (7, None))
    with pytest.raises(EngineMismatch) as excinfo:
        evaluator.verlinde_checked(ProblemInstance(1, 2, 0, 2), EngineChoice.BOTH)
    assert excinfo.value.analytic == 3
    assert excinfo.value.recursive == 7
    assert excinfo.value.exit_code == 3
    assert excinfo.value.details()["recursive"] == "7"


def test_recursion_budget():
    engine = RecursiveEngine(EngineConfig(recursion_limit=10))
    with pytest.raises(RecursionBudgetExceeded):
        engine.value(ProblemInstance(12, 1, 0, 1))


def test_degree_varying_split_examples(evaluator):
    assert evaluator.check_degree_varying_split(ProblemInstance(1, 2, 0, 2), 0, 1, [], [], 1, 1)
    assert evaluator.check_degree_varying_split(ProblemInstance(0, 2, 0, 1, (OMEGA, OMEGA)), 0, 0, [0], [1], 1, 1)


def test_degree_varying_split_preconditions(evaluator):
    instance = ProblemInstance(1, 2, 0, 2, (OMEGA, OMEGA))
    with pytest.raises(PreconditionError):
        evaluator.check_degree_varying_split(instance, 1, 1, [0], [1], 1, 1)
    with pytest.raises(PreconditionError):
        evaluator.check_degree_varying_split(instance, 0, 1, [0], [], 1, 1)
    with pytest.raises(PreconditionError):
        evaluator.check_degree_varying_split(instance, 0, 1, [0], [1], 0, 1)
