import pytest

from src.engines.selfcheck import SelfCheck, SelfcheckBounds, SuiteResult, run_selfcheck

SMALL = SelfcheckBounds(max_rank=2, max_level=2, max_genus=1, trials=6, seed=3)


def test_suite_result_keeps_the_smallest_failure():
    result = SuiteResult(name="demo")
    result.record(True, "a", 1e-12)
    result.record(False, "long failing case")
    result.record(False, "short")
    assert not result.passed
    assert result.failure == "short"
    assert result.checks == 3
    assert result.max_residual == 1e-12


@pytest.mark.parametrize(
    "suite",
    ["character_identities", "schur_oracle", "telescoping", "phi_bijection", "rank_one", "base_cases", "pieri_base", "genus_one_count"],
)
def test_fast_suites_pass(suite):
    result = getattr(SelfCheck(SMALL), suite)()
    assert result.passed, result.failure
    assert result.checks > 0


@pytest.mark.slow
def test_full_run_is_reproducible():
    first = run_selfcheck(SMALL)
    second = run_selfcheck(SMALL)
    assert first.passed, first.render()
    assert first.render() == second.render()
    assert len(first.suites) == 14
    assert first.render().splitlines()[-1] == "selfcheck PASS: 14/14 suites, seed=3"


def test_rank_one_sweep_covers_the_full_grid():
    # genus 0..5, level 1..8, degree 0..3 regardless of the small grid
    result = SelfCheck(SMALL).rank_one()
    assert result.passed, result.failure
    assert result.checks == 6 * 8 * 4


def test_rank_one_bounds_are_validated():
    with pytest.raises(ValueError):
        SelfcheckBounds(rank_one_max_level=0)
