import pytest

from workbench.abgrp import IntMatrix
from workbench.catalog import walking_arrow
from workbench.errors import WorkbenchError
from workbench.fincat import identity_functor
from workbench.proptest import (
    SUITES,
    SuiteResult,
    category_laws_hold,
    colimit_size_oracle,
    determinant_divisors,
    run_suite,
)


@pytest.mark.parametrize("name,trials", [
    ("axioms", 20), ("transport", 10), ("homcolim", 10), ("hopf", 5),
    ("strict", 2), ("snf", 30), ("adjunction", 1), ("criterion", 5),
])
def test_suites_pass(name, trials):
    result = run_suite(name, seed=7, trials=trials)
    assert result.ok, result.failures[:3]
    assert result.checked > 0


def test_every_suite_is_registered():
    assert set(SUITES) == {"axioms", "transport", "homcolim", "hopf", "strict", "snf",
                           "adjunction", "criterion"}


def test_seed_makes_runs_repeatable():
    assert run_suite("axioms", seed=11, trials=5).as_dict() == run_suite("axioms", seed=11, trials=5).as_dict()


def test_unknown_suite():
    with pytest.raises(WorkbenchError):
        run_suite("fuzz")


def test_default_trial_count():
    assert run_suite("adjunction").trials == SUITES["adjunction"][1]


def test_result_reporting():
    result = SuiteResult("demo", 1, 3)
    assert result.ok
    result.fail(case="x")
    assert result.as_dict() == {"suite": "demo", "seed": 1, "trials": 3, "checked": 0,
                                "skipped": 0, "ok": False, "failures": [{"case": "x"}]}


def test_oracles_on_known_inputs():
    arrow = walking_arrow()
    assert category_laws_hold(arrow)
    assert colimit_size_oracle(arrow, identity_functor(arrow), "0") == 1
    assert determinant_divisors(IntMatrix.from_rows([[2, 4], [6, 8]])) == [2, 8]
