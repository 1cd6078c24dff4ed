from fractions import Fraction

import pytest

from hitting_times import verification
from hitting_times.exceptions import UnsupportedN
from hitting_times.verification import SUITES, Failure, run_suite


@pytest.mark.parametrize("suite", SUITES)
def test_each_suite_passes_for_small_n(suite):
    assert run_suite(suite, 12) == []


def test_decomp_suite_at_n5():
    assert run_suite("decomp", 5) == []


def test_all_runs_every_suite(mocker):
    spies = {name: mocker.Mock() for name in SUITES}
    mocker.patch.dict(verification.SUITE_RUNNERS, spies)
    assert run_suite("all", 7) == []
    for spy in spies.values():
        spy.assert_called_once()
        assert spy.call_args.args[1] == 7


def test_run_suite_rejects_bad_arguments():
    with pytest.raises(UnsupportedN):
        run_suite("oracle", 4)
    with pytest.raises(ValueError):
        run_suite("nonsense", 10)


def test_mismatch_is_recorded_with_indices(mocker):
    mocker.patch(
        "hitting_times.verification.chair_hitting_time",
        side_effect=lambda n, l: Fraction(-1) if (n, l) == (6, 2) else verification.hitting_time(n, l),
    )
    failures = run_suite("chair", 6)
    assert len(failures) == 1
    failure = failures[0]
    assert failure.suite == "chair"
    assert failure.indices == {"N": 6, "l": 2}
    assert failure.expected == "5"
    assert failure.actual == "-1"
    assert "N=6, l=2" in failure.describe()


def test_exception_inside_a_check_does_not_stop_the_sweep(mocker):
    mocker.patch("hitting_times.verification.hitting_first", side_effect=ArithmeticError("boom"))
    failures = run_suite("oracle", 7)
    assert [f.indices for f in failures] == [{"N": 5}, {"N": 6}, {"N": 7}]
    assert all("ArithmeticError: boom" in f.actual for f in failures)


def test_failure_describe():
    failure = Failure(suite="decomp", formula="det H = F_N", indices={"N": 9}, expected="34", actual="35")
    assert failure.describe() == "[decomp] det H = F_N at N=9: expected 34, got 35"


@pytest.mark.slow
def test_all_suites_pass_up_to_60():
    assert run_suite("all", 60) == []
