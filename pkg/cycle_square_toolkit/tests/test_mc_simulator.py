from decimal import Decimal
from fractions import Fraction

import pytest

from hitting_times.exceptions import ConfigInvalid, TruncationWarning
from hitting_times.mc_simulator import (
    DEFAULT_MAX_STEPS,
    WalkStats,
    _chunk_bounds,
    empirical_vs_exact,
    make_walk_config,
    run_trial,
    simulate,
    trial_generator,
)


@pytest.fixture
def small_config():
    return make_walk_config(n=10, target=5, trials=400, master_seed=42)


# --- Configuration ---


def test_make_walk_config_defaults(small_config):
    assert small_config.max_steps == DEFAULT_MAX_STEPS
    assert small_config.workers == 1


@pytest.mark.parametrize(
    "overrides",
    [
        {"trials": 0},
        {"n": 4, "target": 1},
        {"target": 0},
        {"target": 10},
        {"master_seed": -1},
        {"master_seed": 2**64},
        {"max_steps": 0},
        {"workers": 0},
        {"trials": "many"},
    ],
)
def test_make_walk_config_rejects_invalid(overrides):
    params = {"n": 10, "target": 5, "trials": 10, "master_seed": 1}
    params.update(overrides)
    with pytest.raises(ConfigInvalid):
        make_walk_config(**params)


# --- Walk mechanics ---


def test_trial_stream_depends_only_on_seed_and_index():
    first = trial_generator(42, 7).random(8)
    again = trial_generator(42, 7).random(8)
    other = trial_generator(42, 8).random(8)
    assert first.tolist() == again.tolist()
    assert first.tolist() != other.tolist()


def test_run_trial_reaches_target():
    steps = run_trial(5, 1, trial_generator(0, 0), DEFAULT_MAX_STEPS)
    assert steps is not None and steps >= 1


def test_run_trial_truncates():
    """Vertex 5 of C^2_10 is at least three steps away from 0."""
    assert run_trial(10, 5, trial_generator(0, 0), 2) is None


def test_chunk_bounds_cover_all_trials():
    bounds = _chunk_bounds(10, 4)
    assert bounds == [(0, 3), (3, 6), (6, 8), (8, 10)]
    assert _chunk_bounds(2, 8) == [(0, 1), (1, 2)]


# --- Statistics ---


def test_simulate_is_deterministic(small_config):
    assert simulate(small_config) == simulate(small_config)


def test_simulate_independent_of_worker_count():
    serial = simulate(make_walk_config(n=8, target=3, trials=200, master_seed=5, workers=1))
    parallel = simulate(make_walk_config(n=8, target=3, trials=200, master_seed=5, workers=3))
    assert serial == parallel


def test_simulate_summary_fields(small_config):
    stats = simulate(small_config)
    assert stats.trials_completed == 400
    assert stats.truncated_trials == 0
    assert stats.variance_defined
    assert stats.exact_mean() == Fraction(stats.step_sum, 400)
    assert abs(stats.stderr**2 * 400 - stats.variance) < Decimal("1e-20")


def test_single_trial_has_no_variance():
    stats = simulate(make_walk_config(n=5, target=2, trials=1, master_seed=3))
    assert stats.trials_completed == 1
    assert stats.variance == 0
    assert not stats.variance_defined
    assert stats.stderr is None


def test_exact_mean_and_variance_from_totals():
    # walks of 1, 2 and 3 steps
    stats = WalkStats(trials_completed=3, truncated_trials=0, step_sum=6, step_sum_sq=14)
    assert stats.exact_mean() == 2
    assert stats.exact_variance() == 1
    single = WalkStats(trials_completed=1, truncated_trials=0, step_sum=5, step_sum_sq=25)
    assert single.exact_variance() is None


def test_truncated_trials_are_excluded_and_warned():
    cfg = make_walk_config(n=10, target=5, trials=5, master_seed=1, max_steps=2)
    with pytest.warns(TruncationWarning):
        stats = simulate(cfg)
    assert stats.trials_completed == 0
    assert stats.truncated_trials == 5
    assert stats.mean is None


def test_empirical_vs_exact_agrees_for_moderate_run():
    report = empirical_vs_exact(make_walk_config(n=10, target=5, trials=3000, master_seed=42))
    assert report.exact == Fraction(150, 11)
    assert report.z_score is not None
    assert abs(report.z_score) <= 4
    assert not report.flagged


def test_empirical_vs_exact_flags_far_mean(mocker):
    fake = WalkStats(
        trials_completed=100,
        truncated_trials=0,
        step_sum=100 * 40,
        step_sum_sq=100 * 1700,
        mean=Decimal(40),
        variance=Decimal("101.0101"),
        stderr=Decimal("1.005"),
        variance_defined=True,
    )
    mocker.patch("hitting_times.mc_simulator.simulate", return_value=fake)
    report = empirical_vs_exact(make_walk_config(n=10, target=5, trials=100, master_seed=0))
    assert report.flagged
    assert report.z_score > 4


def test_empirical_vs_exact_degenerate_cases(mocker):
    cfg = make_walk_config(n=5, target=1, trials=1, master_seed=0)
    exact_hit = WalkStats(trials_completed=1, truncated_trials=0, step_sum=4, step_sum_sq=16, mean=Decimal(4))
    mocker.patch("hitting_times.mc_simulator.simulate", return_value=exact_hit)
    report = empirical_vs_exact(cfg)
    assert report.degenerate and report.z_score is None
    assert not report.flagged

    missed = WalkStats(trials_completed=1, truncated_trials=0, step_sum=1, step_sum_sq=1, mean=Decimal(1))
    mocker.patch("hitting_times.mc_simulator.simulate", return_value=missed)
    assert empirical_vs_exact(cfg).flagged


def test_empirical_vs_exact_with_no_completed_trials():
    cfg = make_walk_config(n=10, target=5, trials=3, master_seed=1, max_steps=1)
    with pytest.warns(TruncationWarning):
        report = empirical_vs_exact(cfg)
    assert report.flagged
    assert report.stats.mean is None


@pytest.mark.slow
def test_k5_mean_and_variance():
    """On K_5 the hitting time is geometric with p = 1/4: mean 4, variance 12."""
    stats = simulate(make_walk_config(n=5, target=1, trials=200_000, master_seed=2024, workers=2))
    assert abs(stats.mean - 4) < Decimal("0.2")
    assert abs(stats.variance - 12) < Decimal("0.6")


@pytest.mark.slow
@pytest.mark.parametrize("n, target, seed, exact", [(5, 1, 2024, 4), (6, 3, 7, 6), (10, 5, 42, Fraction(150, 11))])
def test_simulated_mean_within_four_standard_errors(n, target, seed, exact):
    report = empirical_vs_exact(make_walk_config(n=n, target=target, trials=200_000, master_seed=seed, workers=2))
    assert report.exact == exact
    assert report.stats.trials_completed == 200_000
    assert abs(report.z_score) <= 4
    assert not report.flagged
