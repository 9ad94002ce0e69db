import json

import pytest

from bocce import geometry
from bocce.exact import Scenario
from bocce.lp import RATIONAL
from bocce.montecarlo import (
    ExperimentConfig,
    estimate,
    estimate_with_retry,
    judge,
    least_m,
    least_m_histogram,
    run_trial,
    sample_trial,
    wilson_interval,
    z_score,
)
from bocce.sampler import UniformCube, UniformSphere, trial_rng


def test_wilson_examples():
    assert wilson_interval(0, 100, 0.95)[0] == 0
    assert wilson_interval(100, 100, 0.95)[1] == 1
    low, high = wilson_interval(50, 100, 0.95)
    assert low == pytest.approx(0.4038, abs=5e-4)
    assert high == pytest.approx(0.5962, abs=5e-4)


@pytest.mark.parametrize("level", [0.95, 0.99, 0.999])
@pytest.mark.parametrize("k", [0, 1, 7, 50, 99, 100])
def test_wilson_contains_estimate(level, k):
    low, high = wilson_interval(k, 100, level)
    assert 0 <= low <= k / 100 <= high <= 1


def test_wilson_widens_with_level():
    widths = [h - l for l, h in (wilson_interval(30, 200, lv) for lv in (0.95, 0.99, 0.999))]
    assert widths == sorted(widths)


def test_wilson_rejects_bad_counts():
    with pytest.raises(ValueError):
        wilson_interval(5, 3)
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_z_score():
    assert z_score(0.5, 0.5, 100) == 0
    assert z_score(1.0, 1, 100) == 0
    assert z_score(0.9, 1, 100) is None
    assert z_score(0.6, 0.5, 100) == pytest.approx(2.0)


def test_config_validation():
    s = Scenario.bocce(4, 2)
    with pytest.raises(ValueError):
        ExperimentConfig(s, trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(s, trials=10, confidence_level=0.9)
    with pytest.raises(ValueError):
        ExperimentConfig(s, trials=10, fixed_first=(1, 0))
    with pytest.raises(ValueError):
        ExperimentConfig(Scenario.bocce_fixed_first(4, 2), trials=10, fixed_first=(0, 0))


def test_homogeneous_verdicts_match_hull_test_trial_by_trial():
    cfg = ExperimentConfig(Scenario.homogeneous(2, 5), trials=300, master_seed=17)
    for k in range(cfg.trials):
        A = sample_trial(cfg, trial_rng(17, k))
        columns = [list(c) for c in zip(*A)]
        assert judge(cfg, A) == geometry.origin_in_hull(columns)


def test_bocce_and_hull_events_are_complementary():
    cfg = ExperimentConfig(Scenario.bocce(6, 3), trials=400, master_seed=5)
    hits = sum(run_trial(cfg, k)[0] for k in range(cfg.trials))
    inside = sum(
        geometry.origin_in_hull(sample_trial(cfg, trial_rng(5, k))) for k in range(cfg.trials)
    )
    assert hits + inside == cfg.trials
    assert estimate(cfg).successes == hits


def test_fixed_first_point_is_used():
    cfg = ExperimentConfig(Scenario.bocce_fixed_first(5, 2), trials=1, fixed_first=(0, 3))
    cloud = sample_trial(cfg, trial_rng(0, 0))
    assert cloud[0] == (0, 3)
    default = ExperimentConfig(Scenario.bocce_fixed_first(5, 2), trials=1)
    assert sample_trial(default, trial_rng(0, 0))[0] == (1.0, 0.0)


def test_inhomogeneous_b():
    fixed = ExperimentConfig(Scenario.inhomogeneous(2, 3), trials=1)
    A, b = sample_trial(fixed, trial_rng(0, 0))
    assert b == [1.0, 0.0] and len(A) == 2 and len(A[0]) == 3
    rand = ExperimentConfig(Scenario.inhomogeneous(2, 3), trials=1, random_b=True)
    A, b = sample_trial(rand, trial_rng(0, 0))
    assert len(A[0]) == 3 and len(b) == 2 and b != [1.0, 0.0]


@pytest.mark.parametrize(
    "scenario",
    [Scenario.bocce(5, 2), Scenario.game(2, 3), Scenario.subspace(6, 3), Scenario.positive_io(2, 2),
     Scenario.inhomogeneous(1, 3), Scenario.homogeneous(1, 3), Scenario.bocce_fixed_first(4, 3)],
)
def test_report_is_identical_across_worker_counts(scenario):
    cfg = ExperimentConfig(scenario, trials=300, master_seed=99)
    serial = estimate(cfg).to_json()
    assert estimate(cfg).to_json() == serial
    assert estimate(cfg, workers=2).to_json() == serial
    assert estimate(cfg, workers=3).to_json() == serial


def test_report_fields():
    cfg = ExperimentConfig(Scenario.inhomogeneous(1, 2), trials=500, master_seed=3)
    rep = estimate(cfg)
    d = json.loads(rep.to_json())
    assert d["scenario"] == "inhomogeneous"
    assert d["dims"] == {"m": 1, "n": 2}
    assert d["trials"] == 500 and d["exact"] == "3/4" and d["b"] == "e1"
    assert d["ci"][0] <= d["estimate"] <= d["ci"][1]
    assert rep.estimate == rep.successes / rep.trials_used
    assert len(rep.csv_row().split(",")) == 13


@pytest.mark.parametrize("dist", [UniformCube(2.0), UniformSphere()])
def test_other_symmetric_distributions_match_exact(dist):
    cfg = ExperimentConfig(Scenario.bocce(5, 2), trials=3000, master_seed=1, dist=dist)
    assert estimate_with_retry(cfg)[-1].covers_exact


def test_rational_mode_runs():
    cfg = ExperimentConfig(Scenario.game(1, 2), trials=200, master_seed=4, mode=RATIONAL)
    float_cfg = ExperimentConfig(Scenario.game(1, 2), trials=200, master_seed=4)
    assert estimate(cfg).successes == estimate(float_cfg).successes


def test_bocce_8_2_small_run_covers_exact():
    cfg = ExperimentConfig(Scenario.bocce(8, 2), trials=5000, master_seed=2024)
    assert estimate_with_retry(cfg)[-1].covers_exact


def test_game_3_3_is_even():
    rep = estimate(ExperimentConfig(Scenario.game(3, 3), trials=2000, master_seed=8))
    assert rep.covers_exact and float(rep.exact_reference) == 0.5


def test_least_m():
    assert least_m([[1, 2], [0, -1]]) == 1
    assert least_m([[1, -2], [-1, 1]]) == 2


def test_least_m_histogram_small():
    res = least_m_histogram(4, 800, master_seed=3)
    assert sum(res.counts) == 800
    assert res.p_value > 0.001
    assert least_m_histogram(4, 800, master_seed=3, workers=2).to_dict() == res.to_dict()
    with pytest.raises(ValueError):
        least_m_histogram(11, 10)
