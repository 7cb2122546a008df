import math

import numpy as np
import pytest

import smdpen


def one_minus_x():
    return smdpen.ConstraintSystem(
        1, inequalities=[(lambda x: 1.0 - x[0], lambda x: np.array([-1.0]))]
    )


def test_version_and_names():
    assert smdpen.__version__ == "0.1.0"
    assert "penalty-demo-1d" in smdpen.experiment_names()


def test_beta_norm_and_violation():
    assert smdpen.beta_norm(np.array([3.0, 4.0]), 2.0) == pytest.approx(5.0)
    assert smdpen.beta_norm(np.array([3.0, -4.0]), math.inf) == 4.0
    assert smdpen.violation(one_minus_x(), np.array([0.2]), 2.0) == pytest.approx(0.8)


def test_penalty_update_hand_trace():
    cfg = smdpen.PenaltyConfig()
    cfg.p = 0.1
    cfg.kappa = 2.0
    r = smdpen.penalty_update(np.array([0.2]), 0.1, np.array([0.4]), cfg, one_minus_x())
    assert r.multiplications == 4
    assert r.p == 1.6
    assert not r.capped


def test_penalty_gradient_matches_finite_differences():
    cs = smdpen.ConstraintSystem(
        2,
        equalities=[(lambda x: x[0] ** 2 + x[1] ** 2 - 1.0, lambda x: 2.0 * np.asarray(x))],
    )
    x = np.array([0.9, 0.8])
    g = smdpen.penalty_gradient(cs, np.zeros(2), x, 2.0)
    step = 1e-6
    fd = [
        (smdpen.violation(cs, x + step * e, 2.0) - smdpen.violation(cs, x - step * e, 2.0))
        / (2 * step)
        for e in np.eye(2)
    ]
    np.testing.assert_allclose(g.constraint_part, fd, rtol=1e-6)


def test_projection_and_mirror():
    box = smdpen.FeasibleDomain.box(np.array([-1.0, -1.0]), np.array([1.0, 1.0]))
    np.testing.assert_array_equal(smdpen.project(box, np.array([2.0, 0.5])), [1.0, 0.5])
    np.testing.assert_array_equal(smdpen.mirror(np.array([2.0, 0.5]), box), [1.0, 0.5])
    assert smdpen.fenchel(np.array([1.0, 0.0]), np.array([1.0, 0.0]), box) == 0.0
    with pytest.raises(smdpen.PreconditionError):
        smdpen.fenchel(np.array([3.0, 0.0]), np.zeros(2), box)


def test_step_size():
    assert smdpen.step_size("inverse_k", 0.1, 10) == pytest.approx(0.01)
    with pytest.raises(smdpen.PreconditionError):
        smdpen.step_size("bogus", 0.1, 1)


def test_bench_functions():
    assert smdpen.bench.rosenbrock(np.ones(4)) == 0.0
    d = smdpen.bench.make_regression(0, 50, 6)
    assert d.x_train.shape == (40, 6)
    assert smdpen.bench.support_recovery(d.w_star, d.w_star) == 1.0


def test_run_experiment_demo():
    summary, traces = smdpen.run_experiment("penalty-demo-1d", iterations=200)
    assert summary["status"] == "ok"
    assert summary["config"]["iterations"] == 200
    lines = traces["penalty-demo-1d"].strip().splitlines()
    assert lines[0] == "k,x1,f,M,P,p,gamma,grad_norm"
    assert len(lines) == 202


def test_run_experiment_rejects_bad_config():
    with pytest.raises(smdpen.ConfigError):
        smdpen.run_experiment("penalty-demo-1d", kappa=20.0)
    with pytest.raises(smdpen.ConfigError):
        smdpen.run_experiment("penalty-demo-1d", kapa=1.5)
