"""Stochastic mirror descent on exact beta-norm penalty functions."""

import json

from ._smdpen import (  # noqa: F401
    ConfigError,
    ConstraintSystem,
    DivergenceError,
    Error,
    EvaluationError,
    FeasibleDomain,
    PenaltyConfig,
    PenaltyFormulation,
    PreconditionError,
    UnsupportedFormulation,
    bench,
    beta_norm,
    conjugate,
    delta,
    dir_derivative,
    experiment_names,
    fenchel,
    l1_subgradient,
    mirror,
    penalty_gradient,
    penalty_update,
    project,
    residuals,
    step_size,
    violation,
)
from ._smdpen import _run_experiment

__version__ = "0.1.0"


def run_experiment(name, **overrides):
    """Run a named experiment and return (summary dict, {arm: trace csv text})."""
    config = {"experiment": name}
    config.update(overrides)
    summary, traces = _run_experiment(json.dumps(config))
    return json.loads(summary), dict(traces)
