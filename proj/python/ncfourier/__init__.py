"""Fourier transforms on compact groups and the motion group M(2)."""

import json as _json

from ._core import (
    GroupFunction,
    GroupSpec,
    bessel_j,
    bessel_zero,
    calibrate_c2,
    experiments,
    gaussian_rank_scan,
    group,
    numerical_rank,
    singular_values,
    sphere_hup,
)
from ._core import run_experiment as _run_experiment

__version__ = "0.1.0"


def run_experiment(name, params=None, seed=0):
    """Run a registered experiment; returns (rows, all_pass)."""
    return _run_experiment(name, _json.dumps(params or {}), seed)


__all__ = [
    "GroupFunction",
    "GroupSpec",
    "bessel_j",
    "bessel_zero",
    "calibrate_c2",
    "experiments",
    "gaussian_rank_scan",
    "group",
    "numerical_rank",
    "run_experiment",
    "singular_values",
    "sphere_hup",
]
