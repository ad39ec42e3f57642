"""Python access to the mescale simulator, campaign runner and analyses.

Configurations, factor lists and designs are plain dicts with the same
layout as the JSON files the command line tool reads and writes.
"""

import json
import os

from . import _core
from ._core import SolverError, ValidationError, metric_names, tank_volume_m3, voltage_power_limit

__version__ = _core.__version__


def _text(value):
    return "" if value is None else json.dumps(value)


def default_config():
    return json.loads(_core.default_config())


def default_factors():
    return json.loads(_core.default_factors())


def config_hash(config=None):
    return _core.config_hash(_text(config))


def simulate(config=None):
    """Run one simulation. Returns {"step_s", "columns", "metrics"}."""
    return json.loads(_core.simulate(_text(config)))


def design(kind, factors=None, samples=64, second_order=False, axes=(), points=8):
    return json.loads(_core.design(kind, _text(factors), samples, second_order, list(axes), points))


def run_campaign(design, out_dir, config=None, jobs=1, seed=42, trajectories=False):
    return json.loads(_core.run_campaign(json.dumps(design), _text(config), os.fspath(out_dir), jobs, seed,
                                         trajectories))


def analyze(kind, runs, metric="", degree=4, seed=42, resamples=1000, strict=False):
    return json.loads(_core.analyze(kind, os.fspath(runs), metric, degree, seed, resamples, strict))


def sobol_indices(n, k, outputs, second_order=False, seed=42, resamples=1000):
    """Indices from outputs laid out in Saltelli block order (A, B, AB_i[, BA_i])."""
    return _core.sobol_indices(n, k, second_order, list(outputs), seed, resamples)


__all__ = [
    "SolverError",
    "ValidationError",
    "analyze",
    "config_hash",
    "default_config",
    "default_factors",
    "design",
    "metric_names",
    "run_campaign",
    "simulate",
    "sobol_indices",
    "tank_volume_m3",
    "voltage_power_limit",
]
