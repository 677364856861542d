"""Surprise-minimization learning: surprise measures, the SMiLe update and
experiment runners backed by a C++ core."""

import json

from ._core import (
    ConfigError,
    DegenerateLikelihood,
    DomainError,
    InfiniteDivergence,
    SmileError,
    ValidationError,
    bayesian_surprise,
    confidence_corrected_surprise,
    digamma,
    dirichlet_smile_update,
    dirichlet_surprise,
    ema,
    entropy,
    gaussian_gamma,
    gaussian_smile_step,
    impact,
    kl_categorical,
    kl_dirichlet,
    log_gamma,
    selftest,
    shannon_surprise,
    smile_step,
    smile_update,
    switch_probabilities,
    torus_topology,
)
from . import _core


def run_experiment(config):
    """Run a gaussian or maze experiment from a config dict; returns the
    JSON summary as a dict."""
    return json.loads(_core._run_experiment(json.dumps(config)))


def run_sweep(config):
    """Run a parameter sweep from a config dict; returns a dict with 'rows'."""
    return json.loads(_core._run_sweep(json.dumps(config)))
