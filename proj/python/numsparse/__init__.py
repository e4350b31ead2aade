"""Numerical sparsity estimation from stable random sketches."""

import json

from . import _numsparse as _core
from ._numsparse import (
    NumsparseError,
    adversarial_signal,
    adversarial_sparsity_bound,
    bpdn_upper_bound,
    lq_norm,
    minimax_lower_bound,
    minimize_variance,
    noise_cf,
    norm_pow,
    nu_hat_at,
    numerical_sparsity,
    power_law_signal,
    sample_stable,
    test_power,
    theoretical_error_curve,
    variance_ext,
)

__all__ = [
    "NumsparseError",
    "adversarial_signal",
    "adversarial_sparsity_bound",
    "bpdn_upper_bound",
    "estimate_norm",
    "estimate_sparsity",
    "lq_norm",
    "measure",
    "minimax_lower_bound",
    "minimize_variance",
    "noise_cf",
    "norm_pow",
    "nu_hat_at",
    "numerical_sparsity",
    "power_law_signal",
    "run_clt",
    "run_relative_error",
    "sample_stable",
    "test_power",
    "test_sparsity",
    "theoretical_error_curve",
    "variance_ext",
]


def measure(x, n, q, gamma=1.0, sigma=0.0, noise="none", mode="induced", seed=0):
    """Return (y, metadata) for n sketched measurements of x."""
    y, meta = _core.measure(list(x), n, q, gamma, sigma, noise, mode, seed)
    return y, json.loads(meta)


def estimate_norm(y, q, gamma=1.0, sigma=0.0, noise="none", epsilon_q=0.0, eta0=None):
    """Estimate ||x||_q^q; returns nu_hat, omega_hat and the tuning state."""
    return json.loads(_core.estimate_norm(list(y), q, gamma, sigma, noise, epsilon_q, eta0))


def estimate_sparsity(y_q, y_1, q, gamma_q=1.0, gamma_1=1.0, sigma=0.0, noise="none", epsilon_2=0.3,
                      alpha=0.05, alpha_prime=0.05, eta0=None):
    """Estimate s_q(x) with a two-sided confidence interval."""
    return json.loads(_core.estimate_sparsity(list(y_q), list(y_1), q, gamma_q, gamma_1, sigma, noise,
                                              epsilon_2, alpha, alpha_prime, eta0))


def test_sparsity(y_q, y_1, q, kappa, alpha=0.05, gamma_q=1.0, gamma_1=1.0, sigma=0.0, noise="none",
                  epsilon_2=0.3, eta0=None):
    """One-sided test of H0: s_q(x) >= kappa."""
    return json.loads(_core.test_sparsity(list(y_q), list(y_1), q, kappa, alpha, gamma_q, gamma_1, sigma,
                                          noise, epsilon_2, eta0))


def run_relative_error(config):
    """Run a relative error study; returns (summary dict, CSV text)."""
    summary, csv = _core.run_relative_error(json.dumps(config))
    return json.loads(summary), csv


def run_clt(config, kappa=()):
    """Run a standardized statistic study; returns (summary dict, CSV text)."""
    summary, csv = _core.run_clt(json.dumps(config), list(kappa))
    return json.loads(summary), csv
