"""Spectral sum rules, beta-ensemble samplers and large-deviation rates.

Structured results come back as plain dicts. Invalid input raises
ValidationError (a ValueError); numerical failures raise NumericalError
(an ArithmeticError).
"""

import json as _json

from . import _spectra
from ._spectra import (
    NumericalError,
    ValidationError,
    beta_h,
    big_G,
    jacobi_moments,
    rate_fg,
    rate_fj,
    rate_fl,
    small_g,
)

__all__ = [
    "NumericalError",
    "ValidationError",
    "beta_h",
    "big_G",
    "geronimus",
    "hermite_rate",
    "jacobi_ensemble_rate",
    "jacobi_moments",
    "laguerre_rate",
    "law_density",
    "law_moment",
    "mc_tail_rate",
    "measure_to_jacobi",
    "moments",
    "probe_jacobi",
    "probe_laguerre",
    "rate_fg",
    "rate_fj",
    "rate_fl",
    "sample",
    "small_g",
    "spectral_decompose",
    "stat_suite",
    "sumrule_verify",
]


def _dict(text):
    return _json.loads(text)


def hermite_rate(b, a):
    return _dict(_spectra.hermite_rate(list(b), list(a)))


def laguerre_rate(d, s, tau):
    return _dict(_spectra.laguerre_rate(list(d), list(s), tau))


def jacobi_ensemble_rate(alpha, kappa1, kappa2):
    return _dict(_spectra.jacobi_ensemble_rate(list(alpha), kappa1, kappa2))


def law_density(law, x):
    """Density of an equilibrium law given as a dict, e.g. {"family": "sc"}."""
    return _spectra.law_density(_json.dumps(law), list(x))


def law_moment(law, k):
    return _spectra.law_moment(_json.dumps(law), k)


def spectral_decompose(b, a):
    return _dict(_spectra.spectral_decompose(list(b), list(a)))


def measure_to_jacobi(measure):
    return _dict(_spectra.measure_to_jacobi(_json.dumps(measure)))


def geronimus(alpha, n):
    return _dict(_spectra.geronimus(list(alpha), n))


def sample(spec, seed, index=0):
    """Jacobi coefficients of one seeded draw from the ensemble described by spec."""
    return _dict(_spectra.sample(_json.dumps(spec), seed, index))


def sumrule_verify(model):
    return _dict(_spectra.sumrule_verify(_json.dumps(model)))


def probe_laguerre(model, tau):
    return _dict(_spectra.probe_laguerre(_json.dumps(model), tau))


def probe_jacobi(alpha, kappa1, kappa2):
    return _dict(_spectra.probe_jacobi(list(alpha), kappa1, kappa2))


def moments(c):
    return _dict(_spectra.moments(list(c)))


def mc_tail_rate(spec, x, n_list, samples, seed, direction="max", workers=1):
    return _dict(_spectra.mc_tail_rate(_json.dumps(spec), x, list(n_list), samples, seed, direction, workers))


def stat_suite(spec, seed, samples=2000, alpha=0.01):
    return _dict(_spectra.stat_suite(_json.dumps(spec), seed, samples, alpha))
