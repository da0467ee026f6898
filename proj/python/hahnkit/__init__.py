"""Sequence spaces h and h_p: operators, norms, duals and matrix classes.

Reports come back as plain dicts. Estimator settings are passed as keyword
arguments (base_horizon, doublings, stall_rel_tol, slope_hold, slope_fail,
zero_tol, column_budget).
"""

import json

from . import _hahnkit
from ._hahnkit import (
    DivergenceError,
    Error,
    EvalError,
    IndexError,
    InputError,
    Matrix,
    ParseError,
    Sequence,
    bar_transform,
    basis_element,
    expand,
    m_transform,
    named_sequence,
    subset_sup,
    supported_classes,
    tilde_transform,
    truncate,
)

__version__ = "0.1.0"


def _cfg(options):
    return json.dumps(options)


def m_inverse(y, **config):
    return _hahnkit.m_inverse(y, _cfg(config))


def norm(x, space, **config):
    return json.loads(_hahnkit.norm(x, space, _cfg(config)))


def member(x, space, **config):
    return json.loads(_hahnkit.member(x, space, _cfg(config)))


def reconstruction_error(x, m, p=2.0, **config):
    return _hahnkit.reconstruction_error(x, m, p, _cfg(config))


def in_alpha_dual(a, target, **config):
    return json.loads(_hahnkit.in_alpha_dual(a, target, _cfg(config)))


def in_beta_dual_hp(a, p, **config):
    return json.loads(_hahnkit.in_beta_dual_hp(a, p, _cfg(config)))


def gamma_dual_hp(a, p, **config):
    return json.loads(_hahnkit.gamma_dual_hp(a, p, _cfg(config)))


def in_sigma_inf(a, **config):
    return json.loads(_hahnkit.in_sigma_inf(a, _cfg(config)))


def classify(a, source, target, p=2.0, **config):
    return json.loads(_hahnkit.classify(a, source, target, p, _cfg(config)))


def verify(suite="all", seed=42, strict_paper=False, **config):
    return json.loads(_hahnkit.verify(suite, seed, strict_paper, _cfg(config)))
