"""Randomized identity checks behind ``fracfield check``.

Each suite draws seeded random fields, evaluates residuals that must vanish
identically for the discrete operators, and compares the worst one with
``tol * (max|F| + 1)``.
"""

from __future__ import annotations

import math

import numpy as np

from . import maxwell as mx
from .fields import (
    CurrentDensity,
    Grid,
    field_strength_lr,
    field_strength_right,
    gauge_transform,
    gauge_transform_right,
    random_potential,
    random_scalar,
)
from .fracops import DomainError, FracScheme
from .variational import ActionConfig, el_residual

SUITES = ("gauge", "bianchi", "vector-identities", "continuity", "el", "asymmetric")
NORM_KEYS = ("gauss", "ampere", "no_monopole", "faraday", "bianchi", "continuity")


def _report(suite, scheme, grid, norms, extras, scale, tol, checked):
    residual_norms = {k: norms.get(k) for k in NORM_KEYS}
    residual_norms.update(extras)
    worst = max(residual_norms[k] for k in checked)
    return {
        "suite": suite,
        "scheme": scheme.to_dict(),
        "grid": grid.to_dict(),
        "residual_norms": residual_norms,
        "pass": bool(worst <= tol * scale),
        "tolerance": tol,
        "scale": scale,
    }


def _maxwell_norms(F, j, scheme, c):
    return mx.maxwell_residual(F, j, scheme, c).norms


def suite_gauge(grid: Grid, scheme: FracScheme, c: float, rng, tol: float) -> dict:
    A = random_potential(grid, rng)
    phi = random_scalar(grid, rng)
    F = field_strength_lr(A, scheme)
    F2 = field_strength_lr(gauge_transform(A, phi, scheme), scheme)
    # sources fitted to F, so residuals measured on the transformed field vanish iff F2 == F
    j = mx.sources_from_field(F, scheme, c)
    norms = _maxwell_norms(F2, j, scheme, c)
    norms["bianchi"] = mx.bianchi_residual(F2, scheme)
    extras = {"gauge_delta_F": float(np.max(np.abs(F2.data - F.data)))}
    checked = ["gauss", "ampere", "no_monopole", "faraday", "bianchi", "gauge_delta_F"]
    return _report("gauge", scheme, grid, norms, extras, F.max_abs() + 1.0, tol, checked)


def suite_bianchi(grid, scheme, c, rng, tol) -> dict:
    A = random_potential(grid, rng)
    F = field_strength_lr(A, scheme)
    no_monopole, faraday = mx.first_pair_residual(F, scheme)
    norms = {
        "no_monopole": no_monopole.max_abs(),
        "faraday": faraday.max_abs(),
        "bianchi": mx.bianchi_residual(F, scheme),
    }
    return _report("bianchi", scheme, grid, norms, {}, F.max_abs() + 1.0, tol, list(norms))


def suite_vector_identities(grid, scheme, c, rng, tol) -> dict:
    phi = random_scalar(grid, rng)
    V = mx.VectorField3(grid, rng.standard_normal((3,) + grid.shape))
    alpha = scheme.alpha[1]
    extras = {
        "div_curl_lr": mx.div_lr(mx.curl_lr(V, scheme), scheme).max_abs(),
        "curl_grad_lr": mx.curl_lr(mx.grad_lr(phi, scheme), scheme).max_abs(),
        "div_curl_left": mx.div_left(mx.curl_left(V, alpha), alpha).max_abs(),
        "curl_grad_left": mx.curl_left(mx.grad_left(phi, alpha), alpha).max_abs(),
        "div_curl_right": mx.div_right(mx.curl_right(V, alpha), alpha).max_abs(),
        "curl_grad_right": mx.curl_right(mx.grad_right(phi, alpha), alpha).max_abs(),
    }
    scale = max(V.max_abs(), phi.max_abs()) + 1.0
    return _report("vector-identities", scheme, grid, {}, extras, scale, tol, list(extras))


def suite_continuity(grid, scheme, c, rng, tol) -> dict:
    if not scheme.is_symmetric_causal:
        raise DomainError(
            "continuity suite needs alpha_0 = beta_0 = 1 and a symmetric spatial scheme"
        )
    A = random_potential(grid, rng)
    F = field_strength_lr(A, scheme)
    j = mx.sources_from_field(F, scheme, c)
    norms = _maxwell_norms(F, j, scheme, c)
    norms["continuity"] = mx.continuity_residual(j.rho, j.j, scheme, c).max_abs()
    checked = ["gauss", "ampere", "no_monopole", "faraday", "continuity"]
    return _report("continuity", scheme, grid, norms, {}, F.max_abs() + 1.0, tol, checked)


def suite_el(grid, scheme, c, rng, tol) -> dict:
    A = random_potential(grid, rng)
    j = CurrentDensity(grid, rng.standard_normal((4,) + grid.shape))
    cfg = ActionConfig(scheme, c)
    res = el_residual(A, j, cfg)
    F = field_strength_lr(A, scheme)
    gauss, ampere = mx.second_pair_residual(F, j, scheme, c)
    expected = np.concatenate([gauss.data[None], ampere.data])
    extras = {"el_vs_second_pair": float(np.max(np.abs(4 * math.pi * c * res.data - expected)))}
    scale = max(F.max_abs(), float(np.max(np.abs(expected)))) + 1.0
    return _report("el", scheme, grid, {}, extras, scale, tol, list(extras))


def suite_asymmetric(grid, scheme, c, rng, tol) -> dict:
    if len(set(scheme.alpha)) != 1:
        raise DomainError("asymmetric suite uses a single order on every axis")
    alpha = scheme.alpha[0]
    A = random_potential(grid, rng)
    phi = random_scalar(grid, rng)
    F = field_strength_right(A, alpha)
    F2 = field_strength_right(gauge_transform_right(A, phi, alpha), alpha)
    j = mx.sources_from_field_asym(F, alpha, c)
    gauss, ampere = mx.second_pair_residual_asym(F, j, alpha, c)
    no_monopole, faraday = mx.first_pair_residual_asym(F, alpha, c)
    norms = {
        "gauss": gauss.max_abs(),
        "ampere": ampere.max_abs(),
        "no_monopole": no_monopole.max_abs(),
        "faraday": faraday.max_abs(),
        "bianchi": mx.bianchi_residual_right(F, alpha),
    }
    extras = {"gauge_delta_F": float(np.max(np.abs(F2.data - F.data)))}
    checked = list(norms) + list(extras)
    return _report("asymmetric", scheme, grid, norms, extras, F.max_abs() + 1.0, tol, checked)


_DISPATCH = {
    "gauge": suite_gauge,
    "bianchi": suite_bianchi,
    "vector-identities": suite_vector_identities,
    "continuity": suite_continuity,
    "el": suite_el,
    "asymmetric": suite_asymmetric,
}


def run_suite(name: str, grid: Grid, scheme: FracScheme, c: float = 1.0, seed: int = 0, tol: float = 1e-12) -> dict:
    grid.check_scheme(scheme)
    rng = np.random.default_rng(seed)
    return _DISPATCH[name](grid, scheme, c, rng, tol)
