"""Discrete fractional action and a numerical check of its Euler-Lagrange equation.

The discrete action is an exact quadratic form in the lattice values of the
potential, so its variational derivative is computed exactly by transposing
the difference operators: the matrix of the left GL sum is the transpose of
the right one, hence ``(d^{ab})^T = -d^{ba}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fields import (
    METRIC,
    CurrentDensity,
    FieldTensor,
    FourPotential,
    Grid,
    field_strength_lr,
    same_grid,
)
from .fracops import NDIM, FracScheme, partial_lr_array

DEFAULT_EPSILONS = (1e-2, 1e-3, 1e-4)


def _axis_weights(n: int, h: float, rule: str) -> np.ndarray:
    if n == 1:
        return np.ones(1)
    w = np.full(n, h)
    if rule == "trapezoid":
        w[0] = w[-1] = h / 2
    return w


@dataclass(frozen=True)
class ActionConfig:
    """Scheme, wave speed and quadrature rule for the discrete action.

    ``quadrature="lattice"`` weights every node by the cell volume. It is the
    default because with it the variational derivative is exactly the
    second-pair residual. ``"trapezoid"`` halves boundary weights so the
    weights sum to the volume of the domain; the variational derivative is
    then still exact but picks up boundary corrections.
    """

    scheme: FracScheme
    c: float = 1.0
    quadrature: str = "lattice"

    def __post_init__(self):
        if self.quadrature not in ("lattice", "trapezoid"):
            raise ValueError(f"unknown quadrature {self.quadrature!r}")
        if not self.c > 0:
            raise ValueError("c must be positive")

    def weights(self, grid: Grid) -> np.ndarray:
        out = np.ones(())
        for mu in range(NDIM):
            w = _axis_weights(grid.n[mu], grid.h[mu], self.quadrature)
            out = np.multiply.outer(out, w)
        return out


def field_invariant(F: FieldTensor) -> np.ndarray:
    """Pointwise ``F_{mu nu} F^{mu nu}`` by full contraction."""
    total = np.zeros(F.grid.shape)
    for mu in range(4):
        for nu in range(4):
            if mu != nu:
                total += F.lower(mu, nu) * F.upper(mu, nu)
    return total


def action_value(A: FourPotential, j: CurrentDensity, cfg: ActionConfig) -> float:
    grid = same_grid(A, j)
    q = cfg.weights(grid)
    F = field_strength_lr(A, cfg.scheme)
    E, B = F.data[:3], F.data[3:]
    ff = 2.0 * (np.sum(B * B, axis=0) - np.sum(E * E, axis=0))
    ja = np.sum(j.four_current(cfg.c) * A.data, axis=0)
    c = cfg.c
    return float(-np.sum(q * ff) / (16 * math.pi * c) - np.sum(q * ja) / c**2)


def el_residual(A: FourPotential, j: CurrentDensity, cfg: ActionConfig) -> FourPotential:
    """Variational derivative of the discrete action per unit quadrature weight.

    Component ``nu`` is conjugate to ``A_nu`` (so it carries an upper index):

        res^nu = (1/4 pi c) d^{ba}_mu F^{mu nu} - j^nu / c^2

    With lattice quadrature ``4 pi c res`` equals the second-pair residuals
    ``(gauss, ampere)`` exactly.
    """
    grid = same_grid(A, j)
    q = cfg.weights(grid)
    swapped = cfg.scheme.swapped()
    F = field_strength_lr(A, cfg.scheme)
    c = cfg.c
    out = -j.four_current(c) / c**2
    for nu in range(4):
        acc = np.zeros(grid.shape)
        for mu in range(4):
            if mu == nu or grid.n[mu] == 1:
                continue
            acc += partial_lr_array(q * F.upper(mu, nu), grid, mu, swapped)
        out[nu] += acc / (q * 4 * math.pi * c)
    return FourPotential(grid, out)


def weighted_inner(u: np.ndarray, v: np.ndarray, q: np.ndarray) -> float:
    """Quadrature inner product, summed over any leading component axis."""
    return float(np.sum(q * np.sum(u * v, axis=0) if u.ndim > q.ndim else q * u * v))


def boundary_mask(grid: Grid) -> np.ndarray:
    """True on the outer layer of every non-frozen axis."""
    mask = np.zeros(grid.shape, dtype=bool)
    for mu in range(NDIM):
        if grid.n[mu] == 1:
            continue
        idx = [slice(None)] * NDIM
        idx[mu] = 0
        mask[tuple(idx)] = True
        idx[mu] = -1
        mask[tuple(idx)] = True
    return mask


@dataclass(frozen=True)
class VariationProbe:
    eta: FourPotential
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS

    def __post_init__(self):
        mask = boundary_mask(self.eta.grid)
        if np.any(self.eta.data[:, mask] != 0.0):
            raise ValueError("test variation must vanish on the grid boundary")
        eps = tuple(float(e) for e in self.epsilons)
        if not eps or any(e <= 0 for e in eps):
            raise ValueError("epsilons must be positive")
        object.__setattr__(self, "epsilons", eps)

    @classmethod
    def random(cls, grid: Grid, rng: np.random.Generator, epsilons: Sequence[float] = DEFAULT_EPSILONS):
        eta = rng.standard_normal((4,) + grid.shape)
        eta[:, boundary_mask(grid)] = 0.0
        return cls(FourPotential(grid, eta), tuple(epsilons))


@dataclass(frozen=True)
class GateauxReport:
    epsilons: list
    gaps: list
    inner_product: float
    observed_orders: list
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "epsilons": self.epsilons,
            "gaps": self.gaps,
            "inner_product": self.inner_product,
            "pass": self.passed,
            "observed_orders": self.observed_orders,
            "tolerance": self.tolerance,
        }


def gateaux_check(
    A: FourPotential,
    j: CurrentDensity,
    cfg: ActionConfig,
    probe: VariationProbe,
    tol: float = 1e-10,
) -> GateauxReport:
    """Compare central-difference variations of the action with ``<el_residual, eta>``.

    The action is quadratic, so the central difference is exact up to
    roundoff for every step; ``observed_orders`` therefore shows noise, not a
    truncation rate.
    """
    grid = same_grid(A, j, probe.eta)
    q = cfg.weights(grid)
    inner = weighted_inner(el_residual(A, j, cfg).data, probe.eta.data, q)
    gaps = []
    for eps in probe.epsilons:
        plus = action_value(A + eps * probe.eta, j, cfg)
        minus = action_value(A - eps * probe.eta, j, cfg)
        gaps.append(abs((plus - minus) / (2 * eps) - inner))
    orders = []
    for (e1, g1), (e2, g2) in zip(zip(probe.epsilons, gaps), zip(probe.epsilons[1:], gaps[1:])):
        if g1 > 0 and g2 > 0:
            orders.append(math.log(g1 / g2) / math.log(e1 / e2))
        else:
            orders.append(None)
    passed = max(gaps) <= tol * max(1.0, abs(inner))
    return GateauxReport(list(probe.epsilons), gaps, inner, orders, tol, passed)
