"""Fractional vector calculus and residuals of the fractional Maxwell equations.

Two theories are covered. The default one uses the left-right operator on
every axis; the equations of motion apply it with the orders swapped
(``d^{ba}``), the identities (first pair, cyclic identity) with the orders as
given. The asymmetric variant builds the tensor from right derivatives and
pairs it with left-derivative equations of motion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

import numpy as np

from .fields import (
    CurrentDensity,
    FieldTensor,
    ScalarField,
    VectorField3,
    same_grid,
)
from .fracops import (
    DomainError,
    FracScheme,
    check_order,
    partial_left,
    partial_lr_array,
    partial_right,
)

FOUR_PI = 4.0 * math.pi

Deriv = Callable[[np.ndarray, int], np.ndarray]


def _lr(grid, scheme: FracScheme) -> Deriv:
    grid.check_scheme(scheme)
    return lambda data, axis: partial_lr_array(data, grid, axis, scheme)


def _left(grid, alpha: float) -> Deriv:
    alpha = check_order(alpha, "alpha")
    return lambda data, axis: partial_left(data, grid, axis, alpha)


def _right(grid, alpha: float) -> Deriv:
    alpha = check_order(alpha, "alpha")
    return lambda data, axis: partial_right(data, grid, axis, alpha)


def _grad(d: Deriv, data: np.ndarray) -> np.ndarray:
    return np.stack([d(data, i) for i in (1, 2, 3)])


def _div(d: Deriv, vec: np.ndarray) -> np.ndarray:
    return d(vec[0], 1) + d(vec[1], 2) + d(vec[2], 3)


def _curl(d: Deriv, vec: np.ndarray) -> np.ndarray:
    # (curl F)_i = eps_ijk d_j F_k, spatial axes are grid axes 1..3
    return np.stack(
        [
            d(vec[2], 2) - d(vec[1], 3),
            d(vec[0], 3) - d(vec[2], 1),
            d(vec[1], 1) - d(vec[0], 2),
        ]
    )


# -- left-right family ------------------------------------------------------


def grad_lr(phi: ScalarField, scheme: FracScheme) -> VectorField3:
    return VectorField3(phi.grid, _grad(_lr(phi.grid, scheme), phi.data))


def div_lr(F: VectorField3, scheme: FracScheme) -> ScalarField:
    return ScalarField(F.grid, _div(_lr(F.grid, scheme), F.data))


def curl_lr(F: VectorField3, scheme: FracScheme) -> VectorField3:
    return VectorField3(F.grid, _curl(_lr(F.grid, scheme), F.data))


# -- one-sided families ------------------------------------------------------


def grad_left(phi: ScalarField, alpha: float) -> VectorField3:
    return VectorField3(phi.grid, _grad(_left(phi.grid, alpha), phi.data))


def div_left(F: VectorField3, alpha: float) -> ScalarField:
    return ScalarField(F.grid, _div(_left(F.grid, alpha), F.data))


def curl_left(F: VectorField3, alpha: float) -> VectorField3:
    return VectorField3(F.grid, _curl(_left(F.grid, alpha), F.data))


def grad_right(phi: ScalarField, alpha: float) -> VectorField3:
    return VectorField3(phi.grid, _grad(_right(phi.grid, alpha), phi.data))


def div_right(F: VectorField3, alpha: float) -> ScalarField:
    return ScalarField(F.grid, _div(_right(F.grid, alpha), F.data))


def curl_right(F: VectorField3, alpha: float) -> VectorField3:
    return VectorField3(F.grid, _curl(_right(F.grid, alpha), F.data))


# -- residuals ----------------------------------------------------------------


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


@dataclass(frozen=True)
class MaxwellResidual:
    gauss: ScalarField
    ampere: VectorField3
    no_monopole: ScalarField
    faraday: VectorField3
    scale: float = 1.0
    norms: dict = field(init=False)

    def __post_init__(self):
        norms = {
            "gauss": _max_abs(self.gauss.data),
            "ampere": _max_abs(self.ampere.data),
            "no_monopole": _max_abs(self.no_monopole.data),
            "faraday": _max_abs(self.faraday.data),
        }
        object.__setattr__(self, "norms", norms)

    @property
    def relative_norms(self) -> dict:
        """Norms divided by ``max|F| + 1`` of the tensor that produced them."""
        return {k: v / self.scale for k, v in self.norms.items()}


def second_pair_residual(
    F: FieldTensor, j: CurrentDensity, scheme: FracScheme, c: float = 1.0
) -> tuple[ScalarField, VectorField3]:
    """Gauss and Ampère residuals with the orders swapped.

    ``gauss  = div^{ba} E - 4 pi rho``
    ``ampere = curl^{ba} B - (4 pi / c) j - d^{ba}_0 E``
    """
    grid = same_grid(F, j)
    d = _lr(grid, scheme.swapped())
    E, B = F.data[:3], F.data[3:]
    gauss = _div(d, E) - FOUR_PI * j.data[0]
    dE0 = np.stack([d(E[i], 0) for i in range(3)])
    ampere = _curl(d, B) - (FOUR_PI / c) * j.data[1:] - dE0
    return ScalarField(grid, gauss), VectorField3(grid, ampere)


def first_pair_residual(F: FieldTensor, scheme: FracScheme) -> tuple[ScalarField, VectorField3]:
    """``div^{ab} B`` and ``curl^{ab} E + d^{ab}_0 B``."""
    grid = F.grid
    d = _lr(grid, scheme)
    E, B = F.data[:3], F.data[3:]
    no_monopole = _div(d, B)
    faraday = _curl(d, E) + np.stack([d(B[i], 0) for i in range(3)])
    return ScalarField(grid, no_monopole), VectorField3(grid, faraday)


def maxwell_residual(
    F: FieldTensor, j: CurrentDensity, scheme: FracScheme, c: float = 1.0
) -> MaxwellResidual:
    gauss, ampere = second_pair_residual(F, j, scheme, c)
    no_monopole, faraday = first_pair_residual(F, scheme)
    return MaxwellResidual(gauss, ampere, no_monopole, faraday, scale=F.max_abs() + 1.0)


def sources_from_field(F: FieldTensor, scheme: FracScheme, c: float = 1.0) -> CurrentDensity:
    """The charge and current that make the second pair hold exactly for ``F``."""
    d = _lr(F.grid, scheme.swapped())
    E, B = F.data[:3], F.data[3:]
    rho = _div(d, E) / FOUR_PI
    dE0 = np.stack([d(E[i], 0) for i in range(3)])
    j = (c / FOUR_PI) * (_curl(d, B) - dE0)
    return CurrentDensity(F.grid, np.concatenate([rho[None], j]))


def _cyclic_terms(F: FieldTensor, d: Deriv) -> float:
    lower = F.as_matrix()
    # dF[rho][mu][nu] = d_rho F_{mu nu}; F_{mu nu} = -F_{nu mu} so only mu < nu is computed
    dF = {}
    for rho in range(4):
        for mu in range(4):
            for nu in range(mu + 1, 4):
                val = d(lower[mu, nu], rho)
                dF[(rho, mu, nu)] = val
                dF[(rho, nu, mu)] = -val
            dF[(rho, mu, mu)] = 0.0
    worst = 0.0
    for rho, mu, nu in product(range(4), repeat=3):
        s = dF[(rho, mu, nu)] + dF[(mu, nu, rho)] + dF[(nu, rho, mu)]
        worst = max(worst, float(np.max(np.abs(s))))
    return worst


def bianchi_residual(F: FieldTensor, scheme: FracScheme) -> float:
    """Max-abs of the cyclic sum ``d_rho F_{mu nu} + d_mu F_{nu rho} + d_nu F_{rho mu}``
    over all index triples."""
    return _cyclic_terms(F, _lr(F.grid, scheme))


def bianchi_residual_right(F: FieldTensor, alpha: float) -> float:
    """Cyclic identity of the right-sided tensor, using right derivatives."""
    return _cyclic_terms(F, _right(F.grid, alpha))


def continuity_residual(
    rho: ScalarField, j: VectorField3, scheme: FracScheme, c: float = 1.0
) -> ScalarField:
    """``div^a j + d_t rho`` with ``d_t = c d_0`` and an order-one time axis.

    Only defined for the causal, spatially symmetric case.
    """
    if not scheme.is_symmetric_causal:
        raise DomainError(
            "continuity needs alpha_0 = beta_0 = 1 and alpha_i = beta_i, b_i = -a_i on space axes"
        )
    grid = same_grid(rho, j)
    d = _lr(grid, scheme)
    return ScalarField(grid, _div(d, j.data) + c * d(rho.data, 0))


# -- asymmetric (right-tensor) theory ----------------------------------------


def _time_factor(alpha: float, c: float, time_axis: str) -> float:
    # d_t^a = c^a d_0^a, so (1/c^a) d_t^a is d_0^a when axis 0 already holds x0 = ct
    if time_axis == "x0":
        return 1.0
    if time_axis == "t":
        return c ** (-alpha)
    raise ValueError(f"time_axis must be 'x0' or 't', got {time_axis!r}")


def second_pair_residual_asym(
    F: FieldTensor,
    j: CurrentDensity,
    alpha: float,
    c: float = 1.0,
    time_axis: str = "x0",
) -> tuple[ScalarField, VectorField3]:
    """Left-derivative second pair of the right-tensor theory, printed sign convention.

    ``gauss  = div_- E - 4 pi rho``
    ``ampere = curl_- B - (4 pi / c) j - c^{-a} d_t^a E``
    """
    grid = same_grid(F, j)
    d = _left(grid, alpha)
    k = _time_factor(alpha, c, time_axis)
    E, B = F.data[:3], F.data[3:]
    gauss = _div(d, E) - FOUR_PI * j.data[0]
    dE0 = np.stack([d(E[i], 0) for i in range(3)])
    ampere = _curl(d, B) - (FOUR_PI / c) * j.data[1:] - k * dE0
    return ScalarField(grid, gauss), VectorField3(grid, ampere)


def first_pair_residual_asym(
    F: FieldTensor, alpha: float, c: float = 1.0, time_axis: str = "x0"
) -> tuple[ScalarField, VectorField3]:
    """``div_+ B`` and ``curl_+ E + c^{-a} d_{t,b}^a B`` (right derivatives only)."""
    grid = F.grid
    d = _right(grid, alpha)
    k = _time_factor(alpha, c, time_axis)
    E, B = F.data[:3], F.data[3:]
    no_monopole = _div(d, B)
    faraday = _curl(d, E) + k * np.stack([d(B[i], 0) for i in range(3)])
    return ScalarField(grid, no_monopole), VectorField3(grid, faraday)


def sources_from_field_asym(
    F: FieldTensor, alpha: float, c: float = 1.0, time_axis: str = "x0"
) -> CurrentDensity:
    d = _left(F.grid, alpha)
    k = _time_factor(alpha, c, time_axis)
    E, B = F.data[:3], F.data[3:]
    rho = _div(d, E) / FOUR_PI
    dE0 = np.stack([d(E[i], 0) for i in range(3)])
    j = (c / FOUR_PI) * (_curl(d, B) - k * dE0)
    return CurrentDensity(F.grid, np.concatenate([rho[None], j]))
