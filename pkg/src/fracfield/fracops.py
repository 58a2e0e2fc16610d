r"""Discretized Riemann-Liouville operators on uniform grids.

All derivatives use the unshifted Grünwald-Letnikov (GL) sum with zero
extension beyond the terminals:

.. math::

    {}_aD^\alpha f(x_i) \approx h^{-\alpha} \sum_{j=0}^{i} w_j f(x_i - jh),
    \qquad
    {}_xD_b^\beta f(x_i) \approx h^{-\beta} \sum_{j=0}^{N-1-i} w_j f(x_i + jh),

with :math:`w_j = (-1)^j \binom{\alpha}{j}`. At order one these collapse to
the backward difference and the negated forward difference, so the
left-right operator becomes the central difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend

__all__ = [
    "DomainError",
    "ShapeError",
    "GridMismatchError",
    "FracScheme",
    "SampledLine",
    "GLWeights",
    "gl_weights",
    "left_rl_deriv",
    "right_rl_deriv",
    "lr_op",
    "partial_left",
    "partial_right",
    "partial_lr",
    "rl_power_analytic",
    "riesz_symbol",
]

NDIM = 4
#: absolute tolerance when matching grid endpoints against scheme terminals
ENDPOINT_TOL = 1e-12


class DomainError(ValueError):
    """An order, exponent or coordinate outside its admissible range."""


class ShapeError(ValueError):
    """Too few samples, or arrays of incompatible shape."""


class GridMismatchError(ValueError):
    """Fields on different grids, or a grid that disagrees with a scheme."""


def check_order(order: float, name: str = "order") -> float:
    order = float(order)
    if not (0.0 < order <= 1.0):
        raise DomainError(f"{name} must lie in (0, 1], got {order!r}")
    return order


def _per_axis(value, name: str) -> tuple[float, ...]:
    if np.ndim(value) == 0:
        return (float(value),) * NDIM
    out = tuple(float(v) for v in value)
    if len(out) != NDIM:
        raise ShapeError(f"{name} needs {NDIM} entries, got {len(out)}")
    return out


@dataclass(frozen=True)
class FracScheme:
    """Per-axis left orders ``alpha``, right orders ``beta`` and terminals.

    Scalars are broadcast to all four axes (axis 0 is :math:`x^0 = ct`).
    """

    alpha: tuple[float, ...]
    beta: tuple[float, ...]
    a: tuple[float, ...]
    b: tuple[float, ...]

    def __init__(self, alpha, beta=None, a=-1.0, b=1.0):
        alpha = _per_axis(alpha, "alpha")
        beta = alpha if beta is None else _per_axis(beta, "beta")
        a = _per_axis(a, "a")
        b = _per_axis(b, "b")
        for mu in range(NDIM):
            check_order(alpha[mu], f"alpha[{mu}]")
            check_order(beta[mu], f"beta[{mu}]")
            if not a[mu] < b[mu]:
                raise DomainError(f"axis {mu}: need a < b, got a={a[mu]}, b={b[mu]}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def is_symmetric(self) -> bool:
        """Equal orders and mirrored terminals on every axis."""
        return all(
            self.alpha[mu] == self.beta[mu] and self.b[mu] == -self.a[mu] for mu in range(NDIM)
        )

    @property
    def is_symmetric_causal(self) -> bool:
        """Order-one time axis with a spatially symmetric scheme."""
        return (
            self.alpha[0] == 1.0
            and self.beta[0] == 1.0
            and all(self.alpha[i] == self.beta[i] and self.b[i] == -self.a[i] for i in (1, 2, 3))
        )

    def swapped(self) -> "FracScheme":
        """The scheme with left and right orders exchanged on every axis."""
        return FracScheme(self.beta, self.alpha, self.a, self.b)

    def to_dict(self) -> dict:
        return {"alpha": list(self.alpha), "beta": list(self.beta), "a": list(self.a), "b": list(self.b)}

    @classmethod
    def from_dict(cls, d: dict) -> "FracScheme":
        return cls(d["alpha"], d.get("beta"), d.get("a", -1.0), d.get("b", 1.0))


@dataclass(frozen=True)
class SampledLine:
    values: np.ndarray
    h: float
    origin: float = 0.0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size < 2:
            raise ShapeError("a sampled line needs a 1-D array of at least 2 samples")
        if not self.h > 0:
            raise DomainError(f"spacing must be positive, got {self.h!r}")
        object.__setattr__(self, "values", values)

    @property
    def x(self) -> np.ndarray:
        return self.origin + self.h * np.arange(self.values.size)

    @property
    def end(self) -> float:
        return self.origin + self.h * (self.values.size - 1)

    @classmethod
    def from_function(cls, f, a: float, b: float, n: int) -> "SampledLine":
        x = np.linspace(a, b, n)
        return cls(f(x), (b - a) / (n - 1), a)

    def with_values(self, values) -> "SampledLine":
        return SampledLine(values, self.h, self.origin)


@dataclass(frozen=True)
class GLWeights:
    alpha: float
    w: np.ndarray


def gl_weights(alpha: float, n: int) -> GLWeights:
    """Weights ``w[0..n]`` of the GL sum, ``w[j] = (-1)^j binom(alpha, j)``.

    Built by the recurrence ``w[j] = w[j-1] (j - 1 - alpha) / j`` so long
    lines never touch a gamma-function ratio.
    """
    alpha = check_order(alpha, "alpha")
    if n < 0:
        raise DomainError(f"weight count must be non-negative, got {n}")
    w = np.empty(n + 1)
    w[0] = 1.0
    for j in range(1, n + 1):
        w[j] = w[j - 1] * (j - 1 - alpha) / j
    return GLWeights(alpha, w)


def _trimmed_weights(order: float, n: int) -> np.ndarray:
    w = gl_weights(order, n - 1).w
    if order == 1.0:
        # integer order: only the two-point stencil is nonzero
        w = w[:2]
    return w


def _gl_along(data: np.ndarray, axis: int, h: float, order: float, side: str) -> np.ndarray:
    n = data.shape[axis]
    if n == 1:
        # frozen axis: the field does not depend on this coordinate
        return np.zeros_like(data, dtype=np.float64)
    w = _trimmed_weights(order, n)
    moved = np.moveaxis(np.asarray(data, dtype=np.float64), axis, -1)
    lines = moved.reshape(-1, n)
    out = _backend.gl_apply(lines, w, side)
    out *= h ** (-order)
    return np.moveaxis(out.reshape(moved.shape), -1, axis)


def left_rl_deriv(f: SampledLine, alpha: float) -> SampledLine:
    """Left RL derivative of order ``alpha`` with lower terminal at ``f.origin``."""
    alpha = check_order(alpha, "alpha")
    return f.with_values(_gl_along(f.values, 0, f.h, alpha, "left"))


def right_rl_deriv(f: SampledLine, beta: float) -> SampledLine:
    """Right RL derivative of order ``beta`` with upper terminal at the last sample.

    Carries the sign of the order-one case, i.e. at ``beta = 1`` this is
    ``-(f[i+1] - f[i]) / h``.
    """
    beta = check_order(beta, "beta")
    return f.with_values(_gl_along(f.values, 0, f.h, beta, "right"))


def lr_op(f: SampledLine, alpha: float, beta: float) -> SampledLine:
    """Half the difference of the left (``alpha``) and right (``beta``) derivatives."""
    left = left_rl_deriv(f, alpha).values
    right = right_rl_deriv(f, beta).values
    return f.with_values(0.5 * (left - right))


def _check_axis(axis: int, ndim: int) -> None:
    if not (0 <= axis < ndim):
        raise IndexError(f"axis {axis} out of range for {ndim}-D field")


def _check_extent(grid, axis: int, scheme: FracScheme | None) -> None:
    if scheme is None or grid.n[axis] == 1:
        return
    if abs(grid.a[axis] - scheme.a[axis]) > ENDPOINT_TOL or abs(grid.b[axis] - scheme.b[axis]) > ENDPOINT_TOL:
        raise GridMismatchError(
            f"axis {axis}: grid spans [{grid.a[axis]}, {grid.b[axis]}] but scheme "
            f"terminals are [{scheme.a[axis]}, {scheme.b[axis]}]"
        )


def partial_left(data: np.ndarray, grid, axis: int, order: float) -> np.ndarray:
    """Left partial derivative of a raw grid array along ``axis``."""
    _check_axis(axis, data.ndim)
    return _gl_along(data, axis, grid.h[axis], check_order(order), "left")


def partial_right(data: np.ndarray, grid, axis: int, order: float) -> np.ndarray:
    """Right partial derivative of a raw grid array along ``axis``."""
    _check_axis(axis, data.ndim)
    return _gl_along(data, axis, grid.h[axis], check_order(order), "right")


def partial_lr_array(data: np.ndarray, grid, axis: int, scheme: FracScheme) -> np.ndarray:
    _check_axis(axis, data.ndim)
    _check_extent(grid, axis, scheme)
    if grid.n[axis] == 1:
        return np.zeros_like(data, dtype=np.float64)
    left = _gl_along(data, axis, grid.h[axis], scheme.alpha[axis], "left")
    right = _gl_along(data, axis, grid.h[axis], scheme.beta[axis], "right")
    return 0.5 * (left - right)


def partial_lr(field, axis: int, scheme: FracScheme):
    """Apply the left-right operator along one axis of a ``ScalarField``.

    Every 1-D line parallel to ``axis`` is differentiated independently.
    """
    _check_axis(axis, field.data.ndim)
    return field.with_data(partial_lr_array(field.data, field.grid, axis, scheme))


def rl_power_analytic(p: float, alpha: float, x, a: float = 0.0):
    """Closed-form RL derivative of ``(x - a)^p``: Γ(p+1)/Γ(p+1-α) (x-a)^(p-α)."""
    alpha = check_order(alpha, "alpha")
    if p <= -1:
        raise DomainError(f"exponent must exceed -1, got {p}")
    x = np.asarray(x, dtype=np.float64)
    if np.any(x <= a):
        raise DomainError("evaluation points must lie strictly right of the terminal")
    denom_arg = p + 1 - alpha
    if denom_arg <= 0 and float(denom_arg).is_integer():
        # 1/Γ at a pole is zero: derivative of a polynomial of degree < order
        coeff = 0.0
    else:
        coeff = math.gamma(p + 1) / math.gamma(denom_arg)
    out = coeff * (x - a) ** (p - alpha)
    return float(out) if out.ndim == 0 else out


def riesz_symbol(k, alpha: float):
    """Eigenvalue of the whole-line symmetric operator on ``exp(i k x)``."""
    alpha = check_order(alpha, "alpha")
    k = np.asarray(k, dtype=np.float64)
    out = np.asarray(1j * np.sign(k) * np.abs(k) ** alpha * math.sin(alpha * math.pi / 2))
    return complex(out) if out.ndim == 0 else out

