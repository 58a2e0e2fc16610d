"""Grid-sampled potentials and the fractional field-strength tensors.

Potentials are stored with lower indices, ``A_mu = (psi, -A)``. The tensor
stores only its six independent components in the order
``(E_x, E_y, E_z, B_x, B_y, B_z)`` with

    F_{0i} = E_i,  F_{12} = -B_z,  F_{13} = B_y,  F_{23} = -B_x,

so antisymmetry holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fracops import (
    NDIM,
    FracScheme,
    GridMismatchError,
    ShapeError,
    check_order,
    partial_lr_array,
    partial_right,
)

#: Minkowski metric signs, diag(+, -, -, -)
METRIC = np.array([1.0, -1.0, -1.0, -1.0])

# (mu, nu) with mu < nu -> (slot in the six-component store, sign)
_PAIR_SLOT = {
    (0, 1): (0, 1.0),
    (0, 2): (1, 1.0),
    (0, 3): (2, 1.0),
    (2, 3): (3, -1.0),
    (1, 3): (4, 1.0),
    (1, 2): (5, -1.0),
}
PAIRS = tuple(sorted(_PAIR_SLOT))


@dataclass(frozen=True)
class Grid:
    """Uniform lattice over ``[a_0,b_0] x ... x [a_3,b_3]``.

    An axis with a single sample is frozen: fields are constant along it and
    every derivative along it is zero. That is how 2-D ``(t, x)`` or purely
    spatial problems are posed on the 4-D lattice.
    """

    n: tuple[int, ...]
    a: tuple[float, ...]
    b: tuple[float, ...]

    def __init__(self, n, a=-1.0, b=1.0):
        n = tuple(int(v) for v in (n if np.ndim(n) else (n,) * NDIM))
        a = tuple(float(v) for v in (a if np.ndim(a) else (a,) * NDIM))
        b = tuple(float(v) for v in (b if np.ndim(b) else (b,) * NDIM))
        if not (len(n) == len(a) == len(b) == NDIM):
            raise ShapeError(f"a grid needs {NDIM} axes")
        for mu in range(NDIM):
            if n[mu] < 1:
                raise ShapeError(f"axis {mu}: need at least one sample, got {n[mu]}")
            if n[mu] > 1 and not a[mu] < b[mu]:
                raise ShapeError(f"axis {mu}: need a < b, got [{a[mu]}, {b[mu]}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def for_scheme(cls, n, scheme: FracScheme) -> "Grid":
        return cls(n, scheme.a, scheme.b)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    @property
    def h(self) -> tuple[float, ...]:
        return tuple(
            (self.b[mu] - self.a[mu]) / (self.n[mu] - 1) if self.n[mu] > 1 else 1.0
            for mu in range(NDIM)
        )

    @property
    def cell_volume(self) -> float:
        return float(np.prod([h for h, n in zip(self.h, self.n) if n > 1]))

    def axis(self, mu: int) -> np.ndarray:
        if self.n[mu] == 1:
            return np.array([self.a[mu]])
        return np.linspace(self.a[mu], self.b[mu], self.n[mu])

    def mesh(self) -> tuple[np.ndarray, ...]:
        return np.meshgrid(*(self.axis(mu) for mu in range(NDIM)), indexing="ij")

    def sample(self, f) -> "ScalarField":
        """Sample ``f(x0, x1, x2, x3)`` at every grid point."""
        data = np.broadcast_to(f(*self.mesh()), self.shape).astype(np.float64)
        return ScalarField(self, data)

    def zeros(self) -> "ScalarField":
        return ScalarField(self, np.zeros(self.shape))

    def check_scheme(self, scheme: FracScheme) -> None:
        for mu in range(NDIM):
            if self.n[mu] == 1:
                continue
            if abs(self.a[mu] - scheme.a[mu]) > 1e-12 or abs(self.b[mu] - scheme.b[mu]) > 1e-12:
                raise GridMismatchError(
                    f"axis {mu}: grid spans [{self.a[mu]}, {self.b[mu]}] but scheme "
                    f"terminals are [{scheme.a[mu]}, {scheme.b[mu]}]"
                )

    def to_dict(self) -> dict:
        return {"n": list(self.n), "a": list(self.a), "b": list(self.b)}

    @classmethod
    def from_dict(cls, d: dict) -> "Grid":
        return cls(d["n"], d["a"], d["b"])


def _check_data(grid: Grid, data: np.ndarray, lead: tuple[int, ...] = ()) -> np.ndarray:
    data = np.asarray(data, dtype=np.float64)
    if data.shape != lead + grid.shape:
        raise ShapeError(f"expected array of shape {lead + grid.shape}, got {data.shape}")
    return data


def same_grid(*objs) -> Grid:
    grid = objs[0].grid
    for o in objs[1:]:
        if o.grid != grid:
            raise GridMismatchError("fields live on different grids")
    return grid


@dataclass(frozen=True)
class ScalarField:
    grid: Grid
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", _check_data(self.grid, self.data))

    def with_data(self, data) -> "ScalarField":
        return ScalarField(self.grid, data)

    def __add__(self, other: "ScalarField") -> "ScalarField":
        same_grid(self, other)
        return self.with_data(self.data + other.data)

    def __sub__(self, other: "ScalarField") -> "ScalarField":
        same_grid(self, other)
        return self.with_data(self.data - other.data)

    def __mul__(self, s: float) -> "ScalarField":
        return self.with_data(self.data * s)

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data)))


@dataclass(frozen=True)
class FourPotential:
    """Lower-index potential ``A_mu``; ``data[0]`` is ``psi``, ``data[i]`` is ``-A_i``."""

    grid: Grid
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", _check_data(self.grid, self.data, (4,)))

    @classmethod
    def from_components(cls, components) -> "FourPotential":
        grid = same_grid(*components)
        return cls(grid, np.stack([c.data for c in components]))

    @classmethod
    def from_psi_vector(cls, psi: ScalarField, vec: "VectorField3") -> "FourPotential":
        """Build ``A_mu = (psi, -A)`` from the scalar and vector potentials."""
        grid = same_grid(psi, vec)
        return cls(grid, np.concatenate([psi.data[None], -vec.data]))

    def component(self, mu: int) -> ScalarField:
        return ScalarField(self.grid, self.data[mu])

    @property
    def psi(self) -> ScalarField:
        return self.component(0)

    @property
    def vector(self) -> "VectorField3":
        """The 3-vector potential ``A`` (undoing the lower-index sign)."""
        return VectorField3(self.grid, -self.data[1:])

    def __add__(self, other: "FourPotential") -> "FourPotential":
        same_grid(self, other)
        return FourPotential(self.grid, self.data + other.data)

    def __sub__(self, other: "FourPotential") -> "FourPotential":
        same_grid(self, other)
        return FourPotential(self.grid, self.data - other.data)

    def __mul__(self, s: float) -> "FourPotential":
        return FourPotential(self.grid, self.data * s)

    __rmul__ = __mul__


@dataclass(frozen=True)
class VectorField3:
    grid: Grid
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", _check_data(self.grid, self.data, (3,)))

    @classmethod
    def from_components(cls, components) -> "VectorField3":
        grid = same_grid(*components)
        return cls(grid, np.stack([c.data for c in components]))

    def component(self, i: int) -> ScalarField:
        return ScalarField(self.grid, self.data[i])

    @property
    def x(self) -> ScalarField:
        return self.component(0)

    @property
    def y(self) -> ScalarField:
        return self.component(1)

    @property
    def z(self) -> ScalarField:
        return self.component(2)

    def __add__(self, other: "VectorField3") -> "VectorField3":
        same_grid(self, other)
        return VectorField3(self.grid, self.data + other.data)

    def __sub__(self, other: "VectorField3") -> "VectorField3":
        same_grid(self, other)
        return VectorField3(self.grid, self.data - other.data)

    def __mul__(self, s: float) -> "VectorField3":
        return VectorField3(self.grid, self.data * s)

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data)))


@dataclass(frozen=True)
class CurrentDensity:
    """Charge density and current; ``data[0]`` is ``rho``, ``data[1:]`` is ``j``."""

    grid: Grid
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", _check_data(self.grid, self.data, (4,)))

    @classmethod
    def from_rho_j(cls, rho: ScalarField, j: VectorField3) -> "CurrentDensity":
        grid = same_grid(rho, j)
        return cls(grid, np.concatenate([rho.data[None], j.data]))

    @classmethod
    def zeros(cls, grid: Grid) -> "CurrentDensity":
        return cls(grid, np.zeros((4,) + grid.shape))

    @property
    def rho(self) -> ScalarField:
        return ScalarField(self.grid, self.data[0])

    @property
    def j(self) -> VectorField3:
        return VectorField3(self.grid, self.data[1:])

    def four_current(self, c: float) -> np.ndarray:
        """Upper-index ``j^mu = (c rho, j)`` as a raw array."""
        out = self.data.copy()
        out[0] *= c
        return out


@dataclass(frozen=True)
class FieldTensor:
    """Six stored components ``(E_x, E_y, E_z, B_x, B_y, B_z)``."""

    grid: Grid
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", _check_data(self.grid, self.data, (6,)))

    @classmethod
    def from_eb(cls, E: VectorField3, B: VectorField3) -> "FieldTensor":
        grid = same_grid(E, B)
        return cls(grid, np.concatenate([E.data, B.data]))

    @classmethod
    def from_lower(cls, grid: Grid, lower: dict) -> "FieldTensor":
        """Pack ``F_{mu nu}`` given for ``mu < nu`` (dict keyed by the pair)."""
        data = np.zeros((6,) + grid.shape)
        for pair, (slot, sign) in _PAIR_SLOT.items():
            data[slot] = sign * np.asarray(lower[pair])
        return cls(grid, data)

    @property
    def E(self) -> VectorField3:
        return VectorField3(self.grid, self.data[:3])

    @property
    def B(self) -> VectorField3:
        return VectorField3(self.grid, self.data[3:])

    def lower(self, mu: int, nu: int) -> np.ndarray:
        """Component ``F_{mu nu}`` (lower indices)."""
        if mu == nu:
            return np.zeros(self.grid.shape)
        if mu < nu:
            slot, sign = _PAIR_SLOT[(mu, nu)]
            return sign * self.data[slot]
        slot, sign = _PAIR_SLOT[(nu, mu)]
        return -sign * self.data[slot]

    def upper(self, mu: int, nu: int) -> np.ndarray:
        """Component ``F^{mu nu} = eta^{mu mu} eta^{nu nu} F_{mu nu}``."""
        return METRIC[mu] * METRIC[nu] * self.lower(mu, nu)

    def as_matrix(self) -> np.ndarray:
        """Dense ``(4, 4, *grid)`` array of ``F_{mu nu}``."""
        out = np.zeros((4, 4) + self.grid.shape)
        for mu in range(4):
            for nu in range(4):
                if mu != nu:
                    out[mu, nu] = self.lower(mu, nu)
        return out

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data)))

    def __add__(self, other: "FieldTensor") -> "FieldTensor":
        same_grid(self, other)
        return FieldTensor(self.grid, self.data + other.data)

    def __sub__(self, other: "FieldTensor") -> "FieldTensor":
        same_grid(self, other)
        return FieldTensor(self.grid, self.data - other.data)


def _tensor_from_partials(grid: Grid, d) -> FieldTensor:
    # d(mu, nu) returns the derivative along mu of A_nu
    lower = {(mu, nu): d(mu, nu) - d(nu, mu) for (mu, nu) in PAIRS}
    return FieldTensor.from_lower(grid, lower)


def field_strength_lr(A: FourPotential, scheme: FracScheme) -> FieldTensor:
    """Left-right tensor ``F_{mu nu} = d^{ab}_mu A_nu - d^{ab}_nu A_mu``."""
    grid = A.grid
    grid.check_scheme(scheme)
    cache = {}

    def d(mu, nu):
        if (mu, nu) not in cache:
            cache[(mu, nu)] = partial_lr_array(A.data[nu], grid, mu, scheme)
        return cache[(mu, nu)]

    return _tensor_from_partials(grid, d)


def field_strength_right(A: FourPotential, alpha: float) -> FieldTensor:
    """Right-sided tensor built from right derivatives of one order on every axis.

    The upper terminals are the grid's right endpoints. At ``alpha = 1`` the
    right derivative is ``-d/dx``, so this tends to ``-F`` of the classical
    theory, not ``+F``.
    """
    alpha = check_order(alpha, "alpha")
    grid = A.grid
    cache = {}

    def d(mu, nu):
        if (mu, nu) not in cache:
            cache[(mu, nu)] = partial_right(A.data[nu], grid, mu, alpha)
        return cache[(mu, nu)]

    return _tensor_from_partials(grid, d)


def gauge_transform(A: FourPotential, phi: ScalarField, scheme: FracScheme) -> FourPotential:
    """``A_mu -> A_mu + d^{ab}_mu phi``."""
    grid = same_grid(A, phi)
    grid.check_scheme(scheme)
    shift = np.stack([partial_lr_array(phi.data, grid, mu, scheme) for mu in range(NDIM)])
    return FourPotential(grid, A.data + shift)


def gauge_transform_right(A: FourPotential, phi: ScalarField, alpha: float) -> FourPotential:
    """Right-derivative gauge shift paired with :func:`field_strength_right`."""
    grid = same_grid(A, phi)
    shift = np.stack([partial_right(phi.data, grid, mu, alpha) for mu in range(NDIM)])
    return FourPotential(grid, A.data + shift)


def extract_eb(F: FieldTensor) -> tuple[VectorField3, VectorField3]:
    return F.E, F.B


def reconstruct_tensor(E: VectorField3, B: VectorField3) -> FieldTensor:
    return FieldTensor.from_eb(E, B)


def lorenz_residual(A: FourPotential, scheme: FracScheme) -> ScalarField:
    """Fractional four-divergence ``d^{ab}_mu A^mu`` with the index raised by the metric."""
    grid = A.grid
    grid.check_scheme(scheme)
    total = np.zeros(grid.shape)
    for mu in range(NDIM):
        total += METRIC[mu] * partial_lr_array(A.data[mu], grid, mu, scheme)
    return ScalarField(grid, total)


def random_potential(grid: Grid, rng: np.random.Generator) -> FourPotential:
    return FourPotential(grid, rng.standard_normal((4,) + grid.shape))


def random_scalar(grid: Grid, rng: np.random.Generator) -> ScalarField:
    return ScalarField(grid, rng.standard_normal(grid.shape))
