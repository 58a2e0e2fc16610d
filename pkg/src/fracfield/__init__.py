"""Gauge-invariant fractional electromagnetic fields on uniform grids.

Grünwald-Letnikov discretizations of left, right and left-right
Riemann-Liouville derivatives, the fractional field tensor, Maxwell
residuals, a discrete action with its Euler-Lagrange check, and a spectral
solver for the 1-D fractional wave equation.
"""

from ._backend import BACKEND, available_backends
from .fields import (
    CurrentDensity,
    FieldTensor,
    FourPotential,
    Grid,
    ScalarField,
    VectorField3,
    extract_eb,
    field_strength_lr,
    field_strength_right,
    gauge_transform,
    lorenz_residual,
    reconstruct_tensor,
)
from .fracops import (
    DomainError,
    FracScheme,
    GLWeights,
    GridMismatchError,
    SampledLine,
    ShapeError,
    gl_weights,
    left_rl_deriv,
    lr_op,
    partial_lr,
    right_rl_deriv,
    riesz_symbol,
    rl_power_analytic,
)
from .maxwell import (
    MaxwellResidual,
    bianchi_residual,
    continuity_residual,
    curl_lr,
    div_lr,
    first_pair_residual,
    grad_lr,
    maxwell_residual,
    second_pair_residual,
)
from .specwave import WaveConfig, dispersion, mode_evolve, mode_ode_rk4, solve_wave, wave_residual
from .variational import ActionConfig, VariationProbe, action_value, el_residual, gateaux_check

__version__ = "0.1.0"
