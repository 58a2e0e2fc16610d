import math

import numpy as np
import pytest
from scipy import integrate
from scipy.linalg import toeplitz
from scipy.special import binom

from fracfield import _backend

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=_backend.available_backends())
def backend(request, monkeypatch):
    monkeypatch.setattr(_backend, "BACKEND", request.param)
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# -- independent oracles ---------------------------------------------------------
# Dense GL matrices from scipy's binomial coefficients, no shared code with the
# recurrence or the kernels.


def gl_matrices(n, h, alpha, beta):
    wa = (-1.0) ** np.arange(n) * binom(alpha, np.arange(n))
    wb = (-1.0) ** np.arange(n) * binom(beta, np.arange(n))
    left = np.tril(toeplitz(wa)) * h**-alpha
    right = np.triu(toeplitz(wb)) * h**-beta
    return left, right


def lr_dense(n, h, alpha, beta):
    left, right = gl_matrices(n, h, alpha, beta)
    return 0.5 * (left - right)


def apply_along(mat, data, axis):
    return np.moveaxis(np.tensordot(mat, data, axes=([1], [axis])), 0, axis)


def rl_left_quadrature(f, a, x, alpha, step=1e-4):
    """d/dx of the order-(1-alpha) fractional integral, by quadrature plus a central difference."""

    def integral(xx):
        val, _ = integrate.quad(f, a, xx, weight="alg", wvar=(0.0, -alpha), epsabs=1e-13, epsrel=1e-13)
        return val / math.gamma(1 - alpha)

    return (integral(x + step) - integral(x - step)) / (2 * step)


def rl_right_quadrature(f, b, x, beta, step=1e-4):
    def integral(xx):
        val, _ = integrate.quad(f, xx, b, weight="alg", wvar=(-beta, 0.0), epsabs=1e-13, epsrel=1e-13)
        return val / math.gamma(1 - beta)

    return -(integral(x + step) - integral(x - step)) / (2 * step)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
