import math

import numpy as np
import pytest

from conftest import apply_along, gl_matrices, lr_dense
from fracfield import (
    CurrentDensity,
    DomainError,
    FieldTensor,
    FracScheme,
    Grid,
    ScalarField,
    VectorField3,
    bianchi_residual,
    continuity_residual,
    curl_lr,
    div_lr,
    field_strength_lr,
    first_pair_residual,
    gauge_transform,
    grad_lr,
    maxwell_residual,
    second_pair_residual,
)
from fracfield import maxwell as mx
from fracfield.fields import field_strength_right, random_potential, random_scalar

SCHEMES = [FracScheme(1.0), FracScheme(0.5), FracScheme(0.3, 0.8), FracScheme((1.0, 0.4, 0.6, 0.9), (1.0, 0.7, 0.2, 0.9))]


def _vec(g, rng):
    return VectorField3(g, rng.standard_normal((3,) + g.shape))


# -- vector operators ---------------------------------------------------------------


def test_grad_of_constant_at_order_one():
    g = Grid(7)
    out = grad_lr(ScalarField(g, np.full(g.shape, 2.0)), FracScheme(1.0)).data
    assert np.max(np.abs(out[:, :, 1:-1, 1:-1, 1:-1])) == 0.0


@pytest.mark.parametrize("scheme", SCHEMES)
def test_lr_vector_identities(scheme, rng):
    g = Grid(6)
    V, phi = _vec(g, rng), random_scalar(g, rng)
    assert div_lr(curl_lr(V, scheme), scheme).max_abs() <= 1e-12
    assert curl_lr(grad_lr(phi, scheme), scheme).max_abs() <= 1e-12


@pytest.mark.parametrize("alpha", [0.3, 0.5, 1.0])
def test_one_sided_vector_identities(alpha, rng):
    g = Grid(6)
    V, phi = _vec(g, rng), random_scalar(g, rng)
    assert mx.div_left(mx.curl_left(V, alpha), alpha).max_abs() <= 1e-12
    assert mx.curl_left(mx.grad_left(phi, alpha), alpha).max_abs() <= 1e-12
    assert mx.div_right(mx.curl_right(V, alpha), alpha).max_abs() <= 1e-12
    assert mx.curl_right(mx.grad_right(phi, alpha), alpha).max_abs() <= 1e-12


def test_one_sided_zero():
    g = Grid(4)
    zero = VectorField3(g, np.zeros((3,) + g.shape))
    for op in (mx.div_left, mx.div_right):
        assert op(zero, 0.4).max_abs() == 0.0
    for op in (mx.curl_left, mx.curl_right):
        assert op(zero, 0.4).max_abs() == 0.0


def test_div_left_order_one_is_backward_difference(rng):
    g = Grid(6)
    V = _vec(g, rng)
    h = g.h[1]
    out = mx.div_left(V, 1.0).data[:, 1:, 1:, 1:]
    ref = (
        np.diff(V.data[0], axis=1)[:, :, 1:, 1:]
        + np.diff(V.data[1], axis=2)[:, 1:, :, 1:]
        + np.diff(V.data[2], axis=3)[:, 1:, 1:, :]
    ) / h
    np.testing.assert_allclose(out, ref, atol=1e-12)


def test_vector_ops_dense_oracle(rng):
    g = Grid((1, 5, 6, 7))
    scheme = FracScheme(0.3, 0.8)
    V = VectorField3(g, rng.standard_normal((3,) + g.shape))
    d = [None] + [lr_dense(g.n[i], g.h[i], 0.3, 0.8) for i in (1, 2, 3)]
    ref = sum(apply_along(d[i + 1], V.data[i], i + 1) for i in range(3))
    np.testing.assert_allclose(div_lr(V, scheme).data, ref, atol=1e-12)
    curl_z = apply_along(d[1], V.data[1], 1) - apply_along(d[2], V.data[0], 2)
    np.testing.assert_allclose(curl_lr(V, scheme).data[2], curl_z, atol=1e-12)


# -- second pair ------------------------------------------------------------------------


def test_second_pair_zero():
    g = Grid(4)
    F = FieldTensor(g, np.zeros((6,) + g.shape))
    gauss, ampere = second_pair_residual(F, CurrentDensity.zeros(g), FracScheme(0.3, 0.8))
    assert gauss.max_abs() == 0.0 and ampere.max_abs() == 0.0


def test_second_pair_uses_swapped_orders(rng):
    g = Grid((5, 6, 4, 5))
    scheme = FracScheme(0.3, 0.8)
    F = FieldTensor(g, rng.standard_normal((6,) + g.shape))
    j = CurrentDensity(g, rng.standard_normal((4,) + g.shape))
    gauss, ampere = second_pair_residual(F, j, scheme, c=2.0)
    d = [lr_dense(g.n[m], g.h[m], 0.8, 0.3) for m in range(4)]  # beta in the left slot
    E, B = F.data[:3], F.data[3:]
    div_E = sum(apply_along(d[i + 1], E[i], i + 1) for i in range(3))
    np.testing.assert_allclose(gauss.data, div_E - 4 * math.pi * j.data[0], atol=1e-12)
    curl_Bx = apply_along(d[2], B[2], 2) - apply_along(d[3], B[1], 3)
    ampere_x = curl_Bx - (4 * math.pi / 2.0) * j.data[1] - apply_along(d[0], E[0], 0)
    np.testing.assert_allclose(ampere.data[0], ampere_x, atol=1e-12)


def test_second_pair_symmetric_scheme_needs_no_swap(rng):
    g = Grid(5)
    scheme = FracScheme(0.6)
    F = FieldTensor(g, rng.standard_normal((6,) + g.shape))
    j = CurrentDensity(g, rng.standard_normal((4,) + g.shape))
    gauss, _ = second_pair_residual(F, j, scheme)
    np.testing.assert_array_equal(gauss.data, div_lr(F.E, scheme).data - 4 * math.pi * j.data[0])


def _central(n, h):
    # central difference with zero ghost values outside the grid
    return (np.eye(n, k=1) - np.eye(n, k=-1)) / (2 * h)


def test_coulomb_against_dense_poisson_solve():
    n = 8
    g = Grid((1, n, n, n))
    _, x, y, z = g.mesh()
    rho = np.exp(-((x**2 + y**2 + z**2) / 0.1))
    h = g.h[1]
    D = _central(n, h)
    eye = np.eye(n)
    Dx, Dy, Dz = np.kron(np.kron(D, eye), eye), np.kron(np.kron(eye, D), eye), np.kron(np.kron(eye, eye), D)
    lap = Dx @ Dx + Dy @ Dy + Dz @ Dz
    psi = np.linalg.solve(lap, -4 * math.pi * rho[0].ravel())
    E = -np.stack([(Dk @ psi).reshape(n, n, n) for Dk in (Dx, Dy, Dz)])[:, None]
    F = FieldTensor(g, np.concatenate([E, np.zeros((3,) + g.shape)]))
    j = CurrentDensity(g, np.concatenate([rho[None], np.zeros((3,) + g.shape)]))
    gauss, ampere = second_pair_residual(F, j, FracScheme(1.0))
    assert gauss.max_abs() <= 1e-10 * (np.max(np.abs(rho)) + 1)
    assert ampere.max_abs() == 0.0
    no_monopole, faraday = first_pair_residual(F, FracScheme(1.0))
    assert faraday.max_abs() <= 1e-10


def test_sources_from_field_close_second_pair(rng):
    g = Grid(5)
    scheme = FracScheme(0.3, 0.8)
    F = field_strength_lr(random_potential(g, rng), scheme)
    j = mx.sources_from_field(F, scheme, c=3.0)
    gauss, ampere = second_pair_residual(F, j, scheme, c=3.0)
    assert max(gauss.max_abs(), ampere.max_abs()) <= 1e-12 * (F.max_abs() + 1)


# -- first pair and the cyclic identity -------------------------------------------------


@pytest.mark.parametrize("scheme", SCHEMES)
def test_first_pair_from_potential(scheme, rng):
    g = Grid(6)
    F = field_strength_lr(random_potential(g, rng), scheme)
    no_monopole, faraday = first_pair_residual(F, scheme)
    assert no_monopole.max_abs() <= 1e-12 and faraday.max_abs() <= 1e-12
    assert bianchi_residual(F, scheme) <= 1e-12


def test_first_pair_zero():
    g = Grid(4)
    F = FieldTensor(g, np.zeros((6,) + g.shape))
    a, b = first_pair_residual(F, FracScheme(0.5))
    assert a.max_abs() == b.max_abs() == bianchi_residual(F, FracScheme(0.5)) == 0.0


def test_first_pair_negative_control():
    rng = np.random.default_rng(7)
    g = Grid(6)
    scheme = FracScheme(0.5)
    F = field_strength_lr(random_potential(g, rng), scheme)
    F = FieldTensor(g, F.data + 1e-3 * rng.standard_normal(F.data.shape))
    no_monopole, faraday = first_pair_residual(F, scheme)
    assert no_monopole.max_abs() > 1e-6 and faraday.max_abs() > 1e-6
    assert bianchi_residual(F, scheme) > 1e-6


def test_bianchi_single_component_dense_oracle():
    g = Grid(6)
    scheme = FracScheme(0.5)
    _, x, _, _ = g.mesh()
    F = FieldTensor.from_lower(g, {p: (x**2 if p == (0, 1) else np.zeros(g.shape)) for p in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]})
    # only the triples that differentiate F_01 across axes 2 and 3 survive
    expected = max(
        np.max(np.abs(apply_along(lr_dense(g.n[ax], g.h[ax], 0.5, 0.5), x**2, ax))) for ax in (2, 3)
    )
    res = bianchi_residual(F, scheme)
    assert res > 0
    assert res == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("scheme", SCHEMES)
def test_gauge_invariance_propagates(scheme, rng):
    g = Grid(5)
    A, phi = random_potential(g, rng), random_scalar(g, rng)
    j = CurrentDensity(g, rng.standard_normal((4,) + g.shape))
    r1 = maxwell_residual(field_strength_lr(A, scheme), j, scheme)
    r2 = maxwell_residual(field_strength_lr(gauge_transform(A, phi, scheme), scheme), j, scheme)
    for name in ("gauss", "ampere", "no_monopole", "faraday"):
        diff = np.max(np.abs(getattr(r1, name).data - getattr(r2, name).data))
        assert diff <= 1e-12 * r1.scale


def test_residual_norms(rng):
    g = Grid(4)
    F = FieldTensor(g, rng.standard_normal((6,) + g.shape))
    j = CurrentDensity(g, rng.standard_normal((4,) + g.shape))
    r = maxwell_residual(F, j, FracScheme(0.5))
    assert r.norms["gauss"] == float(np.max(np.abs(r.gauss.data)))
    assert r.norms["faraday"] == float(np.max(np.abs(r.faraday.data)))
    assert all(v >= 0 for v in r.norms.values())
    assert r.scale == F.max_abs() + 1
    assert r.relative_norms["ampere"] == r.norms["ampere"] / r.scale


# -- continuity ---------------------------------------------------------------------------


CAUSAL = FracScheme((1.0, 0.5, 0.5, 0.5), (1.0, 0.5, 0.5, 0.5))


def test_continuity_from_second_pair(rng):
    g = Grid(6)
    F = FieldTensor(g, rng.standard_normal((6,) + g.shape))  # any F works
    j = mx.sources_from_field(F, CAUSAL, c=2.0)
    assert continuity_residual(j.rho, j.j, CAUSAL, c=2.0).max_abs() <= 1e-12


def test_continuity_zero():
    g = Grid(4)
    zero = CurrentDensity.zeros(g)
    assert continuity_residual(zero.rho, zero.j, CAUSAL).max_abs() == 0.0


@pytest.mark.parametrize("scheme", [FracScheme(0.5), FracScheme((1, 0.5, 0.5, 0.5), (1, 0.4, 0.5, 0.5)), FracScheme(1.0, a=(-1, 0, -1, -1))])
def test_continuity_rejects_non_causal(scheme):
    g = Grid.for_scheme(3, scheme)
    zero = CurrentDensity.zeros(g)
    with pytest.raises(DomainError):
        continuity_residual(zero.rho, zero.j, scheme)


def _classical_continuity_error(n):
    g = Grid((n, n, 1, 1))
    t, x, _, _ = g.mesh()
    rho = np.sin(x + 0.3) * np.exp(t)
    jx = np.cos(2 * x) * t
    exact = -2 * np.sin(2 * x) * t + rho
    res = continuity_residual(
        ScalarField(g, rho), VectorField3(g, np.stack([jx, np.zeros(g.shape), np.zeros(g.shape)])), FracScheme(1.0)
    ).data
    sel = (slice(n // 4, 3 * n // 4), slice(n // 4, 3 * n // 4))
    return np.max(np.abs(res[sel] - exact[sel]))


def test_continuity_integer_order_reduces_to_classical():
    e1, e2 = _classical_continuity_error(33), _classical_continuity_error(65)
    assert e1 < 1e-2 and e1 / e2 >= 1.6


# -- asymmetric theory ---------------------------------------------------------------------


def test_asymmetric_identities(rng):
    g = Grid(6)
    A = random_potential(g, rng)
    F = field_strength_right(A, 0.6)
    j = mx.sources_from_field_asym(F, 0.6, c=2.0)
    gauss, ampere = mx.second_pair_residual_asym(F, j, 0.6, c=2.0)
    no_monopole, faraday = mx.first_pair_residual_asym(F, 0.6)
    assert max(gauss.max_abs(), ampere.max_abs(), no_monopole.max_abs(), faraday.max_abs()) <= 1e-12 * (F.max_abs() + 1)
    assert mx.bianchi_residual_right(F, 0.6) <= 1e-12


def test_asymmetric_second_pair_is_left_only(rng):
    # left operators see only earlier samples: editing the last slice along an axis
    # leaves the residual unchanged everywhere before it
    g = Grid(6)
    F = FieldTensor(g, rng.standard_normal((6,) + g.shape))
    j = CurrentDensity(g, rng.standard_normal((4,) + g.shape))
    for axis in range(4):
        data = F.data.copy()
        idx = [slice(None)] * 5
        idx[axis + 1] = -1
        data[tuple(idx)] += 1.0
        before = np.concatenate([r.data.reshape((-1,) + g.shape) for r in mx.second_pair_residual_asym(F, j, 0.5)])
        after = np.concatenate(
            [r.data.reshape((-1,) + g.shape) for r in mx.second_pair_residual_asym(FieldTensor(g, data), j, 0.5)]
        )
        keep = [slice(None)] * 5
        keep[axis + 1] = slice(0, -1)
        np.testing.assert_array_equal(before[tuple(keep)], after[tuple(keep)])
        assert np.any(before != after)


def test_asymmetric_first_pair_is_right_only(rng):
    g = Grid(6)
    F = FieldTensor(g, rng.standard_normal((6,) + g.shape))
    for axis in range(4):
        data = F.data.copy()
        idx = [slice(None)] * 5
        idx[axis + 1] = 0
        data[tuple(idx)] += 1.0
        before = np.concatenate([r.data.reshape((-1,) + g.shape) for r in mx.first_pair_residual_asym(F, 0.5)])
        after = np.concatenate([r.data.reshape((-1,) + g.shape) for r in mx.first_pair_residual_asym(FieldTensor(g, data), 0.5)])
        keep = [slice(None)] * 5
        keep[axis + 1] = slice(1, None)
        np.testing.assert_array_equal(before[tuple(keep)], after[tuple(keep)])


def test_asymmetric_time_axis_scaling(rng):
    # the same samples read as t in [0, T] with the c^-a factor equal the x0 = c t reading
    c, alpha, n = 2.0, 0.6, 5
    gt = Grid(n, (0, -1, -1, -1), (1.5, 1, 1, 1))
    gx = Grid(n, (0, -1, -1, -1), (1.5 * c, 1, 1, 1))
    data = rng.standard_normal((6,) + gt.shape)
    jd = rng.standard_normal((4,) + gt.shape)
    t_res = mx.second_pair_residual_asym(FieldTensor(gt, data), CurrentDensity(gt, jd), alpha, c, time_axis="t")
    x_res = mx.second_pair_residual_asym(FieldTensor(gx, data), CurrentDensity(gx, jd), alpha, c, time_axis="x0")
    for a, b in zip(t_res, x_res):
        np.testing.assert_allclose(a.data, b.data, atol=1e-12)
    t_res = mx.first_pair_residual_asym(FieldTensor(gt, data), alpha, c, time_axis="t")
    x_res = mx.first_pair_residual_asym(FieldTensor(gx, data), alpha, c, time_axis="x0")
    for a, b in zip(t_res, x_res):
        np.testing.assert_allclose(a.data, b.data, atol=1e-12)
    with pytest.raises(ValueError):
        mx.first_pair_residual_asym(FieldTensor(gt, data), alpha, c, time_axis="tau")


def test_right_tensor_uses_right_matrices(rng):
    g = Grid((4, 5, 1, 1))
    A = random_potential(g, rng)
    F = field_strength_right(A, 0.7)
    _, R0 = gl_matrices(4, g.h[0], 0.7, 0.7)
    _, R1 = gl_matrices(5, g.h[1], 0.7, 0.7)
    f01 = apply_along(R0, A.data[1], 0) - apply_along(R1, A.data[0], 1)
    np.testing.assert_allclose(F.lower(0, 1), f01, atol=1e-12)
