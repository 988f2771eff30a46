import numpy as np
import pytest

from ibdl.grid import PeriodicGrid, Scheme, Stencil
from ibdl import operators as ops


def make_grid(n=64, length=1.0, origin=(-0.5, -0.5)):
    return PeriodicGrid(n, length, origin)


def rng_field(grid, seed=0):
    return np.random.default_rng(seed).standard_normal((grid.n, grid.n))


def smooth_field(grid, seed=0, modes=6):
    """Random band-limited field (no Nyquist content)."""
    rng = np.random.default_rng(seed)
    x, y = grid.meshes()
    w = 2.0 * np.pi / grid.length
    f = np.zeros_like(x)
    for _ in range(modes):
        kx, ky = rng.integers(-4, 5, size=2)
        f += rng.standard_normal() * np.cos(w * (kx * x + ky * y) + rng.uniform(0, 2 * np.pi))
    return f


@pytest.mark.parametrize("scheme", [Scheme.SPECTRAL, Scheme.FINITE_DIFFERENCE])
def test_laplacian_of_constant_is_zero(scheme):
    g = make_grid()
    out = ops.laplacian(np.full((g.n, g.n), 7.0), g, scheme)
    assert np.max(np.abs(out)) < 1e-11


def test_spectral_laplacian_eigenfunction():
    g = make_grid()
    x, _ = g.meshes()
    f = np.sin(2 * np.pi * x / g.length)
    out = ops.laplacian(f, g, Scheme.SPECTRAL)
    assert np.allclose(out, -((2 * np.pi / g.length) ** 2) * f, atol=1e-10)


def test_fd_laplacian_discrete_symbol():
    g = make_grid()
    x, _ = g.meshes()
    f = np.sin(2 * np.pi * x / g.length)
    out = ops.laplacian(f, g, Scheme.FINITE_DIFFERENCE, Stencil.STANDARD5)
    sym = -(2.0 / g.dx**2) * (1.0 - np.cos(2 * np.pi * g.dx / g.length))
    assert np.allclose(out, sym * f, atol=1e-10)


def test_wide_stencil_rejected_for_spectral():
    g = make_grid()
    with pytest.raises(ValueError):
        ops.laplacian(g.zeros(), g, Scheme.SPECTRAL, Stencil.WIDE)


@pytest.mark.parametrize("scheme", [Scheme.SPECTRAL, Scheme.FINITE_DIFFERENCE])
def test_gradient_of_constant(scheme):
    g = make_grid()
    out = ops.gradient(np.full((g.n, g.n), 3.5), g, scheme)
    assert np.max(np.abs(out)) < 1e-11


def test_fd_first_derivative_sin_symbol():
    g = make_grid()
    x, _ = g.meshes()
    f = np.sin(2 * np.pi * x / g.length)
    gx = ops.gradient(f, g, Scheme.FINITE_DIFFERENCE)[0]
    expected = (np.sin(2 * np.pi * g.dx / g.length) / g.dx) * np.cos(2 * np.pi * x / g.length)
    assert np.allclose(gx, expected, atol=1e-10)


def test_spectral_div_grad_equals_laplacian_on_smooth_field():
    g = make_grid()
    f = smooth_field(g)
    dg = ops.divergence(ops.gradient(f, g, Scheme.SPECTRAL), g, Scheme.SPECTRAL)
    lap = ops.laplacian(f, g, Scheme.SPECTRAL)
    assert np.max(np.abs(dg - lap)) < 1e-8 * np.max(np.abs(lap))


def test_fd_div_grad_equals_wide_laplacian_exactly():
    g = make_grid()
    f = rng_field(g)  # includes Nyquist content; stencil identity is exact
    dg = ops.divergence(ops.gradient(f, g, Scheme.FINITE_DIFFERENCE), g, Scheme.FINITE_DIFFERENCE)
    wide = ops.laplacian(f, g, Scheme.FINITE_DIFFERENCE, Stencil.WIDE)
    assert np.max(np.abs(dg - wide)) < 1e-9 * max(1.0, np.max(np.abs(wide)))


@pytest.mark.parametrize("scheme", [Scheme.SPECTRAL, Scheme.FINITE_DIFFERENCE])
def test_laplacian_self_adjoint(scheme):
    g = make_grid(32)
    a, b = rng_field(g, 1), rng_field(g, 2)
    lhs = np.sum(ops.laplacian(a, g, scheme) * b)
    rhs = np.sum(a * ops.laplacian(b, g, scheme))
    assert abs(lhs - rhs) < 1e-9 * max(abs(lhs), 1.0)


@pytest.mark.parametrize("scheme", [Scheme.SPECTRAL, Scheme.FINITE_DIFFERENCE])
def test_inv_laplacian_round_trip(scheme):
    g = make_grid()
    u0 = smooth_field(g, 3)
    u0 -= np.mean(u0)
    f = ops.laplacian(u0, g, scheme)
    back = ops.inv_laplacian_zero_mean(f, g, scheme)
    assert np.max(np.abs(back - u0)) < 1e-9 * np.max(np.abs(u0))
    assert abs(np.mean(back)) < 1e-12


def test_inv_laplacian_zero_input():
    g = make_grid()
    assert np.all(ops.inv_laplacian_zero_mean(g.zeros(), g, Scheme.SPECTRAL) == 0.0)


def test_inv_laplacian_eigenfunction_division():
    g = make_grid()
    x, _ = g.meshes()
    f = -((2 * np.pi / g.length) ** 2) * np.sin(2 * np.pi * x / g.length)
    out = ops.inv_laplacian_zero_mean(f, g, Scheme.SPECTRAL)
    assert np.allclose(out, np.sin(2 * np.pi * x / g.length), atol=1e-10)


def test_inv_laplacian_rejects_nonzero_mean():
    g = make_grid()
    with pytest.raises(ops.SolvabilityError):
        ops.inv_laplacian_zero_mean(np.ones((g.n, g.n)), g, Scheme.SPECTRAL)


def test_inv_wide_laplacian_subgrid_means():
    g = make_grid()
    u0 = smooth_field(g, 4)
    for si in (0, 1):
        for sj in (0, 1):
            u0[si::2, sj::2] -= np.mean(u0[si::2, sj::2])
    f = ops.laplacian(u0, g, Scheme.FINITE_DIFFERENCE, Stencil.WIDE)
    back = ops.inv_laplacian_zero_mean(f, g, Scheme.FINITE_DIFFERENCE, Stencil.WIDE)
    assert np.max(np.abs(back - u0)) < 1e-8 * np.max(np.abs(u0))
    for si in (0, 1):
        for sj in (0, 1):
            assert abs(np.mean(back[si::2, sj::2])) < 1e-12


def test_helmholtz_inverse_eigenfunction():
    g = make_grid()
    _, y = g.meshes()
    w = 2 * np.pi / g.length
    f = -(1.0 + w**2) * np.sin(w * y)
    out = ops.helmholtz_inverse(f, g, mu=1.0, k2=1.0, scheme=Scheme.SPECTRAL)
    assert np.allclose(out, np.sin(w * y), atol=1e-10)


def test_helmholtz_inverse_constant_and_mu_scaling():
    g = make_grid()
    out = ops.helmholtz_inverse(np.full((g.n, g.n), -2.0 * 3.0), g, 1.0, 2.0, Scheme.SPECTRAL)
    assert np.allclose(out, 3.0, atol=1e-12)
    _, y = g.meshes()
    w = 2 * np.pi / g.length
    f = np.sin(w * y)
    one = ops.helmholtz_inverse(f, g, 1.0, 1.0, Scheme.SPECTRAL)
    two = ops.helmholtz_inverse(f, g, 2.0, 1.0, Scheme.SPECTRAL)
    # doubling mu doubles the Laplacian part of the symbol
    assert np.allclose(one * (-(w**2) - 1.0), f, atol=1e-12)
    assert np.allclose(two * (-2.0 * w**2 - 1.0), f, atol=1e-12)


def test_helmholtz_k0_nonzero_mean_rejected():
    g = make_grid()
    with pytest.raises(ops.SolvabilityError):
        ops.helmholtz_inverse(np.ones((g.n, g.n)), g, 1.0, 0.0, Scheme.SPECTRAL)


@pytest.mark.parametrize("scheme", [Scheme.SPECTRAL, Scheme.FINITE_DIFFERENCE])
def test_leray_annihilates_gradients(scheme):
    g = make_grid()
    v = ops.gradient(smooth_field(g, 5), g, scheme)
    out = ops.leray_project(v, g, scheme)
    assert np.max(np.abs(out)) < 1e-10 * np.max(np.abs(v))


def test_leray_keeps_divergence_free_field():
    g = make_grid()
    _, y = g.meshes()
    v = np.stack([-np.sin(2 * np.pi * y / g.length), np.zeros((g.n, g.n))])
    out = ops.leray_project(v, g, Scheme.SPECTRAL)
    assert np.max(np.abs(out - v)) < 1e-12


@pytest.mark.parametrize("scheme", [Scheme.SPECTRAL, Scheme.FINITE_DIFFERENCE])
def test_leray_idempotent_and_divergence_free(scheme):
    g = make_grid()
    v = np.stack([rng_field(g, 6), rng_field(g, 7)])
    once = ops.leray_project(v, g, scheme)
    twice = ops.leray_project(once, g, scheme)
    assert np.max(np.abs(twice - once)) < 1e-10 * np.max(np.abs(v))
    div = ops.divergence(once, g, scheme)
    assert np.max(np.abs(div)) < 1e-10 * np.max(np.abs(v))


def test_masked_norms_constant_and_zero():
    g = make_grid(16)
    mask = np.zeros((16, 16), dtype=bool)
    mask[2:9, 3:12] = True
    l1, l2, linf = ops.masked_norms(np.full((16, 16), -4.0), mask)
    assert l1 == l2 == linf == 4.0
    assert ops.masked_norms(np.zeros((16, 16)), mask) == (0.0, 0.0, 0.0)


def test_masked_norms_excludes_exterior():
    g = make_grid(16)
    mask = np.zeros((16, 16), dtype=bool)
    mask[:8] = True
    f = np.where(mask, 1.0, 5.0)
    l1, _, linf = ops.masked_norms(f, mask)
    assert l1 == 1.0 and linf == 1.0


def test_masked_norms_empty_mask_raises():
    with pytest.raises(ValueError):
        ops.masked_norms(np.zeros((8, 8)), np.zeros((8, 8), dtype=bool))
