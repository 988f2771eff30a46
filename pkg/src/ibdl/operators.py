"""Discrete differential operators, periodic inverses and masked norms.

Forward finite-difference operators are applied as stencils (np.roll)
so linearity and adjointness hold to the last bit; inverses divide by
the stencil's Fourier symbol, which is exact for periodic stencils.
"""

import numpy as np

from . import fftops
from .grid import Scheme, Stencil, symbols


class SolvabilityError(ValueError):
    """Right-hand side incompatible with the operator's nullspace."""


MEAN_ZERO_RTOL = 1e-10


def _as2d(f):
    f = np.asarray(f, dtype=float)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise ValueError(f"expected square (n, n) field, got {f.shape}")
    return f


def laplacian(f, grid, scheme, stencil=Stencil.STANDARD5):
    """Apply the discrete Laplacian under the selected discretization."""
    f = _as2d(f)
    if scheme is Scheme.SPECTRAL:
        if stencil is Stencil.WIDE:
            raise ValueError("wide stencil is only valid with the finite-difference scheme")
        sym = symbols(grid, scheme)
        return fftops.irfft2(sym.lap * fftops.rfft2(f), f.shape)
    dx2 = grid.dx**2
    if stencil is Stencil.STANDARD5:
        return (
            np.roll(f, -1, 0) + np.roll(f, 1, 0) + np.roll(f, -1, 1) + np.roll(f, 1, 1) - 4.0 * f
        ) / dx2
    return (
        np.roll(f, -2, 0) + np.roll(f, 2, 0) + np.roll(f, -2, 1) + np.roll(f, 2, 1) - 4.0 * f
    ) / (4.0 * dx2)


def gradient(f, grid, scheme):
    """Gradient as a (2, n, n) array (centered differences or spectral)."""
    f = _as2d(f)
    if scheme is Scheme.SPECTRAL:
        sym = symbols(grid, scheme)
        fh = fftops.rfft2(f)
        gx = fftops.irfft2(sym.d1x * fh, f.shape)
        gy = fftops.irfft2(sym.d1y * fh, f.shape)
    else:
        h2 = 2.0 * grid.dx
        gx = (np.roll(f, -1, 0) - np.roll(f, 1, 0)) / h2
        gy = (np.roll(f, -1, 1) - np.roll(f, 1, 1)) / h2
    return np.stack([gx, gy])


def divergence(v, grid, scheme):
    v = np.asarray(v, dtype=float)
    if scheme is Scheme.SPECTRAL:
        sym = symbols(grid, scheme)
        return fftops.irfft2(
            sym.d1x * fftops.rfft2(v[0]) + sym.d1y * fftops.rfft2(v[1]), v[0].shape
        )
    h2 = 2.0 * grid.dx
    return (np.roll(v[0], -1, 0) - np.roll(v[0], 1, 0)) / h2 + (
        np.roll(v[1], -1, 1) - np.roll(v[1], 1, 1)
    ) / h2


def _check_mean_zero(f, name):
    scale = np.max(np.abs(f))
    if scale == 0.0:
        return
    if abs(float(np.mean(f))) > MEAN_ZERO_RTOL * scale:
        raise SolvabilityError(
            f"{name}: right-hand side must have zero mean "
            f"(|mean| = {abs(float(np.mean(f))):.3e}, max = {scale:.3e})"
        )


def _check_subgrid_means(f, name):
    scale = np.max(np.abs(f))
    if scale == 0.0:
        return
    for si in (0, 1):
        for sj in (0, 1):
            m = float(np.mean(f[si::2, sj::2]))
            if abs(m) > MEAN_ZERO_RTOL * scale:
                raise SolvabilityError(f"{name}: subgrid ({si},{sj}) mean {m:.3e} is not zero")


def _invert_symbol(fh, sym_arr):
    out = np.zeros_like(fh)
    np.divide(fh, sym_arr, out=out, where=sym_arr != 0.0)
    return out


def inv_laplacian_zero_mean(f, grid, scheme, stencil=Stencil.STANDARD5, check=True):
    """Invert the periodic Laplacian, returning the zero-mean solution.

    With the wide stencil the four decoupled subgrids each get mean
    zero, which is the same as zeroing the stencil's four null modes.
    """
    f = _as2d(f)
    sym = symbols(grid, scheme)
    lap = sym.laplacian_symbol(stencil)
    if check:
        if stencil is Stencil.WIDE and scheme is Scheme.FINITE_DIFFERENCE:
            _check_subgrid_means(f, "inv_laplacian_zero_mean")
        else:
            _check_mean_zero(f, "inv_laplacian_zero_mean")
    return fftops.irfft2(_invert_symbol(fftops.rfft2(f), lap), f.shape)


def helmholtz_inverse(f, grid, mu, k2, scheme, stencil=Stencil.STANDARD5):
    """Apply (mu*Lap - k2*I)^{-1}; k2 = 0 falls back to the zero-mean inverse."""
    if k2 < 0:
        raise ValueError("reaction coefficient k2 must be >= 0")
    f = _as2d(f)
    if k2 == 0.0:
        return inv_laplacian_zero_mean(f, grid, scheme, stencil) / mu
    sym = symbols(grid, scheme)
    lap = sym.laplacian_symbol(stencil)
    return fftops.irfft2(fftops.rfft2(f) / (mu * lap - k2), f.shape)


def leray_project(v, grid, scheme):
    """Project onto discretely divergence-free fields: I - grad inv(div grad) div.

    The inner inverse uses the composed div-grad symbol of the scheme
    (the wide Laplacian for finite differences), so the projected field
    has exactly zero discrete divergence and the projector is idempotent.
    """
    v = np.asarray(v, dtype=float)
    sym = symbols(grid, scheme)
    vxh = fftops.rfft2(v[0])
    vyh = fftops.rfft2(v[1])
    dh = sym.d1x * vxh + sym.d1y * vyh
    phih = _invert_symbol(dh, sym.divgrad)
    shape = v[0].shape
    return np.stack(
        [
            fftops.irfft2(vxh - sym.d1x * phih, shape),
            fftops.irfft2(vyh - sym.d1y * phih, shape),
        ]
    )


def masked_norms(f_error, mask):
    """Domain-scaled (l1, l2, linf) norms over the masked nodes.

    Scaling by the domain area makes l1/l2 plain means, so a constant
    field has all three norms equal to its magnitude.
    """
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        raise ValueError("masked_norms: empty mask")
    vals = np.asarray(f_error, dtype=float)[mask]
    l1 = float(np.mean(np.abs(vals)))
    l2 = float(np.sqrt(np.mean(vals**2)))
    linf = float(np.max(np.abs(vals)))
    return l1, l2, linf
