"""Uniform N x N periodic grid and the Fourier symbols of its operators.

Scalar fields are plain (n, n) float arrays with axis 0 <-> x and
axis 1 <-> y; node (i, j) sits at origin + (i*dx, j*dx).  Vector fields
are (2, n, n) arrays.  All discrete operators on the periodic grid
(spectral and finite-difference stencils alike) are diagonalized by the
DFT, so their symbols are precomputed once per (grid, scheme) pair.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np


class Scheme(Enum):
    SPECTRAL = "spectral"
    FINITE_DIFFERENCE = "fd"


class Stencil(Enum):
    STANDARD5 = "standard5"
    WIDE = "wide"


@dataclass(frozen=True)
class PeriodicGrid:
    """Square periodic box with n nodes per side (n even)."""

    n: int
    length: float
    origin: tuple = (0.0, 0.0)

    def __post_init__(self):
        if self.n < 4 or self.n % 2 != 0:
            raise ValueError(f"grid size must be even and >= 4, got {self.n}")
        if not self.length > 0:
            raise ValueError("box length must be positive")

    @property
    def dx(self):
        return self.length / self.n

    def axis_coords(self):
        """1-D node coordinates along one axis (x uses origin[0], y origin[1])."""
        i = np.arange(self.n)
        return self.origin[0] + i * self.dx, self.origin[1] + i * self.dx

    def meshes(self):
        """(xx, yy) node coordinate arrays, shape (n, n), ij indexing."""
        x, y = self.axis_coords()
        return np.meshgrid(x, y, indexing="ij")

    def zeros(self):
        return np.zeros((self.n, self.n))

    def wrap(self, pts):
        """Map points into the fundamental box (used for geometry only)."""
        p = np.asarray(pts, dtype=float)
        o = np.asarray(self.origin)
        return o + np.mod(p - o, self.length)


class GridSymbols:
    """Fourier multipliers of the discrete operators on the rfft2 half-spectrum.

    Shapes: arrays broadcast to (n, n//2 + 1).  First-derivative symbols
    have the unpaired Nyquist mode zeroed so real fields map to real
    fields with the correct antisymmetry; the Laplacian uses the full
    multiplier.  For the finite-difference scheme the first-derivative
    symbol is i*sin(k dx)/dx, whose square is exactly the wide-stencil
    Laplacian symbol.
    """

    def __init__(self, grid, scheme):
        n, dx, L = grid.n, grid.dx, grid.length
        kx = (2.0 * np.pi / L) * np.fft.fftfreq(n, d=1.0 / n)
        ky = (2.0 * np.pi / L) * np.arange(n // 2 + 1)
        kx = kx[:, None]
        ky = ky[None, :]
        self.grid = grid
        self.scheme = scheme

        if scheme is Scheme.SPECTRAL:
            dkx = kx.copy()
            dkx[n // 2, 0] = 0.0  # unpaired Nyquist mode
            dky = ky.copy()
            dky[0, -1] = 0.0
            self.d1x = 1j * dkx
            self.d1y = 1j * dky
            self.lap = -(kx**2 + ky**2)
            self.lap_wide = None
        else:
            sx = np.sin(kx * dx)
            sx[n // 2, 0] = 0.0  # sin(pi) up to round-off; pin exactly
            sy = np.sin(ky * dx)
            sy[0, -1] = 0.0
            self.d1x = 1j * sx / dx
            self.d1y = 1j * sy / dx
            self.lap = (2.0 * np.cos(kx * dx) - 2.0 + 2.0 * np.cos(ky * dx) - 2.0) / dx**2
            self.lap_wide = -(sx**2 + sy**2) / dx**2

        # div(grad) composed symbol; equals lap_wide for FD, and the
        # Nyquist-truncated spectral Laplacian for the spectral scheme.
        self.divgrad = np.real(self.d1x**2 + self.d1y**2)

    def laplacian_symbol(self, stencil):
        if self.scheme is Scheme.SPECTRAL:
            if stencil is Stencil.WIDE:
                raise ValueError("wide stencil is a finite-difference concept")
            return self.lap
        return self.lap_wide if stencil is Stencil.WIDE else self.lap


@lru_cache(maxsize=64)
def symbols(grid, scheme):
    return GridSymbols(grid, scheme)
