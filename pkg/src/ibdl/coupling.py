"""Regularized delta kernels and the Eulerian-Lagrangian coupling operators.

spread (S) maps boundary densities to grid fields, interpolate (S*) is
its adjoint, spread_dipole builds div(S(Q n)) and spread_tensor_dipole
the symmetric force-dipole tensor term used by the fluid solvers.
Kernel stencils (indices and 1-D weights) are cached per
(boundary, grid, kernel) pair and shared across components and calls.
"""

from dataclasses import dataclass

import numpy as np

from .grid import Scheme
from . import operators


@dataclass(frozen=True)
class Kernel:
    kind: str
    support_radius: int  # meshwidths; phi(r) = 0 for |r| >= support_radius


PESKIN4 = Kernel("peskin4", 2)
BSPLINE6 = Kernel("bspline6", 3)

_KERNELS = {"peskin4": PESKIN4, "bspline6": BSPLINE6}


def kernel_by_name(name):
    try:
        return _KERNELS[name]
    except KeyError:
        raise ValueError(f"unknown kernel '{name}' (use peskin4 or bspline6)") from None


def phi(r, kernel):
    """Evaluate the 1-D kernel profile (closed-form branches, vectorized)."""
    r = np.abs(np.asarray(r, dtype=float))
    out = np.zeros_like(r)
    if kernel.kind == "peskin4":
        m1 = r <= 1.0
        m2 = (r > 1.0) & (r < 2.0)
        r1 = r[m1]
        out[m1] = (3.0 - 2.0 * r1 + np.sqrt(1.0 + 4.0 * r1 - 4.0 * r1**2)) / 8.0
        r2 = r[m2]
        out[m2] = (5.0 - 2.0 * r2 - np.sqrt(-7.0 + 12.0 * r2 - 4.0 * r2**2)) / 8.0
    elif kernel.kind == "bspline6":
        m1 = r <= 1.0
        m2 = (r > 1.0) & (r <= 2.0)
        m3 = (r > 2.0) & (r < 3.0)
        r1 = r[m1]
        out[m1] = 11.0 / 20.0 - r1**2 / 2.0 + r1**4 / 4.0 - r1**5 / 12.0
        r2 = r[m2]
        out[m2] = (
            17.0 / 40.0
            + 5.0 / 8.0 * r2
            - 7.0 / 4.0 * r2**2
            + 5.0 / 4.0 * r2**3
            - 3.0 / 8.0 * r2**4
            + r2**5 / 24.0
        )
        r3 = r[m3]
        out[m3] = (
            81.0 / 40.0
            - 27.0 / 8.0 * r3
            + 9.0 / 4.0 * r3**2
            - 3.0 / 4.0 * r3**3
            + r3**4 / 8.0
            - r3**5 / 120.0
        )
    else:
        raise ValueError(f"unknown kernel kind {kernel.kind}")
    return out


class _Stencil:
    """Per-point kernel footprint: grid indices and 1-D weights."""

    def __init__(self, b, grid, kernel):
        if grid.n < 2 * kernel.support_radius + 1:
            raise ValueError("kernel support does not fit in the grid")
        h = grid.dx
        w = 2 * kernel.support_radius
        rel = np.arange(w) - (w // 2 - 1)
        fi = (b.points[:, 0] - grid.origin[0]) / h
        fj = (b.points[:, 1] - grid.origin[1]) / h
        i0 = np.floor(fi).astype(int)
        j0 = np.floor(fj).astype(int)
        self.ix = np.mod(i0[:, None] + rel[None, :], grid.n)
        self.iy = np.mod(j0[:, None] + rel[None, :], grid.n)
        self.wx = phi(fi[:, None] - (i0[:, None] + rel[None, :]), kernel)
        self.wy = phi(fj[:, None] - (j0[:, None] + rel[None, :]), kernel)
        self.scale = b.weights / h**2  # per-point ds / h^2 for spreading
        self.grid = grid


def _stencil(b, grid, kernel):
    key = ("stencil", grid, kernel)
    st = b._caches.get(key)
    if st is None:
        st = _Stencil(b, grid, kernel)
        b._caches[key] = st
    return st


def spread(b, values, grid, kernel=PESKIN4):
    """S: spread a boundary density to the grid, (SF)(x) = sum F_i d_h(x-X_i) ds_i.

    ``values`` of shape (m,) gives an (n, n) field; shape (2, m) is
    spread componentwise into a (2, n, n) field.
    """
    st = _stencil(b, grid, kernel)
    vals = np.asarray(values, dtype=float)
    if vals.ndim == 2:
        return np.stack([spread(b, vals[c], grid, kernel) for c in range(vals.shape[0])])
    out = grid.zeros()
    contrib = (vals * st.scale)[:, None, None] * st.wx[:, :, None] * st.wy[:, None, :]
    np.add.at(out, (st.ix[:, :, None], st.iy[:, None, :]), contrib)
    return out


def interpolate(u, b, grid, kernel=PESKIN4):
    """S*: interpolate a grid field onto the boundary points (adjoint of S)."""
    st = _stencil(b, grid, kernel)
    u = np.asarray(u, dtype=float)
    if u.ndim == 3:
        return np.stack([interpolate(u[c], b, grid, kernel) for c in range(u.shape[0])])
    # dx*dy/h^2 = 1 on the square grid, so the weights are plain phi products
    vals = u[st.ix[:, :, None], st.iy[:, None, :]] * (st.wx[:, :, None] * st.wy[:, None, :])
    return vals.sum(axis=(1, 2))


def spread_dipole(b, q, grid, kernel=PESKIN4, scheme=Scheme.SPECTRAL):
    """S~: dipole spread, div(S(q n)), with the solver's differencing scheme."""
    q = np.asarray(q, dtype=float)
    qn = np.stack([q * b.normals[:, 0], q * b.normals[:, 1]])
    return operators.divergence(spread(b, qn, grid, kernel), grid, scheme)


def tensor_dipole_components(b, q):
    """Spreadable components (a11, a12, a22) of A = q (x) n + n (x) q,
    plus the mass-source density q.n."""
    q = np.asarray(q, dtype=float)
    n1, n2 = b.normals[:, 0], b.normals[:, 1]
    a11 = 2.0 * q[0] * n1
    a22 = 2.0 * q[1] * n2
    a12 = q[0] * n2 + q[1] * n1
    qdotn = q[0] * n1 + q[1] * n2
    return a11, a12, a22, qdotn


def spread_tensor_dipole(b, q, mu, grid, kernel=PESKIN4, scheme=Scheme.SPECTRAL):
    """Stokes dipole term: (mu * div(S A), S(q.n)) for A_ij = q_i n_j + q_j n_i."""
    a11, a12, a22, qdotn = tensor_dipole_components(b, q)
    s11 = spread(b, a11, grid, kernel)
    s12 = spread(b, a12, grid, kernel)
    s22 = spread(b, a22, grid, kernel)
    gx11 = operators.gradient(s11, grid, scheme)[0]
    g12 = operators.gradient(s12, grid, scheme)
    gy22 = operators.gradient(s22, grid, scheme)[1]
    force = mu * np.stack([gx11 + g12[1], g12[0] + gy22])
    source = spread(b, qdotn, grid, kernel)
    return force, source
