"""Analytic and manufactured solutions used as test oracles and benchmark
references, plus dense assembly of matrix-free operators at tiny sizes."""

import numpy as np


def bessel_i2(r):
    """First-kind modified Bessel function of order 2 by its ascending
    power series, truncated at 1e-16 relative term size."""
    r = np.asarray(r, dtype=float)
    half = r / 2.0
    term = half**2 / 2.0  # m = 0: (r/2)^2 / (0! * 2!)
    total = term.copy()
    m = 0
    while True:
        m += 1
        term = term * half**2 / (m * (m + 2))
        total += term
        if np.all(np.abs(term) <= 1e-16 * np.maximum(np.abs(total), 1e-300)) or m > 200:
            break
    return total


class BesselHelmholtz:
    """Interior Helmholtz benchmark: Lu = u_xx + u_yy - u = 0 on the disk
    r < 0.25 with boundary trace sin(2 theta)."""

    k2 = 1.0
    radius = 0.25

    def solution(self, x, y):
        r2 = x**2 + y**2
        # I2(r) * sin(2 theta) / I2(0.25); sin(2 theta) = 2xy / r^2,
        # and I2(r)/r^2 -> 1/8 as r -> 0
        r = np.sqrt(r2)
        ratio = np.full_like(np.asarray(r, dtype=float), 0.125)
        nz = r > 1e-12
        ratio[nz] = bessel_i2(r[nz]) / r2[nz]
        return ratio * 2.0 * x * y / bessel_i2(self.radius)

    def forcing(self, x, y):
        return np.zeros_like(np.asarray(x, dtype=float))

    def boundary_values(self, pts):
        th = np.arctan2(pts[:, 1], pts[:, 0])
        return np.sin(2.0 * th)


class PoissonTrig:
    """u = sin(pi x / 2) - cos(pi y / 2); periodic on boxes of length 4."""

    k2 = 0.0

    def solution(self, x, y):
        return np.sin(np.pi * x / 2.0) - np.cos(np.pi * y / 2.0)

    def forcing(self, x, y):
        return (np.pi**2 / 4.0) * (np.cos(np.pi * y / 2.0) - np.sin(np.pi * x / 2.0))

    def boundary_values(self, pts):
        return self.solution(pts[:, 0], pts[:, 1])


class ExpPoisson:
    """u = exp(sin(2 pi x / L)); the large-L exterior run is the documented
    eta = 0 failure mode of the double-layer Poisson solve."""

    k2 = 0.0

    def __init__(self, box_length):
        self.L = float(box_length)

    def solution(self, x, y):
        return np.exp(np.sin(2.0 * np.pi * x / self.L))

    def forcing(self, x, y):
        w = 2.0 * np.pi / self.L
        s = np.sin(w * x)
        return w**2 * np.exp(s) * (np.cos(w * x) ** 2 - s)

    def boundary_values(self, pts):
        return self.solution(pts[:, 0], pts[:, 1])


class LinearHelmholtz:
    """u = x + y with Lu = u_xx + u_yy - u = -(x+y); linear fields are
    reproduced exactly by the near-boundary interpolation."""

    k2 = 1.0

    def solution(self, x, y):
        return x + y

    def forcing(self, x, y):
        return -(x + y)

    def boundary_values(self, pts):
        return pts[:, 0] + pts[:, 1]


class QuadraticNeumann:
    """u = x^2 - y^2 with Lu = -u; Neumann data du/dn = 2 r cos(2 theta)
    on a circle of radius r about the origin."""

    k2 = 1.0

    def solution(self, x, y):
        return x**2 - y**2

    def forcing(self, x, y):
        return -(x**2 - y**2)

    def boundary_values(self, pts):
        return pts[:, 0] ** 2 - pts[:, 1] ** 2

    def neumann_values(self, pts, radius):
        # du/dn = grad(u).n with n = (x, y)/r on the circle
        return 2.0 * (pts[:, 0] ** 2 - pts[:, 1] ** 2) / radius


class BrinkmanManufactured:
    """Interior Brinkman benchmark on [-1,1]^2: mu=1, k^2=1,
    u = exp(sin x) cos y, v = -cos x exp(sin x) sin y, p = exp(cos y)."""

    mu = 1.0
    k2 = 1.0

    def velocity(self, x, y):
        es = np.exp(np.sin(x))
        return np.stack([es * np.cos(y), -np.cos(x) * es * np.sin(y)])

    def pressure(self, x, y):
        return np.exp(np.cos(y))

    def forcing(self, x, y):
        es = np.exp(np.sin(x))
        cx = np.cos(x)
        g1 = es * np.cos(y) * (cx**2 - np.sin(x) - 2.0)
        g2 = -cx * es * np.sin(y) * (cx**2 - 3.0 * np.sin(x) - 3.0) + np.sin(y) * np.exp(
            np.cos(y)
        )
        return np.stack([g1, g2])

    def boundary_values(self, pts):
        return self.velocity(pts[:, 0], pts[:, 1])


class BrinkmanExterior:
    """pi-scaled manufactured flow, periodic on [-1,1]^2, for the exterior
    completion sweep: u = exp(sin(pi x)) cos(pi y), ..., p = exp(cos(pi y))."""

    mu = 1.0

    def __init__(self, k2=0.0):
        self.k2 = float(k2)

    def velocity(self, x, y):
        es = np.exp(np.sin(np.pi * x))
        return np.stack(
            [es * np.cos(np.pi * y), -np.cos(np.pi * x) * es * np.sin(np.pi * y)]
        )

    def pressure(self, x, y):
        return np.exp(np.cos(np.pi * y))

    def forcing(self, x, y):
        pi = np.pi
        es = np.exp(np.sin(pi * x))
        cx = np.cos(pi * x)
        g1 = pi**2 * es * np.cos(pi * y) * (cx**2 - np.sin(pi * x) - 1.0 - self.k2 / pi**2)
        g2 = -(pi**2) * cx * es * np.sin(pi * y) * (
            cx**2 - 3.0 * np.sin(pi * x) - 2.0 - self.k2 / pi**2
        ) + pi * np.sin(pi * y) * np.exp(np.cos(pi * y))
        return np.stack([g1, g2])

    def boundary_values(self, pts):
        return self.velocity(pts[:, 0], pts[:, 1])


class StokesFdManufactured:
    """Interior Stokes benchmark for the finite-difference variants:
    u = sin y - x exp(xy), v = cos x + y exp(xy), p = exp(x+y)."""

    mu = 1.0
    k2 = 0.0

    def velocity(self, x, y):
        e = np.exp(x * y)
        return np.stack([np.sin(y) - x * e, np.cos(x) + y * e])

    def pressure(self, x, y):
        return np.exp(x + y)

    def forcing(self, x, y):
        e = np.exp(x * y)
        g1 = -e * (2.0 * y + x * y**2 + x**3) - np.sin(y) - np.exp(x + y)
        g2 = e * (2.0 * x + x**2 * y + y**3) - np.cos(x) - np.exp(x + y)
        return np.stack([g1, g2])

    def boundary_values(self, pts):
        return self.velocity(pts[:, 0], pts[:, 1])


ANALYTIC = {
    "bessel_helmholtz": BesselHelmholtz,
    "poisson_trig": PoissonTrig,
    "exp_poisson": ExpPoisson,
    "linear_helmholtz": LinearHelmholtz,
    "quadratic_neumann": QuadraticNeumann,
    "brinkman_manufactured": BrinkmanManufactured,
    "brinkman_exterior": BrinkmanExterior,
    "stokes_fd_manufactured": StokesFdManufactured,
}


def assemble_dense(apply_op, n):
    """Column-by-column dense matrix of a matrix-free linear operator."""
    if n > 4096:
        raise ValueError(f"dense assembly guard: n = {n} > 4096")
    cols = []
    e = np.zeros(n)
    for j in range(n):
        e[j] = 1.0
        cols.append(np.asarray(apply_op(e), dtype=float).copy())
        e[j] = 0.0
    return np.stack(cols, axis=1)
