"""Discretized immersed boundaries: point sets with arclength weights and
outward unit normals.

All shapes are closed curves sampled at equal arclength (dense parameter
sampling + cumulative chord inversion for non-circles).  Normals always
point out of the PDE domain: for an exterior domain they are the negated
canonical (enclosed-region-outward) normals.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class Circle:
    center: tuple
    radius: float


@dataclass(frozen=True)
class Ellipse:
    center: tuple
    semi_axes: tuple
    rotation: float = 0.0


@dataclass(frozen=True)
class Starfish:
    """Five-armed curve r(t) = scale*(1 + sin(10*pi*t)/4) around center."""

    center: tuple = (0.0, 0.0)
    scale: float = 1.0


@dataclass
class ImmersedBoundary:
    """Lagrangian boundary: points (m,2), arclength weights (m,),
    unit normals (m,2) pointing out of the PDE domain.

    ``component`` labels each point with the index of the closed curve it
    belongs to (several disjoint shapes may be concatenated); points of
    one component are ordered along that curve.  ``interior_is_domain``
    records which side of the curve(s) is the PDE domain.
    """

    points: np.ndarray
    weights: np.ndarray
    normals: np.ndarray
    interior_is_domain: bool = True
    component: np.ndarray = None
    closed: bool = True
    _caches: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        self.weights = np.asarray(self.weights, dtype=float)
        self.normals = np.atleast_2d(np.asarray(self.normals, dtype=float))
        m = len(self.points)
        if self.component is None:
            self.component = np.zeros(m, dtype=int)
        if not (len(self.weights) == len(self.normals) == m):
            raise GeometryError("points, weights and normals must have equal length")
        if np.any(self.weights <= 0):
            raise GeometryError("arclength weights must be positive")
        nrm = np.linalg.norm(self.normals, axis=1)
        if np.any(np.abs(nrm - 1.0) > 1e-9):
            raise GeometryError("normals must be unit vectors")

    @property
    def n_ib(self):
        return len(self.points)

    @property
    def total_length(self):
        return float(np.sum(self.weights))

    def uniform_spacing(self):
        """The common point spacing; raises if the weights are not uniform."""
        ds = float(self.weights[0])
        if np.max(np.abs(self.weights - ds)) > 1e-8 * ds:
            raise GeometryError("solver requires equally spaced boundary points")
        return ds

    def flip_orientation(self):
        """Same curve with the PDE domain on the other side."""
        return ImmersedBoundary(
            self.points.copy(),
            self.weights.copy(),
            -self.normals,
            interior_is_domain=not self.interior_is_domain,
            component=self.component.copy(),
        )


def approximate_normals(points, interior_is_domain=True):
    """Unit normals from the chord through each point's neighbors.

    The chord X(s_{i+1}) - X(s_{i-1}) is rotated by -90 degrees, which
    points out of the enclosed region for a counterclockwise curve; for
    an exterior PDE domain the result is negated.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if len(pts) < 3:
        raise GeometryError("need at least 3 points to approximate normals")
    chord = np.roll(pts, -1, axis=0) - np.roll(pts, 1, axis=0)
    norms = np.linalg.norm(chord, axis=1)
    if np.any(norms < 1e-14):
        raise GeometryError("coincident neighboring points make the normal degenerate")
    n = np.stack([chord[:, 1], -chord[:, 0]], axis=1) / norms[:, None]
    return n if interior_is_domain else -n


def arclength_weights(points):
    """Chord-length quadrature weights ds_i = ||X(s_{i+1}) - X(s_i)||."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    chord = np.roll(pts, -1, axis=0) - pts
    w = np.linalg.norm(chord, axis=1)
    if np.any(w < 1e-14):
        raise GeometryError("repeated point gives a degenerate zero weight")
    return w


def _resample_equal_arclength(param_fn, n_pts, dense=None):
    """Equally spaced points in arclength via cumulative chord inversion.

    Returns (t values, total length).  ``param_fn`` maps t in [0,1) to
    (k,2) positions on the closed curve.
    """
    m = dense if dense is not None else max(64 * n_pts, 4096)
    t = np.linspace(0.0, 1.0, m + 1)
    p = param_fn(t)
    seg = np.linalg.norm(np.diff(p, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    total = s[-1]
    targets = np.arange(n_pts) * (total / n_pts)
    return np.interp(targets, s, t), total


def _curve_length(param_fn, dense=4096):
    t = np.linspace(0.0, 1.0, dense + 1)
    p = param_fn(t)
    return float(np.sum(np.linalg.norm(np.diff(p, axis=0), axis=1)))


def _circle_param(center, radius):
    cx, cy = center

    def f(t):
        a = 2.0 * np.pi * np.asarray(t)
        return np.stack([cx + radius * np.cos(a), cy + radius * np.sin(a)], axis=-1)

    def tangent(t):
        a = 2.0 * np.pi * np.asarray(t)
        return np.stack([-np.sin(a), np.cos(a)], axis=-1)

    return f, tangent


def _ellipse_param(center, semi_axes, rotation):
    cx, cy = center
    a, b = semi_axes
    cr, sr = np.cos(rotation), np.sin(rotation)

    def f(t):
        th = 2.0 * np.pi * np.asarray(t)
        x, y = a * np.cos(th), b * np.sin(th)
        return np.stack([cx + cr * x - sr * y, cy + sr * x + cr * y], axis=-1)

    def tangent(t):
        th = 2.0 * np.pi * np.asarray(t)
        x, y = -a * np.sin(th), b * np.cos(th)
        return np.stack([cr * x - sr * y, sr * x + cr * y], axis=-1)

    return f, tangent


def _starfish_param(center, scale):
    cx, cy = center

    def radius(t):
        return scale * (1.0 + np.sin(10.0 * np.pi * np.asarray(t)) / 4.0)

    def f(t):
        t = np.asarray(t)
        th = 2.0 * np.pi * t
        r = radius(t)
        return np.stack([cx + r * np.cos(th), cy + r * np.sin(th)], axis=-1)

    def tangent(t):
        t = np.asarray(t)
        th = 2.0 * np.pi * t
        r = radius(t)
        dr = scale * 2.5 * np.pi * np.cos(10.0 * np.pi * t)
        tx = dr * np.cos(th) - 2.0 * np.pi * r * np.sin(th)
        ty = dr * np.sin(th) + 2.0 * np.pi * r * np.cos(th)
        return np.stack([tx, ty], axis=-1)

    return f, tangent


_PARAMS = {
    Circle: lambda s: _circle_param(s.center, s.radius),
    Ellipse: lambda s: _ellipse_param(s.center, s.semi_axes, s.rotation),
    Starfish: lambda s: _starfish_param(s.center, s.scale),
}


def _check_inside_box(points, grid):
    lo = np.asarray(grid.origin)
    hi = lo + grid.length
    if np.any(points <= lo) or np.any(points >= hi):
        raise GeometryError("shape touches or exceeds the computational box")


def discretize(shape, grid, alpha, interior_is_domain=True):
    """Equal-arclength boundary points with ds ~ alpha*dx and analytic normals.

    The point count is n_ib = round(L_ib / (alpha*dx)) and the exact
    ds = L_ib / n_ib is used as the quadrature weight.
    """
    if alpha <= 0:
        raise GeometryError("spacing ratio alpha must be positive")
    try:
        param_fn, tangent_fn = _PARAMS[type(shape)](shape)
    except KeyError:
        raise GeometryError(f"unsupported shape {type(shape).__name__}") from None

    if isinstance(shape, Circle):
        length = 2.0 * np.pi * shape.radius
        n_ib = int(round(length / (alpha * grid.dx)))
        if n_ib < 4:
            raise GeometryError("boundary resolves to fewer than 4 points")
        t = np.arange(n_ib) / n_ib
    else:
        length = _curve_length(param_fn)
        n_ib = int(round(length / (alpha * grid.dx)))
        if n_ib < 4:
            raise GeometryError("boundary resolves to fewer than 4 points")
        t, length = _resample_equal_arclength(param_fn, n_ib)

    pts = param_fn(t)
    _check_inside_box(pts, grid)
    tan = tangent_fn(t)
    tan /= np.linalg.norm(tan, axis=1)[:, None]
    normals = np.stack([tan[:, 1], -tan[:, 0]], axis=1)
    if not interior_is_domain:
        normals = -normals
    ds = length / n_ib
    return ImmersedBoundary(
        pts, np.full(n_ib, ds), normals, interior_is_domain=interior_is_domain
    )


def from_points(points, normals=None, interior_is_domain=True, exact_spacing=None):
    """Boundary from an ordered closed point list; missing normals are
    approximated from chords, weights are chord lengths (or the exact
    uniform spacing when supplied)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if normals is None:
        normals = approximate_normals(pts, interior_is_domain)
    if exact_spacing is not None:
        w = np.full(len(pts), float(exact_spacing))
    else:
        w = arclength_weights(pts)
    return ImmersedBoundary(pts, w, normals, interior_is_domain=interior_is_domain)


def load_point_list(path, interior_is_domain=True):
    """Read `x y [nx ny]` rows (one boundary point per line, ordered along
    the curve; blank lines and #-comments ignored)."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            vals = [float(v) for v in line.split()]
            if len(vals) not in (2, 4):
                raise GeometryError(f"point list rows need 2 or 4 columns, got {len(vals)}")
            rows.append(vals)
    if not rows:
        raise GeometryError(f"no points found in {path}")
    ncols = {len(r) for r in rows}
    if len(ncols) != 1:
        raise GeometryError("mixed 2- and 4-column rows in point list")
    arr = np.asarray(rows)
    normals = arr[:, 2:4] if arr.shape[1] == 4 else None
    if normals is not None:
        normals = normals / np.linalg.norm(normals, axis=1)[:, None]
    return from_points(arr[:, :2], normals, interior_is_domain)


def concatenate(boundaries):
    """Join several disjoint closed boundaries into one Lagrangian set."""
    if not boundaries:
        raise GeometryError("nothing to concatenate")
    sides = {b.interior_is_domain for b in boundaries}
    if len(sides) != 1:
        raise GeometryError("all boundaries must put the PDE domain on the same side")
    centers = [np.mean(b.points, axis=0) for b in boundaries]
    radii = [np.max(np.linalg.norm(b.points - c, axis=1)) for b, c in zip(boundaries, centers)]
    for i in range(len(boundaries)):
        for j in range(i + 1, len(boundaries)):
            if np.linalg.norm(centers[i] - centers[j]) < radii[i] + radii[j]:
                warnings.warn(
                    f"bounding circles of boundary components {i} and {j} overlap",
                    stacklevel=2,
                )
    comp = np.concatenate(
        [np.full(b.n_ib, i, dtype=int) for i, b in enumerate(boundaries)]
    )
    return ImmersedBoundary(
        np.concatenate([b.points for b in boundaries]),
        np.concatenate([b.weights for b in boundaries]),
        np.concatenate([b.normals for b in boundaries]),
        interior_is_domain=boundaries[0].interior_is_domain,
        component=comp,
    )
