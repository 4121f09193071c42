"""Support-function representation of strictly convex planar curves.

A compact strictly convex curve is stored through N uniform samples of its
support function h(theta) = sup_{x in body} <x, (cos theta, sin theta)>.
In these coordinates the outward unit normal at the boundary point
P(theta) is (cos theta, sin theta), the boundary point itself is

    X(theta) = h (cos theta, sin theta) + h' (-sin theta, cos theta),

and the curvature is kappa = 1/(h + h'').  The representation is exact
for measuring widths (w(theta) = h(theta) + h(theta + pi)) and turns the
curve shortening equation into a scalar periodic PDE (see engine.py).
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import ConvexityLost, DomainError

# Below this floor for min(h + h'') the curvature blows up numerically
# and we refuse to continue rather than emit garbage.
CONVEXITY_FLOOR = 1e-9


def theta_grid(n: int) -> np.ndarray:
    """Uniform angle grid theta_i = 2*pi*i/n, i = 0..n-1."""
    return 2.0 * np.pi * np.arange(n) / n


def periodic_derivative(values: np.ndarray, order: int, scheme: str = "auto") -> np.ndarray:
    """Differentiate a periodic sample sequence on the uniform angle grid.

    scheme:
        "spectral"  FFT differentiation (smooth data, machine accuracy)
        "fd"        centered second-order differences
        "auto"      spectral when the sample count is a power of two,
                    centered differences otherwise (documented switch)
    """
    n = values.size
    if scheme == "auto":
        scheme = "spectral" if (n & (n - 1)) == 0 else "fd"
    step = 2.0 * np.pi / n
    if scheme == "fd":
        if order == 1:
            return (np.roll(values, -1) - np.roll(values, 1)) / (2.0 * step)
        if order == 2:
            return (np.roll(values, -1) - 2.0 * values + np.roll(values, 1)) / step**2
        raise ValueError(f"unsupported derivative order {order}")
    if scheme != "spectral":
        raise ValueError(f"unknown derivative scheme {scheme!r}")
    k = np.fft.rfftfreq(n, d=1.0 / n)
    coef = np.fft.rfft(values)
    if order == 1:
        coef = coef * (1j * k)
        if n % 2 == 0:
            coef[-1] = 0.0  # Nyquist mode has no well-defined odd derivative
    elif order == 2:
        coef = coef * -(k**2)
    else:
        raise ValueError(f"unsupported derivative order {order}")
    return np.fft.irfft(coef, n=n)


@dataclass(frozen=True)
class SupportFunction:
    """Sampled support function of a compact strictly convex planar curve.

    values[i] is h(2*pi*i/N).  Periodicity is implicit (index arithmetic
    mod N).  Construction enforces N >= 16, N even, and discrete strict
    convexity in the centered-difference sense.
    """

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        n = vals.size
        if n < 16 or n % 2 != 0:
            raise DomainError(f"need an even sample count >= 16, got {n}")
        if not np.all(np.isfinite(vals)):
            raise DomainError("support values must be finite")
        step = 2.0 * np.pi / n
        disc = vals + (np.roll(vals, -1) - 2.0 * vals + np.roll(vals, 1)) / step**2
        if np.min(disc) <= 0.0:
            raise ConvexityLost(
                f"discrete convexity failed: min h + h'' = {np.min(disc):.3e}"
            )

    @property
    def grid_size(self) -> int:
        return self.values.size

    @property
    def theta_step(self) -> float:
        return 2.0 * np.pi / self.values.size

    @property
    def theta(self) -> np.ndarray:
        return theta_grid(self.values.size)

    def derivative(self, order: int, scheme: str = "auto") -> np.ndarray:
        return periodic_derivative(self.values, order, scheme)

    def curvature_radius(self, scheme: str = "auto") -> np.ndarray:
        """h + h'', the radius of curvature at each grid angle."""
        return self.values + self.derivative(2, scheme)

    def scaled(self, factor: float) -> "SupportFunction":
        return SupportFunction(factor * self.values)


@dataclass(frozen=True)
class Timeslice:
    """One sampled embedded curve (or meridian of a revolved hypersurface).

    points     (m, d) sample positions
    normals    (m, d) outward unit normals
    curvature  mean curvature at each sample (positive for strictly
               convex slices, zero on lines/planes)
    time       flow time the slice belongs to
    arc_weights  optional quadrature weights for line integrals along the
               slice; required by the density diagnostics
    """

    time: float
    points: np.ndarray
    normals: np.ndarray
    curvature: np.ndarray
    arc_weights: np.ndarray | None = None

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        nrm = np.atleast_2d(np.asarray(self.normals, dtype=float))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "normals", nrm)
        object.__setattr__(self, "curvature", np.asarray(self.curvature, dtype=float))
        if self.arc_weights is not None:
            object.__setattr__(self, "arc_weights", np.asarray(self.arc_weights, dtype=float))
        lengths = np.linalg.norm(nrm, axis=1)
        if np.max(np.abs(lengths - 1.0)) > 1e-12:
            raise DomainError("normals must be unit vectors to 1e-12")

    @property
    def sample_count(self) -> int:
        return self.points.shape[0]

    def translated(self, offset) -> "Timeslice":
        return Timeslice(self.time, self.points + np.asarray(offset, dtype=float),
                         self.normals, self.curvature, self.arc_weights)


@dataclass(frozen=True)
class Measurements:
    """Scalar size measurements of a convex body."""

    width_min: float
    width_max: float
    diameter: float
    inradius: float
    circumradius: float

    def __post_init__(self):
        if not (self.width_min <= self.width_max + 1e-12
                and self.width_max <= self.diameter + 1e-9
                and self.inradius <= self.circumradius + 1e-9
                and 2.0 * self.inradius <= self.width_min + 1e-9):
            raise DomainError(f"inconsistent measurements: {self}")

    @property
    def eccentricity(self) -> float:
        return self.circumradius / self.inradius


def embed(h: SupportFunction, time: float = 0.0, scheme: str = "auto") -> Timeslice:
    """Realize the curve from its support function (inverse Gauss map).

    Returns samples with nu_i = (cos theta_i, sin theta_i), curvature
    H_i = 1/(h + h'')_i and trapezoidal arclength weights (h + h'') dtheta
    (the exact arc element in support coordinates).  The points trace the
    curve counterclockwise.

    Raises ConvexityLost when min(h + h'') falls below the floor.
    """
    th = h.theta
    h1 = h.derivative(1, scheme)
    radius = h.curvature_radius(scheme)
    if np.min(radius) <= CONVEXITY_FLOOR:
        raise ConvexityLost(f"h + h'' = {np.min(radius):.3e} at embedding")
    cos, sin = np.cos(th), np.sin(th)
    points = np.stack([h.values * cos - h1 * sin, h.values * sin + h1 * cos], axis=1)
    normals = np.stack([cos, sin], axis=1)
    weights = radius * h.theta_step
    return Timeslice(time, points, normals, 1.0 / radius, weights)


def widths(h: SupportFunction) -> np.ndarray:
    """Width function w(theta) = h(theta) + h(theta + pi) on the grid."""
    return h.values + np.roll(h.values, -h.grid_size // 2)


def smallest_enclosing_circle(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Smallest circle containing the points (Welzl-style incremental
    construction, expected linear time).  Returns (center, radius).

    The shuffle only affects running time, not the (unique) answer; it is
    seeded deterministically so repeated runs produce bit-identical output.
    """
    pts = [tuple(p) for p in np.asarray(points, dtype=float)]
    rng = _random.Random(8191 + len(pts))
    rng.shuffle(pts)

    def circle_two(p, q):
        cx = (p[0] + q[0]) / 2.0
        cy = (p[1] + q[1]) / 2.0
        r = max(_dist((cx, cy), p), _dist((cx, cy), q))
        return (cx, cy, r)

    def circle_three(p, q, r):
        ax, ay = p; bx, by = q; cx, cy = r
        d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        if d == 0.0:
            return None
        ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay)
              + (cx**2 + cy**2) * (ay - by)) / d
        uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx)
              + (cx**2 + cy**2) * (bx - ax)) / d
        rad = max(_dist((ux, uy), p), _dist((ux, uy), q), _dist((ux, uy), r))
        return (ux, uy, rad)

    def _dist(a, b):
        return float(np.hypot(a[0] - b[0], a[1] - b[1]))

    def inside(c, p, tol=1e-12):
        return c is not None and _dist((c[0], c[1]), p) <= c[2] * (1.0 + tol) + tol

    c = None
    for i, p in enumerate(pts):
        if inside(c, p):
            continue
        c = (p[0], p[1], 0.0)
        for j, q in enumerate(pts[: i + 1]):
            if inside(c, q):
                continue
            c = circle_two(p, q)
            for r in pts[: j + 1]:
                if inside(c, r):
                    continue
                cand = circle_three(p, q, r)
                if cand is not None:
                    c = cand
    return np.array([c[0], c[1]]), c[2]


def chebyshev_center(normals: np.ndarray, offsets: np.ndarray) -> tuple[np.ndarray, float]:
    """Largest inscribed circle of the polytope {x : <x, nu_i> <= h_i}.

    The halfplane description is exact in support coordinates, so this is
    a three-variable linear program: maximize r s.t. <x, nu_i> + r <= h_i.
    """
    m = normals.shape[0]
    a_ub = np.hstack([normals, np.ones((m, 1))])
    res = linprog(c=[0.0, 0.0, -1.0], A_ub=a_ub, b_ub=offsets,
                  bounds=[(None, None)] * 3, method="highs")
    if not res.success:
        raise DomainError(f"inscribed-circle LP failed: {res.message}")
    return res.x[:2], float(res.x[2])


def measure(h: SupportFunction) -> Measurements:
    """Widths, diameter, inradius and circumradius of the sampled body.

    The diameter is the exact diameter of the sampled polygon; for smooth
    convex bodies it coincides with max width up to discretization.
    """
    w = widths(h)
    slice_ = embed(h)
    pts = slice_.points
    # pairwise max distance; N <= a few thousand keeps this cheap
    diffs = pts[:, None, :] - pts[None, :, :]
    diameter = float(np.sqrt(np.max(np.einsum("ijk,ijk->ij", diffs, diffs))))
    _, circum = smallest_enclosing_circle(pts)
    _, inr = chebyshev_center(slice_.normals, h.values)
    return Measurements(float(np.min(w)), float(np.max(w)), diameter, inr, circum)


def recovered_support(slice_: Timeslice, directions: np.ndarray) -> np.ndarray:
    """h(theta) recomputed as max_i <X_i, (cos theta, sin theta)>."""
    nu = np.stack([np.cos(directions), np.sin(directions)], axis=1)
    return np.max(slice_.points @ nu.T, axis=0)
