"""Explicit ancient solutions and translating solitons.

These are the laboratory's reference objects: the shrinking circle, the
shrinking-cylinder radius law, the Grim Reaper curve y = t - log cos x,
the closed convex ancient oval {cosh y = e^{-t} cos x} and the
rotationally symmetric bowl translator.  They serve both as initial data
for the evolution engine and as independent oracles for its output.

The oval's Gauss-map closed forms are worth recording.  Writing
beta(t) = (1 - e^{2t})^{-1/2}, the point with outward normal
(cos theta, sin theta) is

    x = asin(cos(theta)/beta),
    cos x = sqrt(sin^2 theta + e^{2t} cos^2 theta),
    y = sign(sin theta) * arccosh(e^{-t} cos x),

with curvature kappa(theta) = sqrt(beta^2 - cos^2 theta).  All formulas
below are arranged so they stay accurate in floating point arbitrarily
far in the past (the naive forms overflow or cancel once |t| exceeds a
few hundred).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, IntegrationFailure, OutOfSweep
from .flows import SupportFlow, record_times
from .support import SupportFunction, Timeslice, theta_grid


def shrinker_radius(n: int, k: int, t: float) -> float:
    """Radius of the spherical factor of the shrinking cylinder
    R^k x S^{n-k} at time t; k = 0 gives the shrinking sphere."""
    if t >= 0.0:
        raise DomainError(f"shrinker radius needs t < 0, got {t}")
    if not 0 <= k < n:
        raise DomainError(f"need 0 <= k < n, got k={k}, n={n}")
    return float(np.sqrt(-2.0 * (n - k) * t))


def shrinking_circle(t: float, grid_size: int = 64) -> SupportFunction:
    """Support function of the shrinking circle of radius sqrt(-2t)."""
    if t >= 0.0:
        raise DomainError(f"shrinking circle needs t < 0, got {t}")
    return SupportFunction(np.full(grid_size, shrinker_radius(1, 0, t)))


def _arccosh_large(log_z: np.ndarray) -> np.ndarray:
    """arccosh(z) from log(z), valid for all z >= 1.

    For log z > 20 the exact identity arccosh z = log(2z) + log((1 +
    sqrt(1 - z^-2))/2) reduces to log 2 + log z to double precision.
    """
    log_z = np.asarray(log_z, dtype=float)
    out = np.empty_like(log_z)
    big = log_z > 20.0
    out[big] = np.log(2.0) + log_z[big]
    z = np.exp(np.minimum(log_z, 25.0))
    small = ~big
    out[small] = np.arccosh(np.maximum(z[small], 1.0))
    return out


class CircleFamily:
    """The shrinking circle as an exact flow, extincting at the origin."""

    label = "circle"

    def support(self, theta, t):
        self._check(t)
        return np.full(np.shape(theta), np.sqrt(-2.0 * t))

    def curvature(self, theta, t):
        self._check(t)
        return np.full(np.shape(theta), 1.0 / np.sqrt(-2.0 * t))

    def boundary_point(self, theta, t):
        self._check(t)
        r = np.sqrt(-2.0 * t)
        return np.array([r * np.cos(theta), r * np.sin(theta)])

    def gauss_slice(self, theta, t):
        self._check(t)
        th = np.asarray(theta, dtype=float)
        r = np.sqrt(-2.0 * t)
        nu = np.stack([np.cos(th), np.sin(th)], axis=1)
        w = np.full(th.size, r * 2.0 * np.pi / th.size)
        return Timeslice(t, r * nu, nu, np.full(th.size, 1.0 / r), w)

    def arc_slice(self, t, center, radius):
        return self.gauss_slice(theta_grid(4096), t)

    def arrival_time(self, points):
        pts = np.atleast_2d(points)
        return -0.5 * np.einsum("ij,ij->i", pts, pts)

    @staticmethod
    def _check(t):
        if t >= 0.0:
            raise DomainError(f"circle family needs t < 0, got {t}")


class OvalFamily:
    """The ancient convex oval {cosh y = e^{-t} cos x}, |x| < pi/2.

    Compact for every t < 0, extinct at the spacetime origin, asymptotic
    to two translating caps moving vertically with unit speed and to the
    slab |x| < pi/2 as t -> -infinity.
    """

    label = "oval"

    @staticmethod
    def _beta(t):
        return 1.0 / np.sqrt(-np.expm1(2.0 * t))

    def geometry(self, theta, t):
        """Exact (x, y, kappa) at the requested Gauss angles."""
        self._check(t)
        theta = np.asarray(theta, dtype=float)
        beta = self._beta(t)
        cos_th, sin_th = np.cos(theta), np.sin(theta)
        x = np.arcsin(np.clip(cos_th / beta, -1.0, 1.0))
        # stable: cos^2 x = sin^2 theta + e^{2t} cos^2 theta
        cos_x_sq = sin_th**2 + np.exp(2.0 * t) * cos_th**2
        log_z = -t + 0.5 * np.log(np.maximum(cos_x_sq, np.finfo(float).tiny))
        y_abs = np.where(cos_x_sq > 0.0, _arccosh_large(log_z), 0.0)
        y = np.sign(sin_th) * y_abs
        kappa = np.sqrt(beta**2 - cos_th**2)
        return x, y, kappa

    def support(self, theta, t):
        x, y, _ = self.geometry(theta, t)
        return x * np.cos(theta) + y * np.sin(theta)

    def curvature(self, theta, t):
        _, _, kappa = self.geometry(theta, t)
        return kappa

    def boundary_point(self, theta, t):
        x, y, _ = self.geometry(np.asarray([theta]), t)
        return np.array([x[0], y[0]])

    def gauss_slice(self, theta, t):
        th = np.asarray(theta, dtype=float)
        x, y, kappa = self.geometry(th, t)
        pts = np.stack([x, y], axis=1)
        nu = np.stack([np.cos(th), np.sin(th)], axis=1)
        step = 2.0 * np.pi / th.size
        # far in the past the slab directions have kappa below double
        # precision; Gauss-grid weights are only meaningful where the
        # grid resolves the curve (density paths use arc_slice instead)
        w = step / np.maximum(kappa, np.finfo(float).tiny)
        return Timeslice(t, pts, nu, kappa, w)

    def tip_height(self, t):
        """Extent along the long axis: y_max = arccosh(e^{-t})."""
        self._check(t)
        return float(_arccosh_large(np.asarray(-t)))

    def tip_width(self, t):
        """Half-extent across the slab: x_tip = arccos(e^t)."""
        self._check(t)
        return float(np.arccos(np.exp(t)))

    def width_at_height(self, y, t):
        """Chord length across the slab direction at height y."""
        self._check(t)
        y = np.asarray(y, dtype=float)
        c = 0.5 * (np.exp(t + y) + np.exp(t - y))  # e^t cosh y, overflow-free
        if np.any(c > 1.0 + 1e-12):
            raise DomainError("height outside the body")
        return 2.0 * np.arccos(np.minimum(c, 1.0))

    def arrival_time(self, points):
        """Closed-form arrival time u(x, y) = log cos x - log cosh y."""
        pts = np.atleast_2d(points)
        x, y = pts[:, 0], pts[:, 1]
        if np.any(np.abs(x) >= np.pi / 2):
            raise OutOfSweep("point outside the slab |x| < pi/2")
        # log cosh y = |y| + log((1 + e^{-2|y|})/2)
        log_cosh = np.abs(y) + np.log1p(np.exp(-2.0 * np.abs(y))) - np.log(2.0)
        return np.log(np.cos(x)) - log_cosh

    def arc_slice(self, t, center, radius):
        """Arc-adapted sampling of the slice inside B(center, radius).

        Uniform Gauss-angle grids put essentially no samples on the long
        flat sides of an old oval; here the sides are parametrized by
        height and the caps by abscissa, split at the 45-degree tangent.
        """
        self._check(t)
        center = np.asarray(center, dtype=float)
        y_max = self.tip_height(t)
        # 45-degree tangency: theta = pi/4 on the upper-right quarter
        x45, y45, _ = self.geometry(np.asarray([np.pi / 4]), t)
        x45, y45 = float(x45[0]), float(y45[0])
        win_lo, win_hi = center[1] - radius, center[1] + radius
        spacing = radius / 1500.0
        pieces = []

        def side_piece(y_lo, y_hi, sign_x, sign_y):
            if y_hi <= y_lo:
                return
            m = int(np.clip(np.ceil((y_hi - y_lo) / spacing), 64, 40000))
            y = np.linspace(y_lo, y_hi, m)
            c = 0.5 * (np.exp(t + y) + np.exp(t - y))  # cos x on the curve
            x = np.arccos(np.minimum(c, 1.0))
            beta = self._beta(t)
            sin_x = np.sqrt(np.maximum(1.0 - c**2, 0.0))
            s = 0.5 * (np.exp(t + y) - np.exp(t - y))  # e^t sinh y
            nu = np.stack([sign_x * beta * sin_x, sign_y * beta * s], axis=1)
            kappa = beta * c
            dxdy = np.where(sin_x > 0.0, s / np.maximum(sin_x, 1e-300), 0.0)
            ds = np.sqrt(1.0 + dxdy**2)
            w = _trapezoid_weights(y) * ds
            pts = np.stack([sign_x * x, sign_y * y], axis=1)
            pieces.append((pts, nu, kappa, w))

        def cap_piece(sign_y):
            m = int(np.clip(np.ceil(2 * x45 / spacing), 64, 40000))
            x = np.linspace(-x45, x45, m)
            log_z = -t + np.log(np.cos(x))
            y = _arccosh_large(log_z)
            beta = self._beta(t)
            s_plus, s_minus = np.exp(t + y), np.exp(t - y)
            nu = np.stack([beta * np.sin(x), sign_y * beta * 0.5 * (s_plus - s_minus)], axis=1)
            kappa = beta * 0.5 * (s_plus + s_minus)
            dydx = 2.0 * np.sin(x) / np.maximum(s_plus - s_minus, 1e-300)
            ds = np.sqrt(1.0 + dydx**2)
            w = _trapezoid_weights(x) * ds
            pts = np.stack([x, sign_y * y], axis=1)
            pieces.append((pts, nu, kappa, w))

        for sign_y in (+1.0, -1.0):
            lo, hi = (win_lo, win_hi) if sign_y > 0 else (-win_hi, -win_lo)
            y_lo = max(0.0, lo)
            y_hi = min(y45, hi)
            for sign_x in (+1.0, -1.0):
                side_piece(y_lo, y_hi, sign_x, sign_y)
            cap_lo = y45 if sign_y > 0 else -y_max
            cap_hi = y_max if sign_y > 0 else -y45
            if cap_hi >= lo and cap_lo <= hi:
                cap_piece(sign_y)

        if not pieces:
            raise DomainError("window does not intersect the oval")
        pts = np.vstack([p[0] for p in pieces])
        nu = np.vstack([p[1] for p in pieces])
        kap = np.concatenate([p[2] for p in pieces])
        w = np.concatenate([p[3] for p in pieces])
        return Timeslice(t, pts, nu, kap, w)

    @staticmethod
    def _check(t):
        if t >= 0.0:
            raise DomainError(f"oval family needs t < 0, got {t}")


class GrimReaperFamily:
    """The translating curve y = t - log cos x inside the slab |x| < pi/2.

    As an ancient flow its tip trajectory (0, t) reaches the origin at
    time zero, which is the natural basepoint for density measurements.
    """

    label = "grim"

    def slice_at(self, t, x):
        return grim_reaper(t, x)

    def arc_slice(self, t, center, radius):
        center = np.asarray(center, dtype=float)
        spacing = radius / 1500.0
        pieces = []
        y45 = t + 0.5 * np.log(2.0)  # 45-degree tangency height
        win_lo, win_hi = center[1] - radius, center[1] + radius

        def arm(sign_x, y_lo, y_hi):
            if y_hi <= y_lo:
                return
            m = int(np.clip(np.ceil((y_hi - y_lo) / spacing), 64, 40000))
            y = np.linspace(y_lo, y_hi, m)
            c = np.exp(t - y)  # cos x on the curve; harmless underflow far up
            x = np.arccos(np.minimum(c, 1.0))
            sin_x = np.sqrt(np.maximum(1.0 - c**2, 0.0))
            nu = np.stack([sign_x * sin_x, -c], axis=1)
            dxdy = c / np.maximum(sin_x, 1e-300)
            w = _trapezoid_weights(y) * np.sqrt(1.0 + dxdy**2)
            pts = np.stack([sign_x * x, y], axis=1)
            pieces.append((pts, nu, c, w))

        if win_hi > y45:
            for sign_x in (+1.0, -1.0):
                arm(sign_x, max(y45, win_lo), win_hi)
        if win_lo < y45:  # tip cap, parametrized by abscissa
            m = 2048
            x = np.linspace(-np.pi / 4, np.pi / 4, m)
            y = t - np.log(np.cos(x))
            nu = np.stack([np.sin(x), -np.cos(x)], axis=1)
            w = _trapezoid_weights(x) / np.cos(x)
            pieces.append((np.stack([x, y], axis=1), nu, np.cos(x), w))
        if not pieces:
            raise DomainError("window does not intersect the curve")
        pts = np.vstack([p[0] for p in pieces])
        nu = np.vstack([p[1] for p in pieces])
        kap = np.concatenate([p[2] for p in pieces])
        w = np.concatenate([p[3] for p in pieces])
        return Timeslice(t, pts, nu, kap, w)


def _trapezoid_weights(x: np.ndarray) -> np.ndarray:
    w = np.empty_like(x)
    w[1:-1] = 0.5 * (x[2:] - x[:-2])
    w[0] = 0.5 * (x[1] - x[0])
    w[-1] = 0.5 * (x[-1] - x[-2])
    return w


def grim_reaper(t: float, x_samples: np.ndarray) -> Timeslice:
    """Samples of the Grim Reaper y = t - log cos x.

    The curve translates with unit speed in +e2; the outward (downward)
    normal is (sin x, -cos x) and the curvature is cos x, so the
    translator identity kappa = |<nu, e2>| holds exactly.
    """
    x = np.asarray(x_samples, dtype=float)
    if np.any(np.abs(x) >= np.pi / 2):
        raise DomainError("Grim Reaper abscissae must satisfy |x| < pi/2")
    y = t - np.log(np.cos(x))
    pts = np.stack([x, y], axis=1)
    nu = np.stack([np.sin(x), -np.cos(x)], axis=1)
    kappa = np.cos(x)
    order = np.argsort(x)
    if x.size >= 2:
        w = np.empty_like(x)
        xs = x[order]
        wi = _trapezoid_weights(xs) / np.cos(xs)
        w[order] = wi
    else:
        w = np.ones_like(x)
    return Timeslice(t, pts, nu, kappa, w)


def angenent_oval(t: float, sample_count: int = 256) -> Timeslice:
    """Samples of the ancient oval {cosh y = e^{-t} cos x} at time t.

    Sampling is uniform in the Gauss angle, which in the abscissa is a
    Chebyshev-like clustering toward the slab tips x = +-arccos(e^t)
    where a uniform x-grid loses the vertical turn of the curve.
    """
    if t >= 0.0:
        raise DomainError(f"the oval needs t < 0, got {t}")
    fam = OvalFamily()
    th = theta_grid(sample_count)
    x, y, kappa = fam.geometry(th, t)
    pts = np.stack([x, y], axis=1)
    nu = np.stack([np.cos(th), np.sin(th)], axis=1)
    w = (2.0 * np.pi / sample_count) / kappa
    return Timeslice(t, pts, nu, kappa, w)


@dataclass(frozen=True)
class RadialProfile:
    """Rotationally symmetric graph u(r) of a translator in R^{n+1}."""

    dimension: int
    radii: np.ndarray
    heights: np.ndarray
    slopes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "radii", np.asarray(self.radii, dtype=float))
        object.__setattr__(self, "heights", np.asarray(self.heights, dtype=float))
        object.__setattr__(self, "slopes", np.asarray(self.slopes, dtype=float))
        if self.dimension < 2:
            raise DomainError("profiles are for n >= 2")
        r = self.radii
        if r[0] != 0.0 or np.any(np.diff(r) <= 0.0):
            raise DomainError("radii must increase strictly from 0")
        if abs(self.heights[0]) > 1e-14 or abs(self.slopes[0]) > 1e-14:
            raise DomainError("bowl profiles start with u(0) = u'(0) = 0")
        if np.any(np.diff(self.slopes) < -1e-12):
            raise DomainError("slope must be nondecreasing (convexity)")

    @property
    def r_max(self) -> float:
        return float(self.radii[-1])

    def height_at(self, r):
        return np.interp(r, self.radii, self.heights)

    def radius_at_height(self, u):
        return np.interp(u, self.heights, self.radii)


def bowl_profile(n: int, r_max: float, step: float = 1e-2) -> RadialProfile:
    """Integrate the rotationally symmetric translator profile.

    The graph satisfies u''/(1 + u'^2) + (n-1) u'/r = 1 with u(0) = 0,
    u'(0) = 0.  The singular origin is handled by the series
    u = r^2/(2n) + r^4/(4 n^3 (n+2)) + O(r^6) on [0, step]; the ODE is
    integrated outward from r = step and resampled on a uniform grid.
    """
    if n < 2:
        raise DomainError("bowl profiles are for n >= 2")
    if r_max < 1.0:
        raise DomainError("r_max must be at least 1")
    if step > 1e-2:
        raise DomainError("step must be at most 1e-2")

    c4 = 1.0 / (4.0 * n**3 * (n + 2))

    def series_u(r):
        return r**2 / (2.0 * n) + c4 * r**4

    def series_du(r):
        return r / n + 4.0 * c4 * r**3

    def rhs(r, y):
        u, du = y
        return [du, (1.0 + du**2) * (1.0 - (n - 1) * du / r)]

    sol = solve_ivp(rhs, (step, r_max), [series_u(step), series_du(step)],
                    method="RK45", rtol=1e-11, atol=1e-13, dense_output=True)
    if not sol.success:
        raise IntegrationFailure(f"bowl profile integration failed: {sol.message}")

    count = int(np.ceil(r_max / step))
    r = np.linspace(0.0, r_max, count + 1)
    u = np.empty_like(r)
    du = np.empty_like(r)
    inner = r <= step
    u[inner] = series_u(r[inner])
    du[inner] = series_du(r[inner])
    vals = sol.sol(r[~inner])
    u[~inner], du[~inner] = vals[0], vals[1]
    return RadialProfile(n, r, u, du)


def line_slice(point, direction, half_length: float, count: int = 2001,
               time: float = -1.0) -> Timeslice:
    """A straight-line fixture (stationary solution, H = 0)."""
    point = np.asarray(point, dtype=float)
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    s = np.linspace(-half_length, half_length, count)
    pts = point[None, :] + s[:, None] * d[None, :]
    nu = np.tile([-d[1], d[0]], (count, 1))
    w = _trapezoid_weights(s)
    return Timeslice(time, pts, nu, np.zeros(count), w)


def union_slices(a: Timeslice, b: Timeslice) -> Timeslice:
    """Disjoint union of two slices at the same time (quadrature adds)."""
    if a.time != b.time:
        raise DomainError("slices must share their time")
    return Timeslice(a.time,
                     np.vstack([a.points, b.points]),
                     np.vstack([a.normals, b.normals]),
                     np.concatenate([a.curvature, b.curvature]),
                     np.concatenate([a.arc_weights, b.arc_weights]))


def circle_flow(t0: float, t1: float, resolution: int = 256,
                per_decade: int = 64) -> SupportFlow:
    """Exact shrinking-circle flow sampled at the recording cadence."""
    fam = CircleFamily()
    times = record_times(t0, t1, per_decade)
    grid = theta_grid(resolution)
    frames = tuple(SupportFunction(fam.support(grid, t)) for t in times)
    return SupportFlow(times, frames, resolution, family=fam)


def oval_flow(t0: float, t1: float, resolution: int = 256,
              per_decade: int = 64) -> SupportFlow:
    """Exact ancient-oval flow sampled at the recording cadence."""
    fam = OvalFamily()
    times = record_times(t0, t1, per_decade)
    grid = theta_grid(resolution)
    frames = tuple(SupportFunction(fam.support(grid, t)) for t in times)
    return SupportFlow(times, frames, resolution, family=fam)


def ellipse_support(a: float, b: float, resolution: int = 256) -> SupportFunction:
    """Support function sqrt(a^2 cos^2 + b^2 sin^2) of an ellipse."""
    th = theta_grid(resolution)
    return SupportFunction(np.sqrt(a**2 * np.cos(th)**2 + b**2 * np.sin(th)**2))
