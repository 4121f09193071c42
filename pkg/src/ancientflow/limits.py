"""Limiting constructions for ancient flows.

blow_down        parabolic rescaling into the far past, classified by
                 Gaussian density against the shrinker values
                 {1, sqrt(2 pi/e), 2}
asymptotic_translator
                 recentred far-past frames at a fixed Gauss direction,
                 with the speed sequence whose limit is the translator
                 speed
arrival_time_field
                 the function u with u(X) = t exactly when X lies on the
                 time-t curve, reconstructed by inverting the nested
                 sweep of the frames, with difference stencils for Du
                 and D^2 u
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .density import estimate_extinction, gaussian_density, density_window_slice, \
    frame_slice, CIRCLE_DENSITY
from .errors import (DegenerateGradient, DomainError, InsufficientHistory,
                     OutOfSweep, StencilFailure)
from .flows import SupportFlow
from .support import Timeslice

PLANE_MULT1 = "PlaneMult1"
CIRCLE = "Circle"
PLANE_MULT2 = "PlaneMult2"
INCONCLUSIVE = "Inconclusive"

# classification bands: wider than the quadrature error, narrower than
# half the gap between neighbouring target densities
DENSITY_TARGETS = ((1.0, PLANE_MULT1), (CIRCLE_DENSITY, CIRCLE), (2.0, PLANE_MULT2))
DENSITY_BAND = 0.05

GRADIENT_FLOOR = 0.1


@dataclass(frozen=True)
class BlowDownResult:
    scales: np.ndarray
    densities: np.ndarray
    label: str

    def pairs(self):
        return list(zip(self.scales, self.densities))


def _classify_density(value: float) -> str:
    best, label = min(((abs(value - target), lab) for target, lab in DENSITY_TARGETS))
    return label if best <= DENSITY_BAND else INCONCLUSIVE


def default_blowdown_scales(flow: SupportFlow, basepoint=None) -> np.ndarray:
    """A decreasing scale ladder reaching as far back as the flow covers."""
    if basepoint is None:
        basepoint = estimate_extinction(flow)
    lam_min = (1.0 + 1e-9) / np.sqrt(basepoint[1] - flow.t_first)
    ladder = np.clip([4.0 * lam_min, 2.0 * lam_min, lam_min], lam_min,
                     min(0.95, 1.0))
    return np.asarray(sorted(set(ladder.tolist()), reverse=True))


def blow_down(flow: SupportFlow, lambdas, basepoint=None) -> BlowDownResult:
    """Gaussian densities of the rescaled flows at t = -1.

    For each scale the original slice at time t_ext - lambda^{-2} is
    recentred on the extinction-point estimate, scaled, and its Gaussian
    area about the spacetime origin evaluated.  The label is the density
    target matched by the two smallest scales (Inconclusive when they
    disagree or miss every band).
    """
    lams = np.asarray(lambdas, dtype=float)
    if np.any(lams <= 0.0) or np.any(lams > 1.0) or np.any(np.diff(lams) >= 0.0):
        raise DomainError("scales must be a decreasing sequence in (0, 1]")
    if basepoint is None:
        basepoint = estimate_extinction(flow)
    x_ext, t_ext = basepoint
    densities = []
    for lam in lams:
        t_orig = t_ext - lam**-2
        if t_orig < flow.t_first - 1e-9 * abs(flow.t_first):
            raise InsufficientHistory(
                f"scale {lam} needs history to t = {t_orig}, flow starts at {flow.t_first}")
        slice_ = density_window_slice(flow, max(t_orig, flow.t_first), (x_ext, t_ext))
        pts = lam * (slice_.points - np.asarray(x_ext)[None, :])
        weights = lam * slice_.arc_weights
        rescaled = Timeslice(-1.0, pts, slice_.normals,
                             slice_.curvature / lam, weights)
        densities.append(gaussian_density(rescaled, (np.zeros(2), 0.0)))
    densities = np.asarray(densities)
    tail = [_classify_density(v) for v in densities[-2:]]
    label = tail[0] if len(set(tail)) == 1 and tail[0] != INCONCLUSIVE else INCONCLUSIVE
    return BlowDownResult(lams, densities, label)


@dataclass(frozen=True)
class TranslatorLimit:
    direction: np.ndarray
    times: np.ndarray
    slices: tuple[Timeslice, ...]
    speeds: np.ndarray


def asymptotic_translator(flow: SupportFlow, direction, times) -> TranslatorLimit:
    """Recentred frames M_{s_j} - P(e, s_j) with their tip speeds.

    P(e, s) is the boundary point whose outward normal is e; the speed
    sequence H(P(e, s_j), s_j) converges to the translation speed of the
    limiting translator (zero means the limit is a stationary line).
    """
    e = np.asarray(direction, dtype=float)
    e = e / np.linalg.norm(e)
    theta_e = float(np.arctan2(e[1], e[0])) % (2.0 * np.pi)
    ts = np.asarray(times, dtype=float)
    out_slices = []
    speeds = []
    for s in ts:
        if s < flow.t_first - 1e-12 or s > flow.t_last + 1e-12:
            raise InsufficientHistory(f"no frame history at s = {s}")
        if flow.family is not None:
            tip = flow.family.boundary_point(theta_e, s)
            speed = float(np.asarray(flow.family.curvature(np.asarray([theta_e]), s))[0])
            slice_ = frame_slice(flow, t=s)
        else:
            slice_ = frame_slice(flow, t=s)
            idx = int(np.argmin(np.abs((slice_.normals @ e) - 1.0)))
            tip = slice_.points[idx]
            speed = float(slice_.curvature[idx])
        out_slices.append(slice_.translated(-np.asarray(tip)))
        speeds.append(speed)
    return TranslatorLimit(e, ts, tuple(out_slices), np.asarray(speeds))


def _support_violation(frame, point) -> float:
    """max over theta of <X, nu(theta)> - h(theta), refined parabolically.

    Positive means the point lies outside the body.  The grid maximum is
    sharpened with a parabola through the three samples around the
    argmax; the remaining error is O(dtheta^4).
    """
    th = frame.theta
    g = point[0] * np.cos(th) + point[1] * np.sin(th) - frame.values
    i = int(np.argmax(g))
    gm, g0, gp = g[i - 1], g[i], g[(i + 1) % g.size]
    denom = gm - 2.0 * g0 + gp
    if denom >= -1e-300:
        return float(g0)
    delta = 0.5 * (gm - gp) / denom
    return float(g0 - 0.25 * (gm - gp) * delta)


@dataclass(frozen=True)
class ArrivalTimeField:
    """Arrival time sampled on a rectangular grid, with stencils."""

    x: np.ndarray
    y: np.ndarray
    u: np.ndarray  # shape (len(x), len(y))

    @property
    def hx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def hy(self) -> float:
        return float(self.y[1] - self.y[0])

    def gradient(self):
        """Centered-difference Du on the interior, shape (2, nx-2, ny-2)."""
        u = self.u
        ux = (u[2:, 1:-1] - u[:-2, 1:-1]) / (2.0 * self.hx)
        uy = (u[1:-1, 2:] - u[1:-1, :-2]) / (2.0 * self.hy)
        return np.stack([ux, uy])

    def hessians(self):
        """Centered-difference D^2 u on the interior, shape (nx-2, ny-2, 2, 2)."""
        u = self.u
        uxx = (u[2:, 1:-1] - 2.0 * u[1:-1, 1:-1] + u[:-2, 1:-1]) / self.hx**2
        uyy = (u[1:-1, 2:] - 2.0 * u[1:-1, 1:-1] + u[1:-1, :-2]) / self.hy**2
        uxy = (u[2:, 2:] - u[2:, :-2] - u[:-2, 2:] + u[:-2, :-2]) / (4.0 * self.hx * self.hy)
        hess = np.empty(uxx.shape + (2, 2))
        hess[..., 0, 0] = uxx
        hess[..., 1, 1] = uyy
        hess[..., 0, 1] = hess[..., 1, 0] = uxy
        return hess

    def hessian_max_eigenvalue(self) -> float:
        hess = self.hessians()
        eigs = np.linalg.eigvalsh(hess.reshape(-1, 2, 2))
        return float(np.max(eigs))


def arrival_time(flow: SupportFlow, points) -> np.ndarray:
    """u(X) for each query point: the time the flow crosses X.

    Catalog families evaluate their closed forms; otherwise the signed
    support violation is driven to zero in t across the recorded frames
    (bisection bracket + Brent refinement on interpolated frames).
    Raises OutOfSweep for points inside the final body or outside the
    initial one.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    fam = flow.family
    if fam is not None and hasattr(fam, "arrival_time"):
        u = np.asarray(fam.arrival_time(pts), dtype=float)
        bad = (u < flow.t_first - 1e-9) | (u > flow.t_last + 1e-9)
        if np.any(bad):
            raise OutOfSweep(f"{int(np.sum(bad))} points outside the recorded sweep")
        return u

    out = np.empty(pts.shape[0])
    violations = np.array([[_support_violation(f, p) for f in flow.frames] for p in pts])
    for i, p in enumerate(pts):
        v = violations[i]
        if v[0] > 0.0:
            raise OutOfSweep(f"point {p} outside the earliest frame")
        if v[-1] <= 0.0:
            raise OutOfSweep(f"point {p} still inside the final frame")
        m = int(np.searchsorted(v > 0.0, True))  # first positive violation
        t_lo, t_hi = flow.times[m - 1], flow.times[m]
        out[i] = brentq(lambda t: _support_violation(flow.frame_at(t), p),
                        t_lo, t_hi, xtol=1e-13, rtol=8.9e-16)
    return out


def arrival_time_field(flow: SupportFlow, x_values, y_values) -> ArrivalTimeField:
    """Arrival time on the rectangular grid x_values x y_values.

    The grid spacing must stay at least twice the space swept per
    recorded frame, otherwise difference stencils would probe below the
    temporal resolution of the data (StencilFailure).  Catalog-backed
    flows are exempt: their evaluation is exact in t.
    """
    x = np.asarray(x_values, dtype=float)
    y = np.asarray(y_values, dtype=float)
    if x.size < 5 or y.size < 5:
        raise DomainError("need at least a 5x5 grid for the stencils")
    if flow.family is None:
        sweep = max(float(np.max(np.abs(a.values - b.values)))
                    for a, b in zip(flow.frames[:-1], flow.frames[1:]))
        h = min(x[1] - x[0], y[1] - y[0])
        if h < 2.0 * sweep:
            raise StencilFailure(
                f"grid spacing {h:.3e} below twice the per-frame sweep {sweep:.3e}")
    grid = np.stack(np.meshgrid(x, y, indexing="ij"), axis=-1).reshape(-1, 2)
    u = arrival_time(flow, grid).reshape(x.size, y.size)
    return ArrivalTimeField(x, y, u)


def level_set_residual(field: ArrivalTimeField) -> float:
    """Max residual of div(Du/|Du|) + 1/|Du| over the doubly-interior grid.

    The arrival time of a mean-convex flow solves the degenerate
    level-set equation div(Du/|Du|) = -1/|Du| away from critical points;
    evaluation refuses gradients below the degeneracy floor.
    """
    du = field.gradient()
    norms = np.sqrt(np.einsum("kij,kij->ij", du, du))
    if np.min(norms) < GRADIENT_FLOOR:
        raise DegenerateGradient(
            f"|Du| = {np.min(norms):.3e} below floor {GRADIENT_FLOOR}")
    g = du / norms[None, :, :]
    div = ((g[0, 2:, 1:-1] - g[0, :-2, 1:-1]) / (2.0 * field.hx)
           + (g[1, 1:-1, 2:] - g[1, 1:-1, :-2]) / (2.0 * field.hy))
    residual = div + 1.0 / norms[1:-1, 1:-1]
    return float(np.max(np.abs(residual)))
