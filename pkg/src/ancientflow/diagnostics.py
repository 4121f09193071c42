"""Scalar diagnostics along flows: the quantities the structure theory of
convex ancient solutions is stated in.

Channels follow the conventions

    gaussian_density   Theta(t) about the (estimated) extinction point
    density_deficit    the monotonicity-formula dissipation integrand
    harnack_min        min over the Gauss grid of the time difference
                       quotient of curvature (nonnegative for ancient
                       solutions by the differential Harnack inequality)
    typeI              sqrt(-t) * max H
    rescaled_diam      diam / sqrt(-t)
    eccentricity       circumradius / inradius
    wang_alpha         d(t) * v(0, t) / (-t) for slab-like flows
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import (density_window_slice, estimate_extinction, frame_slice,
                      gaussian_density, density_deficit)
from .errors import DomainError, NotSlabLike
from .flows import SupportFlow
from .support import (SupportFunction, chebyshev_center, smallest_enclosing_circle,
                      widths)


@dataclass(frozen=True)
class DiagnosticSeries:
    """Named scalar time series sharing one time grid."""

    times: np.ndarray
    channels: dict

    def __post_init__(self):
        object.__setattr__(self, "times", np.asarray(self.times, dtype=float))
        for name, vals in self.channels.items():
            self.channels[name] = np.asarray(vals, dtype=float)
            if self.channels[name].size != self.times.size:
                raise DomainError(f"channel {name} length mismatch")

    def __getitem__(self, name):
        return self.channels[name]


def _time_derivative(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Three-point derivative on a nonuniform grid (one-sided at ends)."""
    t = times
    f = values
    out = np.empty_like(f)
    for i in range(t.size):
        j = int(np.clip(i, 1, t.size - 2))
        t0, t1, t2 = t[j - 1], t[j], t[j + 1]
        f0, f1, f2 = f[j - 1], f[j], f[j + 1]
        ti = t[i]
        out[i] = (f0 * (2 * ti - t1 - t2) / ((t0 - t1) * (t0 - t2))
                  + f1 * (2 * ti - t0 - t2) / ((t1 - t0) * (t1 - t2))
                  + f2 * (2 * ti - t0 - t1) / ((t2 - t0) * (t2 - t1)))
    return out


def density_series(flow: SupportFlow, basepoint=None) -> DiagnosticSeries:
    """Theta(t) and the deficit integrand along all frames."""
    if basepoint is None:
        basepoint = estimate_extinction(flow)
    thetas, deficits = [], []
    for t in flow.times:
        s = density_window_slice(flow, float(t), basepoint)
        thetas.append(gaussian_density(s, basepoint))
        deficits.append(density_deficit(s, basepoint))
    return DiagnosticSeries(flow.times, {"gaussian_density": thetas,
                                         "density_deficit": deficits})


def monotonicity_check(flow: SupportFlow, basepoint=None) -> float:
    """Worst frame-to-frame increase of Theta (should be <= 1e-8)."""
    theta = density_series(flow, basepoint)["gaussian_density"]
    return float(np.max(np.diff(theta)))


def deficit_identity_check(flow: SupportFlow, basepoint=None,
                           deficit_floor: float = 1e-6) -> float:
    """Max relative mismatch between dTheta/dt and -deficit.

    The monotonicity formula is an identity, not just an inequality.
    Frames are recorded uniformly in s = log(-t), so dTheta/dt is taken
    as the fourth-order centered derivative in s divided by t; frames
    whose deficit is below the floor are compared absolutely.
    """
    series = density_series(flow, basepoint)
    theta = series["gaussian_density"]
    deficit = series["density_deficit"]
    s = np.log(-flow.times)
    hs = np.diff(s)
    if theta.size >= 7 and np.max(np.abs(hs - hs[0])) < 1e-9:
        h = hs[0]
        core = slice(2, theta.size - 2)
        dth_ds = (theta[:-4] - 8 * theta[1:-3] + 8 * theta[3:-1]
                  - theta[4:]) / (12.0 * h)
        dtheta = dth_ds / flow.times[core]
        rel = (np.abs(dtheta + deficit[core])
               / np.maximum(deficit[core], deficit_floor))
        return float(np.max(rel))
    dtheta = _time_derivative(flow.times, theta)
    rel = np.abs(dtheta + deficit) / np.maximum(deficit, deficit_floor)
    return float(np.max(rel[1:-1]))


def _frame_curvatures(flow: SupportFlow) -> np.ndarray:
    grid = flow.frames[0].theta
    rows = []
    for m, t in enumerate(flow.times):
        if flow.family is not None:
            rows.append(np.asarray(flow.family.curvature(grid, float(t))))
        else:
            rows.append(1.0 / flow.frames[m].curvature_radius())
    return np.vstack(rows)


def harnack_min(flow: SupportFlow) -> float:
    """min over (theta, m) of [kappa(theta, t_{m+1}) - kappa(theta, t_m)] / dt.

    Nonnegative (to stencil accuracy) for flows that come from ancient
    solutions; reported but not asserted for arbitrary initial data.
    """
    if flow.frame_count < 2:
        raise DomainError("need at least two frames")
    kappa = _frame_curvatures(flow)
    dt = np.diff(flow.times)[:, None]
    return float(np.min((kappa[1:] - kappa[:-1]) / dt))


def harnack_channel(flow: SupportFlow) -> np.ndarray:
    """Per-frame min difference quotient (backward at the first frame)."""
    kappa = _frame_curvatures(flow)
    dt = np.diff(flow.times)[:, None]
    quot = (kappa[1:] - kappa[:-1]) / dt
    mins = np.min(quot, axis=1)
    return np.concatenate([[mins[0]], mins])


def _frame_measure(flow: SupportFlow, m: int):
    """(width_min, width_max, diameter, inradius, circumradius, max_h)."""
    frame = flow.frames[m]
    w = widths(frame)
    slice_ = frame_slice(flow, index=m)
    pts = slice_.points
    diffs = pts[:, None, :] - pts[None, :, :]
    diameter = float(np.sqrt(np.max(np.einsum("ijk,ijk->ij", diffs, diffs))))
    _, circum = smallest_enclosing_circle(pts)
    _, inr = chebyshev_center(slice_.normals, frame.values)
    return (float(np.min(w)), float(np.max(w)), diameter, inr, circum,
            float(np.max(slice_.curvature)))


def rigidity_series(flow: SupportFlow) -> DiagnosticSeries:
    """Size and curvature channels for the sphere-rigidity conditions.

    typeI, rescaled_diam and eccentricity are scale invariant; a compact
    convex ancient flow keeps all three bounded only if it is the
    shrinking circle.  The principal-curvature pinching ratio is
    identically 1 for curves and recorded as a constant channel.
    """
    rows = [_frame_measure(flow, m) for m in range(flow.frame_count)]
    arr = np.asarray(rows)
    sqrt_mt = np.sqrt(-flow.times)
    return DiagnosticSeries(flow.times, {
        "width_min": arr[:, 0],
        "width_max": arr[:, 1],
        "diameter": arr[:, 2],
        "inradius": arr[:, 3],
        "circumradius": arr[:, 4],
        "typeI": sqrt_mt * arr[:, 5],
        "rescaled_diam": arr[:, 2] / sqrt_mt,
        "eccentricity": arr[:, 4] / arr[:, 3],
        "pinching": np.ones(flow.frame_count),
    })


def arrival_hessian_check(flow: SupportFlow, frame_indices=None) -> float:
    """Max eigenvalue of D^2(arrival time) assembled from flow data.

    In the (tangent, normal) frame at a curve point the Hessian of the
    arrival time is

        [[ -1,             kappa_s / kappa^2 ],
         [ kappa_s/kappa^2, -kappa_t / kappa^3 ]],

    where kappa_s is the arclength derivative.  Negative semidefiniteness
    is the concavity of the arrival time; the acceptance threshold is a
    max eigenvalue of at most 1e-6.
    """
    if frame_indices is None:
        frame_indices = range(1, flow.frame_count - 1)
    grid = flow.frames[0].theta
    worst = -np.inf
    for m in frame_indices:
        t = float(flow.times[m])
        if flow.family is not None:
            eps_t = 1e-5 * abs(t)
            kap = np.asarray(flow.family.curvature(grid, t))
            kap_t = (np.asarray(flow.family.curvature(grid, t + eps_t))
                     - np.asarray(flow.family.curvature(grid, t - eps_t))) / (2 * eps_t)
            eps_h = 1e-5
            kap_th = (np.asarray(flow.family.curvature(grid + eps_h, t))
                      - np.asarray(flow.family.curvature(grid - eps_h, t))) / (2 * eps_h)
        else:
            if m == 0 or m == flow.frame_count - 1:
                continue
            kap = 1.0 / flow.frames[m].curvature_radius()
            k_lo = 1.0 / flow.frames[m - 1].curvature_radius()
            k_hi = 1.0 / flow.frames[m + 1].curvature_radius()
            t0, t1, t2 = flow.times[m - 1], flow.times[m], flow.times[m + 1]
            kap_t = (k_lo * (t1 - t2) / ((t0 - t1) * (t0 - t2))
                     + kap * (2 * t1 - t0 - t2) / ((t1 - t0) * (t1 - t2))
                     + k_hi * (t1 - t0) / ((t2 - t0) * (t2 - t1)))
            from .support import periodic_derivative
            kap_th = periodic_derivative(kap, 1)
        # where kappa underflows (flat sides of far-past frames) the
        # normal-normal entry is effectively -infinity and the largest
        # eigenvalue tends to the tangential -1; exclude those samples
        ok = kap > 1e-12
        kap = kap[ok]
        kap_t = kap_t[ok]
        kap_th = kap_th[ok]
        kappa_s = kap * kap_th  # d/ds = kappa d/dtheta in Gauss coordinates
        # the Gauss-map point slides tangentially with velocity -kappa_theta,
        # so the flow (normal-motion) time derivative entering D^2 u is
        # kappa_t|flow = kappa_t|gauss + kappa * kappa_theta^2
        kap_t_flow = kap_t + kap * kap_th**2
        b = kappa_s / kap**2
        c = -kap_t_flow / kap**3
        a = -1.0
        eig_max = 0.5 * (a + c) + np.sqrt(0.25 * (a - c) ** 2 + b**2)
        worst = max(worst, float(np.max(eig_max)))
    return worst


def polytope_chord(frame: SupportFunction, direction, point) -> float:
    """Chord length of {x : <x, nu_i> <= h_i} along ``direction`` through
    ``point`` (0 when the line misses the body)."""
    e = np.asarray(direction, dtype=float)
    e = e / np.linalg.norm(e)
    p = np.asarray(point, dtype=float)
    th = frame.theta
    nu = np.stack([np.cos(th), np.sin(th)], axis=1)
    dots = nu @ e
    room = frame.values - nu @ p
    pos = dots > 1e-12
    neg = dots < -1e-12
    if not (np.any(pos) and np.any(neg)):
        raise DomainError("direction degenerate for the chord computation")
    s_hi = np.min(room[pos] / dots[pos])
    s_lo = np.max(room[neg] / dots[neg])
    return max(float(s_hi - s_lo), 0.0)


@dataclass(frozen=True)
class WangAlphaResult:
    times: np.ndarray
    alpha: np.ndarray          # d(t) * v(0, t) / (-t) per frame
    alpha_inf: float
    early_min: float
    early_max: float

    @property
    def early_variation(self) -> float:
        return (self.early_max - self.early_min) / self.early_min


def _center_widths(flow: SupportFlow, m: int, slab_normal: np.ndarray, center):
    """(v(0, t), d(t)) at frame m: center chord across the slab and
    orthogonal reach from the center."""
    frame = flow.frames[m]
    t = float(flow.times[m])
    e_perp = np.array([-slab_normal[1], slab_normal[0]])
    if flow.family is not None and hasattr(flow.family, "width_at_height"):
        v0 = float(flow.family.width_at_height(0.0, t))
        d = flow.family.tip_height(t)
        return v0, d
    v0 = polytope_chord(frame, slab_normal, center)
    th = frame.theta
    nu = np.stack([np.cos(th), np.sin(th)], axis=1)
    support_from_center = frame.values - nu @ center
    d = min(np.min(support_from_center[nu @ e_perp > 0.999]),
            np.min(support_from_center[nu @ e_perp < -0.999]))
    return v0, float(d)


def wang_alpha_check(flow: SupportFlow, slab_normal) -> WangAlphaResult:
    """The quantitative slab bound: inf over frames of d(t) v(0,t)/(-t).

    Requires the blow-down to classify as the multiplicity-two plane
    with the given slab normal, else NotSlabLike.  For a genuine slab
    solution the infimum alpha is positive and the product stabilizes
    (for the ancient oval it approaches the slab width pi from above).
    """
    from .limits import blow_down, default_blowdown_scales, PLANE_MULT2

    e = np.asarray(slab_normal, dtype=float)
    e = e / np.linalg.norm(e)
    x_ext, t_ext = estimate_extinction(flow)
    lams = default_blowdown_scales(flow, (x_ext, t_ext))
    result = blow_down(flow, lams, basepoint=(x_ext, t_ext))
    if result.label != PLANE_MULT2:
        raise NotSlabLike(f"blow-down label is {result.label}")
    # the measured slab direction must agree with the requested normal
    w_last = widths(flow.frames[-1])
    theta_e = float(np.arctan2(e[1], e[0])) % (2.0 * np.pi)
    idx = int(round(theta_e / flow.frames[-1].theta_step)) % flow.frames[-1].grid_size
    if w_last[idx] > 1.2 * np.min(w_last):
        raise NotSlabLike("slab normal does not match the thin direction")

    alphas = []
    for m in range(flow.frame_count):
        v0, d = _center_widths(flow, m, e, x_ext)
        alphas.append(d * v0 / (-float(flow.times[m])))
    alphas = np.asarray(alphas)
    early = alphas[: max(flow.frame_count // 2, 2)]
    return WangAlphaResult(flow.times, alphas, float(np.min(alphas)),
                           float(np.min(early)), float(np.max(early)))


def gradient_estimate_check(flow: SupportFlow, t: float, slab_normal,
                            sample_count: int = 50, span: float = 0.9):
    """Check |Dv(y, t)| <= v(y, t)/(d(t) - |y|) at interior heights.

    v is the measured width function across the slab at height y and d
    the orthogonal reach; returns (min slack, heights, v, |Dv|, bound).
    """
    e = np.asarray(slab_normal, dtype=float)
    e = e / np.linalg.norm(e)
    e_perp = np.array([-e[1], e[0]])
    x_ext, _ = estimate_extinction(flow)

    if flow.family is not None and hasattr(flow.family, "width_at_height"):
        d = flow.family.tip_height(t)
        v_of = lambda y: np.asarray(flow.family.width_at_height(y, t), dtype=float)
    else:
        frame = flow.frame_at(t)
        m = int(np.argmin(np.abs(flow.times - t)))
        _, d = _center_widths(flow, m, e, x_ext)
        v_of = lambda y: np.asarray([polytope_chord(frame, e, x_ext + yy * e_perp)
                                     for yy in np.atleast_1d(y)])
    ys = np.linspace(-span * d, span * d, sample_count)
    v = v_of(ys)
    delta = d * 1e-4
    dv = (v_of(ys + delta) - v_of(ys - delta)) / (2.0 * delta)
    bound = v / (d - np.abs(ys))
    slack = bound - np.abs(dv)
    return float(np.min(slack)), ys, v, np.abs(dv), bound
