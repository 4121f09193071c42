"""Time-indexed families of support functions.

A SupportFlow records frames h(., t_m) at increasing negative times.  Two
kinds exist:

* engine flows, produced by evolve(): the frames are the only data;
* catalog flows, produced from an explicit ancient solution: the frames
  are sampled from closed forms and the flow keeps a handle (``family``)
  to the generator, so measurements that need curvature or off-grid
  times can use exact values instead of differentiating a grid that may
  under-resolve the far past (the long flat sides of an old oval carry
  radii of curvature of order e^{|t|}, far beyond any fixed grid).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

import numpy as np

from .errors import DomainError, InsufficientHistory
from .support import SupportFunction, Timeslice


@runtime_checkable
class AnalyticFamily(Protocol):
    """Exact evaluator for a named ancient solution.

    All angles are Gauss-map angles on the uniform grid convention of
    SupportFunction; ``t`` ranges over the negative reals.
    """

    def support(self, theta: np.ndarray, t: float) -> np.ndarray: ...

    def curvature(self, theta: np.ndarray, t: float) -> np.ndarray: ...

    def boundary_point(self, theta: float, t: float) -> np.ndarray: ...

    def arc_slice(self, t: float, center: np.ndarray, radius: float) -> Timeslice:
        """Arc-adapted sampling of the slice restricted to the ball
        B(center, radius); used for Gaussian quadratures whose weight
        would be destroyed by uniform Gauss-angle sampling."""
        ...


@dataclass(frozen=True)
class SupportFlow:
    """Frames of a (numerically or analytically) evolved convex curve."""

    times: np.ndarray
    frames: tuple[SupportFunction, ...]
    resolution: int
    family: object | None = None  # AnalyticFamily when frames are exact samples
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "times", np.asarray(self.times, dtype=float))
        object.__setattr__(self, "frames", tuple(self.frames))
        if self.times.size != len(self.frames):
            raise DomainError("one frame per time required")
        if self.times.size < 1:
            raise DomainError("empty flow")
        if np.any(self.times >= 0.0):
            raise DomainError("flow times must be negative")
        if np.any(np.diff(self.times) <= 0.0):
            raise DomainError("times must be strictly increasing")
        if self.meta.get("validate", True):
            for a, b in zip(self.frames[:-1], self.frames[1:]):
                if np.any(b.values - a.values > 1e-12):
                    raise DomainError("frames must shrink pointwise in time")

    @property
    def frame_count(self) -> int:
        return self.times.size

    @property
    def t_first(self) -> float:
        return float(self.times[0])

    @property
    def t_last(self) -> float:
        return float(self.times[-1])

    def frame_at(self, t: float) -> SupportFunction:
        """Support function at an arbitrary recorded-range time.

        Catalog flows evaluate exactly; engine flows interpolate the
        recorded frames quadratically in t (local 3-point Lagrange),
        which keeps the interpolation error far below the engine's own
        accuracy at the recording cadence used here.
        """
        if t < self.times[0] - 1e-12 or t > self.times[-1] + 1e-12:
            raise InsufficientHistory(
                f"t = {t} outside recorded range [{self.t_first}, {self.t_last}]")
        if self.family is not None:
            grid = self.frames[0].theta
            return SupportFunction(self.family.support(grid, t))
        idx = int(np.clip(np.searchsorted(self.times, t) - 1, 0, self.frame_count - 2))
        lo = int(np.clip(idx - 1, 0, max(self.frame_count - 3, 0)))
        ts = self.times[lo:lo + 3]
        if ts.size < 3:  # two-frame flow: linear
            t0, t1 = self.times[idx], self.times[idx + 1]
            w = (t - t0) / (t1 - t0)
            vals = (1 - w) * self.frames[idx].values + w * self.frames[idx + 1].values
            return SupportFunction(vals)
        l0 = (t - ts[1]) * (t - ts[2]) / ((ts[0] - ts[1]) * (ts[0] - ts[2]))
        l1 = (t - ts[0]) * (t - ts[2]) / ((ts[1] - ts[0]) * (ts[1] - ts[2]))
        l2 = (t - ts[0]) * (t - ts[1]) / ((ts[2] - ts[0]) * (ts[2] - ts[1]))
        vals = (l0 * self.frames[lo].values + l1 * self.frames[lo + 1].values
                + l2 * self.frames[lo + 2].values)
        return SupportFunction(vals)


def record_times(t0: float, t1: float, per_decade: int) -> np.ndarray:
    """Frame recording times, uniform in log(-t) between t0 and t1.

    Constant relative temporal resolution keeps time-difference stencils
    meaningful arbitrarily far in the past.
    """
    if not (t0 < t1 < 0.0):
        raise DomainError(f"need t0 < t1 < 0, got {t0}, {t1}")
    decades = np.log10(-t0) - np.log10(-t1)
    count = max(int(np.ceil(decades * per_decade)) + 1, 2)
    return -np.logspace(np.log10(-t0), np.log10(-t1), count)


def parabolic_rescale(flow: SupportFlow, factor: float) -> SupportFlow:
    """The rescaled flow h_lambda(theta, t) = lambda * h(theta, t/lambda^2).

    Frame m of the output sits at time lambda^2 * t_m with support values
    lambda * h_m.  Requires every flow time to be negative (guaranteed by
    SupportFlow) and factor > 0.  The analytic family handle is dropped:
    rescaled catalog solutions are in general no longer members of the
    same closed-form family.
    """
    if not factor > 0.0:
        raise DomainError(f"scale factor must be positive, got {factor}")
    frames = tuple(f.scaled(factor) for f in flow.frames)
    return SupportFlow(factor**2 * flow.times, frames, flow.resolution,
                       family=None, meta=dict(flow.meta))
