"""Translating-soliton verification: residuals, blow-downs, slab dichotomy.

A translator moving with unit speed in direction e satisfies H = |<e, nu>|
pointwise (curvature stored positive against the outward normal, whose
inner product with e is nonpositive on a convex translator).  The two
catalog translators are the Grim Reaper curve (slab of width pi) and the
rotationally symmetric bowl (entire); the dichotomy says these exhaust
the qualitative possibilities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import RadialProfile, grim_reaper
from .errors import DomainError, InconclusiveSlab, InsufficientProfile
from .support import Timeslice

ENTIRE = "Entire"
SLAB = "Slab"

# Default horizon: ten times the largest catalog slab width.
SLAB_HORIZON = 10.0 * np.pi


@dataclass(frozen=True)
class TranslatorSample:
    """A sampled translator: a slice plus its translation direction and
    the horizontal-extent profile used by the slab classifier.

    heights/extents trace how wide the sample is (across the translation
    axis) as a function of height along it.
    """

    slice: Timeslice
    direction: np.ndarray
    heights: np.ndarray
    extents: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.direction, dtype=float)
        object.__setattr__(self, "direction", e / np.linalg.norm(e))
        object.__setattr__(self, "heights", np.asarray(self.heights, dtype=float))
        object.__setattr__(self, "extents", np.asarray(self.extents, dtype=float))


@dataclass(frozen=True)
class SlabClassification:
    kind: str            # ENTIRE or SLAB
    width: float         # inf exactly when kind == ENTIRE

    def __post_init__(self):
        if (self.kind == ENTIRE) != np.isinf(self.width):
            raise DomainError("width must be infinite exactly for entire samples")


def translator_residual(slice_: Timeslice, direction) -> float:
    """max over samples of |H - |<e, nu>||; zero for an exact unit-speed
    translator in direction e."""
    e = np.asarray(direction, dtype=float)
    e = e / np.linalg.norm(e)
    return float(np.max(np.abs(slice_.curvature - np.abs(slice_.normals @ e))))


def _profile_second_derivative(profile: RadialProfile) -> np.ndarray:
    """u'' from the stored slopes by five-point differences (fourth
    order on the uniform grid; one-sided fourth order at the ends).

    Differentiating the integrator's own output keeps the residual check
    independent of the ODE right-hand side.
    """
    du = profile.slopes
    h = profile.radii[1] - profile.radii[0]
    n = du.size
    if n < 7:
        raise DomainError("profile too short for the residual stencil")
    out = np.empty(n)
    out[2:-2] = (-du[4:] + 8 * du[3:-1] - 8 * du[1:-3] + du[:-4]) / (12.0 * h)
    for i in (0, 1):
        out[i] = (-25 * du[i] + 48 * du[i + 1] - 36 * du[i + 2]
                  + 16 * du[i + 3] - 3 * du[i + 4]) / (12.0 * h)
    for i in (n - 2, n - 1):
        out[i] = (25 * du[i] - 48 * du[i - 1] + 36 * du[i - 2]
                  - 16 * du[i - 3] + 3 * du[i - 4]) / (12.0 * h)
    return out


def revolve(profile: RadialProfile, skip: int = 1) -> TranslatorSample:
    """Meridian sample of the revolved bowl graph in R^{n+1}.

    Azimuthal symmetry reduces every diagnostic to the profile variable:
    the meridian carries the full mean curvature

        H = u''/(1 + u'^2)^{3/2} + (n-1) u' / (r sqrt(1 + u'^2)),

    the outward (downward) normal has <e_{n+1}, nu> = -1/sqrt(1 + u'^2),
    and H is computed from differentiated slopes, not the ODE itself.
    """
    n = profile.dimension
    r = profile.radii[::skip]
    u = profile.heights[::skip]
    du = profile.slopes[::skip]
    ddu = _profile_second_derivative(profile)[::skip]
    sq = np.sqrt(1.0 + du**2)
    with np.errstate(divide="ignore", invalid="ignore"):
        parallel = np.where(r > 0.0, (n - 1) * du / (r * sq), (n - 1) / (n * 1.0))
    mean_curv = ddu / sq**3 + parallel
    pts = np.stack([r, u], axis=1)
    nu = np.stack([du / sq, -1.0 / sq], axis=1)
    w = np.empty_like(r)
    w[1:-1] = 0.5 * (r[2:] - r[:-2])
    w[0] = 0.5 * (r[1] - r[0])
    w[-1] = 0.5 * (r[-1] - r[-2])
    slice_ = Timeslice(0.0, pts, nu, mean_curv, w * sq)
    return TranslatorSample(slice_, np.array([0.0, 1.0]), u, 2.0 * r)


def grim_sample(tail_height: float = 16.0, count: int = 4096) -> TranslatorSample:
    """Grim Reaper sample reaching curvature ~ e^{-tail_height} near the
    slab walls (enough to measure the width pi to ~2 e^{-tail_height}).

    The extent profile is traced uniformly in height up the arms, where
    the width at height y is twice the arm abscissa arccos(e^{-y}).
    """
    x_max = np.arccos(np.exp(-tail_height))
    slice_ = grim_reaper(0.0, np.linspace(-x_max, x_max, count))
    heights = np.linspace(0.0, tail_height, count)
    extents = 2.0 * np.arccos(np.exp(-heights))
    return TranslatorSample(slice_, np.array([0.0, 1.0]), heights, extents)


def slab_classify(sample: TranslatorSample, horizon: float = SLAB_HORIZON,
                  stall_tolerance: float = 1e-4) -> SlabClassification:
    """Entire-vs-slab dichotomy on the sampled extent profile.

    Entire when the extent exceeds the horizon; Slab when the extent has
    stalled (grows less than stall_tolerance over the last quarter of the
    height range); Inconclusive otherwise.
    """
    extents = sample.extents
    heights = sample.heights
    top = float(np.max(extents))
    if top > horizon:
        return SlabClassification(ENTIRE, float("inf"))
    h_hi = heights[-1]
    h_lo = heights[0]
    if h_hi <= h_lo:
        raise InconclusiveSlab("degenerate height range")
    cut = h_hi - 0.25 * (h_hi - h_lo)
    ext_at_cut = float(np.interp(cut, heights, extents))
    if top - ext_at_cut < stall_tolerance:
        return SlabClassification(SLAB, top)
    raise InconclusiveSlab(
        f"extent still grew {top - ext_at_cut:.3e} over the last quarter "
        f"without passing the horizon {horizon:.3f}")


def translator_blowdown(profile: RadialProfile, scale: float) -> tuple[float, str]:
    """Rescale the bowl's translating flow and compare against the
    shrinking cylinder at t = -1.

    The rescaled graph lambda(Sigma - lambda^{-2} e_{n+1}) passes height 1
    where u = (1 + 1/lambda)/lambda; the cylinder prediction for the
    radius there is sqrt(2 (n-1)).  Returns (measured ratio, label),
    label "Cylinder" within 5 percent.
    """
    if not 0.0 < scale < 1.0:
        raise DomainError(f"scale must lie in (0, 1), got {scale}")
    if profile.r_max < 10.0 / scale:
        raise InsufficientProfile(
            f"need r_max >= {10.0 / scale:.1f} for scale {scale}, have {profile.r_max}")
    u_target = (1.0 + 1.0 / scale) / scale
    if u_target > profile.heights[-1]:
        raise InsufficientProfile("profile does not reach the comparison height")
    r_star = profile.radius_at_height(u_target)
    ratio = scale * r_star / np.sqrt(2.0 * (profile.dimension - 1))
    label = "Cylinder" if abs(ratio - 1.0) <= 0.05 else "Inconclusive"
    return float(ratio), label
