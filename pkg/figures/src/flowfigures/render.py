"""The five standard figure kinds.

snapshots   curve outlines at a handful of recorded times
density     Gaussian area Theta(t), with the shrinker reference values
widths      width_min / width_max against t, with the pi slab line
profile     translator graph (s, height) and slope; curve runs fall back
            to support-function profiles of the first and last frame
rigidity    the scale-invariant channels typeI, rescaled_diam,
            eccentricity on a log(-t) axis
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .io import (FigureInputError, curve_points, read_diagnostics, read_flow,
                 read_profile)

KINDS = ("snapshots", "density", "widths", "profile", "rigidity")


@dataclass
class FigureSpec:
    input_dir: str
    kind: str
    output: str
    title: str = ""
    size: tuple = (7.0, 5.0)
    snapshot_count: int = 6
    dpi: int = 130

    def validate(self):
        if self.kind not in KINDS:
            raise FigureInputError(
                f"unknown figure kind {self.kind!r}; choose from {', '.join(KINDS)}")
        return self


def _fig(spec):
    fig, ax = plt.subplots(figsize=spec.size)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _snapshots(spec, ax):
    times, frames = read_flow(spec.input_dir)
    picks = np.unique(np.linspace(0, times.size - 1, spec.snapshot_count).astype(int))
    cmap = plt.get_cmap("viridis")
    for rank, m in enumerate(picks):
        pts = curve_points(frames[m])
        closed = np.vstack([pts, pts[:1]])
        ax.plot(closed[:, 0], closed[:, 1], color=cmap(rank / max(len(picks) - 1, 1)),
                label=f"t = {times[m]:.3g}")
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.legend(fontsize=8)
    return "curve snapshots"


def _density(spec, ax):
    channels = read_diagnostics(spec.input_dir)
    if "gaussian_density" not in channels:
        raise FigureInputError("diagnostics.csv has no gaussian_density channel")
    t, v = channels["gaussian_density"]
    ax.plot(-t, v, lw=1.5)
    for ref, name in ((1.0, "line"), (math.sqrt(2 * math.pi / math.e), "circle"),
                      (2.0, "doubled line")):
        ax.axhline(ref, ls="--", lw=0.8, color="gray")
        ax.annotate(name, (ax.get_xlim()[1], ref), fontsize=7,
                    ha="right", va="bottom")
    ax.set_xscale("log")
    ax.invert_xaxis()
    ax.set_xlabel("-t (log, past to the left)")
    ax.set_ylabel("Gaussian area")
    return "Gaussian area along the flow"


def _widths(spec, ax):
    channels = read_diagnostics(spec.input_dir)
    plotted = False
    for name in ("width_min", "width_max"):
        if name in channels:
            t, v = channels[name]
            ax.plot(-t, v, lw=1.5, label=name)
            plotted = True
    if not plotted:
        raise FigureInputError("diagnostics.csv has no width channels")
    ax.axhline(math.pi, ls="--", lw=0.8, color="gray", label="pi")
    ax.set_xscale("log")
    ax.invert_xaxis()
    ax.set_xlabel("-t (log)")
    ax.set_ylabel("width")
    ax.legend(fontsize=8)
    return "widths along the flow"


def _profile(spec, ax):
    profile_path = os.path.join(spec.input_dir, "profile.csv")
    if os.path.exists(profile_path):
        s, height, slope = read_profile(spec.input_dir)
        ax.plot(s, height, lw=1.5, label="height")
        ax.plot(s, slope, lw=1.0, ls="--", label="slope")
        ax.set_xlabel("s")
        ax.set_ylabel("height / slope")
        ax.legend(fontsize=8)
        return "translator profile"
    # curve runs: support-function profiles of the first and last frame
    times, frames = read_flow(spec.input_dir)
    theta = 2.0 * np.pi * np.arange(frames.shape[1]) / frames.shape[1]
    ax.plot(theta, frames[0], lw=1.5, label=f"t = {times[0]:.3g}")
    ax.plot(theta, frames[-1], lw=1.5, label=f"t = {times[-1]:.3g}")
    ax.set_xlabel("theta")
    ax.set_ylabel("support h(theta)")
    ax.legend(fontsize=8)
    return "support profiles"


def _rigidity(spec, ax):
    channels = read_diagnostics(spec.input_dir)
    plotted = False
    for name in ("typeI", "rescaled_diam", "eccentricity"):
        if name in channels:
            t, v = channels[name]
            ax.plot(-t, v, lw=1.5, label=name)
            plotted = True
    if not plotted:
        raise FigureInputError("diagnostics.csv has no rigidity channels")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.invert_xaxis()
    ax.set_xlabel("-t (log)")
    ax.set_ylabel("channel value (log)")
    ax.legend(fontsize=8)
    return "rigidity channels"


_RENDERERS = {"snapshots": _snapshots, "density": _density, "widths": _widths,
              "profile": _profile, "rigidity": _rigidity}


def render(spec: FigureSpec) -> str:
    """Render one figure; returns the output path.

    Inputs are opened read-only; rendering twice overwrites the output
    and is idempotent up to image-library metadata.
    """
    spec.validate()
    fig, ax = _fig(spec)
    try:
        default_title = _RENDERERS[spec.kind](spec, ax)
        ax.set_title(spec.title or f"{default_title} ({os.path.basename(spec.input_dir.rstrip('/'))})")
        out_dir = os.path.dirname(os.path.abspath(spec.output))
        os.makedirs(out_dir, exist_ok=True)
        fig.savefig(spec.output, dpi=spec.dpi, bbox_inches="tight")
    finally:
        plt.close(fig)
    return spec.output
