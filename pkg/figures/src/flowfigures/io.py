"""Readers for the run-artifact CSV schemas.

These are the documented output files of the simulation CLI:

    flow.csv         t,theta_index,h
    diagnostics.csv  t,channel,value
    profile.csv      s,height,slope

Nothing here imports the simulation package: the CSV schemas are the
entire contract.
"""

from __future__ import annotations

import csv
import os

import numpy as np


class FigureInputError(Exception):
    """Missing or malformed input artifact."""


def _read_rows(path: str, header: list[str]) -> list[list[str]]:
    if not os.path.exists(path):
        raise FigureInputError(f"missing input file: {path}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            got = next(reader)
        except StopIteration:
            raise FigureInputError(f"{path} is empty") from None
        if got != header:
            raise FigureInputError(
                f"{path}: expected header {','.join(header)}, got {','.join(got)}")
        rows = [row for row in reader if row]
    if not rows:
        raise FigureInputError(f"{path} has no data rows")
    return rows


def read_flow(run_dir: str) -> tuple[np.ndarray, np.ndarray]:
    """(times, frames) with frames[m] the support samples at times[m]."""
    rows = _read_rows(os.path.join(run_dir, "flow.csv"), ["t", "theta_index", "h"])
    try:
        t = np.array([float(r[0]) for r in rows])
        idx = np.array([int(r[1]) for r in rows])
        h = np.array([float(r[2]) for r in rows])
    except (ValueError, IndexError) as exc:
        raise FigureInputError(f"flow.csv: bad row ({exc})") from None
    times = np.unique(t)
    n = int(idx.max()) + 1
    if times.size * n != t.size:
        raise FigureInputError("flow.csv: ragged frames")
    frames = np.empty((times.size, n))
    order = np.lexsort((idx, t))
    frames.flat[:] = h[order]
    return times, frames


def read_diagnostics(run_dir: str) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """channel -> (times, values)."""
    rows = _read_rows(os.path.join(run_dir, "diagnostics.csv"),
                      ["t", "channel", "value"])
    channels: dict[str, tuple[list, list]] = {}
    try:
        for r in rows:
            ts, vs = channels.setdefault(r[1], ([], []))
            ts.append(float(r[0]))
            vs.append(float(r[2]))
    except (ValueError, IndexError) as exc:
        raise FigureInputError(f"diagnostics.csv: bad row ({exc})") from None
    return {name: (np.asarray(ts), np.asarray(vs))
            for name, (ts, vs) in channels.items()}


def read_profile(run_dir: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rows = _read_rows(os.path.join(run_dir, "profile.csv"),
                      ["s", "height", "slope"])
    try:
        cols = np.array([[float(v) for v in r] for r in rows])
    except ValueError as exc:
        raise FigureInputError(f"profile.csv: bad row ({exc})") from None
    if cols.shape[1] != 3:
        raise FigureInputError("profile.csv: expected three columns")
    return cols[:, 0], cols[:, 1], cols[:, 2]


def curve_points(frame: np.ndarray) -> np.ndarray:
    """Embed one support-sample row as curve points.

    X(theta) = h (cos, sin) + h' (-sin, cos) with a periodic centered
    difference for h'; plotting accuracy only.
    """
    n = frame.size
    theta = 2.0 * np.pi * np.arange(n) / n
    step = 2.0 * np.pi / n
    dh = (np.roll(frame, -1) - np.roll(frame, 1)) / (2.0 * step)
    x = frame * np.cos(theta) - dh * np.sin(theta)
    y = frame * np.sin(theta) + dh * np.cos(theta)
    return np.stack([x, y], axis=1)
