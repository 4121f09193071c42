"""Standard figures from simulation run artifacts (CSV in, images out)."""

from .io import FigureInputError, read_diagnostics, read_flow, read_profile
from .render import KINDS, FigureSpec, render
