"""Numerical laboratory for convex ancient solutions and translators of
curve shortening / mean curvature flow."""

from .support import (SupportFunction, Timeslice, Measurements, embed, measure,
                      widths, theta_grid)
from .flows import SupportFlow, parabolic_rescale, record_times
from .catalog import (shrinking_circle, shrinker_radius, grim_reaper,
                      angenent_oval, bowl_profile, RadialProfile,
                      CircleFamily, OvalFamily, GrimReaperFamily,
                      circle_flow, oval_flow, ellipse_support, line_slice,
                      union_slices)
from .engine import step, evolve, stable_dt
from .density import (gaussian_density, density_deficit, gaussian_bound_check,
                      convexity_area_bound, estimate_extinction, CIRCLE_DENSITY)
from .limits import (blow_down, asymptotic_translator, arrival_time,
                     arrival_time_field, level_set_residual, BlowDownResult)
from .diagnostics import (DiagnosticSeries, density_series, monotonicity_check,
                          deficit_identity_check, harnack_min, rigidity_series,
                          arrival_hessian_check, wang_alpha_check,
                          gradient_estimate_check, polytope_chord)
from .translators import (TranslatorSample, translator_residual, revolve,
                          translator_blowdown, slab_classify, grim_sample,
                          SlabClassification)
from . import errors

__all__ = [name for name in dir() if not name.startswith("_")]
