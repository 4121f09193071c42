import math

import numpy as np
import pytest

import ancientflow as af
from ancientflow.errors import (DomainError, ExtinctionReached,
                                InsufficientHistory, StepRejected)


class TestStep:
    def test_circle_radius_law(self):
        out = af.step(af.shrinking_circle(-0.5, 256), 1e-4)
        assert np.max(np.abs(out.values - math.sqrt(1.0 - 2e-4))) <= 1e-8

    def test_rotational_symmetry_preserved(self):
        out = af.step(af.shrinking_circle(-2.0, 64), 1e-3)
        assert np.ptp(out.values) <= 1e-13

    def test_rejects_unstable_dt(self):
        h = af.shrinking_circle(-0.5, 256)
        with pytest.raises(StepRejected):
            af.step(h, 10.0 * af.stable_dt(h))

    def test_rejects_nonpositive_dt(self):
        with pytest.raises(DomainError):
            af.step(af.shrinking_circle(-0.5, 64), 0.0)

    def test_ellipse_width_ratio_decreases(self):
        # N = 128 admits the reference step 1e-4 under the stability bound
        h = af.ellipse_support(2.0, 1.0, 128)
        ratios = []
        for _ in range(40):
            w = af.widths(h)
            ratios.append(np.max(w) / np.min(w))
            h = af.step(h, 1e-4)
        assert np.all(np.diff(ratios) < 1e-8)

    def test_fd_scheme_also_steps(self):
        h = af.SupportFunction(np.full(96, 1.0))  # 96 is not a power of two
        out = af.step(h, 1e-4, scheme="auto")
        assert np.max(np.abs(out.values - math.sqrt(1.0 - 2e-4))) <= 1e-8


class TestEvolve:
    def test_rejects_bad_time_range(self):
        h = af.shrinking_circle(-2.0, 64)
        with pytest.raises(DomainError):
            af.evolve(h, -1.0, -2.0)
        with pytest.raises(DomainError):
            af.evolve(h, -2.0, 0.5)

    def test_circle_radius_law_global(self, circle_engine_flow):
        flow = circle_engine_flow
        err = max(float(np.max(np.abs(f.values / math.sqrt(-2.0 * t) - 1.0)))
                  for f, t in zip(flow.frames, flow.times))
        assert err <= 1e-4

    def test_frames_shrink(self, circle_engine_flow):
        flow = circle_engine_flow
        for a, b in zip(flow.frames[:-1], flow.frames[1:]):
            assert np.all(b.values < a.values)

    def test_oval_cross_validation(self):
        # engine evolution of catalog oval data reproduces the exact oval;
        # for convex bodies the Hausdorff distance is the sup difference
        # of support functions
        fam = af.OvalFamily()
        grid = af.theta_grid(256)
        h0 = af.SupportFunction(fam.support(grid, -5.0))
        flow = af.evolve(h0, -5.0, -1.0, per_decade=16)
        worst = max(
            float(np.max(np.abs(f.values - fam.support(grid, t))))
            for f, t in zip(flow.frames, flow.times))
        assert worst <= 1e-3

    def test_extinction_reached(self):
        h = af.shrinking_circle(-0.2, 64)
        with pytest.raises(ExtinctionReached) as info:
            af.evolve(h, -0.2, -1e-7)
        assert info.value.time < -1e-7
        assert info.value.flow.frame_count >= 1

    def test_order_of_accuracy(self):
        # halving the grid spacing cuts the radius-law error by at least 4
        errs = []
        for n in (16, 32):
            flow = af.evolve(af.shrinking_circle(-1.0, n), -1.0, -0.3,
                             per_decade=8)
            errs.append(max(
                float(np.max(np.abs(f.values - math.sqrt(-2.0 * t))))
                for f, t in zip(flow.frames, flow.times)))
        assert errs[0] / max(errs[1], 1e-15) >= 4.0

    def test_avoidance_nested_flows_stay_nested(self):
        # the inner circle (radius 0.8) only survives 0.32 time units
        inner = af.evolve(af.shrinking_circle(-0.32, 128), -2.0, -1.8)
        outer = af.evolve(af.ellipse_support(2.0, 1.0, 128), -2.0, -1.8)
        assert np.array_equal(inner.times, outer.times)
        for fi, fo in zip(inner.frames, outer.frames):
            assert np.all(fi.values < fo.values + 1e-12)

    def test_theta_nonincreasing_along_engine_flow(self, ellipse_engine_flow):
        assert af.monotonicity_check(ellipse_engine_flow) <= 1e-8


class TestSupportFlow:
    def test_rejects_growing_frames(self):
        frames = (af.shrinking_circle(-1.0, 64), af.shrinking_circle(-2.0, 64))
        with pytest.raises(DomainError):
            af.SupportFlow(np.array([-2.0, -1.0]), frames, 64)

    def test_frame_interpolation_accuracy(self, circle_engine_flow):
        t = -0.7321
        frame = circle_engine_flow.frame_at(t)
        assert np.max(np.abs(frame.values - math.sqrt(-2.0 * t))) <= 1e-5

    def test_frame_at_outside_range(self, circle_engine_flow):
        with pytest.raises(InsufficientHistory):
            circle_engine_flow.frame_at(-3.0)

    def test_record_times_endpoints(self):
        times = af.record_times(-2.0, -0.1, 64)
        assert times[0] == pytest.approx(-2.0)
        assert times[-1] == pytest.approx(-0.1)
        assert np.all(np.diff(times) > 0)
