import math

import numpy as np
import pytest

import ancientflow as af
from ancientflow.errors import DomainError


class TestShrinkers:
    def test_circle_radius(self):
        assert np.allclose(af.shrinking_circle(-0.5, 64).values, 1.0)
        assert np.allclose(af.shrinking_circle(-2.0, 64).values, 2.0)

    def test_circle_curvature(self):
        ts = af.embed(af.shrinking_circle(-0.5, 64))
        assert np.allclose(ts.curvature, 1.0, atol=1e-13)

    def test_circle_rejects_nonnegative_time(self):
        with pytest.raises(DomainError):
            af.shrinking_circle(0.0)

    def test_cylinder_radii(self):
        assert af.shrinker_radius(2, 1, -0.5) == pytest.approx(1.0)
        assert af.shrinker_radius(3, 0, -1.0) == pytest.approx(
            2.449489742783178, abs=1e-15)
        assert af.shrinker_radius(2, 1, -1e-12) == pytest.approx(0.0, abs=1e-5)

    def test_cylinder_domain_errors(self):
        with pytest.raises(DomainError):
            af.shrinker_radius(2, 2, -1.0)
        with pytest.raises(DomainError):
            af.shrinker_radius(2, 0, 1.0)


class TestGrimReaper:
    def test_tip(self):
        ts = af.grim_reaper(0.0, np.array([0.0]))
        assert np.allclose(ts.points[0], [0.0, 0.0])
        assert ts.curvature[0] == pytest.approx(1.0)

    def test_reflection_symmetry(self):
        ts = af.grim_reaper(0.0, np.array([-1.0, 1.0]))
        assert ts.curvature[0] == pytest.approx(0.5403023058681398, abs=1e-15)
        assert ts.curvature[1] == pytest.approx(0.5403023058681398, abs=1e-15)

    def test_translator_identity_exact(self):
        x = np.linspace(-1.4, 1.4, 301)
        ts = af.grim_reaper(0.0, x)
        assert np.max(np.abs(ts.curvature - np.abs(ts.normals @ [0.0, 1.0]))) == 0.0

    def test_rejects_outside_slab(self):
        with pytest.raises(DomainError):
            af.grim_reaper(0.0, np.array([np.pi / 2]))


class TestAngenentOval:
    def test_height_at_center(self):
        ts = af.angenent_oval(-1.0, 256)
        y_max = np.max(ts.points[:, 1])
        assert y_max == pytest.approx(1.6574544541530771, abs=1e-12)

    def test_implicit_equation(self):
        ts = af.angenent_oval(-2.0, 256)
        x, y = ts.points[:, 0], ts.points[:, 1]
        res = np.cosh(y) - np.exp(2.0) * np.cos(x)
        assert np.max(np.abs(res)) <= 1e-12

    def test_lies_in_slab(self):
        ts = af.angenent_oval(-5.0, 512)
        assert np.max(np.abs(ts.points[:, 0])) < np.pi / 2

    def test_rejects_nonnegative_time(self):
        with pytest.raises(DomainError):
            af.angenent_oval(0.0)

    def test_flow_residual_finite_differences(self):
        # independent oracle: normal speed from time differences of the
        # implicit representation F = cosh y - e^{-t} cos x must equal
        # the sampled curvature
        t = -2.0
        ts = af.angenent_oval(t, 200)
        x, y = ts.points[:, 0], ts.points[:, 1]

        def implicit(xx, yy, tt):
            return np.cosh(yy) - np.exp(-tt) * np.cos(xx)

        dt = 1e-4 * abs(t)
        eps = 1e-6
        ft = (implicit(x, y, t + dt) - implicit(x, y, t - dt)) / (2 * dt)
        fx = (implicit(x + eps, y, t) - implicit(x - eps, y, t)) / (2 * eps)
        fy = (implicit(x, y + eps, t) - implicit(x, y - eps, t)) / (2 * eps)
        speed = ft / np.hypot(fx, fy)
        assert np.max(np.abs(speed - ts.curvature)) < 1e-6

    def test_widths_increase_toward_pi(self):
        fam = af.OvalFamily()
        w = np.array([2.0 * fam.tip_width(t) for t in (-1.0, -5.0, -20.0, -100.0)])
        assert np.all(np.diff(w) > -1e-4)
        assert np.all(w <= np.pi + 1e-12)

    def test_shrinks_to_point(self):
        fam = af.OvalFamily()
        assert fam.tip_width(-1e-9) < 1e-4
        assert fam.tip_height(-1e-9) < 1e-4

    def test_gauss_slice_matches_oval_sampler(self):
        fam = af.OvalFamily()
        th = af.theta_grid(64)
        direct = af.angenent_oval(-1.0, 64)
        via_family = fam.gauss_slice(th, -1.0)
        assert np.allclose(direct.points, via_family.points, atol=1e-14)


class TestBowlProfile:
    def test_near_origin_series(self):
        prof = af.bowl_profile(2, 1.0)
        assert prof.height_at(0.1) == pytest.approx(0.0025, abs=1e-5)

    def test_initial_conditions(self):
        prof = af.bowl_profile(2, 1.0)
        assert prof.heights[0] == 0.0
        assert prof.slopes[0] == 0.0

    def test_far_field_balance(self, bowl2, bowl3):
        # u ~ r^2/(2(n-1)) - log r; at r = 100 the ratio sits within 1%
        for prof, n in ((bowl2, 2), (bowl3, 3)):
            ratio = prof.height_at(100.0) / 100.0**2 * 2.0 * (n - 1)
            assert abs(ratio - 1.0) <= 0.01

    def test_two_resolutions_agree(self):
        a = af.bowl_profile(2, 50.0, step=1e-2)
        b = af.bowl_profile(2, 50.0, step=5e-3)
        assert a.height_at(50.0) == pytest.approx(b.height_at(50.0), rel=1e-8)

    def test_slope_monotone(self, bowl2):
        assert np.all(np.diff(bowl2.slopes) > -1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            af.bowl_profile(2, 0.5)
        with pytest.raises(DomainError):
            af.bowl_profile(2, 10.0, step=0.5)
        with pytest.raises(DomainError):
            af.bowl_profile(1, 10.0)


class TestCatalogThroughEngine:
    def test_circle_single_step_radius_law(self):
        h = af.shrinking_circle(-0.5, 64)
        for dt in (1e-4, 2e-4):
            out = af.step(h, dt)
            target = math.sqrt(1.0 - 2.0 * dt)
            assert np.max(np.abs(out.values - target)) <= dt**2
