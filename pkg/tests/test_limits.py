import math

import numpy as np
import pytest

import ancientflow as af
from ancientflow.errors import (DegenerateGradient, DomainError,
                                InsufficientHistory, OutOfSweep, StencilFailure)
from ancientflow.limits import CIRCLE, PLANE_MULT2


class TestBlowDown:
    def test_circle_flow(self, circle_engine_flow):
        result = af.blow_down(circle_engine_flow, np.array([0.97, 0.85, 0.7072]))
        target = math.sqrt(2.0 * math.pi / math.e)
        assert np.max(np.abs(result.densities - target)) <= 1e-3
        assert result.label == CIRCLE

    def test_oval_flow(self, oval_flow_200):
        result = af.blow_down(oval_flow_200, np.array([0.3, 0.15, 0.0708]))
        assert result.label == PLANE_MULT2

    def test_deep_oval_densities(self, deep_oval_flow):
        result = af.blow_down(deep_oval_flow, np.array([0.05, 0.03, 0.02]))
        assert result.label == PLANE_MULT2
        assert 1.9 <= result.densities[-1] <= 2.0

    def test_insufficient_history(self, oval_flow_200):
        with pytest.raises(InsufficientHistory):
            af.blow_down(oval_flow_200, np.array([0.05, 0.02]))

    def test_rejects_bad_scales(self, oval_flow_200):
        with pytest.raises(DomainError):
            af.blow_down(oval_flow_200, np.array([0.1, 0.2]))
        with pytest.raises(DomainError):
            af.blow_down(oval_flow_200, np.array([1.5, 0.5]))


class TestAsymptoticTranslator:
    def test_circle_speeds_vanish(self):
        flow = af.circle_flow(-200.0, -1.0, 64)
        limit = af.asymptotic_translator(flow, [0.0, 1.0],
                                         [-200.0, -150.0, -100.0])
        radii = np.sqrt(-2.0 * limit.times)
        assert np.allclose(limit.speeds, 1.0 / radii, atol=1e-12)
        assert np.all(np.diff(limit.speeds) > 0)  # toward 0 going forward
        for slice_, r in zip(limit.slices, radii):
            dist = np.linalg.norm(slice_.points - [0.0, -r], axis=1)
            assert np.max(np.abs(dist - r)) <= 1e-9

    def test_oval_tip_converges_to_grim(self, oval_flow_200):
        limit = af.asymptotic_translator(
            oval_flow_200, [0.0, 1.0], [-200.0, -150.0, -100.0])
        assert np.all((limit.speeds >= 0.95) & (limit.speeds <= 1.0))
        # the recentred top cap approaches the downward Grim profile
        # y = log cos x through the origin
        slice_ = limit.slices[0]
        pts = slice_.points
        mask = (np.abs(pts[:, 0]) <= 1.0) & (pts[:, 1] > -10.0)
        assert np.sum(mask) >= 50
        dev = np.max(np.abs(pts[mask, 1] - np.log(np.cos(pts[mask, 0]))))
        assert dev <= 1e-2

    def test_oval_slab_normal_speeds_vanish(self, oval_flow_200):
        limit = af.asymptotic_translator(
            oval_flow_200, [1.0, 0.0], [-200.0, -150.0, -100.0])
        assert np.max(limit.speeds) <= 1e-12

    def test_requires_history(self, oval_flow_200):
        with pytest.raises(InsufficientHistory):
            af.asymptotic_translator(oval_flow_200, [0.0, 1.0], [-300.0])


class TestArrivalTime:
    def test_circle_closed_form(self, circle_engine_flow):
        xs = np.linspace(0.55, 1.35, 9)
        pts = np.stack(np.meshgrid(xs, xs, indexing="ij"), -1).reshape(-1, 2)
        u = af.arrival_time(circle_engine_flow, pts)
        exact = -0.5 * np.einsum("ij,ij->i", pts, pts)
        assert np.max(np.abs(u - exact)) <= 1e-4

    def test_out_of_sweep(self, circle_engine_flow):
        with pytest.raises(OutOfSweep):
            af.arrival_time(circle_engine_flow, [[2.5, 0.0]])
        with pytest.raises(OutOfSweep):
            af.arrival_time(circle_engine_flow, [[0.1, 0.0]])

    def test_oval_closed_form(self, oval_flow_200):
        pts = np.array([[0.0, 3.0], [0.5, 5.0], [-1.0, 10.0]])
        u = af.arrival_time(oval_flow_200, pts)
        exact = np.log(np.cos(pts[:, 0])) - np.log(np.cosh(pts[:, 1]))
        assert np.allclose(u, exact, atol=1e-12)

    def test_oval_concave_along_segments(self, oval_flow_200):
        # chords inside the swept region: midpoint value dominates the
        # endpoint average for a concave function
        segments = [([-1.0, 3.0], [1.0, 3.0]),
                    ([0.0, 2.5], [0.0, 9.0]),
                    ([-1.2, 8.0], [1.1, 2.2]),
                    ([0.7, 2.1], [-0.9, 7.7])]
        for a, b in segments:
            a, b = np.asarray(a), np.asarray(b)
            mid = 0.5 * (a + b)
            ua, ub, um = af.arrival_time(oval_flow_200, [a, b, mid])
            assert um >= 0.5 * (ua + ub) - 1e-6


class TestArrivalField:
    def test_circle_grid(self, circle_engine_flow):
        x = np.linspace(0.55, 1.35, 15)
        field = af.arrival_time_field(circle_engine_flow, x, x)
        xx, yy = np.meshgrid(x, x, indexing="ij")
        assert np.max(np.abs(field.u + 0.5 * (xx**2 + yy**2))) <= 1e-4
        # D^2 u = -Identity within 5e-3, negative semidefinite
        dev = np.max(np.abs(field.hessians() + np.eye(2)))
        assert dev <= 5e-3
        assert field.hessian_max_eigenvalue() <= 1e-6

    def test_level_set_residual_circle(self, circle_engine_flow):
        x = np.linspace(0.55, 1.35, 15)
        field = af.arrival_time_field(circle_engine_flow, x, x)
        assert af.level_set_residual(field) <= 5e-3

    def test_level_set_residual_oval(self, oval_flow_200):
        field = af.arrival_time_field(oval_flow_200,
                                      np.linspace(-1.2, 1.2, 33),
                                      np.linspace(2.0, 8.0, 33))
        assert af.level_set_residual(field) <= 5e-3
        assert field.hessian_max_eigenvalue() <= 1e-6

    def test_formula_and_grid_hessians_agree(self, circle_engine_flow):
        # two independent estimators of D^2 u: difference stencils on the
        # reconstructed field vs the curvature-assembly along frames;
        # on the circle both must sit at -Identity
        x = np.linspace(0.55, 1.35, 15)
        field = af.arrival_time_field(circle_engine_flow, x, x)
        grid_eigs = np.linalg.eigvalsh(field.hessians().reshape(-1, 2, 2))
        formula_worst = af.arrival_hessian_check(circle_engine_flow)
        assert abs(np.max(grid_eigs) - formula_worst) <= 5e-3

    def test_stencil_failure(self, circle_engine_flow):
        x = np.linspace(0.9, 0.95, 6)
        with pytest.raises(StencilFailure):
            af.arrival_time_field(circle_engine_flow, x, x)

    def test_degenerate_gradient_near_extinction(self):
        # evolve close to extinction so that swept points with |Du| = |X|
        # below the 0.1 floor exist (|X| down to 0.093 here); the short
        # window and fine cadence keep the per-frame sweep small enough
        # for the stencil rule
        flow = af.evolve(af.shrinking_circle(-0.02, 64), -0.02, -0.004,
                         per_decade=96)
        x = np.linspace(0.064, 0.098, 7)
        field = af.arrival_time_field(flow, x, x)
        with pytest.raises(DegenerateGradient):
            af.level_set_residual(field)
