"""Acceptance gate: every quantitative exit criterion at its stated
tolerance, one printed pass/fail line per criterion (run with -s to see
the lines as they happen)."""

import hashlib
import math
import os

import numpy as np
import pytest

import ancientflow as af
from ancientflow.density import convexity_area_bound
from ancientflow.scenarios import run_scenario, shipped_scenarios

SQ2 = math.sqrt(2.0)
ORIGIN = (np.zeros(2), 0.0)


def report(name, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module")
def circle_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("accept") / "circle"
    cfg, _ = shipped_scenarios()["circle"]
    summary, passed = run_scenario(cfg, str(out))
    return out, summary, passed


def test_radius_law(circle_engine_flow):
    flow = circle_engine_flow
    err = max(float(np.max(np.abs(f.values / math.sqrt(-2.0 * t) - 1.0)))
              for f, t in zip(flow.frames, flow.times))
    report("radius law", err <= 1e-4,
           f"max rel error {err:.3e} <= 1e-4 on r(t) = sqrt(-2t)")


def test_monotonicity_formula(circle_engine_flow, ellipse_engine_flow):
    circle_inc = af.monotonicity_check(circle_engine_flow)
    ellipse_inc = af.monotonicity_check(ellipse_engine_flow)
    identity = af.deficit_identity_check(ellipse_engine_flow)
    ok = abs(circle_inc) <= 1e-8 and ellipse_inc <= 1e-8 and identity <= 2e-3
    report("monotonicity formula", ok,
           f"circle |dTheta| {abs(circle_inc):.2e} <= 1e-8, ellipse worst "
           f"increase {ellipse_inc:.2e} <= 1e-8, identity mismatch "
           f"{identity:.2e} <= 2e-3")


def test_density_values(deep_oval_flow):
    line = af.line_slice([0.0, 0.0], [1.0, 0.0], 14.0, time=-1.0)
    plane_theta = af.gaussian_density(line, ORIGIN)
    circle_theta = af.gaussian_density(
        af.CircleFamily().gauss_slice(af.theta_grid(512), -1.0), ORIGIN)
    blowdown = af.blow_down(deep_oval_flow, np.array([0.05, 0.03, 0.02]))
    theta_002 = float(blowdown.densities[-1])
    ok = (abs(plane_theta - 1.0) <= 1e-10
          and abs(circle_theta - 1.5202880) <= 1e-3
          and 1.9 <= theta_002 <= 2.0
          and blowdown.label == "PlaneMult2")
    report("density values", ok,
           f"plane {plane_theta:.12f} (=1 within 1e-10), circle "
           f"{circle_theta:.7f} (within 1e-3 of 1.5202880), oval "
           f"blow-down {theta_002:.4f} in [1.9, 2.0], label {blowdown.label}")


def test_gaussian_area_bound():
    taus = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0)
    bound = convexity_area_bound(1)
    fixtures = {
        "circle": af.CircleFamily().gauss_slice(af.theta_grid(512), -0.5),
        "line": af.line_slice([0.0, 0.0], [1.0, 0.0], 60.0, count=6001),
        "ellipse": af.embed(af.ellipse_support(2.0, 1.0, 512), time=-1.0),
    }
    sups = {name: af.gaussian_bound_check(s, taus)[0]
            for name, s in fixtures.items()}
    ok = all(v <= bound for v in sups.values()) and abs(bound - 11.2544) < 1e-3
    report("gaussian area bound", ok,
           "sup " + ", ".join(f"{k}={v:.4f}" for k, v in sups.items())
           + f" all <= {bound:.4f} (~11.2546)")


def test_harnack(circle_engine_flow, oval_flow_200):
    mins = (af.harnack_min(circle_engine_flow), af.harnack_min(oval_flow_200))
    ok = all(v >= -1e-8 for v in mins)
    report("harnack", ok,
           f"min d(kappa)/dt circle {mins[0]:.3e}, oval {mins[1]:.3e}, "
           "both >= -1e-8")


def test_arrival_time(circle_engine_flow, oval_flow_200):
    x = np.linspace(0.55, 1.35, 15)
    circle_field = af.arrival_time_field(circle_engine_flow, x, x)
    xx, yy = np.meshgrid(x, x, indexing="ij")
    closed_form_err = float(np.max(np.abs(circle_field.u + 0.5 * (xx**2 + yy**2))))
    circle_res = af.level_set_residual(circle_field)
    oval_field = af.arrival_time_field(oval_flow_200,
                                       np.linspace(-1.2, 1.2, 33),
                                       np.linspace(2.0, 8.0, 33))
    oval_res = af.level_set_residual(oval_field)
    eig_circle_grid = circle_field.hessian_max_eigenvalue()   # 169 samples
    eig_oval_grid = oval_field.hessian_max_eigenvalue()       # 961 samples
    eig_circle = af.arrival_hessian_check(circle_engine_flow)
    eig_oval = af.arrival_hessian_check(oval_flow_200)
    ok = (max(eig_circle, eig_oval, eig_circle_grid, eig_oval_grid) <= 1e-6
          and max(circle_res, oval_res) <= 5e-3
          and closed_form_err <= 1e-4)
    report("arrival time", ok,
           f"max D^2u eigenvalue {max(eig_circle, eig_oval, eig_circle_grid, eig_oval_grid):.2e}"
           f" <= 1e-6 (>= 100 samples each), level-set residual "
           f"{max(circle_res, oval_res):.2e} <= 5e-3, circle closed form "
           f"err {closed_form_err:.2e} <= 1e-4")


def test_asymptotic_translator(oval_flow_200):
    limit = af.asymptotic_translator(oval_flow_200, [0.0, 1.0],
                                     [-200.0, -150.0, -100.0])
    pts = limit.slices[0].points
    mask = (np.abs(pts[:, 0]) <= 1.0) & (pts[:, 1] > -10.0)
    dev = float(np.max(np.abs(pts[mask, 1] - np.log(np.cos(pts[mask, 0])))))
    speeds_ok = bool(np.all((limit.speeds >= 0.95) & (limit.speeds <= 1.0)))
    ok = dev <= 1e-2 and speeds_ok
    report("asymptotic translator", ok,
           f"tip frame vs Grim sup distance {dev:.2e} <= 1e-2 over |x| <= 1, "
           f"speeds {np.round(limit.speeds, 6).tolist()} in [0.95, 1.0]")


def test_translator_residuals(bowl2, bowl3):
    from ancientflow.translators import grim_sample, revolve, slab_classify

    gs = grim_sample()
    grim_res = af.translator_residual(gs.slice, gs.direction)
    details = [f"grim {grim_res:.1e} <= 1e-12"]
    ok = grim_res <= 1e-12
    for prof, n in ((bowl2, 2), (bowl3, 3)):
        sample = revolve(prof, skip=5)
        res = af.translator_residual(sample.slice, sample.direction)
        far = prof.height_at(100.0) / 100.0**2 * 2.0 * (n - 1)
        ratio, label = af.translator_blowdown(prof, 0.05)
        ok = (ok and res <= 1e-8 and abs(far - 1.0) <= 0.01
              and label == "Cylinder" and abs(ratio - 1.0) <= 0.05)
        details.append(f"bowl{n} res {res:.1e}, far-field dev "
                       f"{abs(far - 1.0):.4f} <= 1%, cylinder ratio {ratio:.4f}")
    cls = slab_classify(gs)
    ok = ok and abs(cls.width - math.pi) <= 1e-6
    details.append(f"grim slab width dev {abs(cls.width - math.pi):.1e} <= 1e-6")
    report("translator residuals", ok, "; ".join(details))


def test_wang_dichotomy_fixture(oval_flow_200):
    rig = af.rigidity_series(oval_flow_200)
    width_ok = bool(np.all(rig["width_min"] <= math.pi + 1e-9))
    alpha = af.wang_alpha_check(oval_flow_200, np.array([1.0, 0.0]))
    alpha_ok = (alpha.alpha_inf > 0.0
                and abs(alpha.early_max / math.pi - 1.0) <= 0.1
                and abs(alpha.early_min / math.pi - 1.0) <= 0.1)
    slack, ys, *_ = af.gradient_estimate_check(oval_flow_200, -50.0,
                                               np.array([1.0, 0.0]),
                                               sample_count=50)
    ok = width_ok and alpha_ok and slack >= 0.0 and len(ys) == 50
    report("wang dichotomy fixture", ok,
           f"width_min <= pi: {width_ok}, alpha_inf {alpha.alpha_inf:.4f} > 0 "
           f"within 10% of pi over earliest half "
           f"[{alpha.early_min:.4f}, {alpha.early_max:.4f}], gradient "
           f"estimate slack {slack:.3e} >= 0 at 50 samples")


def test_rigidity_channels(circle_engine_flow, oval_flow_200):
    rig_c = af.rigidity_series(circle_engine_flow)
    rd = float(np.max(np.abs(rig_c["rescaled_diam"] - 2.0 * SQ2)))
    ti = float(np.max(np.abs(rig_c["typeI"] - 1.0 / SQ2)))
    ec = float(np.max(np.abs(rig_c["eccentricity"] - 1.0)))
    rig_o = af.rigidity_series(oval_flow_200)
    oval_rd = float(rig_o["rescaled_diam"][0])
    ok = rd <= 1e-4 and ti <= 1e-4 and ec <= 1e-6 and oval_rd > 10.0
    report("rigidity channels", ok,
           f"circle rescaled_diam dev {rd:.1e} <= 1e-4, typeI dev {ti:.1e} "
           f"<= 1e-4, eccentricity dev {ec:.1e} <= 1e-6; oval rescaled_diam "
           f"{oval_rd:.1f} > 10 by t = -200")


def _hash(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def test_determinism(circle_run, tmp_path):
    out_a, summary_a, passed_a = circle_run
    cfg, _ = shipped_scenarios()["circle"]
    out_b = tmp_path / "again"
    summary_b, _ = run_scenario(cfg, str(out_b))
    identical = all(
        _hash(os.path.join(out_a, name)) == _hash(os.path.join(out_b, name))
        for name in ("flow.csv", "diagnostics.csv", "summary.json"))

    hi_cfg, _ = shipped_scenarios()["circle_hires"]
    out_hi = tmp_path / "hires"
    summary_hi, _ = run_scenario(hi_cfg, str(out_hi))
    theta_gap = abs(summary_a["constants"]["theta_const"]
                    - summary_hi["constants"]["theta_const"])
    ok = passed_a and identical and theta_gap < 1e-4
    report("determinism", ok,
           f"reruns byte-identical: {identical}; N=256 vs N=512 theta gap "
           f"{theta_gap:.2e} < 1e-4")
