"""Translating solitons: residuals, slab widths, cylinder blow-down.

The Grim Reaper y = -log cos x satisfies the unit-speed translator
identity H = |<e, nu>| exactly and fills a slab of width exactly pi (no
narrower slab admits a convex translator).  The rotationally symmetric
bowl is entire, grows like r^2/(2(n-1)), and its blow-down is the
shrinking cylinder.
"""

import numpy as np

import ancientflow as af
from ancientflow.translators import grim_sample, revolve, slab_classify

gs = grim_sample()
print(f"Grim Reaper residual max |H - |<e2, nu>||: "
      f"{af.translator_residual(gs.slice, gs.direction):.1e}")
cls = slab_classify(gs)
print(f"Grim slab width: {cls.width:.9f} (pi = {np.pi:.9f})")

for n in (2, 3):
    prof = af.bowl_profile(n, 200.0)
    sample = revolve(prof, skip=5)
    res = af.translator_residual(sample.slice, sample.direction)
    far = prof.height_at(100.0) / 100.0**2
    ratio, label = af.translator_blowdown(prof, 0.05)
    cls = slab_classify(sample)
    print(f"bowl n={n}: residual {res:.1e}, u(100)/100^2 = {far:.5f} "
          f"(1/(2(n-1)) = {1/(2*(n-1)):.3f}), blow-down {label} "
          f"(cylinder-radius ratio {ratio:.4f}), {cls.kind}")

# translators are not scale invariant
x = np.linspace(-1.2, 1.2, 201)
base = af.grim_reaper(0.0, x)
for lam in (0.5, 1.0, 2.0):
    scaled = af.Timeslice(0.0, lam * base.points, base.normals,
                          base.curvature / lam, lam * base.arc_weights)
    print(f"residual of {lam} * Grim: "
          f"{af.translator_residual(scaled, [0, 1]):.3f}")
