"""Blow-down classification by Gaussian density.

Rescaling an ancient flow by lambda and watching the Gaussian area at
t = -1 as lambda -> 0 identifies its far-past limit: a circle gives
sqrt(2 pi / e) ~ 1.5203 at every scale, while a slab-bound oval gives a
doubled stationary line with density 2.
"""

import numpy as np

import ancientflow as af

circle = af.evolve(af.shrinking_circle(-2.0, 256), -2.0, -0.1)
result = af.blow_down(circle, np.array([0.95, 0.85, 0.7072]))
print("shrinking circle:")
for lam, theta in result.pairs():
    print(f"  lambda = {lam:.4f}   Theta = {theta:.7f}")
print(f"  label: {result.label}")

oval = af.oval_flow(-2600.0, -1.0, 256)
result = af.blow_down(oval, np.array([0.10, 0.05, 0.02]))
print("ancient oval (history to t = -2600):")
for lam, theta in result.pairs():
    print(f"  lambda = {lam:.4f}   Theta = {theta:.7f}")
print(f"  label: {result.label}  (doubled line has density exactly 2)")

# the classification targets
print(f"targets: line 1, circle {af.CIRCLE_DENSITY:.7f}, doubled line 2")
