"""
Choosing the gradient weight
============================

Larger lambda keeps the output's gradients closer to the input's at the cost
of drifting from the shifted colors. The default is 20.
"""

import time

from _common import save, strip
from emotransfer.clustering import fit_em
from emotransfer.colorspace import lab_to_srgb, srgb_to_lab
from emotransfer.scheme import demo_library
from emotransfer.selection import color_distance, luminance_distance
from emotransfer.synthetic import landscape
from emotransfer.transfer import apply_shifts, gradient_mismatch, preserve_gradient, solve_shifts

import numpy as np

rgb = landscape(160, 160, seed=3)
lab = srgb_to_lab(rgb)
model = fit_em(lab, seed=0)
target = demo_library().get("muted").combinations[2]
shifts = solve_shifts(model, target)
intermediate = apply_shifts(lab, model, shifts)

print(f"{'lambda':>7} {'grad mismatch':>14} {'data term':>11} {'d_lumin':>8} {'seconds':>8}")
panels = [rgb]
for lam in (0, 1, 5, 20, 100):
    t0 = time.perf_counter()
    out = preserve_gradient(lab, intermediate, lam)
    dt = time.perf_counter() - t0
    data = float(np.sum((out - intermediate) ** 2))
    print(f"{lam:>7} {gradient_mismatch(out, lab):>14.4g} {data:>11.4g} "
          f"{luminance_distance(lab, out):>8.3f} {dt:>8.3f}")
    panels.append(lab_to_srgb(out))

print("color distance of the shifted centers:", round(color_distance(shifts.achieved_targets, target), 2))
save("04_lambda.png", strip(*panels))
