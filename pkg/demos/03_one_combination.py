"""
Transferring to one color combination
=====================================

Three stages, shown side by side:

* moving each cluster center all the way to its target color (ignoring the
  Lab box),
* the constrained shift, where each cluster moves only as far as keeps all
  its pixels inside the box,
* the gradient-preserving reconstruction of the constrained result.
"""

import numpy as np

from _common import save, strip
from emotransfer.clustering import fit_em
from emotransfer.colorspace import in_lab_box, lab_to_srgb, srgb_to_lab
from emotransfer.scheme import demo_library
from emotransfer.synthetic import landscape
from emotransfer.transfer import apply_shifts, preserve_gradient, solve_shifts

rgb = landscape(160, 224, seed=2)
lab = srgb_to_lab(rgb)
model = fit_em(lab, seed=0)
target = demo_library().get("serene").combinations[0]

# Unconstrained: every cluster lands exactly on its target color.
free = lab + (target.as_array() - model.means)[model.assignments]

shifts = solve_shifts(model, target)
limited = apply_shifts(lab, model, shifts)
final = preserve_gradient(lab, limited, lam=20)

print("target colors       :", np.round(target.as_array(), 1).tolist())
print("achieved centers    :", np.round(shifts.achieved_targets, 1).tolist())
print("pixels outside box  : unconstrained", int((~in_lab_box(free)).sum()),
      "| constrained", int((~in_lab_box(limited)).sum()))
print(f"mean L input {lab[..., 0].mean():.1f} | unconstrained {free[..., 0].mean():.1f} | "
      f"constrained {limited[..., 0].mean():.1f} | reconstructed {final[..., 0].mean():.1f}")

save("03_stages.png", strip(rgb, lab_to_srgb(free), lab_to_srgb(limited), lab_to_srgb(final)))
