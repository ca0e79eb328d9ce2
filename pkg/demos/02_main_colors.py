"""
Dominant, subordinate and accent colors
=======================================

A 3-component Gaussian mixture is fitted to the Lab pixels. Its components,
ordered by weight, give the image's dominant, subordinate and accent colors.
"""

import numpy as np

from _common import save, strip
from emotransfer.clustering import extract_main_colors, fit_em
from emotransfer.colorspace import lab_to_srgb, srgb_to_lab
from emotransfer.synthetic import landscape

rgb = landscape(192, 256, seed=1)
lab = srgb_to_lab(rgb)

model = fit_em(lab, seed=0)
print(f"EM ran {model.n_iter} iterations, converged={model.converged}")
print("per-pixel log-likelihood:", " ".join(f"{v:.4f}" for v in model.log_likelihood[:8]), "...")

main = extract_main_colors(model)
for role, color, w in zip(("dominant", "subordinate", "accent"), main.colors, main.weights):
    print(f"{role:>12}: weight {w:.3f}  Lab {np.round(color, 1)}  sRGB {lab_to_srgb(color)}")

# Paint every pixel with its cluster's mean color, next to the input.
posterized = lab_to_srgb(model.means[model.assignments])
save("02_clusters.png", strip(rgb, posterized))

# Per-cluster ranges, which bound how far each cluster can move later.
for k in range(3):
    print(f"cluster {k}: min {np.round(model.bounds_min[k], 1)} max {np.round(model.bounds_max[k], 1)}")
