"""
Picking the scheme from a reference image
=========================================

Instead of a keyword, a reference image can choose the scheme: its three
main colors are compared with every combination of every scheme, weighted by
the reference's cluster weights, and the scheme with the smallest total
distance is used.
"""

import numpy as np

from emotransfer.clustering import extract_main_colors, fit_em
from emotransfer.colorspace import lab_to_srgb, srgb_to_lab
from emotransfer.scheme import classify_reference, demo_library
from emotransfer.synthetic import color_bands

lib = demo_library()
rng = np.random.default_rng(6)

for name in ("festive", "delicate", "mysterious"):
    combo = lib.get(name).combinations[rng.integers(24)]
    # a reference made of the combination's colors, plus a little noise
    ref = color_bands(lab_to_srgb(combo.as_array()).astype(float), height=60, width=40)
    ref = np.clip(ref + rng.normal(0, 3, ref.shape), 0, 255)
    main = extract_main_colors(fit_em(srgb_to_lab(ref), seed=0))
    idx, scores = classify_reference(main, lib)
    runner_up = np.argsort(scores)[1]
    print(f"reference from {name!r:>13} -> {lib.schemes[idx].name!r} "
          f"(score {scores[idx]:.0f}; next {lib.schemes[runner_up].name!r} {scores[runner_up]:.0f})")
