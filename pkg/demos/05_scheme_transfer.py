"""
Transferring to a whole emotion scheme
======================================

The image is transferred to all 24 combinations of a scheme, each result is
scored on luminance change and palette distance, and the lowest score wins.
For comparison the single-color baseline (moving the image mean onto the
dominant color) is shown too.
"""

import numpy as np

from _common import save, strip
from emotransfer.clustering import fit_em
from emotransfer.colorspace import lab_to_linear, lab_to_srgb, srgb_to_lab
from emotransfer.pipeline import transfer_to_scheme
from emotransfer.scheme import demo_library
from emotransfer.synthetic import landscape
from emotransfer.transfer import transfer_single_color



def out_of_gamut(lab, eps=1e-6):
    lin = lab_to_linear(lab)
    return int(np.any((lin < -eps) | (lin > 1 + eps), axis=-1).sum())


rgb = landscape(128, 176, seed=5)
lab = srgb_to_lab(rgb)
model = fit_em(lab, seed=0)
lib = demo_library()

for name in ("serene", "warm", "dramatic"):
    scheme = lib.get(name)
    candidates, report = transfer_to_scheme(lab, scheme, model)
    rows = sorted(report.per_candidate, key=lambda r: r["E"])
    print(f"\n{name}: best combination {report.selected_index}")
    for r in rows[:3]:
        print(f"  #{r['combination_index']:02d}  d_lumin {r['d_lumin']:6.2f}  "
              f"d_color {r['d_color']:7.2f}  E {r['E']:6.2f}")
    best = candidates[report.selected_index - 1].output
    baseline = transfer_single_color(lab, scheme.combinations[report.selected_index - 1])
    print(f"  pixels outside the sRGB gamut: combination {out_of_gamut(best)}, "
          f"single-color baseline {out_of_gamut(baseline)}")
    save(f"05_{name}.png", strip(rgb, lab_to_srgb(best), lab_to_srgb(baseline)))
