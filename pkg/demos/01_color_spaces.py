"""
Working in CIELAB
=================

All transfer math happens in CIELAB with a D65 white. This script walks a few
colors through the conversions and shows what happens to colors outside the
sRGB gamut.
"""

import numpy as np

from emotransfer.colorspace import LAB_MAX, LAB_MIN, cmyk_to_lab, lab_to_linear, lab_to_srgb, srgb_to_lab

# Pure primaries and white, 8-bit sRGB in, (L, a, b) out.
for name, rgb in [("white", (255, 255, 255)), ("red", (255, 0, 0)),
                  ("green", (0, 255, 0)), ("blue", (0, 0, 255))]:
    L, a, b = srgb_to_lab(rgb)
    print(f"{name:>6}: L={L:7.3f} a={a:8.3f} b={b:8.3f}")

# Every 8-bit color survives a round trip through Lab.
rng = np.random.default_rng(0)
rgb = rng.integers(0, 256, (100_000, 3))
print("round trip exact on 100k random colors:", np.array_equal(lab_to_srgb(srgb_to_lab(rgb)), rgb))

# Scheme colors may come as CMYK; the conversion is the naive device formula.
print("CMYK (1, 0, 0, 0) ->", np.round(cmyk_to_lab([1, 0, 0, 0]), 3),
      "= Lab of sRGB cyan", np.round(srgb_to_lab([0, 255, 255]), 3))

# The Lab box used as the optimization bounds is larger than the sRGB gamut:
# a very red Lab color has no sRGB equivalent and is clamped on encoding.
lab = [50, 120, 0]
print("Lab", lab, "-> linear RGB", np.round(lab_to_linear(lab), 3), "-> sRGB", lab_to_srgb(lab))
print("Lab box:", LAB_MIN, "to", LAB_MAX)
