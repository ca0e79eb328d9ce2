"""Regenerate src/emotransfer/data/demo_schemes.json.

The colors are synthetic: each scheme has a characteristic (dominant,
subordinate, accent) triple in HSV and its 24 combinations are seeded jitters
of that triple. The script checks that every combination classifies back to
its own scheme, so the library can serve as a classification fixture.

    python tools/build_demo_library.py
"""

import colorsys
import json
from pathlib import Path

import numpy as np

from emotransfer.colorspace import rgb_to_hex
from emotransfer.scheme import classify_colors, load_library

# name: (description, [(h, s, v) for dominant, subordinate, accent])
# hue in degrees, saturation/value in [0, 1]
BASES = {
    "serene": ("calm and quiet, soft airy blues and greens",
               [(200, 0.25, 0.92), (160, 0.20, 0.85), (220, 0.45, 0.75)]),
    "earthy": ("grounded, natural browns and olive tones",
               [(30, 0.55, 0.50), (60, 0.45, 0.45), (15, 0.60, 0.35)]),
    "mellow": ("warm, relaxed and gently faded",
               [(40, 0.35, 0.80), (20, 0.40, 0.70), (340, 0.30, 0.65)]),
    "muted": ("subdued greys with a trace of color",
              [(210, 0.08, 0.60), (30, 0.10, 0.50), (150, 0.15, 0.40)]),
    "capricious": ("unpredictable, clashing bright accents",
                   [(300, 0.70, 0.85), (90, 0.75, 0.85), (20, 0.90, 0.95)]),
    "spiritual": ("contemplative violets and pale light",
                  [(270, 0.35, 0.70), (250, 0.20, 0.90), (50, 0.35, 0.95)]),
    "romantic": ("tender pinks and roses",
                 [(340, 0.30, 0.95), (320, 0.20, 0.90), (0, 0.55, 0.80)]),
    "sensual": ("deep, rich reds and plums",
                [(350, 0.75, 0.55), (300, 0.55, 0.35), (20, 0.70, 0.70)]),
    "powerful": ("bold, saturated high contrast",
                 [(0, 0.90, 0.75), (0, 0.00, 0.10), (45, 0.90, 0.95)]),
    "elegant": ("refined neutrals, charcoal and silver",
                [(240, 0.05, 0.25), (0, 0.00, 0.75), (280, 0.25, 0.45)]),
    "robust": ("sturdy, dark and weathered",
               [(25, 0.70, 0.35), (100, 0.45, 0.30), (210, 0.50, 0.40)]),
    "delicate": ("light pastels, barely there",
                 [(30, 0.12, 0.98), (280, 0.10, 0.95), (180, 0.12, 0.95)]),
    "playful": ("cheerful primaries and candy tones",
                [(50, 0.80, 1.00), (190, 0.70, 0.95), (330, 0.70, 0.95)]),
    "energetic": ("vivid, active oranges and limes",
                  [(25, 0.95, 1.00), (80, 0.85, 0.90), (200, 0.90, 0.90)]),
    "traditional": ("established, deep navy, burgundy and gold",
                    [(220, 0.70, 0.35), (350, 0.70, 0.45), (45, 0.70, 0.75)]),
    "classic": ("timeless, balanced and dependable",
                [(215, 0.55, 0.55), (0, 0.00, 0.92), (10, 0.60, 0.60)]),
    "festive": ("celebratory reds, greens and golds",
                [(0, 0.85, 0.85), (130, 0.80, 0.55), (48, 0.85, 0.95)]),
    "fanciful": ("whimsical, dreamy lilac and aqua",
                 [(290, 0.40, 0.90), (170, 0.45, 0.90), (60, 0.50, 0.98)]),
    "cool": ("crisp blues and cyans",
             [(205, 0.70, 0.80), (185, 0.55, 0.85), (240, 0.60, 0.60)]),
    "warm": ("sunny reds, oranges and yellows",
             [(20, 0.75, 0.95), (40, 0.70, 0.95), (0, 0.75, 0.75)]),
    "luscious-sweet": ("ripe fruit and confectionery",
                       [(330, 0.55, 0.90), (20, 0.50, 0.98), (280, 0.45, 0.75)]),
    "spicy-tangy": ("sharp citrus and chili",
                    [(10, 0.90, 0.80), (60, 0.85, 0.90), (95, 0.75, 0.65)]),
    "unique": ("unusual pairings that stand apart",
               [(170, 0.80, 0.55), (300, 0.60, 0.45), (70, 0.90, 0.85)]),
    "nostalgic": ("faded photographs, sepia and dusty teal",
                  [(35, 0.30, 0.70), (180, 0.25, 0.55), (0, 0.30, 0.55)]),
    "dramatic": ("dark grounds with a single flare",
                 [(230, 0.40, 0.15), (260, 0.50, 0.30), (15, 0.95, 0.95)]),
    "fresh": ("clean greens and morning light",
              [(110, 0.45, 0.85), (60, 0.25, 0.98), (175, 0.55, 0.75)]),
    "mysterious": ("shadowed teals and indigos",
                   [(185, 0.60, 0.30), (250, 0.55, 0.25), (140, 0.50, 0.55)]),
}

N_COMBINATIONS = 24
SEED = 2012


def _hsv_hex(h, s, v):
    r, g, b = colorsys.hsv_to_rgb((h % 360) / 360.0, float(np.clip(s, 0, 1)), float(np.clip(v, 0, 1)))
    return rgb_to_hex([round(255 * r), round(255 * g), round(255 * b)])


def build(seed=SEED):
    rng = np.random.default_rng(seed)
    schemes = []
    for name, (description, base) in BASES.items():
        combos = []
        for _ in range(N_COMBINATIONS):
            combo = {}
            for role, (h, s, v) in zip(("dominant", "subordinate", "accent"), base):
                combo[role] = {"srgb": _hsv_hex(h + rng.uniform(-8, 8),
                                                s + rng.uniform(-0.06, 0.06),
                                                v + rng.uniform(-0.06, 0.06))}
            combos.append(combo)
        schemes.append({"name": name, "description": description, "combinations": combos})
    return {"source": "synthetic demo colors (seeded HSV jitter), not Pantone data",
            "schemes": schemes}


def check(doc):
    lib = load_library(json.dumps(doc))
    for weights in ((0.6, 0.3, 0.1), (1 / 3, 1 / 3, 1 / 3)):
        for i, s in enumerate(lib.schemes):
            for j, c in enumerate(s.combinations):
                got, _ = classify_colors(c.as_array(), weights, lib)
                if got != i:
                    raise SystemExit(f"{s.name} combination {j + 1} classifies as "
                                     f"{lib.schemes[got].name} with weights {weights}")
    return lib


if __name__ == "__main__":
    doc = build()
    lib = check(doc)
    out = Path(__file__).resolve().parents[1] / "src" / "emotransfer" / "data" / "demo_schemes.json"
    out.write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {out}: {len(lib)} schemes, {lib.n_combinations} combinations")
