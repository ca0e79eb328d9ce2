"""Emotion-driven image color transfer with three-color combinations.

Typical use::

    from emotransfer import demo_library, fit_em, srgb_to_lab, transfer_to_scheme

    lab = srgb_to_lab(rgb)                 # (H, W, 3) uint8 -> float Lab
    model = fit_em(lab, seed=0)
    scheme = demo_library().get("serene")
    candidates, report = transfer_to_scheme(lab, scheme, model)
    best = candidates[report.selected_index - 1].output
"""

from .colorspace import (LAB_MAX, LAB_MIN, cmyk_to_lab, lab_to_srgb, srgb_to_lab)
from .scheme import (ColorCombination, EmotionScheme, MainColors, SchemeLibrary,
                     SchemeError, classify_colors, classify_reference, demo_library,
                     load_library, load_library_file)
from .clustering import (ClusterModel, DegenerateImageError, extract_main_colors,
                         fallback_model, fit_em, fit_or_fallback)
from .transfer import (ShiftSolution, TransferCandidate, apply_shifts, preserve_gradient,
                       solve_shifts, transfer_combination, transfer_single_color)
from .selection import ScoreReport, color_distance, luminance_distance, select_best
from .pipeline import transfer_to_scheme

__version__ = "0.1.0"
