"""End-to-end transfer of an image to every combination of one scheme."""

from concurrent.futures import ThreadPoolExecutor
import os

import numpy as np
from PIL import Image

from .clustering import extract_main_colors, fit_or_fallback
from .colorspace import lab_to_srgb, srgb_to_lab
from .scheme import classify_reference
from .selection import DEFAULT_GAMMA, select_best
from .transfer import DEFAULT_LAMBDA, transfer_combination, transfer_single_color


def read_image(path):
    """Decode a PNG or JPEG file into ``(rgb uint8 (H, W, 3), alpha or None)``."""
    with Image.open(path) as im:
        im.load()
        alpha = None
        if im.mode in ("RGBA", "LA") or (im.mode == "P" and "transparency" in im.info):
            im = im.convert("RGBA")
            alpha = np.asarray(im)[..., 3].copy()
        rgb = np.asarray(im.convert("RGB")).copy()
    return rgb, alpha


def write_png(path, rgb, alpha=None):
    rgb = np.asarray(rgb, dtype=np.uint8)
    if alpha is not None:
        im = Image.fromarray(np.dstack([rgb, alpha]), mode="RGBA")
    else:
        im = Image.fromarray(rgb, mode="RGB")
    im.save(path, format="PNG")


def rgb_to_lab_image(rgb):
    return srgb_to_lab(rgb)


def lab_image_to_rgb(lab):
    return lab_to_srgb(lab)


def resolve_scheme(lib, emotion=None, reference_lab=None, seed=0, sample_cap=100_000):
    """Pick the target scheme from a keyword or from a reference image.

    Returns ``(scheme_index, scores)``; ``scores`` is None for a keyword.
    """
    if emotion is not None:
        return lib.index(emotion), None
    model = fit_or_fallback(reference_lab, seed=seed, sample_cap=sample_cap)
    return classify_reference(extract_main_colors(model), lib)


def transfer_to_scheme(lab, scheme, model, lam=DEFAULT_LAMBDA, gamma=DEFAULT_GAMMA,
                       workers=None):
    """Transfer ``lab`` to every combination of ``scheme`` and score the results.

    Returns ``(candidates, report)``; candidates are in combination order.
    """
    def one(j):
        return transfer_combination(lab, model, scheme.combinations[j], j + 1, lam)

    n = len(scheme.combinations)
    workers = workers or os.cpu_count() or 1
    if workers == 1:
        candidates = [one(j) for j in range(n)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            candidates = list(pool.map(one, range(n)))
    report = select_best(lab, candidates, list(scheme.combinations), gamma, scheme.name)
    return candidates, report


def single_color_outputs(lab, scheme, all_combinations=False):
    """Baseline outputs, combination 1 only unless ``all_combinations``."""
    combos = scheme.combinations if all_combinations else scheme.combinations[:1]
    return [transfer_single_color(lab, c) for c in combos]
