"""Small synthetic test images, so demos and tests need no external photos."""

import numpy as np


def landscape(height=256, width=256, seed=0, noise=4.0):
    """Sky, wavy horizon, ground and a warm sun glow as uint8 sRGB."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:height, 0:width] / max(height, width)
    sky = np.stack([70 + 90 * y, 130 + 80 * y, 230 - 40 * y], -1)
    ground = np.stack([110 + 60 * x, 90 + 40 * np.sin(6 * x), 40 + 30 * y], -1)
    sun = np.exp(-((x - 0.7) ** 2 + (y - 0.25) ** 2) / 0.004)[..., None] * [120, 90, -80]
    horizon = 0.55 + 0.05 * np.sin(9 * x)
    rgb = np.where((y > horizon)[..., None], ground, sky) + sun
    return np.clip(rgb + rng.normal(0, noise, rgb.shape), 0, 255).astype(np.uint8)


def color_bands(colors, fractions=(0.6, 0.3, 0.1), height=100, width=50):
    """Horizontal bands of constant colors covering the given area fractions."""
    colors = np.asarray(colors)
    rows = np.round(np.cumsum((0,) + tuple(fractions)) * height).astype(int)
    img = np.empty((height, width, colors.shape[1]), dtype=colors.dtype)
    for k, color in enumerate(colors):
        img[rows[k]:rows[k + 1]] = color
    return img
