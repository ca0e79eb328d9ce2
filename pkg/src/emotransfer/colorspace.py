"""Conversions between 8-bit sRGB, linear RGB, CIE XYZ (D65) and CIELAB.

All functions are vectorized: colors are arrays whose last axis has length 3
(or 4 for CMYK), so a single color, a palette and a full image go through the
same code path.
"""

import numpy as np

# IEC 61966-2-1 linear-RGB -> XYZ matrix, D65 white.
RGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])
XYZ_TO_RGB = np.linalg.inv(RGB_TO_XYZ)

# Reference white is the image of RGB (1, 1, 1) so that white lands exactly
# on the neutral axis.
WHITE_D65 = RGB_TO_XYZ.sum(axis=1)

LAB_MIN = np.array([0.0, -128.0, -128.0])
LAB_MAX = np.array([100.0, 127.0, 127.0])

_DELTA = 6.0 / 29.0


def srgb_to_linear(rgb):
    """Decode 8-bit sRGB values (0..255, int or float) to linear RGB in [0, 1]."""
    c = np.asarray(rgb, dtype=np.float64) / 255.0
    return np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)


def linear_to_srgb(linear):
    """Encode linear RGB to 8-bit sRGB, clamping to the unit cube first."""
    c = np.clip(np.asarray(linear, dtype=np.float64), 0.0, 1.0)
    v = np.where(c <= 0.0031308, 12.92 * c,
                 1.055 * np.power(c, 1.0 / 2.4) - 0.055)
    return np.rint(v * 255.0).astype(np.uint8)


def linear_to_xyz(linear):
    return np.asarray(linear, dtype=np.float64) @ RGB_TO_XYZ.T


def xyz_to_linear(xyz):
    return np.asarray(xyz, dtype=np.float64) @ XYZ_TO_RGB.T


def _f(t):
    return np.where(t > _DELTA ** 3, np.cbrt(t), t / (3 * _DELTA ** 2) + 4.0 / 29.0)


def _f_inv(f):
    return np.where(f > _DELTA, f ** 3, 3 * _DELTA ** 2 * (f - 4.0 / 29.0))


def xyz_to_lab(xyz):
    t = np.asarray(xyz, dtype=np.float64) / WHITE_D65
    fx, fy, fz = _f(t[..., 0]), _f(t[..., 1]), _f(t[..., 2])
    return np.stack([116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)], axis=-1)


def lab_to_xyz(lab):
    lab = np.asarray(lab, dtype=np.float64)
    fy = (lab[..., 0] + 16.0) / 116.0
    fx = fy + lab[..., 1] / 500.0
    fz = fy - lab[..., 2] / 200.0
    return np.stack([_f_inv(fx), _f_inv(fy), _f_inv(fz)], axis=-1) * WHITE_D65


def srgb_to_lab(rgb):
    """Convert 8-bit sRGB triples to CIELAB.

    Parameters
    ----------
    rgb : array_like, shape (..., 3)
        Channel values in [0, 255]. Fractional values are accepted.

    Returns
    -------
    ndarray, shape (..., 3)
        ``(L, a, b)`` with L in [0, 100].
    """
    return xyz_to_lab(linear_to_xyz(srgb_to_linear(rgb)))


def lab_to_linear(lab):
    """CIELAB to unclamped linear RGB. Values outside [0, 1] are out of gamut."""
    return xyz_to_linear(lab_to_xyz(lab))


def lab_to_srgb(lab):
    """Convert CIELAB to 8-bit sRGB (uint8), clamping out-of-gamut colors."""
    return linear_to_srgb(lab_to_linear(lab))


def cmyk_to_lab(cmyk):
    """Convert CMYK fractions to CIELAB via the device-naive CMYK -> sRGB formula."""
    cmyk = np.asarray(cmyk, dtype=np.float64)
    k = cmyk[..., 3:4]
    rgb = 255.0 * (1.0 - cmyk[..., :3]) * (1.0 - k)
    return srgb_to_lab(rgb)


def hex_to_rgb(code):
    """Parse ``#RRGGBB`` into an int triple."""
    s = code[1:] if code.startswith("#") else code
    if len(s) != 6:
        raise ValueError(f"expected #RRGGBB, got {code!r}")
    return tuple(int(s[i:i + 2], 16) for i in (0, 2, 4))


def rgb_to_hex(rgb):
    return "#{:02X}{:02X}{:02X}".format(*(int(v) for v in rgb))


def in_lab_box(lab):
    """True where every component of ``lab`` lies inside the Lab box."""
    lab = np.asarray(lab)
    return np.all((lab >= LAB_MIN) & (lab <= LAB_MAX), axis=-1)


def clip_to_lab_box(lab):
    return np.clip(lab, LAB_MIN, LAB_MAX)


def as_lab_image(img):
    """Validate and return an (H, W, 3) float64 CIELAB image."""
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"Lab image must have shape (H, W, 3), got {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("Lab image must have at least one pixel")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Lab image contains non-finite values")
    return arr
