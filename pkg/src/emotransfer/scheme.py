"""Emotion scheme libraries and reference-image classification.

A library document is UTF-8 JSON::

    {"source": "...",
     "schemes": [{"name": "serene",
                  "description": "...",
                  "combinations": [{"dominant": COLOR,
                                    "subordinate": COLOR,
                                    "accent": COLOR}, ...]}, ...]}

where ``COLOR`` is one of ``{"lab": [L, a, b]}``, ``{"srgb": "#RRGGBB"}`` or
``{"cmyk": [c, m, y, k]}``. Unknown keys are rejected.
"""

from dataclasses import dataclass
from importlib import resources
import json
import math
import re

import numpy as np

from .colorspace import cmyk_to_lab, hex_to_rgb, srgb_to_lab

ROLES = ("dominant", "subordinate", "accent")

_HEX = re.compile(r"^#[0-9A-Fa-f]{6}$")


class SchemeError(ValueError):
    """Base class for malformed or invalid scheme libraries."""


class SchemeParseError(SchemeError):
    def __init__(self, msg, line, column):
        super().__init__(f"{msg} (line {line}, column {column})")
        self.line = line
        self.column = column


class SchemeValidationError(SchemeError):
    pass


class DuplicateSchemeError(SchemeValidationError):
    pass


@dataclass(frozen=True)
class ColorCombination:
    """Ordered (dominant, subordinate, accent) CIELAB triple."""

    dominant: np.ndarray
    subordinate: np.ndarray
    accent: np.ndarray

    @classmethod
    def from_array(cls, colors):
        colors = np.asarray(colors, dtype=np.float64)
        if colors.shape != (3, 3):
            raise ValueError(f"combination must be 3 Lab colors, got shape {colors.shape}")
        return cls(colors[0].copy(), colors[1].copy(), colors[2].copy())

    def as_array(self):
        """Return the colors as a (3, 3) array, row k = k-th role."""
        return np.stack([self.dominant, self.subordinate, self.accent])


@dataclass(frozen=True)
class EmotionScheme:
    name: str
    description: str
    combinations: tuple

    def __len__(self):
        return len(self.combinations)

    def as_array(self):
        """All combinations stacked into an (n, 3, 3) array."""
        return np.stack([c.as_array() for c in self.combinations])


@dataclass(frozen=True)
class SchemeLibrary:
    schemes: tuple
    source: str = ""

    def __post_init__(self):
        if not self.schemes:
            raise SchemeValidationError("library must contain at least one scheme")
        seen = {}
        for i, s in enumerate(self.schemes):
            key = s.name.casefold()
            if key in seen:
                raise DuplicateSchemeError(
                    f"duplicate scheme name {s.name!r} (schemes {seen[key]} and {i})")
            seen[key] = i

    def __len__(self):
        return len(self.schemes)

    def __iter__(self):
        return iter(self.schemes)

    @property
    def names(self):
        return [s.name for s in self.schemes]

    def index(self, name):
        """Index of the scheme called ``name`` (case-insensitive)."""
        key = name.casefold()
        for i, s in enumerate(self.schemes):
            if s.name.casefold() == key:
                return i
        raise KeyError(name)

    def get(self, name):
        return self.schemes[self.index(name)]

    @property
    def n_combinations(self):
        return sum(len(s) for s in self.schemes)


@dataclass(frozen=True)
class MainColors:
    """Three main colors of an image, heaviest first, with their weights."""

    colors: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        colors = np.asarray(self.colors, dtype=np.float64)
        weights = np.asarray(self.weights, dtype=np.float64)
        if colors.shape != (3, 3) or weights.shape != (3,):
            raise ValueError("MainColors needs (3, 3) colors and 3 weights")
        if np.any(weights <= 0):
            raise ValueError(f"weights must be positive, got {weights}")
        if abs(weights.sum() - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {weights.sum()!r}")
        if np.any(np.diff(weights) > 0):
            raise ValueError(f"weights must be non-increasing, got {weights}")
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "weights", weights)

    @property
    def dominant(self):
        return self.colors[0]

    @property
    def subordinate(self):
        return self.colors[1]

    @property
    def accent(self):
        return self.colors[2]


# -- loading -----------------------------------------------------------------

def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise SchemeValidationError(f"{where}: expected an object")
    extra = set(obj) - set(allowed)
    if extra:
        raise SchemeValidationError(f"{where}: unknown keys {sorted(extra)}")


def _numbers(values, n, where):
    if (not isinstance(values, list) or len(values) != n
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values)
            or not all(math.isfinite(v) for v in values)):
        raise SchemeValidationError(f"{where}: expected {n} finite numbers")
    return [float(v) for v in values]


def parse_color(obj, where="color"):
    """Turn one COLOR object into a Lab (3,) array."""
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SchemeValidationError(
            f"{where}: color must be exactly one of 'lab', 'srgb', 'cmyk'")
    (kind, value), = obj.items()
    if kind == "lab":
        lab = np.array(_numbers(value, 3, where))
    elif kind == "srgb":
        if not isinstance(value, str) or not _HEX.match(value):
            raise SchemeValidationError(f"{where}: srgb must be '#RRGGBB', got {value!r}")
        lab = srgb_to_lab(hex_to_rgb(value))
    elif kind == "cmyk":
        cmyk = _numbers(value, 4, where)
        if not all(0.0 <= v <= 1.0 for v in cmyk):
            raise SchemeValidationError(f"{where}: cmyk components must be in [0, 1]")
        lab = cmyk_to_lab(cmyk)
    else:
        raise SchemeValidationError(f"{where}: unknown color encoding {kind!r}")
    return lab


def _parse_scheme(obj, i):
    where = f"schemes[{i}]"
    _check_keys(obj, ("name", "description", "combinations"), where)
    name = obj.get("name")
    if not isinstance(name, str) or not name.strip():
        raise SchemeValidationError(f"{where}: name must be a nonempty string")
    where = f"scheme {name!r}"
    description = obj.get("description", "")
    if not isinstance(description, str):
        raise SchemeValidationError(f"{where}: description must be a string")
    combos = obj.get("combinations")
    if not isinstance(combos, list) or not combos:
        raise SchemeValidationError(f"{where}: needs at least one combination")
    parsed = []
    for j, combo in enumerate(combos):
        cw = f"{where} combination {j + 1}"
        _check_keys(combo, ROLES, cw)
        missing = [r for r in ROLES if r not in combo]
        if missing:
            raise SchemeValidationError(f"{cw}: missing {missing}")
        parsed.append(ColorCombination(
            *(parse_color(combo[r], f"{cw} {r}") for r in ROLES)))
    return EmotionScheme(name, description, tuple(parsed))


def load_library(text):
    """Parse and validate a scheme-library JSON document.

    Raises
    ------
    SchemeParseError
        The text is not valid JSON; carries ``line`` and ``column``.
    SchemeValidationError
        The structure or a color is invalid.
    DuplicateSchemeError
        Two schemes share a name (case-insensitive).
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemeParseError(exc.msg, exc.lineno, exc.colno) from None
    _check_keys(doc, ("source", "schemes"), "library")
    source = doc.get("source", "")
    if not isinstance(source, str):
        raise SchemeValidationError("library: source must be a string")
    schemes = doc.get("schemes")
    if not isinstance(schemes, list):
        raise SchemeValidationError("library: 'schemes' must be a list")
    return SchemeLibrary(tuple(_parse_scheme(s, i) for i, s in enumerate(schemes)), source)


def load_library_file(path):
    with open(path, encoding="utf-8") as fh:
        return load_library(fh.read())


def demo_library():
    """The bundled 27-scheme library of synthetic colors."""
    text = resources.files("emotransfer").joinpath("data/demo_schemes.json").read_text("utf-8")
    return load_library(text)


def library_to_dict(lib):
    """Serialize a library with colors written as Lab."""
    return {
        "source": lib.source,
        "schemes": [
            {"name": s.name, "description": s.description,
             "combinations": [{r: {"lab": [float(v) for v in getattr(c, r)]} for r in ROLES}
                              for c in s.combinations]}
            for s in lib.schemes
        ],
    }


# -- classification ----------------------------------------------------------

def scheme_scores(colors, weights, lib):
    """Weighted squared distance of three main colors to every scheme.

    For scheme i the score is ``sum_j sum_k w_k ||colors_k - C_ijk||^2``,
    summed over all combinations j of that scheme.
    """
    colors = np.asarray(colors, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    scores = np.empty(len(lib))
    for i, s in enumerate(lib.schemes):
        sq = np.sum((s.as_array() - colors) ** 2, axis=2)   # (n_comb, 3)
        scores[i] = np.sum(sq @ weights)
    return scores


def classify_colors(colors, weights, lib):
    """Return ``(index, scores)``; ties go to the lowest scheme index."""
    scores = scheme_scores(colors, weights, lib)
    return int(np.argmin(scores)), scores


def classify_reference(main, lib):
    """Nearest scheme to a reference image's :class:`MainColors`."""
    return classify_colors(main.colors, main.weights, lib)
