"""Scoring of transfer candidates and choice of the final output."""

from dataclasses import dataclass
import json

import numpy as np

DEFAULT_GAMMA = 0.7


def luminance_distance(input_img, output_img):
    """Mean absolute difference of the L channel."""
    a = np.asarray(input_img, dtype=np.float64)
    b = np.asarray(output_img, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.mean(np.abs(a[..., 0] - b[..., 0])))


def color_distance(achieved, target):
    """L1 distance between two ordered color triples (all 9 components)."""
    if hasattr(target, "as_array"):
        target = target.as_array()
    return float(np.sum(np.abs(np.asarray(achieved, dtype=np.float64) - target)))


def combined_score(d_lumin, d_color, gamma):
    return gamma * d_lumin + (1.0 - gamma) * d_color


@dataclass(frozen=True)
class ScoreReport:
    per_candidate: list            # dicts: combination_index, d_lumin, d_color, E
    selected_index: int            # combination_index of the winner
    gamma: float
    scheme_name: str

    def to_dict(self):
        return {"per_candidate": [dict(row) for row in self.per_candidate],
                "selected_index": self.selected_index,
                "gamma": self.gamma,
                "scheme_name": self.scheme_name}

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d):
        return cls([dict(r) for r in d["per_candidate"]], int(d["selected_index"]),
                   float(d["gamma"]), str(d["scheme_name"]))


def select_best(input_img, candidates, targets, gamma=DEFAULT_GAMMA, scheme_name=""):
    """Score every candidate and pick the one with the lowest combined score.

    ``targets[i]`` is the color combination ``candidates[i]`` was transferred
    to. Ties go to the lowest ``combination_index``, so the choice does not
    depend on the order of ``candidates``.
    """
    if not candidates:
        raise ValueError("need at least one candidate")
    if len(targets) != len(candidates):
        raise ValueError("one target per candidate required")
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must be in [0, 1], got {gamma}")
    rows = []
    for cand, target in zip(candidates, targets):
        d_lumin = luminance_distance(input_img, cand.output)
        d_color = color_distance(cand.shifts.achieved_targets, target)
        rows.append({"combination_index": int(cand.combination_index),
                     "d_lumin": d_lumin, "d_color": d_color,
                     "E": combined_score(d_lumin, d_color, gamma)})
    rows.sort(key=lambda r: r["combination_index"])
    best = min(rows, key=lambda r: (r["E"], r["combination_index"]))
    return ScoreReport(rows, best["combination_index"], float(gamma), scheme_name)
