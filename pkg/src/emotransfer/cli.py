"""Command line entry point.

Exit codes: 0 success, 2 bad configuration, 3 I/O or decode failure,
4 unknown emotion keyword.
"""

import argparse
from dataclasses import dataclass
import os
from pathlib import Path
import sys

from .clustering import fit_em, fallback_model, DegenerateImageError
from .scheme import SchemeError, demo_library, load_library_file
from .selection import DEFAULT_GAMMA
from .transfer import DEFAULT_LAMBDA
from . import pipeline

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_EMOTION = 4


class ConfigError(ValueError):
    def __init__(self, field, msg):
        super().__init__(f"--{field.replace('_', '-')}: {msg}")
        self.field = field


@dataclass
class RunConfig:
    input_path: str
    output_path: str
    library_path: str = None
    emotion: str = None
    reference_path: str = None
    lam: float = DEFAULT_LAMBDA
    gamma: float = DEFAULT_GAMMA
    seed: int = 0
    mode: str = "combination"
    emit_all: bool = False
    report_path: str = None
    workers: int = None

    def validate(self):
        if self.mode not in ("combination", "single"):
            raise ConfigError("mode", f"must be 'combination' or 'single', got {self.mode!r}")
        if (self.emotion is None) == (self.reference_path is None):
            raise ConfigError("emotion", "give exactly one of --emotion or --reference")
        if self.mode == "single" and self.emotion is None:
            raise ConfigError("emotion", "--mode single requires --emotion")
        if self.mode == "single" and self.report_path is not None:
            raise ConfigError("report", "no score report in --mode single")
        if not self.lam >= 0:
            raise ConfigError("lambda", f"must be >= 0, got {self.lam}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigError("gamma", f"must be in [0, 1], got {self.gamma}")
        if self.workers is not None and self.workers < 1:
            raise ConfigError("workers", f"must be >= 1, got {self.workers}")
        if Path(self.output_path).suffix.lower() != ".png":
            raise ConfigError("output", "output must be a .png file")


def _load_library(path):
    return demo_library() if path is None else load_library_file(path)


def _fit(lab, seed):
    try:
        return fit_em(lab, seed=seed)
    except DegenerateImageError:
        print("warning: fewer than 3 distinct colors; duplicating colors across clusters",
              file=sys.stderr)
        return fallback_model(lab)


def list_emotions(library_path=None, out=None):
    """Print scheme names and descriptions sorted by name."""
    out = sys.stdout if out is None else out
    try:
        lib = _load_library(library_path)
    except (OSError, SchemeError, UnicodeDecodeError) as exc:
        print(f"error: cannot load library: {exc}", file=sys.stderr)
        return EXIT_IO
    width = max(len(s.name) for s in lib)
    for s in sorted(lib, key=lambda s: s.name.casefold()):
        print(f"{s.name:<{width}}  {s.description}", file=out)
    return EXIT_OK


def emit_all_paths(output_path, scheme_name, n):
    out = Path(output_path)
    return [out.with_name(f"{out.stem}_{scheme_name}_{j:02d}.png") for j in range(1, n + 1)]


def run(cfg):
    """Execute one configured run; returns the process exit status."""
    try:
        cfg.validate()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        lib = _load_library(cfg.library_path)
        rgb, alpha = pipeline.read_image(cfg.input_path)
        ref_lab = None
        if cfg.reference_path is not None:
            ref_rgb, _ = pipeline.read_image(cfg.reference_path)
            ref_lab = pipeline.rgb_to_lab_image(ref_rgb)
    except (OSError, SchemeError, UnicodeDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    if cfg.emotion is not None:
        try:
            scheme_index = lib.index(cfg.emotion)
        except KeyError:
            names = ", ".join(sorted(lib.names, key=str.casefold))
            print(f"error: unknown emotion {cfg.emotion!r}; available: {names}", file=sys.stderr)
            return EXIT_EMOTION
    else:
        scheme_index, _ = pipeline.resolve_scheme(lib, reference_lab=ref_lab, seed=cfg.seed)
    scheme = lib.schemes[scheme_index]
    lab = pipeline.rgb_to_lab_image(rgb)

    if cfg.mode == "single":
        outputs = pipeline.single_color_outputs(lab, scheme, cfg.emit_all)
        selected = outputs[0]
        extra = outputs if cfg.emit_all else []
        report = None
    else:
        model = _fit(lab, cfg.seed)
        candidates, report = pipeline.transfer_to_scheme(
            lab, scheme, model, cfg.lam, cfg.gamma, cfg.workers)
        selected = candidates[report.selected_index - 1].output
        extra = [c.output for c in candidates] if cfg.emit_all else []

    try:
        pipeline.write_png(cfg.output_path, pipeline.lab_image_to_rgb(selected), alpha)
        for path, img in zip(emit_all_paths(cfg.output_path, scheme.name, len(extra)), extra):
            pipeline.write_png(path, pipeline.lab_image_to_rgb(img), alpha)
        if cfg.report_path is not None and report is not None:
            Path(cfg.report_path).write_text(report.to_json() + "\n", encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"{scheme.name}: wrote {cfg.output_path}"
          + (f" (combination {report.selected_index})" if report else ""), file=sys.stderr)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="emotransfer",
        description="Re-color an image toward an emotion scheme of three-color combinations.")
    p.add_argument("--input", help="input image (PNG or JPEG)")
    p.add_argument("--output", help="output PNG path")
    p.add_argument("--library", help="scheme library JSON (default: bundled demo library)")
    p.add_argument("--emotion", help="target scheme name")
    p.add_argument("--reference", help="reference image; its nearest scheme is the target")
    p.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA,
                   help="gradient preservation weight (default %(default)s)")
    p.add_argument("--gamma", type=float, default=DEFAULT_GAMMA,
                   help="luminance vs color weight in selection (default %(default)s)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("combination", "single"), default="combination")
    p.add_argument("--emit-all", action="store_true",
                   help="also write every candidate as <stem>_<scheme>_<NN>.png")
    p.add_argument("--report", help="write the score report JSON here")
    p.add_argument("--workers", type=int, default=None,
                   help="parallel transfers (default: number of CPUs)")
    p.add_argument("--list-emotions", action="store_true",
                   help="print scheme names and descriptions, then exit")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_emotions:
        return list_emotions(args.library)
    if args.input is None or args.output is None:
        parser.error("--input and --output are required")
    cfg = RunConfig(args.input, args.output, args.library, args.emotion, args.reference,
                    args.lam, args.gamma, args.seed, args.mode, args.emit_all,
                    args.report,
                    os.cpu_count() if args.workers is None else args.workers)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
