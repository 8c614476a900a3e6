"""Command-line interface.

Subcommands: trace, features, potential, match, classify, render. Curve
sources are either pattern text files ('.'/'#' grids) or an IDX image file
with an index appended, like t10k-images.idx3-ubyte:247.

Exit codes: 0 success, 2 usage errors (from argparse), 3 missing or
unreadable files, 4 pipeline stage failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from .classify import REJECTION_THRESHOLD, classify, report_to_csv
from .errors import CurveMatchError
from .ingest import (
    GRAY_LIMIT,
    BinaryMask,
    load_labeled_digits,
    load_pattern_file,
    parse_idx_images,
    threshold,
)
from .potential import build_potential, default_weights
from .render import HeatmapSpec, render_heatmap
from .search import SearchConfig, TorusPath, canonical_path, mask_features
from .trace import outer_borderline

_EXIT_MISSING_FILE = 3
_EXIT_STAGE_FAILURE = 4


def _parse_weights(text: str) -> np.ndarray:
    """Parse the ANGLE:OTHER weight pair, e.g. the default '3:1'."""
    try:
        angle, other = (float(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected ANGLE:OTHER, got {text!r}")
    return default_weights(angle, other)


def _load_source(source: str, gray_limit: int) -> BinaryMask:
    """Load a curve source: pattern file, or IDX images path with :INDEX."""
    base, sep, index = source.rpartition(":")
    if sep and index.isdigit() and Path(base).exists():
        images = parse_idx_images(Path(base).read_bytes())
        k = int(index)
        if k >= len(images):
            raise CurveMatchError(f"index {k} out of range, file has {len(images)} images")
        return threshold(images[k], limit=gray_limit)
    return load_pattern_file(Path(source))


def _load_patterns(directory: str | None) -> list[BinaryMask]:
    """Pattern masks from a directory of *.txt grids, or the packaged set."""
    if directory is None:
        root = resources.files("curvematch").joinpath("patterns")
        names = sorted(p.name for p in root.iterdir() if p.name.endswith(".txt"))
        texts = [root.joinpath(name).read_text() for name in names]
    else:
        paths = sorted(Path(directory).glob("*.txt"))
        if not paths:
            raise FileNotFoundError(f"no *.txt patterns in {directory}")
        texts = [p.read_text() for p in paths]
    from .ingest import load_pattern

    return [load_pattern(t) for t in texts]


def _search_config(args: argparse.Namespace) -> SearchConfig:
    return SearchConfig(
        method=args.method,
        n=args.n,
        tie=args.tie,
        seed=args.seed,
        start_row=args.start_row,
    )


def _write_out(args: argparse.Namespace, payload: bytes | str) -> None:
    if isinstance(payload, str):
        payload = payload.encode()
    if args.out is None:
        sys.stdout.buffer.write(payload)
    else:
        Path(args.out).write_bytes(payload)


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", choices=("base", "multistart", "lookahead"), default="base")
    p.add_argument("--n", type=int, default=0, help="lookahead depth")
    p.add_argument("--tie", choices=("random", "deterministic"), default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start-row", type=int, default=0, help="start row for multistart")
    p.add_argument("--weights", type=_parse_weights, default=None, help="ANGLE:OTHER, default 3:1")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvematch",
        description="Similarity of closed digit curves via potential torus paths.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="trace the outer borderline of a curve source")
    p.add_argument("source")
    p.add_argument("--gray-limit", type=int, default=GRAY_LIMIT)
    p.add_argument("--out")

    p = sub.add_parser("features", help="dump the 60x45 feature matrix as CSV")
    p.add_argument("source")
    p.add_argument("--signed", action="store_true", help="signed order-1/2 differences")
    p.add_argument("--gray-limit", type=int, default=GRAY_LIMIT)
    p.add_argument("--out")

    p = sub.add_parser("potential", help="dump the potential torus as CSV")
    p.add_argument("source_x")
    p.add_argument("source_y")
    p.add_argument("--weights", type=_parse_weights, default=None)
    p.add_argument("--gray-limit", type=int, default=GRAY_LIMIT)
    p.add_argument("--out")

    p = sub.add_parser("match", help="similarity of two curve sources, JSON result")
    p.add_argument("source_x")
    p.add_argument("source_y")
    _add_search_flags(p)
    p.add_argument("--gray-limit", type=int, default=GRAY_LIMIT)
    p.add_argument("--out")

    p = sub.add_parser("classify", help="score IDX digits against the pattern set")
    p.add_argument("--images", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--patterns", default=None, help="directory of *.txt patterns")
    p.add_argument("--limit", type=int, default=1000)
    p.add_argument("--threshold", type=float, default=REJECTION_THRESHOLD)
    _add_search_flags(p)
    p.add_argument("--gray-limit", type=int, default=GRAY_LIMIT)
    p.add_argument("--out")

    p = sub.add_parser("render", help="render a potential CSV as a PPM heatmap")
    p.add_argument("--potential", required=True, help="CSV from the potential subcommand")
    p.add_argument("--path", default=None, help="JSON from the match subcommand")
    p.add_argument("--cell-size", type=int, default=8)
    p.add_argument("--out")

    return parser


def _cmd_trace(args: argparse.Namespace) -> None:
    curve = outer_borderline(_load_source(args.source, args.gray_limit))
    payload = json.dumps(
        {
            "orientation": curve.orientation,
            "length": len(curve),
            "points": curve.points.tolist(),
        }
    )
    _write_out(args, payload + "\n")


def _matrix_csv(values: np.ndarray) -> str:
    lines = [",".join(f"{x:.17g}" for x in row) for row in values]
    return "\n".join(lines) + "\n"


def _cmd_features(args: argparse.Namespace) -> None:
    fm = mask_features(_load_source(args.source, args.gray_limit), signed=args.signed)
    _write_out(args, _matrix_csv(fm.values))


def _cmd_potential(args: argparse.Namespace) -> None:
    fx = mask_features(_load_source(args.source_x, args.gray_limit))
    fy = mask_features(_load_source(args.source_y, args.gray_limit))
    torus = build_potential(fx, fy, args.weights)
    _write_out(args, _matrix_csv(torus.values))


def _cmd_match(args: argparse.Namespace) -> None:
    fx = mask_features(_load_source(args.source_x, args.gray_limit))
    fy = mask_features(_load_source(args.source_y, args.gray_limit))
    torus = build_potential(fx, fy, args.weights)
    result = canonical_path(torus, _search_config(args))
    payload = json.dumps(
        {
            "mean_potential": result.mean_potential,
            "method": result.method,
            "n": result.n,
            "seed": result.seed,
            "tie_events": result.tie_events,
            "wrap_count_x": result.path.wrap_count_x,
            "wrap_count_y": result.path.wrap_count_y,
            "path": result.path.cells.tolist(),
        }
    )
    _write_out(args, payload + "\n")


def _cmd_classify(args: argparse.Namespace) -> None:
    digits = load_labeled_digits(Path(args.images), Path(args.labels))[: args.limit]
    patterns = _load_patterns(args.patterns)
    report = classify(
        digits,
        patterns,
        weights=args.weights,
        config=_search_config(args),
        rejection=args.threshold,
        gray_limit=args.gray_limit,
    )
    _write_out(args, report_to_csv(report))


def _cmd_render(args: argparse.Namespace) -> None:
    values = np.loadtxt(args.potential, delimiter=",", ndmin=2)
    path = None
    if args.path is not None:
        doc = json.loads(Path(args.path).read_text())
        cells = np.asarray(doc["path"] if isinstance(doc, dict) else doc, dtype=np.int64)
        path = TorusPath(
            cells=cells,
            wrap_count_x=doc.get("wrap_count_x", 0) if isinstance(doc, dict) else 0,
            wrap_count_y=doc.get("wrap_count_y", 0) if isinstance(doc, dict) else 0,
        )
    _write_out(args, render_heatmap(values, path, HeatmapSpec(cell_size=args.cell_size)))


_COMMANDS = {
    "trace": _cmd_trace,
    "features": _cmd_features,
    "potential": _cmd_potential,
    "match": _cmd_match,
    "classify": _cmd_classify,
    "render": _cmd_render,
}


def run_cli(argv: list[str]) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"curvematch: {exc}", file=sys.stderr)
        return _EXIT_MISSING_FILE
    except CurveMatchError as exc:
        print(f"curvematch: {exc.stage} stage failed: {exc}", file=sys.stderr)
        return _EXIT_STAGE_FAILURE
    return 0


def main(argv: list[str] | None = None) -> int:
    return run_cli(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
