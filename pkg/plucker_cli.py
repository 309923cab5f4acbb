"""CLI entry point for checking, certifying and searching oscillating Plücker inequalities."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from dotenv import load_dotenv

from plucker_lab.combinatorics import IndexTuple, is_weakly_separated, layout, parse_tuple, symdiff_word
from plucker_lab.errors import BudgetExhausted, ConfigError, PluckerLabError, ShapeError
from plucker_lab.linalg import RationalMatrix, format_rational
from plucker_lab.presets import LAPLACE_PRESETS, PAIR_PRESETS
from plucker_lab.services.generation import GeneratorConfig, is_tnn, random_grassmann_point, random_tnn
from plucker_lab.services.inequalities import (
    build_system,
    certify,
    certify_laplace,
    display_agrees,
    evaluate_laplace,
    generalized_laplace_system,
    laplace_minor_terms,
)
from plucker_lab.services.render import diagram_file_name, render_diagram, write_compatible_set
from plucker_lab.services.run_modes import DEFAULT_MODE_KEY, VERIFY_MODES
from plucker_lab.services.settings import get_settings
from plucker_lab.services.temperley_lieb import KauffmanDiagram, decompose_product
from plucker_lab.services.verification import search_counterexample, verify_pair

BASE_DIR = Path(__file__).resolve().parent
load_dotenv(dotenv_path=BASE_DIR / ".env")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

logger = logging.getLogger("plucker_cli")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=sorted(PAIR_PRESETS.keys()), help="Named index pair.")
    common.add_argument("--m", type=int, help="Minor size (number of columns).")
    common.add_argument("--n", type=int, help="Second size parameter; the circle is [1, m+n].")
    common.add_argument("--I", dest="I", help="Ordered index tuple, e.g. 1,3,5.")
    common.add_argument("--J", dest="J", help="Ordered index tuple, e.g. 2,4,6.")
    common.add_argument("--r", type=int, help="Exchange position r (defaults to every r).")
    common.add_argument("--l", type=int, help="Partial-sum length l (defaults to every l).")
    common.add_argument("--samples", type=int, help="TNN sample points (falls back to the run mode).")
    common.add_argument("--seed", type=int, default=0, help="Base seed of the sampling ladder.")
    common.add_argument("--budget", type=int, help="Search attempts (falls back to the run mode).")
    common.add_argument("--out", type=Path, help="Write the result here instead of stdout.")
    common.add_argument(
        "--format",
        choices=["json", "text", "svg"],
        default="json",
        help="Output format; svg only applies to render and prints a single diagram to stdout.",
    )
    common.add_argument(
        "--mode",
        choices=list(VERIFY_MODES.keys()),
        default=DEFAULT_MODE_KEY,
        help="Verification profile: "
        + "; ".join(f"{key}: {mode.description}" for key, mode in VERIFY_MODES.items()),
    )
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")
    return common


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    common = _common_parser()
    parser = argparse.ArgumentParser(description="Oscillating Plücker inequalities on the TNN Grassmannian.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ws", parents=[common], help="Weak separation test and layout.")
    sub.add_parser("layout", parents=[common], help="Symmetric-difference layout.")
    sub.add_parser("system", parents=[common], help="Exchange terms and signs of the system.")
    decompose = sub.add_parser("decompose", parents=[common], help="Δ_IΔ_J as TL immanants.")
    decompose.add_argument("--matrix", type=Path, help="Matrix JSON (n x m); defaults to a seeded TNN matrix.")
    sub.add_parser("certify", parents=[common], help="Diagram-coefficient certificates.")
    sub.add_parser("verify", parents=[common], help="Certificates plus sampled evaluation.")
    sub.add_parser("search", parents=[common], help="Counterexample search for non-separated pairs.")
    laplace = sub.add_parser("laplace", parents=[common], help="Generalized Laplace family.")
    laplace.add_argument("--d", type=int, help="Leading block size, 1 <= d < n.")
    laplace.add_argument("--laplace-preset", choices=sorted(LAPLACE_PRESETS.keys()))
    gen = sub.add_parser("gen", parents=[common], help="Seeded TNN matrix.")
    gen.add_argument("--config", type=Path, help="Generator config JSON.")
    render = sub.add_parser("render", parents=[common], help="SVG diagrams.")
    render.add_argument("--diagram", help="Diagram JSON, inline or a file path.")
    return parser.parse_args(argv)


def _usage(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(EXIT_USAGE)


def _pair(args: argparse.Namespace) -> Tuple[IndexTuple, IndexTuple]:
    preset = PAIR_PRESETS.get(args.preset) if args.preset else {}
    raw_i = args.I or (",".join(map(str, preset["I"])) if preset else None)
    raw_j = args.J or (",".join(map(str, preset["J"])) if preset else None)
    if not raw_i or not raw_j:
        _usage("Provide --I and --J (or --preset).")
    m = args.m or preset.get("m") or len([t for t in raw_i.strip("()[]").replace(" ", ",").split(",") if t])
    n = args.n or preset.get("n") or m
    if args.r is None and preset.get("r"):
        args.r = preset["r"]
    return parse_tuple(raw_i, m, n), parse_tuple(raw_j, m, n)


def _r_values(args: argparse.Namespace, eta: int) -> List[int]:
    return [args.r] if args.r else list(range(1, eta + 1))


def _text(data, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{data}")
    return lines


def _emit(data: Dict, args: argparse.Namespace) -> None:
    if args.format == "text":
        payload = "\n".join(_text(data)) + "\n"
    else:
        payload = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(payload, encoding="utf-8")
        logger.info("wrote %s", args.out)
    else:
        sys.stdout.write(payload)


def cmd_ws(args: argparse.Namespace) -> int:
    a, b = _pair(args)
    ws = is_weakly_separated(a, b)
    lay = layout(a, b).to_json() if symdiff_word(a, b) else None
    _emit({"ws": ws, "layout": lay, "I": list(a.entries), "J": list(b.entries)}, args)
    return EXIT_OK


def cmd_layout(args: argparse.Namespace) -> int:
    a, b = _pair(args)
    _emit(layout(a, b).to_json(), args)
    return EXIT_OK


def cmd_system(args: argparse.Namespace) -> int:
    a, b = _pair(args)
    eta = layout(a, b).eta
    systems = [build_system(a, b, r) for r in _r_values(args, eta)]
    _emit(
        {
            "systems": [dict(s.to_json(), display_agrees=display_agrees(s)) for s in systems],
            "ws": is_weakly_separated(a, b),
        },
        args,
    )
    return EXIT_OK


def _load_matrix(path: Path) -> RationalMatrix:
    try:
        return RationalMatrix.from_json(json.loads(path.read_text(encoding="utf-8")))
    except (OSError, ValueError, KeyError) as exc:
        raise ShapeError(f"cannot read matrix from {path}: {exc}") from exc


def cmd_decompose(args: argparse.Namespace) -> int:
    a, b = _pair(args)
    shape = a.shape
    if args.matrix:
        matrix = _load_matrix(args.matrix)
    else:
        mode = VERIFY_MODES[args.mode]
        matrix = random_tnn(GeneratorConfig(args.seed, shape.n, shape.m, mode.bound, mode.density))
    value, terms = decompose_product(a, b, matrix)
    _emit(
        {
            "value": format_rational(value),
            "sum": format_rational(sum((t for _, t in terms), Fraction(0))),
            "terms": [{"diagram": k.to_json(), "value": format_rational(v)} for k, v in terms],
            "matrix": matrix.to_json(),
        },
        args,
    )
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    a, b = _pair(args)
    eta = layout(a, b).eta
    certificates = []
    for r in _r_values(args, eta):
        system = build_system(a, b, r)
        for l in ([args.l] if args.l else range(1, eta + 1)):
            certificates.append(certify(system, l).to_json())
    ok = all(c["valid"] for c in certificates)
    _emit({"ws": is_weakly_separated(a, b), "certificates": certificates, "all_valid": ok}, args)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_verify(args: argparse.Namespace) -> int:
    a, b = _pair(args)
    mode = VERIFY_MODES[args.mode]
    report = verify_pair(a, b, args.samples, mode, seed=args.seed)
    _emit(report.to_json(), args)
    return EXIT_OK if report.holds else EXIT_VIOLATION


def cmd_search(args: argparse.Namespace) -> int:
    a, b = _pair(args)
    mode = VERIFY_MODES[args.mode]
    witness = search_counterexample(a, b, args.budget, mode, seed=args.seed)
    if witness is None:
        _emit({"ws": True, "witness": None}, args)
        return EXIT_OK
    _emit({"ws": False, "witness": witness.to_json()}, args)
    return EXIT_VIOLATION


def cmd_laplace(args: argparse.Namespace) -> int:
    preset = LAPLACE_PRESETS.get(args.laplace_preset) if args.laplace_preset else {}
    n = args.n or preset.get("n")
    d = args.d or preset.get("d")
    if not n or not d:
        _usage("Provide --n and --d (or --laplace-preset).")
    system = generalized_laplace_system(n, d)
    rows = []
    for l in range(n + 1):
        coeffs = certify_laplace(system, l)
        rows.append(
            {
                "l": l,
                "coefficients": {str(k): c for k, c in sorted(coeffs.items(), key=lambda kv: kv[0].edges)},
                "identity": not coeffs,
            }
        )
    samples = args.samples or 0
    for t in range(samples):
        point = random_grassmann_point(GeneratorConfig(args.seed + t, n, n))
        for row, value in zip(rows, evaluate_laplace(system, point)):
            row.setdefault("values", []).append(format_rational(value))
    minors = [
        {"k": k, "first": [list(p.rows), list(p.cols)], "second": [list(q.rows), list(q.cols)]}
        for k, (p, q) in enumerate(laplace_minor_terms(n, d))
    ]
    _emit(dict(system.to_json(), rows=rows, minors=minors), args)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.config:
        try:
            config = GeneratorConfig.from_json(json.loads(args.config.read_text(encoding="utf-8")))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read generator config {args.config}: {exc}") from exc
    else:
        if not args.n or not args.m:
            _usage("Provide --config or both --n and --m.")
        mode = VERIFY_MODES[args.mode]
        config = GeneratorConfig(args.seed, args.n, args.m, mode.bound, mode.density)
    matrix = random_tnn(config)
    data = {"config": config.to_json(), "matrix": matrix.to_json()}
    if max(config.n, config.m) <= 6:
        data["tnn"] = is_tnn(matrix)
    _emit(data, args)
    return EXIT_OK


def _read_diagram(raw: str) -> KauffmanDiagram:
    try:
        text = raw if raw.lstrip().startswith("{") else Path(raw).read_text(encoding="utf-8")
        return KauffmanDiagram.from_json(json.loads(text))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ShapeError(f"cannot read diagram: {exc}") from exc


def cmd_render(args: argparse.Namespace) -> int:
    out_dir = args.out or get_settings().output_dir
    if args.diagram:
        diagram = _read_diagram(args.diagram)
        markup = render_diagram(diagram, title=str(diagram))
        if args.format == "svg" and not args.out:
            sys.stdout.write(markup + "\n")
            return EXIT_OK
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / diagram_file_name(diagram)
        path.write_text(markup, encoding="utf-8")
        written = [path]
    else:
        a, b = _pair(args)
        written = write_compatible_set(a, b, out_dir)
    sys.stdout.write(json.dumps({"files": [str(p) for p in written]}, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


COMMANDS = {
    "ws": cmd_ws,
    "layout": cmd_layout,
    "system": cmd_system,
    "decompose": cmd_decompose,
    "certify": cmd_certify,
    "verify": cmd_verify,
    "search": cmd_search,
    "laplace": cmd_laplace,
    "gen": cmd_gen,
    "render": cmd_render,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = _parse_args(argv)
    try:
        settings = get_settings()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
    if args.format == "svg" and args.command != "render":
        print(f"error: --format svg is only available for render, not {args.command}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PluckerLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
