"""Command-line front end.

Exit codes: 0 success, 1 internal or I/O error, 2 usage error, 3 confirmed
exceedance of a published bound (``verify`` only).
"""

from __future__ import annotations

import argparse
import json
import logging
import shlex
import sys
from pathlib import Path

from . import __version__, bounds, report
from .classes import FunctionClass, OrderParam
from .errors import HankelBoundError, InsufficientOrder
from .hankel import hankel_determinant
from .search import (
    SearchConfig,
    alpha_scan,
    grid_maximize_surrogate,
    monte_carlo_verify,
    schwarz_box_maximize,
)
from .series import PowerSeries

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_EXCEEDED = 0, 1, 2, 3

log = logging.getLogger("hankelbound")


class UsageError(Exception):
    pass


def _alpha(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid alpha {text!r}")
    if not 1.0 <= value <= 2.0:
        raise argparse.ArgumentTypeError("alpha must lie in [1,2]")
    return value


def _at_least(lo: int):
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer {text!r}")
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be at least {lo}")
        return v
    return conv


def _common(p: argparse.ArgumentParser, alpha: bool = True, seed: bool = False) -> None:
    p.add_argument("--class", dest="cls", choices=[c.value for c in FunctionClass],
                   default="starlike")
    if alpha:
        p.add_argument("--alpha", type=_alpha, default=2.0)
    if seed:
        p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--config", help="key=value file mirroring the flags; flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hankelbound",
        description="Second Hankel determinant bounds for starlike/convex functions "
                    "of order alpha/2-1, with numerical verification.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="closed-form bounds")
    _common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="Monte-Carlo verification against the bounds")
    _common(p, seed=True)
    p.add_argument("--samples", type=_at_least(0), default=100_000)
    p.add_argument("--atoms", type=_at_least(1), default=3)
    p.add_argument("--stress-points", type=_at_least(0), default=2001)
    p.add_argument("--truncation", type=_at_least(4), default=64)
    p.add_argument("--workers", type=_at_least(1), default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="bounds and empirical maxima over an alpha grid")
    _common(p, alpha=False, seed=True)
    p.add_argument("--steps", type=_at_least(2), default=11)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--samples", type=_at_least(0), default=10_000)
    p.add_argument("--atoms", type=_at_least(1), default=3)
    p.add_argument("--svg", help="also write a line chart to this path")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("search", help="grid and (c1, x, z) box maximization")
    _common(p)
    p.add_argument("--grid", type=_at_least(2), default=2001, help="surrogate grid nodes per axis")
    p.add_argument("--box-c", type=_at_least(2), default=201)
    p.add_argument("--x-angles", type=_at_least(1), default=64)
    p.add_argument("--x-radii", type=_at_least(1), default=32)
    p.add_argument("--z-angles", type=_at_least(1), default=64)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("hankel", help="H_q(n) of user-supplied coefficients")
    p.add_argument("--coeffs", required=True,
                   help="JSON array of [re, im] pairs a_1, a_2, ... (a_0 = 0 implied)")
    p.add_argument("--q", type=_at_least(1), default=2)
    p.add_argument("--n", type=_at_least(1), default=2)
    p.set_defaults(func=cmd_hankel)
    return parser


def _config_tokens(path: str) -> list[str]:
    tokens = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        tokens += ["--" + key.replace("_", "-"), *shlex.split(value)]
    return tokens


def _expand_config(argv: list[str]) -> list[str]:
    """Splice ``--config`` entries in right after the subcommand so later flags override them."""
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path, rest = argv[i + 1], argv[:i] + argv[i + 2:]
        elif tok.startswith("--config="):
            path, rest = tok.split("=", 1)[1], argv[:i] + argv[i + 1:]
        else:
            continue
        cmd = next((j for j, t in enumerate(rest) if not t.startswith("-")), None)
        if cmd is None:
            raise UsageError("--config must follow a subcommand")
        return rest[:cmd + 1] + _config_tokens(path) + rest[cmd + 1:]
    return argv


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    Path(out).write_text(text if text.endswith("\n") else text + "\n")


def _document(command: str, config: dict, results: dict, started: str) -> report.ReportDocument:
    return report.ReportDocument(command=command, config=config, results=results,
                                 timestamps={"started": started, "finished": report.now_iso()})


def cmd_bound(args) -> int:
    cls, p = FunctionClass(args.cls), OrderParam(args.alpha)
    b = bounds.paper_bound(cls, p)
    out = {"class": cls.value, "alpha": p.alpha, "beta": p.beta,
           "bound_paper": b.value, "maximizer_c": b.maximizer_c, "source": b.source.value}
    if cls is FunctionClass.CONVEX:
        e = bounds.corrected_convex_envelope(p)
        out.update(bound_corrected=e.value, maximizer_c_corrected=e.maximizer_c)
    _emit(report.dumps(out), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    started = report.now_iso()
    cfg = SearchConfig(class_kind=args.cls, alpha=args.alpha, mc_samples=args.samples,
                       atoms=args.atoms, seed=args.seed, truncation=args.truncation,
                       stress_points=args.stress_points, workers=args.workers)
    rep = monte_carlo_verify(cfg)
    doc = _document("verify", cfg.to_json(), rep.to_json(), started)
    _emit(doc.to_json(), args.out)
    print(f"{cfg.class_kind.value} alpha={cfg.alpha:g}: empirical max {rep.empirical_max:.12g}, "
          f"published bound {rep.bound_paper:.12g}, confirmed violations {rep.violations_paper}",
          file=sys.stderr)
    return EXIT_EXCEEDED if rep.violations_paper > 0 else EXIT_OK


def cmd_scan(args) -> int:
    started = report.now_iso()
    cls = FunctionClass(args.cls)
    for path in (args.out, args.svg):
        if path is not None:
            Path(path).touch()  # fail before the scan, not after
    cfg = SearchConfig(class_kind=cls, mc_samples=args.samples, atoms=args.atoms, seed=args.seed)
    rows = alpha_scan(cls, args.steps, cfg)
    if args.format == "csv":
        text = report.scan_csv(rows)
    else:
        text = _document("scan", {**cfg.to_json(), "steps": args.steps},
                         {"rows": [r.to_json() for r in rows]}, started).to_json()
    _emit(text, args.out)
    if args.svg:
        report.scan_svg(rows, args.svg, title=f"{cls.value} class")
    return EXIT_OK


def cmd_search(args) -> int:
    started = report.now_iso()
    cfg = SearchConfig(class_kind=args.cls, alpha=args.alpha, grid_c=args.grid,
                       grid_delta=args.grid, box_c=args.box_c, x_angles=args.x_angles,
                       x_radii=args.x_radii, z_angles=args.z_angles)
    results = {"surrogate": grid_maximize_surrogate(cfg, literal=True).to_json()}
    if cfg.class_kind is FunctionClass.CONVEX:
        results["surrogate_corrected"] = grid_maximize_surrogate(cfg, literal=False).to_json()
    results["schwarz_box"] = schwarz_box_maximize(cfg).to_json()
    _emit(_document("search", cfg.to_json(), results, started).to_json(), args.out)
    return EXIT_OK


def load_coefficients(path: str) -> PowerSeries:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read coefficients from {path}: {exc}")
    if not isinstance(data, list) or not all(
            isinstance(v, list) and len(v) == 2
            and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v)
            for v in data):
        raise UsageError(f"{path}: expected a JSON array of [re, im] pairs")
    try:
        return PowerSeries([0.0] + [complex(re, im) for re, im in data])
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}")


def cmd_hankel(args) -> int:
    f = load_coefficients(args.coeffs)
    need = args.n + 2 * args.q - 2
    if f.order < need:
        raise UsageError(f"need order ≥ {need}, file supplies {f.order}")
    h = hankel_determinant(f, args.q, args.n)
    print(report.dumps({"re": h.real, "im": h.imag, "abs": abs(h)}))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _expand_config(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hankelbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, InsufficientOrder) as exc:
        print(f"hankelbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"hankelbound: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except HankelBoundError as exc:
        print(f"hankelbound: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception:
        log.exception("internal error")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
