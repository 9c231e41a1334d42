"""Command-line front end.

Exit codes: 0 success, 2 invalid arguments or input, 3 zero-norm state,
4 I/O failure, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import csvio
from .analysis import (
    FAMILIES,
    METRICS,
    SWEPT_KEYS,
    VERIFY_TOL,
    SweepSpec,
    figure_params,
    run_sweep,
    verify_presets,
)
from .errors import CatWignerError, TruncationTooSmall, ZeroNormState
from .state import CatParams, build_cat, cat_pair, state_from_json
from .wigner import DEFAULT_GRID, GridSpec, integrate_grid, wigner_grid

log = logging.getLogger("catwigner")

EXIT_OK, EXIT_USAGE, EXIT_ZERO_NORM, EXIT_IO, EXIT_VERIFY = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def parse_amplitude_token(token: str) -> complex:
    """``2``, ``-1.5``, ``2+0.5i`` or ``-0.3i``."""
    text = token.strip()
    if "j" in text.lower():
        raise UsageError(f"bad amplitude {token!r} (imaginary unit is 'i')")
    if text.endswith("i"):
        text = text[:-1] + "j"
    try:
        value = complex(text)
    except ValueError:
        raise UsageError(f"bad amplitude {token!r}") from None
    if not np.isfinite(value):
        raise UsageError(f"amplitude must be finite: {token!r}")
    return value


def parse_amplitude_list(text: str, count: int, flag: str) -> list[complex]:
    parts = text.split(",")
    if len(parts) != count:
        raise UsageError(f"{flag} expects {count} comma-separated values, got {text!r}")
    return [parse_amplitude_token(p) for p in parts]


def _add_grid_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("grid")
    g.add_argument("--xmin", type=float)
    g.add_argument("--xmax", type=float)
    g.add_argument("--ymin", type=float)
    g.add_argument("--ymax", type=float)
    g.add_argument("--nx", type=int)
    g.add_argument("--ny", type=int)


def _add_state_args(p: argparse.ArgumentParser, required: bool) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--state", metavar="PATH", help="state JSON file")
    src.add_argument("--cat", metavar="aL,da")
    src.add_argument("--cat-diff", metavar="a0,a00,da0,da00")
    src.add_argument("--cat-sum", metavar="a0,a00,da0,da00")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catwigner",
        description="Wigner functions of superposed optical cat states.",
        epilog="Negative leading values need the '=' form, e.g. --cat=-2,1.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("wigner", help="sample the Wigner function of a state")
    _add_state_args(w, required=True)
    _add_grid_args(w)
    w.add_argument("--out", metavar="PATH", help="grid CSV destination")
    w.add_argument("--workers", type=int, default=None)

    f = sub.add_parser("figure", help="reproduce one figure panel")
    f.add_argument("--id", type=int, required=True, help="figure number (3 or 4)")
    f.add_argument("--panel", required=True)
    _add_grid_args(f)
    f.add_argument("--out", metavar="PATH")
    f.add_argument("--workers", type=int, default=None)

    s = sub.add_parser("sweep", help="metric curve along one shift parameter")
    fam = s.add_mutually_exclusive_group(required=True)
    fam.add_argument("--id", type=int, choices=sorted(FAMILIES.values()), help="figure family")
    fam.add_argument("--cat-diff", metavar="a0,a00,da0,da00", help="custom difference family")
    fam.add_argument("--cat-sum", metavar="a0,a00,da0,da00", help="custom sum family")
    s.add_argument("--param", choices=sorted(SWEPT_KEYS) + sorted(SWEPT_KEYS.values()))
    s.add_argument("--from", dest="start", type=float, required=True)
    s.add_argument("--to", dest="stop", type=float, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--metric", choices=METRICS, default="fidelity_to_reference")
    s.add_argument("--reference", type=float, default=None)
    _add_grid_args(s)
    s.add_argument("--out", metavar="PATH", help="sweep CSV destination (default: stdout)")
    s.add_argument("--workers", type=int, default=None)

    v = sub.add_parser("verify", help="closed form vs Fock oracle on every figure panel")
    scope = v.add_mutually_exclusive_group()
    scope.add_argument("--scope", choices=("quick", "full"))
    scope.add_argument("--quick", dest="scope", action="store_const", const="quick")
    scope.add_argument("--full", dest="scope", action="store_const", const="full")
    return parser


def grid_from_args(args, base: GridSpec = DEFAULT_GRID) -> GridSpec:
    fields = {"x_min": "xmin", "x_max": "xmax", "y_min": "ymin", "y_max": "ymax", "nx": "nx", "ny": "ny"}
    values = {k: getattr(args, a) if getattr(args, a) is not None else getattr(base, k) for k, a in fields.items()}
    try:
        return GridSpec(**values)
    except ValueError as e:
        raise UsageError(str(e)) from None


def state_from_args(args):
    if args.state:
        with open(args.state) as fh:
            text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise UsageError(f"{args.state}: malformed JSON ({e})") from None
        try:
            return state_from_json(data)
        except ValueError as e:
            raise UsageError(f"{args.state}: {e}") from None
    if args.cat:
        aL, da = parse_amplitude_list(args.cat, 2, "--cat")
        return build_cat(CatParams(aL, da))
    if args.cat_diff:
        return cat_pair(*parse_amplitude_list(args.cat_diff, 4, "--cat-diff"), mode="difference")
    return cat_pair(*parse_amplitude_list(args.cat_sum, 4, "--cat-sum"), mode="sum")


def _emit_grid(state, spec: GridSpec, out: str | None, workers: int | None) -> int:
    g = wigner_grid(state, spec, workers=workers)
    if out:
        csvio.atomic_write_text(out, csvio.grid_to_csv(g))
        log.info("wrote %d rows to %s", spec.nx * spec.ny, out)
    print(
        f"min={csvio.fmt(g.values.min())} max={csvio.fmt(g.values.max())} "
        f"integral={csvio.fmt(integrate_grid(g))}"
    )
    return EXIT_OK


def _describe_source(args) -> str:
    for flag in ("state", "cat", "cat_diff", "cat_sum"):
        value = getattr(args, flag)
        if value:
            return f"--{flag.replace('_', '-')} {value}"
    return "input"


def cmd_wigner(args) -> int:
    state = state_from_args(args)
    try:
        return _emit_grid(state, grid_from_args(args), args.out, args.workers)
    except ZeroNormState as e:
        raise ZeroNormState(f"{_describe_source(args)}: {e}") from None


def cmd_figure(args) -> int:
    params, mode = figure_params(args.id, args.panel)
    log.info("figure %s panel %s: %s %s", args.id, args.panel, mode, params)
    state = cat_pair(params["a0"], params["a00"], params["da0"], params["da00"], mode)
    return _emit_grid(state, grid_from_args(args), args.out, args.workers)


def cmd_sweep(args) -> int:
    if args.id is not None:
        family, fixed, mode = {3: "fig3_difference", 4: "fig4_sum"}[args.id], {}, None
        default_param = {3: "delta_alpha_00", 4: "delta_alpha_0"}[args.id]
    else:
        mode = "difference" if args.cat_diff else "sum"
        raw = args.cat_diff or args.cat_sum
        vals = parse_amplitude_list(raw, 4, "--cat-diff" if args.cat_diff else "--cat-sum")
        family, fixed, default_param = "custom", dict(zip(("a0", "a00", "da0", "da00"), vals)), None
    swept = args.param or default_param
    if swept is None:
        raise UsageError("custom sweeps need --param")
    swept = {v: k for k, v in SWEPT_KEYS.items()}.get(swept, swept)
    try:
        spec = SweepSpec(
            family=family, swept=swept, start=args.start, stop=args.stop, steps=args.steps,
            metric=args.metric, reference=args.reference, fixed=fixed, mode=mode,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None
    result = run_sweep(spec, grid_from_args(args), workers=args.workers)
    if result.skipped:
        log.warning("skipped %d zero-norm points", len(result.skipped))
    text = csvio.sweep_to_csv(result)
    if args.out:
        csvio.atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    scope = args.scope or "quick"
    failed = []
    for row in verify_presets(scope):
        ok = row.max_deviation < VERIFY_TOL
        print(f"{row.label} max_deviation={row.max_deviation:.3e} {'ok' if ok else 'FAIL'}")
        if not ok:
            failed.append(row)
    if failed:
        names = ", ".join(f"{r.label} ({r.max_deviation:.3e})" for r in failed)
        print(f"verification failed: {names}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {"wigner": cmd_wigner, "figure": cmd_figure, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except ZeroNormState as e:
        print(f"error: zero-norm state: {e}", file=sys.stderr)
        return EXIT_ZERO_NORM
    except TruncationTooSmall as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (UsageError, CatWignerError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
