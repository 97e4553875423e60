"""Command-line front end: tables, series dumps, exact references,
singularities, figure data, and the Riccati-Pade drivers.

Every run is deterministic: the same configuration and precision give
byte-identical output, and each CSV starts with a "# config:" comment
recording the full effective configuration.
"""

import argparse
import sys
from dataclasses import dataclass, field

import mpmath
from mpmath import mpf

from . import matching, rpm
from .errors import ParseError, SmallEnergyError, UsageError
from .expansion import f_series
from .matching import SingularityKind
from .models import (
    CubicQuartic,
    Side,
    closed_logderiv,
    model_literal,
    parse_model,
)
from .precision import PrecisionContext, format_full, format_significant, parse_real
from .series import eval_truncated

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

DEFAULT_DIGITS = 60
RPM_DEFAULT_DIGITS = 100
DISPLAY_DIGITS = 10


@dataclass
class RunConfig:
    command: str
    precision_digits: int
    model_literal: str = ""
    output_path: str = ""
    full_digits: bool = False
    options: dict = field(default_factory=dict)

    def provenance(self) -> str:
        parts = [f"command={self.command}", f"precision={self.precision_digits}"]
        if self.model_literal:
            parts.append(f"model={self.model_literal}")
        for key in sorted(self.options):
            parts.append(f"{key}={self.options[key]}")
        if self.full_digits:
            parts.append("full-digits=true")
        return " ".join(parts)


def _parse_orders(text: str) -> list:
    """'4:64:4' -> [4, 8, ..., 64]; a comma list is also accepted."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ParseError(f"orders range {text!r} is not start:stop:step")
        try:
            start, stop, step = (int(p) for p in parts)
        except ValueError as exc:
            raise ParseError(f"orders range {text!r}: {exc}") from exc
        if step <= 0 or stop < start:
            raise ParseError(f"orders range {text!r} is empty or descending")
        return list(range(start, stop + 1, step))
    try:
        return [int(p) for p in text.split(",") if p]
    except ValueError as exc:
        raise ParseError(f"orders list {text!r}: {exc}") from exc


def _read_config_file(path: str) -> dict:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smallenergy",
        description="Ground-state eigenvalues of 1D wells by small-energy "
        "series matching and the Riccati-Pade method",
    )
    parser.add_argument("--config", help="key=value configuration file")
    parser.add_argument(
        "--precision", type=int, help=f"working decimal digits (default {DEFAULT_DIGITS}; "
        f"{RPM_DEFAULT_DIGITS} for rpm)"
    )
    parser.add_argument(
        "--full-digits", action="store_true",
        help="print full context precision instead of 10 significant digits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model(p):
        p.add_argument("model", nargs="+", help="model literal, e.g. sym-well vR=1")

    p = sub.add_parser("table", help="convergence table of series estimates")
    add_model(p)
    p.add_argument("--orders", help="start:stop:step or comma list")
    p.add_argument("--out", help="CSV output path (default stdout)")

    p = sub.add_parser("series", help="left/right small-energy coefficients")
    add_model(p)
    p.add_argument("--order", type=int)
    p.add_argument("--out", help="CSV output path (default stdout)")

    p = sub.add_parser("exact", help="closed-form ground-state reference")
    add_model(p)

    p = sub.add_parser("singularity", help="series-limiting singularity")
    add_model(p)
    p.add_argument("--side", choices=["left", "right"])

    p = sub.add_parser("figure", help="closed-form L_left/L_right curve data")
    add_model(p)
    p.add_argument("--emin")
    p.add_argument("--emax")
    p.add_argument("--steps", type=int)
    p.add_argument("--out", help="CSV output path (default stdout)")

    p = sub.add_parser("rpm", help="Riccati-Pade drivers")
    rpm_sub = p.add_subparsers(dest="rpm_command", required=True)

    pc = rpm_sub.add_parser("curves", help="fixed-E root branches over an E range")
    pc.add_argument("--lambda", dest="lam")
    pc.add_argument("--emin")
    pc.add_argument("--emax")
    pc.add_argument("--steps", type=int)
    pc.add_argument("--dmax", type=int, default=18)
    pc.add_argument("--out", help="CSV output path (default stdout)")

    ps = rpm_sub.add_parser("solve", help="even/odd determinant ladder for (E0, g0)")
    ps.add_argument("--lambda", dest="lam")
    ps.add_argument("--dmax", type=int, default=15)
    ps.add_argument("--displacement", type=int, default=0)

    return parser


_FILE_KEYS = {"precision", "orders", "order", "side", "emin", "emax", "steps",
              "dmax", "displacement", "lambda", "out", "full-digits"}


def parse_config(argv, parser=None) -> tuple:
    """argv -> (RunConfig, argparse.Namespace); file values fill unset flags."""
    parser = parser or _build_parser()
    args = parser.parse_args(argv)
    if args.config:
        file_values = _read_config_file(args.config)
        unknown = set(file_values) - _FILE_KEYS
        if unknown:
            raise UsageError(
                f"unknown configuration keys {sorted(unknown)}; "
                f"expected a subset of {sorted(_FILE_KEYS)}"
            )
        casts = {"precision": int, "orders": str, "order": int, "steps": int,
                 "dmax": int, "displacement": int, "full-digits": lambda s: s == "true"}
        for key, raw in file_values.items():
            attr = {"lambda": "lam", "full-digits": "full_digits"}.get(key, key)
            if getattr(args, attr, None) in (None, False):
                if hasattr(args, attr):
                    setattr(args, attr, casts.get(key, str)(raw))
    needed = {
        "table": ("orders",),
        "series": ("order",),
        "singularity": ("side",),
        "figure": ("emin", "emax", "steps"),
    }.get(args.command, ())
    if args.command == "rpm":
        needed = (
            ("lam", "emin", "emax", "steps")
            if args.rpm_command == "curves"
            else ("lam",)
        )
    missing = [k for k in needed if getattr(args, k, None) is None]
    if missing:
        names = ["--lambda" if k == "lam" else f"--{k}" for k in missing]
        raise UsageError(f"missing required options {names} (flag or config file)")
    default_digits = (
        RPM_DEFAULT_DIGITS if args.command == "rpm" else DEFAULT_DIGITS
    )
    digits = args.precision if args.precision is not None else default_digits
    command = args.command
    if command == "rpm":
        command = f"rpm-{args.rpm_command}"
    model = " ".join(args.model) if getattr(args, "model", None) else ""
    options = {}
    for key in ("orders", "order", "side", "emin", "emax", "steps", "dmax",
                "displacement", "lam"):
        value = getattr(args, key, None)
        if value is not None:
            options["lambda" if key == "lam" else key] = value
    config = RunConfig(
        command=command,
        precision_digits=digits,
        model_literal=model,
        output_path=getattr(args, "out", "") or "",
        full_digits=args.full_digits,
        options=options,
    )
    return config, args


def _emit(config: RunConfig, header: str, rows: list):
    lines = [f"# config: {config.provenance()}", header] + rows
    text = "\n".join(lines) + "\n"
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(config: RunConfig, ctx: PrecisionContext, x) -> str:
    if config.full_digits:
        return format_full(x, ctx)
    return format_significant(x, DISPLAY_DIGITS)


def _require_lambda(config, ctx):
    lam = parse_real(str(config.options["lambda"]), ctx)
    return [mpf(0), mpf(0), mpf(0), lam, mpf(1)]


def run(config: RunConfig, args) -> int:
    ctx = PrecisionContext(config.precision_digits)
    model = None
    if config.model_literal:
        model = parse_model(config.model_literal.split(), ctx)

    if config.command == "table":
        if isinstance(model, CubicQuartic):
            raise UsageError(
                "the anharmonic model has no small-energy table; "
                "use the rpm subcommands"
            )
        orders = _parse_orders(str(config.options["orders"]))
        records = matching.convergence_table(model, orders, ctx)
        rows = [f"{r.order_n},{_fmt(config, ctx, r.estimate_E0)}" for r in records]
        _emit(config, "n,E0", rows)
        return EXIT_OK

    if config.command == "series":
        left, right = matching.build_model_series(model, config.options["order"], ctx)
        rows = [
            f"{k},{format_full(cl, ctx)},{format_full(cr, ctx)}"
            for k, (cl, cr) in enumerate(zip(left.series.coeffs, right.series.coeffs))
        ]
        _emit(config, "k,L_left_k,L_right_k", rows)
        return EXIT_OK

    if config.command == "exact":
        value = matching.exact_ground_state(model, ctx)
        sys.stdout.write(_fmt(config, ctx, value) + "\n")
        return EXIT_OK

    if config.command == "singularity":
        side = Side.LEFT if config.options["side"] == "left" else Side.RIGHT
        report = matching.find_singularity(model, side, ctx)
        loc = report.location
        sys.stdout.write(
            f"{_fmt(config, ctx, loc.real)},{_fmt(config, ctx, loc.imag)}\n"
        )
        return EXIT_OK

    if config.command == "figure":
        emin = parse_real(str(config.options["emin"]), ctx)
        emax = parse_real(str(config.options["emax"]), ctx)
        steps = config.options["steps"]
        if steps < 2:
            raise UsageError("figure needs at least 2 steps")
        rows = []
        with ctx.workdps():
            for i in range(steps):
                E = emin + (emax - emin) * i / (steps - 1)
                ll = closed_logderiv(model, Side.LEFT, E, ctx)
                lr = closed_logderiv(model, Side.RIGHT, E, ctx)
                rows.append(
                    f"{_fmt(config, ctx, E)},{_fmt(config, ctx, ll)},"
                    f"{_fmt(config, ctx, lr)}"
                )
        _emit(config, "E,L_left,L_right", rows)
        return EXIT_OK

    if config.command == "rpm-curves":
        v = _require_lambda(config, ctx)
        emin = parse_real(str(config.options["emin"]), ctx)
        emax = parse_real(str(config.options["emax"]), ctx)
        steps = config.options["steps"]
        if steps < 2:
            raise UsageError("rpm curves needs at least 2 steps")
        with ctx.workdps():
            energies = [emin + (emax - emin) * i / (steps - 1) for i in range(steps)]
            padded = v + [mpf(0)] * (4 * config.options["dmax"])
            points = rpm.rpm_curves(padded, energies, D=config.options["dmax"], ctx=ctx)
        rows = [
            f"{_fmt(config, ctx, p.E)},{_fmt(config, ctx, p.L_left)},"
            f"{_fmt(config, ctx, p.L_right)}"
            for p in points
        ]
        _emit(config, "E,L_left,L_right", rows)
        return EXIT_OK

    if config.command == "rpm-solve":
        v = _require_lambda(config, ctx)
        with ctx.workdps():
            padded = v + [mpf(0)] * (4 * config.options["dmax"])
            ladder = rpm.rpm_solve(
                padded,
                d=config.options["displacement"],
                D_range=(2, config.options["dmax"]),
                ctx=ctx,
            )
        for step in ladder:
            digits = ctx.decimal_digits if config.full_digits else 20
            sys.stdout.write(
                f"{step.D},{mpmath.nstr(step.E, digits)},"
                f"{mpmath.nstr(step.g0, digits)},"
                f"{'converged' if step.converged else 'not-converged'}\n"
            )
        return EXIT_OK

    raise UsageError(f"unknown command {config.command!r}")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config, args = parse_config(argv)
    except (ParseError, UsageError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    sys.stderr.write(f"# effective config: {config.provenance()}\n")
    try:
        return run(config, args)
    except (ParseError, UsageError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO
    except SmallEnergyError as exc:
        sys.stderr.write(f"numerical error: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
