"""Command-line front end.

Exit codes: 0 success or passing suite, 1 failing suite, 2 usage, config or
input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io as fio
from .fields import CurrentDensity, Grid, field_strength_lr, random_potential
from .fracops import NDIM, DomainError, FracScheme, GridMismatchError, ShapeError, left_rl_deriv, lr_op, right_rl_deriv
from .specwave import WaveConfig, dispersion, solve_wave
from .suites import SUITES, run_suite
from .variational import DEFAULT_EPSILONS, ActionConfig, VariationProbe, gateaux_check


class ConfigError(ValueError):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _axis_values(vals: list[float], name: str):
    if len(vals) == 1:
        return vals[0]
    if len(vals) != NDIM:
        raise ConfigError(f"--{name} takes 1 or {NDIM} values, got {len(vals)}")
    return vals


def _grid_counts(vals: list[int]) -> list[int]:
    # fewer than 4 counts: leading missing axes are frozen for 3 counts (space only),
    # trailing ones for 2 counts (t, x)
    if len(vals) == NDIM:
        return vals
    if len(vals) == 3:
        return [1] + vals
    if len(vals) == 2:
        return vals + [1, 1]
    if len(vals) == 1:
        return vals * NDIM
    raise ConfigError(f"--grid takes 1 to {NDIM} counts, got {len(vals)}")


def _scheme(args) -> FracScheme:
    alpha = _axis_values(args.alpha, "alpha")
    beta = alpha if args.beta is None else _axis_values(args.beta, "beta")
    return FracScheme(alpha, beta, _axis_values(args.a, "a"), _axis_values(args.b, "b"))


def _grid(args, scheme: FracScheme) -> Grid:
    return Grid.for_scheme(_grid_counts(args.grid), scheme)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


# -- subcommands ----------------------------------------------------------------


def _require(args, *names) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ConfigError("missing required option(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


def cmd_deriv(args) -> int:
    _require(args, "input")
    line = fio.read_line_csv(args.input)
    alpha = args.alpha[0]
    beta = alpha if args.beta is None else args.beta[0]
    if args.kind == "left":
        res = left_rl_deriv(line, alpha)
    elif args.kind == "right":
        res = right_rl_deriv(line, beta)
    else:
        res = lr_op(line, alpha, beta)
    if args.out:
        fio.write_line_csv(args.out, res)
    else:
        fio.write_line_csv_fh(sys.stdout, res)
    return 0


def cmd_check(args) -> int:
    _require(args, "suite")
    scheme = _scheme(args)
    grid = _grid(args, scheme)
    report = run_suite(args.suite, grid, scheme, args.c, args.seed, args.tol)
    if args.save_fields:
        outdir = Path(args.save_fields)
        outdir.mkdir(parents=True, exist_ok=True)
        A = random_potential(grid, np.random.default_rng(args.seed))
        fio.write_snapshot(outdir / "potential", A, scheme)
        fio.write_snapshot(outdir / "tensor", field_strength_lr(A, scheme), scheme)
    _emit(_dump(report), args.out)
    return 0 if report["pass"] else 1


def cmd_gateaux(args) -> int:
    scheme = _scheme(args)
    grid = _grid(args, scheme)
    rng = np.random.default_rng(args.seed)
    A = random_potential(grid, rng)
    j = CurrentDensity(grid, rng.standard_normal((4,) + grid.shape))
    probe = VariationProbe.random(grid, rng, args.eps)
    cfg = ActionConfig(scheme, args.c, args.quadrature)
    report = gateaux_check(A, j, cfg, probe, tol=args.tol)
    _emit(_dump(report.to_dict()), args.out)
    return 0 if report.passed else 1


def cmd_wave(args) -> int:
    _require(args, "init")
    paths = [p for p in args.init.split(",") if p]
    if not 1 <= len(paths) <= 2:
        raise ConfigError("--init takes u0.csv or u0.csv,v0.csv")
    u0 = fio.read_line_csv(paths[0])
    v0 = fio.read_line_csv(paths[1]) if len(paths) == 2 else u0.with_values(np.zeros_like(u0.values))
    if args.dt_out <= 0 or args.t_end < 0:
        raise ConfigError("need --dt-out > 0 and --t-end >= 0")
    steps = int(round(args.t_end / args.dt_out))
    times = tuple(i * args.dt_out for i in range(steps + 1))
    cfg = WaveConfig(args.alpha[0], args.c, args.L, args.modes, times)
    series = solve_wave(u0, v0, cfg)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fio.write_wave_csv(fh, series)
    else:
        fio.write_wave_csv(sys.stdout, series)
    return 0


def cmd_dispersion(args) -> int:
    rows = []
    for alpha in args.alpha:
        for n in range(0, args.kmax + 1):
            rows.append((float(n), alpha, dispersion(n, alpha, args.c)))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fio.write_dispersion_csv(fh, rows)
    else:
        fio.write_dispersion_csv(sys.stdout, rows)
    return 0


# -- parser -------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, grid_default: str) -> None:
    p.add_argument("--grid", type=_ints, default=grid_default, help="sample counts per axis (t,x,y,z)")
    p.add_argument("--alpha", type=_floats, default="0.5", help="left order(s), 1 or 4 values")
    p.add_argument("--beta", type=_floats, default=None, help="right order(s); defaults to alpha")
    p.add_argument("--a", type=_floats, default="-1", help="left terminal(s)")
    p.add_argument("--b", type=_floats, default="1", help="right terminal(s)")
    p.add_argument("--c", type=float, default=1.0, help="wave speed (natural units)")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracfield", description=__doc__.splitlines()[0], allow_abbrev=False)
    parser.add_argument("--config", help="JSON file whose keys are flag names; flags override it")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deriv", help="fractional derivative of an x,value CSV")
    p.add_argument("--input")
    p.add_argument("--kind", choices=("left", "right", "lr"), default="lr")
    p.add_argument("--alpha", type=_floats, default="0.5")
    p.add_argument("--beta", type=_floats, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_deriv)

    p = sub.add_parser("check", help="run an identity suite and print a JSON report")
    p.add_argument("--suite", choices=SUITES)
    _common(p, "8,8,8,8")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--save-fields", help="directory for potential/tensor snapshots")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gateaux", help="check the discrete Euler-Lagrange equation by variations")
    _common(p, "6,6,6,6")
    p.add_argument("--eps", type=_floats, default=",".join(repr(e) for e in DEFAULT_EPSILONS))
    p.add_argument("--quadrature", choices=("lattice", "trapezoid"), default="lattice")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gateaux)

    p = sub.add_parser("wave", help="spectral solution of the 1-D fractional wave equation")
    p.add_argument("--alpha", type=_floats, default="0.5")
    p.add_argument("--modes", type=int, default=16)
    p.add_argument("--L", type=float, default=2 * np.pi)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--dt-out", type=float, default=0.1)
    p.add_argument("--init", help="u0.csv[,v0.csv]")
    p.add_argument("--out")
    p.set_defaults(func=cmd_wave)

    p = sub.add_parser("dispersion", help="tabulate omega(k) for integer k")
    p.add_argument("--alpha", type=_floats, default="0.5")
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dispersion)
    return parser


def _config_defaults(path: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"{path}: cannot open ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}, row {exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    out = {}
    for key, val in raw.items():
        if isinstance(val, (list, tuple)):
            val = ",".join(str(v) for v in val)
        out[key.replace("-", "_")] = val if val is None else str(val)
    return out


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    # no abbreviations, or "--c" would be read as "--config"
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        defaults = _config_defaults(known.config)
        defaults.pop("command", None)
        defaults.pop("config", None)
        subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
        for sp in subparsers.choices.values():
            dests = {a.dest for a in sp._actions}
            sp.set_defaults(**{k: v for k, v in defaults.items() if k in dests})
    args = parser.parse_args(argv)
    if known.config:
        sp = subparsers.choices[args.command]
        dests = {a.dest for a in sp._actions}
        unknown = sorted(set(defaults) - dests)
        if unknown:
            raise ConfigError(f"{known.config}: unknown keys for '{args.command}': {', '.join(unknown)}")
    return args


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ConfigError, DomainError, ShapeError, GridMismatchError, fio.InputError, argparse.ArgumentTypeError) as exc:
        print(f"fracfield: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
