"""Command-line front end: configure an experiment, run it, emit a CSV.

Subcommands map one-to-one onto the experiment families: illposedness
(the norm-inflation sweep), evolve (invariant tracking for a periodic
run), picard-check (small-amplitude expansion remainders), period-limit
(long-period convergence), boundary-bound and decay (the two a-priori
estimates checked against measured runs).

Every run prints a one-line summary to stdout and, with --out, writes a
CSV whose first line records the fully resolved configuration.  A
key=value config file (--config) can seed any subcommand's flags;
explicit flags win.  Exit status: 0 on success, 2 on bad usage or a
precondition failure, 3 when a bound check reports a VIOLATION.  The
SRLW_WORKERS environment variable caps the worker pool used for
independent sweep rows (unset means sequential).
"""

import argparse
import os
import sys

from .illposedness import inflation_experiment
from .initial_data import DATUM_KINDS, make_datum
from .norms import WeightFunction
from .period_limit import (
    LinePair,
    bound_constants,
    boundary_value_check,
    decay_check,
    long_period_experiment,
)
from .solver import EvolutionConfig, evolve, picard_expansion_check
from .spectral import SpectralGrid, StatePair

__all__ = ["main"]


def _float_list(text):
    vals = [float(tok) for tok in text.split(",") if tok.strip()]
    if not vals:
        raise ValueError(f"expected a comma-separated number list, got {text!r}")
    return vals


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise ValueError(f"--{name.replace('_', '-')} is required (flag or config file)")


def _worker_count(n_rows):
    raw = os.environ.get("SRLW_WORKERS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"SRLW_WORKERS must be an integer, got {raw!r}") from None
    return max(1, min(cap, n_rows))


def _datum_from_args(args, prefix=""):
    def get(name):
        return getattr(args, prefix + name)

    return make_datum(
        get("init"),
        amplitude=get("amplitude"),
        width=get("width"),
        mode=get("mode"),
        half_period=getattr(args, "l", None),
    )


def _resolved(args):
    skip = {"out", "config", "command"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def _evolved_result(args):
    grid = SpectralGrid(args.l, args.M)
    u0 = _datum_from_args(args)
    v0 = _datum_from_args(args, prefix="v_")
    state = StatePair.from_samples(grid, u0.profile(grid.x), v0.profile(grid.x))
    cfg = EvolutionConfig(dt=args.dt, t_final=args.T, snapshot_stride=args.stride)
    return evolve(state, cfg), u0, v0


def _run_illposedness(args):
    _require(args, "s", "N")
    n_list = _float_list(args.N)
    report = inflation_experiment(
        {
            "s": args.s,
            "t": args.t,
            "N_list": n_list,
            "flavor": args.flavor,
            "input_drop_threshold": args.input_drop_threshold,
            "band_threshold": args.band_threshold,
            "series_threshold": args.series_threshold,
            "order_per_unit": args.order_per_unit,
            "xi_order": args.xi_order,
            "workers": _worker_count(len(n_list)),
        }
    )
    return report, 0


def _run_evolve(args):
    result, _, _ = _evolved_result(args)
    return result.invariant_report(_resolved(args)), 0


def _run_picard_check(args):
    grid = SpectralGrid(args.l, args.M)
    u0 = _datum_from_args(args)
    v0 = _datum_from_args(args, prefix="v_")
    state = StatePair.from_samples(grid, u0.profile(grid.x), v0.profile(grid.x))
    report = picard_expansion_check(
        state,
        _float_list(args.eps),
        args.t,
        dt=args.dt,
        n_quad=args.n_quad,
        floor_factor=args.floor_factor,
    )
    report.config = {**_resolved(args), **report.config}
    return report, 0


def _run_period_limit(args):
    pair = LinePair(_datum_from_args(args), _datum_from_args(args, prefix="v_"))
    report = long_period_experiment(
        pair,
        _float_list(args.l_list),
        args.l_ref,
        args.T,
        {
            "M_ref": args.M_ref,
            "dt": args.dt,
            "time_samples": args.time_samples,
            "boundary_tol": args.boundary_tol,
        },
    )
    return report, 0


def _run_boundary_bound(args):
    result, _, _ = _evolved_result(args)
    constants = bound_constants(
        result.states[0].u_hat, result.states[0].v_hat, args.l, args.T
    )
    report = boundary_value_check(result, constants, args.T)
    report.config = {**_resolved(args), **report.config}
    return report, 3 if report.flags["violations"] else 0


def _run_decay(args):
    u0 = _datum_from_args(args)
    v0 = _datum_from_args(args, prefix="v_")
    pair = LinePair(u0, v0)
    grid = SpectralGrid(args.l, args.M)
    cfg = EvolutionConfig(dt=args.dt, t_final=args.T, snapshot_stride=args.stride)
    result = evolve(pair.sampled_state(grid), cfg)
    weight = WeightFunction(args.weight, args.weight_parameter)
    report = decay_check(pair, weight, args.T, result)
    report.config = {**_resolved(args), **report.config}
    return report, 3 if report.flags["violations"] else 0


def _add_data_flags(add, with_v=True):
    add("--init", type=str, default="gaussian", choices=DATUM_KINDS,
        help="initial u profile")
    add("--amplitude", type=float, default=1.0)
    add("--width", type=float, default=1.0)
    add("--mode", type=int, default=1, help="mode number for cosine-mode data")
    if with_v:
        add("--v-init", type=str, default="zero", choices=DATUM_KINDS,
            help="initial v profile")
        add("--v-amplitude", type=float, default=1.0)
        add("--v-width", type=float, default=1.0)
        add("--v-mode", type=int, default=1)


def _add_run_flags(add, l=20.0, M=256, dt=0.01, T=1.0, stride=10):
    add("--l", type=float, default=l, help="half period of the torus")
    add("--M", type=int, default=M, help="number of grid points")
    add("--dt", type=float, default=dt)
    add("--T", type=float, default=T, help="final time")
    add("--stride", type=int, default=stride, help="steps between snapshots")


def build_parser():
    """Parser plus per-subcommand flag registries and handlers."""
    parser = argparse.ArgumentParser(
        prog="srlw",
        description="Spectral experiments for a regularized long-wave system.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="subcommand")
    subs = {}
    registries = {}
    handlers = {}

    def new_command(name, handler, help_text):
        sub = subparsers.add_parser(name, help=help_text)
        reg = {}
        subs[name] = sub
        registries[name] = reg
        handlers[name] = handler

        def add(*flags, **kwargs):
            action = sub.add_argument(*flags, **kwargs)
            reg[action.dest] = action.type
            return action

        add("--out", type=str, default=None, help="write the report CSV here")
        add("--config", type=str, default=None,
            help="key=value file seeding these flags; explicit flags win")
        return add

    add = new_command("illposedness", _run_illposedness,
                      "norm-inflation sweep over the frequency scale N")
    add("--s", type=float, default=None, help="regularity index of the data norm")
    add("--t", type=float, default=0.5)
    add("--N", type=str, default=None, help="comma-separated frequency scales")
    add("--flavor", type=str, default="line", choices=("line", "periodic"))
    add("--input-drop-threshold", type=float, default=10.0)
    add("--band-threshold", type=float, default=2.0)
    add("--series-threshold", type=float, default=1e-4)
    add("--order-per-unit", type=int, default=32)
    add("--xi-order", type=int, default=48)

    add = new_command("evolve", _run_evolve,
                      "run the solver and track the conserved quantities")
    _add_run_flags(add)
    _add_data_flags(add)

    add = new_command("picard-check", _run_picard_check,
                      "remainder of the small-amplitude expansion vs epsilon")
    add("--l", type=float, default=20.0)
    add("--M", type=int, default=256)
    add("--t", type=float, default=0.5)
    add("--dt", type=float, default=0.002)
    add("--eps", type=str, default="0.2,0.1,0.05",
        help="comma-separated decreasing amplitudes")
    add("--n-quad", type=int, default=200)
    add("--floor-factor", type=float, default=10.0)
    _add_data_flags(add)

    add = new_command("period-limit", _run_period_limit,
                      "convergence of periodized runs to a large-period reference")
    add("--l-list", type=str, default="10,20,40", help="comma-separated half periods")
    add("--l-ref", type=float, default=160.0)
    add("--T", type=float, default=2.0)
    add("--M-ref", type=int, default=2048)
    add("--dt", type=float, default=0.01)
    add("--time-samples", type=int, default=20)
    add("--boundary-tol", type=float, default=1e-3)
    _add_data_flags(add)

    add = new_command("boundary-bound", _run_boundary_bound,
                      "measured boundary values against the proved bound")
    _add_run_flags(add)
    _add_data_flags(add)

    add = new_command("decay", _run_decay,
                      "weighted sup of the solution against the decay bound")
    _add_run_flags(add, l=30.0, M=512)
    add("--weight", type=str, default="polynomial",
        choices=("polynomial", "exponential"))
    add("--weight-parameter", type=float, default=1.0,
        help="exponent of the polynomial weight or rate of the exponential one")
    _add_data_flags(add)

    return parser, subs, registries, handlers


def _load_config_file(path, registry):
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, text = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            dest = key.strip().replace("-", "_")
            if dest in ("out", "config") or dest not in registry:
                raise ValueError(f"{path}:{lineno}: unknown key {key.strip()!r}")
            convert = registry[dest]
            text = text.strip()
            values[dest] = convert(text) if convert is not None else text
    return values


def main(argv=None):
    parser, subs, registries, handlers = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    if args.config is not None:
        try:
            file_values = _load_config_file(args.config, registries[args.command])
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        subs[args.command].set_defaults(**file_values)
        args = parser.parse_args(argv)

    try:
        report, status = handlers[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(report.summary_line())
    if args.out is not None:
        report.write_csv(args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
