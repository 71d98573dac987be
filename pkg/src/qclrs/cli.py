"""Command-line front end.

Every subcommand writes CSV (header row, UTF-8, LF endings) to stdout or to
``--out``; files written to disk get a JSON manifest next to them holding the
full parameter set, so a rerun with the same manifest reproduces the bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .code import CodeSpec, build_code
from .counting import (
    AlgorithmError,
    bounds_S_star,
    closed_form_S0,
    count_S0,
    deduct_q,
    enumerate_S_star,
    enumerate_S_t,
)
from .recovery import DEFAULT_TRIALS, SimConfig, lrs_failure_closed_form, simulate_failure

DEFAULT_SEED = 20210607
FIG1_ELL = 5
FIG2_ELL = 3
# (family, r) series of the n = 64 local-recovery comparison; pairs share a dimension.
FIG2_SERIES = (("lrs", 4), ("qclrs", 3), ("lrs", 5), ("qclrs", 4))


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return "" if x is None else str(x)


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def manifest_path(path: Path) -> Path:
    return path.with_name(path.name + ".manifest.json")


def write_output(text: str, out: str | None, command: str, params: dict) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(text.encode("utf-8"))
        manifest = {
            "command": command,
            "params": params,
            "seed": params.get("seed"),
            "version": __version__,
            "output": path.name,
        }
        manifest_path(path).write_bytes((json.dumps(manifest, indent=2, sort_keys=True) + "\n").encode("utf-8"))
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def tau_grid(tau_min: float, tau_max: float, tau_step: float) -> list[float]:
    if tau_step <= 0:
        raise UsageError("--tau-step must be positive")
    if not 0 <= tau_min <= tau_max <= 1:
        raise UsageError("need 0 <= tau-min <= tau-max <= 1")
    steps = int(round((tau_max - tau_min) / tau_step + 1e-9))
    return [round(tau_min + k * tau_step, 10) for k in range(steps + 1)]


def _spec(family: str, ell: int, d: int | None, r: int | None) -> CodeSpec:
    if (d is None) == (r is None):
        raise UsageError("give exactly one of --d or --r")
    try:
        return CodeSpec(family, ell, d) if d is not None else CodeSpec.from_r(family, ell, r)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- table builders, shared by subcommands and `figures` ---------------------


def dim_rows(family: str, ell: int, rs):
    q = 1 << ell
    for r in rs:
        k = build_code(CodeSpec.from_r(family, ell, r)).k
        yield r, k, k / (q * q)


def bounds_rows(ell: int, rs):
    q = 1 << ell
    for r in rs:
        bad = len(enumerate_S_star(ell, r))
        b = bounds_S_star(ell, r)
        yield r, 1 - bad / q**2, 1 - b.lower / q**2, 1 - b.upper / q**2


def simulate_rows(spec: CodeSpec, taus, trials: int, seed: int, workers: int):
    for tau in taus:
        est = simulate_failure(SimConfig(spec, tau, trials, seed), workers=workers)
        closed = lrs_failure_closed_form(spec.q, spec.r, tau) if spec.family == "lrs" else None
        yield tau, est.failure_rate, est.half_width, est.trials, closed


# -- subcommands -------------------------------------------------------------


def cmd_dim(args) -> str:
    q = 1 << args.ell
    if args.d is not None and args.r is not None:
        raise UsageError("give at most one of --d or --r")
    if args.d is not None:
        rs = [q - d for d in args.d]
    else:
        rs = args.r or list(range(1, q))
    for r in rs:
        _spec(args.family, args.ell, None, r)
    return render_csv(["r", "k", "rate"], dim_rows(args.family, args.ell, rs))


def cmd_bounds(args) -> str:
    if args.ell < 2:
        raise UsageError("bounds need --ell >= 2")
    q = 1 << args.ell
    rs = args.r or list(range(1, q // 4 + 1))
    for r in rs:
        if not 1 <= r <= q // 4:
            raise UsageError(f"r={r} outside [1, q/4 = {q // 4}]")
    return render_csv(["r", "rate", "rate_ub", "rate_lb"], bounds_rows(args.ell, rs))


def cmd_count(args) -> str:
    rows = []
    for ell in args.ell:
        q = 1 << ell
        if not 1 <= args.r_single <= q - 1:
            raise UsageError(f"r={args.r_single} outside [1, {q - 1}] at ell={ell}")
        s = [len(enumerate_S_t(ell, args.r_single, t)) for t in range(3)]
        star = len(enumerate_S_star(ell, args.r_single))
        recursion = count_S0(ell, args.r_single)
        closed = None
        if args.r_single == 1 or (args.r_single == 3 and ell >= 2):
            closed = closed_form_S0(ell, args.r_single)
        rows.append((ell, args.r_single, *s, star, recursion, closed))
    return render_csv(["ell", "r", "S0", "S1", "S2", "S_star", "S0_recursion", "S0_closed_form"], rows)


def cmd_deduct_q(args) -> str:
    try:
        ip, jp = deduct_q(args.i, args.j, args.ell)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return render_csv(["ell", "i", "j", "i_prime", "j_prime"], [(args.ell, args.i, args.j, ip, jp)])


def cmd_simulate(args) -> str:
    spec = _spec(args.family, args.ell, args.d_single, args.r_single)
    taus = tau_grid(args.tau_min, args.tau_max, args.tau_step)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    rows = simulate_rows(spec, taus, args.trials, args.seed, args.workers)
    return render_csv(["tau", "fail_rate", "half_width", "trials", "closed_form"], rows)


def fig1_csv() -> str:
    q = 1 << FIG1_ELL
    return render_csv(["r", "rate", "rate_ub", "rate_lb"], bounds_rows(FIG1_ELL, range(1, q // 4 + 1)))


def fig2_csv(taus, trials: int, seed: int, workers: int) -> str:
    rows = []
    for family, r in FIG2_SERIES:
        spec = CodeSpec.from_r(family, FIG2_ELL, r)
        dim = build_code(spec).k
        for tau, rate, hw, n, closed in simulate_rows(spec, taus, trials, seed, workers):
            rows.append((family, spec.q, dim, r, tau, rate, hw, n, closed))
    header = ["family", "q", "dim", "r", "tau", "fail_rate", "half_width", "trials", "closed_form"]
    return render_csv(header, rows)


def cmd_figures(args):
    out = Path(args.out)
    taus = tau_grid(args.tau_min, args.tau_max, args.tau_step)
    params = {
        "seed": args.seed,
        "trials": args.trials,
        "tau_min": args.tau_min,
        "tau_max": args.tau_max,
        "tau_step": args.tau_step,
        "workers": args.workers,
    }
    write_output(fig1_csv(), str(out / "fig1_q32.csv"), "figures", {**params, "ell": FIG1_ELL})
    write_output(
        fig2_csv(taus, args.trials, args.seed, args.workers),
        str(out / "fig2_q8.csv"),
        "figures",
        {**params, "ell": FIG2_ELL},
    )
    return None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qclrs", description="Quadratic-curve-lifted Reed-Solomon codes")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        if out:
            p.add_argument("--out", help="output file (default: stdout)")
        return p

    p = common(sub.add_parser("dim", help="code dimension and rate per r"))
    p.add_argument("--family", choices=["qclrs", "lrs"], default="qclrs")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--d", type=int, nargs="+")
    p.add_argument("--r", type=int, nargs="+")
    p.set_defaults(func=cmd_dim)

    p = common(sub.add_parser("bounds", help="exact rate with upper/lower bounds for r in [1, q/4]"))
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--r", type=int, nargs="+")
    p.set_defaults(func=cmd_bounds)

    p = common(sub.add_parser("count", help="sizes of S_0, S_1, S_2 and S*"))
    p.add_argument("--ell", type=int, nargs="+", required=True)
    p.add_argument("--r", dest="r_single", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = common(sub.add_parser("deduct-q", help="clear bits of (i, j) so 2i + j drops by q"))
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(func=cmd_deduct_q)

    def sim_flags(p):
        p.add_argument("--tau-min", type=float, default=0.30)
        p.add_argument("--tau-max", type=float, default=1.00)
        p.add_argument("--tau-step", type=float, default=0.02)
        p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--workers", type=int, default=1)

    p = common(sub.add_parser("simulate", help="Monte-Carlo local-recovery failure rate"))
    p.add_argument("--family", choices=["qclrs", "lrs"], default="qclrs")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--d", dest="d_single", type=int)
    p.add_argument("--r", dest="r_single", type=int)
    sim_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("figures", help="write fig1_q32.csv and fig2_q8.csv")
    p.add_argument("--out", required=True, help="output directory")
    sim_flags(p)
    p.set_defaults(func=cmd_figures)
    return ap


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
        if text is not None:
            write_output(text, args.out, args.command, _params(args))
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, OSError, AlgorithmError) as exc:
        print(f"qclrs: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
