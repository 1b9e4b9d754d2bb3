"""Command-line entry point: ``dicke-qpt <subcommand> [flags]``.

Single-point subcommands print a JSON object on stdout.  ``sweep`` writes
CSV or a JSON document to ``--out`` (stdout when omitted).  A ``--config``
file is a flat JSON object whose keys are SweepConfig field names; explicit
flags override it.

Exit codes: 0 success, 2 invalid parameters, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, fields

from . import ed, normal, superradiant
from .errors import ConfigError, DickeError, InvalidParameters
from .model import DickeParams, canonicalize
from .sweep import SweepConfig, compare_report, emit, run_sweep, to_csv, to_json_doc, _round

# flag dest -> SweepConfig field
FLAG_FIELDS = {
    "wc": "omega_c", "wa": "omega_a", "spin_j": "spin_j", "sz": "sz_expect",
    "nmax": "n_max", "branch": "branch", "eq37": "eq37", "format": "format", "out": "out",
    "lambda_min": "lambda_min", "lambda_max": "lambda_max", "lambda_steps": "lambda_steps",
    "ratio_min": "ratio_min", "ratio_max": "ratio_max", "ratio_steps": "ratio_steps",
    "n_atoms": "n_atoms", "ed": "ed", "tol": "ed_tol", "threshold": "threshold",
    "workers": "workers", "max_dimension": "max_dimension",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("model")
    g.add_argument("--config", help="flat JSON key-value file; flags override it")
    g.add_argument("--wc", type=float, help="cavity frequency omega_c")
    g.add_argument("--wa", type=float, help="atomic frequency omega_a")
    g.add_argument("--lambda", dest="lam", type=float, help="co-rotating coupling lambda_minus")
    g.add_argument("--ratio", type=float, help="lambda_plus / lambda_minus in [0, 1]")
    g.add_argument("--n-atoms", dest="n_atoms", type=int, nargs="+", help="atom count(s) N")
    g.add_argument("--spin-j", dest="spin_j", type=float, help="collective spin sector (default N/2)")
    g.add_argument("--sz", type=float, help="<Sz> in the step-2 normalisation (default -2j)")
    g.add_argument("--nmax", type=int, help="photon cutoff for ED")
    g.add_argument("--branch", choices=["a0", "a4c"])
    g.add_argument("--eq37", choices=["verbatim", "derived"])
    g.add_argument("--format", choices=["csv", "json-doc"])
    g.add_argument("--out", help="output path (stdout when omitted)")
    s = common.add_argument_group("grid / oracle")
    s.add_argument("--lambda-min", dest="lambda_min", type=float)
    s.add_argument("--lambda-max", dest="lambda_max", type=float)
    s.add_argument("--lambda-steps", dest="lambda_steps", type=int)
    s.add_argument("--ratio-min", dest="ratio_min", type=float)
    s.add_argument("--ratio-max", dest="ratio_max", type=float)
    s.add_argument("--ratio-steps", dest="ratio_steps", type=int)
    s.add_argument("--ed", action="store_const", const=True, help="enable the ED oracle")
    s.add_argument("--tol", type=float, help="cutoff convergence tolerance on E0")
    s.add_argument("--threshold", type=float, help="<a^dag a>/N crossover threshold")
    s.add_argument("--workers", type=int, help="parallel grid workers")
    s.add_argument("--max-dimension", dest="max_dimension", type=int)

    parser = argparse.ArgumentParser(prog="dicke-qpt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [
        ("critical", "critical coupling on one branch"),
        ("gap", "normal-phase coefficients, gap and ground energy"),
        ("superradiant", "superradiant cos^2(2 theta), alpha^2/N and excitation energy"),
        ("ed", "exact diagonalization at one point"),
        ("sweep", "grid over N x ratio x lambda"),
        ("compare", "analytic critical coupling vs ED crossover"),
        ("convergence", "grow the photon cutoff until E0 converges"),
    ]:
        sub.add_parser(name, parents=[common], help=text)
    return parser


def load_config(args) -> SweepConfig:
    data = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict) or any(isinstance(v, dict) for v in data.values()):
            raise ConfigError("config must be a flat JSON object")
    for dest, name in FLAG_FIELDS.items():
        value = getattr(args, dest, None)
        if value is not None:
            data[name] = value
    lam = args.lam if args.lam is not None else data.pop("lambda_minus", None)
    ratio = args.ratio if args.ratio is not None else data.pop("ratio", None)
    # a single point doubles as a 1 x 1 grid
    if lam is not None:
        data.setdefault("lambda_min", lam)
        data.setdefault("lambda_max", lam)
    if ratio is not None:
        data.setdefault("ratio_min", ratio)
        data.setdefault("ratio_max", ratio)
    return SweepConfig.from_mapping(data)


def point_params(config: SweepConfig) -> DickeParams:
    return canonicalize(config.params(config.n_atoms[0], config.lambda_min, config.ratio_min))


def _print(obj, out=None):
    text = json.dumps(_round(obj), indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_critical(config):
    p = point_params(config)
    point = normal.critical_lambda(config.branch, config.ratio_min, p, config.eq37)
    return {"branch": point.branch.value, "ratio": config.ratio_min, "n_atoms": p.n_atoms,
            "sz_expect": p.sz_expect, "omega_c_squared": point.omega_c_squared,
            "lambda_c": point.lambda_c, "v_star": point.v_star, "eq37": config.eq37}


def cmd_gap(config):
    p = point_params(config)
    a, a4c = normal.dicke_coefficients(p)
    out = {"lambda_minus": p.lambda_minus, "ratio": p.ratio, "a_coeff": a, "a_plus_4c": a4c,
           "phase": normal.phase_label(a, a4c)}
    gap = normal.normal_gap(a, a4c)
    out.update(gap=gap, ground_energy=normal.dicke_b_coefficient(p) - a / 2 + gap)
    return out


def cmd_superradiant(config):
    p = point_params(config)
    sol = superradiant.superradiant_solution(p)
    return {"lambda_minus": p.lambda_minus, "ratio": p.ratio, **asdict(sol)}


def cmd_ed(config):
    p = point_params(config)
    res = ed.solve(p, config.n_max, config.max_dimension)
    return {"lambda_minus": p.lambda_minus, "ratio": p.ratio, "n_atoms": p.n_atoms,
            "n_max": config.n_max, "e0": res.ground_energy, "gap": res.gap,
            "photon_number": res.photon_number, "sz_ground": res.sz_ground,
            "lowest": [float(e) for e in res.eigenvalues[:6]]}


def cmd_convergence(config):
    p = point_params(config)
    n_final, res = ed.converge_cutoff(p, config.n_max, config.ed_tol or 1e-8, config.max_dimension)
    return {"lambda_minus": p.lambda_minus, "ratio": p.ratio, "n_atoms": p.n_atoms,
            "n_max_final": n_final, "e0": res.ground_energy, "photon_number": res.photon_number}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
        if args.command == "sweep":
            rows = run_sweep(config)
            if config.out:
                emit(rows, config.format, config.out, config)
            else:
                sys.stdout.write(to_csv(rows) if config.format == "csv" else to_json_doc(rows, config))
            return 0
        if args.command == "compare":
            _print(compare_report(config), config.out)
            return 0
        handler = {"critical": cmd_critical, "gap": cmd_gap, "superradiant": cmd_superradiant,
                   "ed": cmd_ed, "convergence": cmd_convergence}[args.command]
        _print(handler(config), config.out)
        return 0
    except DickeError as exc:
        print(f"dicke-qpt: {type(exc).__name__}: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", 3)


if __name__ == "__main__":
    sys.exit(main())
