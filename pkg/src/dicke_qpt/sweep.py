"""Parameter sweeps, analytic-vs-ED comparison, and file emission."""
from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import ed as oracle
from .errors import ConfigError, CutoffLimit, DickeError, IoError
from .model import DickeParams
from .normal import Branch, Eq37Form, critical_lambda, dicke_coefficients, eq37_discrepancy, normal_gap, phase_label
from .superradiant import superradiant_solution

SCHEMA_VERSION = "1"
SIG_DIGITS = 12


@dataclass
class SweepConfig:
    omega_c: float = 1.0
    omega_a: float = 1.0
    spin_j: float | None = None
    # None: the fully polarised -2j for each N
    sz_expect: float | None = None
    lambda_min: float = 0.0
    lambda_max: float = 0.0
    lambda_steps: int = 1
    ratio_min: float = 0.0
    ratio_max: float = 0.0
    ratio_steps: int = 1
    n_atoms: list[int] = field(default_factory=lambda: [1])
    branch: str = "a4c"
    eq37: str = "derived"
    ed: bool = False
    n_max: int = 40
    # None: fixed n_max; otherwise grow the cutoff until E0 is stable to ed_tol
    ed_tol: float | None = None
    max_dimension: int = oracle.MAX_DIMENSION
    threshold: float = 0.1
    workers: int = 1
    format: str = "csv"
    out: str | None = None

    def __post_init__(self):
        if isinstance(self.n_atoms, int):
            self.n_atoms = [self.n_atoms]
        self.n_atoms = [int(n) for n in self.n_atoms]
        self.validate()

    def validate(self):
        if self.lambda_steps < 1 or self.ratio_steps < 1:
            raise ConfigError("grid steps must be >= 1")
        if self.lambda_max < self.lambda_min or self.ratio_max < self.ratio_min:
            raise ConfigError("grid range is empty (max < min)")
        if not (0 <= self.ratio_min and self.ratio_max <= 1):
            raise ConfigError("ratio range must lie within [0, 1]")
        if not self.n_atoms or min(self.n_atoms) < 1:
            raise ConfigError("n_atoms must be a non-empty list of positive integers")
        if self.branch not in {b.value for b in Branch}:
            raise ConfigError(f"unknown branch {self.branch!r}")
        if self.eq37 not in {f.value for f in Eq37Form}:
            raise ConfigError(f"unknown eq37 form {self.eq37!r}")
        if self.format not in ("csv", "json-doc"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.n_max < 0 or self.workers < 1:
            raise ConfigError("n_max must be >= 0 and workers >= 1")
        if not 0 < self.threshold < 1:
            raise ConfigError("threshold must lie in (0, 1)")

    @classmethod
    def from_mapping(cls, data: dict) -> SweepConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    def lambdas(self) -> np.ndarray:
        return np.linspace(self.lambda_min, self.lambda_max, self.lambda_steps)

    def ratios(self) -> np.ndarray:
        return np.linspace(self.ratio_min, self.ratio_max, self.ratio_steps)

    def params(self, n_atoms: int, lambda_minus: float = 0.0, ratio: float = 0.0) -> DickeParams:
        return DickeParams(omega_c=self.omega_c, omega_a=self.omega_a, lambda_minus=lambda_minus,
                           lambda_plus=ratio * lambda_minus, n_atoms=n_atoms, spin_j=self.spin_j,
                           sz_expect=self.sz_expect)


@dataclass
class SweepRow:
    lambda_minus: float
    ratio: float
    n_atoms: int
    sz_expect: float
    lambda_c_a0: float = math.nan
    lambda_c_a4c: float = math.nan
    a_coeff: float = math.nan
    a_plus_4c: float = math.nan
    normal_gap: float = math.nan
    epsilon: float = math.nan
    ed_e0: float = math.nan
    ed_photon_per_n: float = math.nan
    ed_sz: float = math.nan
    phase: str = ""
    error_tags: str = ""


COLUMNS = [f.name for f in fields(SweepRow)]


def _tag(name: str, exc: Exception) -> str:
    return f"{name}:{type(exc).__name__}"


def evaluate_point(config: SweepConfig, n_atoms: int, ratio: float, lam: float) -> SweepRow:
    """One grid point.  Domain errors become tags on the row, never exceptions."""
    p = config.params(n_atoms, lam, ratio)
    row = SweepRow(lambda_minus=lam, ratio=ratio, n_atoms=n_atoms, sz_expect=p.sz_expect)
    tags = []
    try:
        row.lambda_c_a0 = critical_lambda(Branch.A_ZERO, ratio, p, config.eq37).lambda_c
    except DickeError as exc:
        tags.append(_tag("lambda_c_a0", exc))
    try:
        row.lambda_c_a4c = critical_lambda(Branch.A4C_ZERO, ratio, p).lambda_c
    except DickeError as exc:
        tags.append(_tag("lambda_c_a4c", exc))
    row.a_coeff, row.a_plus_4c = dicke_coefficients(p)
    row.phase = phase_label(row.a_coeff, row.a_plus_4c)
    try:
        row.normal_gap = normal_gap(row.a_coeff, row.a_plus_4c)
    except DickeError as exc:
        tags.append(_tag("normal_gap", exc))
    try:
        row.epsilon = superradiant_solution(p).epsilon
    except DickeError as exc:
        tags.append(_tag("epsilon", exc))
    if config.ed:
        try:
            if config.ed_tol is not None:
                _, res = oracle.converge_cutoff(p, config.n_max, config.ed_tol, config.max_dimension)
            else:
                res = oracle.solve(p, config.n_max, config.max_dimension)
            row.ed_e0 = res.ground_energy
            row.ed_photon_per_n = res.photon_number / n_atoms
            row.ed_sz = res.sz_ground
        except DickeError as exc:
            tags.append(_tag("ed", exc))
    row.error_tags = ";".join(tags)
    return row


def grid_points(config: SweepConfig) -> list[tuple[int, float, float]]:
    return [(int(n), float(rho), float(lam))
            for n in config.n_atoms for rho in config.ratios() for lam in config.lambdas()]


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """Rows in grid-index order (N, then ratio, then lambda) regardless of worker count."""
    config.validate()
    points = grid_points(config)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            return list(pool.map(lambda pt: evaluate_point(config, *pt), points))
    return [evaluate_point(config, *pt) for pt in points]


def compare_report(config: SweepConfig) -> dict:
    """Analytic A+4C critical coupling against the ED photon-threshold crossover, per N."""
    if not config.ed:
        raise ConfigError("compare needs the ED oracle (set ed = true / pass --ed)")
    rho = float(config.ratio_min)
    grid = config.lambdas()
    per_n = []
    for n in config.n_atoms:
        p = config.params(n, 0.0, rho)
        lam_c = critical_lambda(Branch.A4C_ZERO, rho, p).lambda_c
        t0 = time.perf_counter()
        entry = {"n_atoms": n, "ratio": rho, "sz_expect": p.sz_expect, "lambda_c": lam_c,
                 "lambda_star": None, "rel_deviation": None, "n_max": config.n_max,
                 "runtime_s": None, "annotations": []}
        try:
            profile = oracle.crossover_profile(p, grid, config.n_max, rho, config.workers)
            lam_star = oracle.first_crossing(profile, config.threshold)
            entry["lambda_star"] = lam_star
            entry["rel_deviation"] = abs(lam_star - lam_c) / lam_c
            # truncation check at the far end of the grid, where the field is largest
            far = config.params(n, float(grid[-1]), rho)
            basis = oracle.basis_for(far, config.n_max)
            if oracle.tail_weight(oracle.solve(far, config.n_max), basis) > 1e-8:
                entry["annotations"].append(_tag("ed", CutoffLimit("")))
        except DickeError as exc:
            entry["annotations"].append(_tag("ed", exc))
        entry["runtime_s"] = time.perf_counter() - t0
        per_n.append(entry)
    devs = [e["rel_deviation"] for e in per_n if e["rel_deviation"] is not None]
    eq37 = []
    base = config.params(config.n_atoms[0])
    for r in config.ratios():
        if r >= 1:
            continue
        derived, verbatim, rel = eq37_discrepancy(float(r), base)
        eq37.append({"ratio": float(r), "lambda_c_derived": derived,
                     "lambda_c_verbatim": verbatim, "rel_difference": rel})
    return {"schema_version": SCHEMA_VERSION, "config": asdict(config), "per_n": per_n,
            "deviation_non_increasing": all(b <= a for a, b in zip(devs, devs[1:])),
            "eq37_discrepancy": eq37}


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if x is None or math.isnan(x):
        return ""
    return format(float(x), f".{SIG_DIGITS}g")


def _round(x):
    if isinstance(x, float):
        return None if math.isnan(x) else float(format(x, f".{SIG_DIGITS}g"))
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_fmt(getattr(row, c)) for c in COLUMNS])
    return buf.getvalue()


# execution settings that do not change the dataset stay out of the echo
_NOT_ECHOED = ("out", "workers")


def to_json_doc(rows: list[SweepRow], config: SweepConfig | None = None) -> str:
    echo = None
    if config is not None:
        echo = {k: v for k, v in asdict(config).items() if k not in _NOT_ECHOED}
    doc = {"schema_version": SCHEMA_VERSION,
           "config": _round(echo) if echo is not None else None,
           "columns": COLUMNS,
           "rows": [_round(asdict(r)) for r in rows]}
    return json.dumps(doc, indent=2) + "\n"


def emit(rows: list[SweepRow], fmt: str, path, config: SweepConfig | None = None) -> None:
    if not rows:
        raise ConfigError("nothing to emit: the dataset is empty")
    if fmt == "csv":
        text = to_csv(rows)
    elif fmt == "json-doc":
        text = to_json_doc(rows, config)
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
