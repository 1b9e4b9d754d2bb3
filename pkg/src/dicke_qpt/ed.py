"""Exact diagonalization of the Dicke Hamiltonian.

H = omega_c a^dag a + omega_a S_z / 2
    + lambda_minus / sqrt(2N) (a S_+ + a^dag S_-)
    + lambda_plus  / sqrt(2N) (a S_- + a^dag S_+)

on the truncated space {|n, m>: 0 <= n <= n_max, m = -j..j}.  The collective
operators obey [S_z, S_+-] = +-2 S_+-, [S_+, S_-] = S_z, realised as
S_z = 2 J_z and S_+- = J_+- with the usual angular-momentum ladder elements.

Basis order: photon number major, m ascending minor, i.e.
index(n, m) = n (2j + 1) + (m + j).
"""
from __future__ import annotations

import math
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CutoffLimit, CutoffTooSmall, InvalidParameters, NoConvergence, NoCrossing
from .model import DickeParams

MAX_DIMENSION = 6000


@dataclass(frozen=True)
class BasisDescriptor:
    n_max: int
    spin_j: float

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise InvalidParameters(f"n_max must be a non-negative integer, got {self.n_max}")
        two_j = 2 * self.spin_j
        if two_j < 0 or abs(two_j - round(two_j)) > 1e-12:
            raise InvalidParameters(f"spin_j must be a half-integer, got {self.spin_j}")

    @property
    def n_spin(self) -> int:
        return int(round(2 * self.spin_j)) + 1

    @property
    def dimension(self) -> int:
        return (self.n_max + 1) * self.n_spin

    def index(self, n: int, m: float) -> int:
        return n * self.n_spin + int(round(m + self.spin_j))

    def photon_numbers(self) -> np.ndarray:
        return np.repeat(np.arange(self.n_max + 1, dtype=float), self.n_spin)

    def m_values(self) -> np.ndarray:
        return np.tile(np.arange(self.n_spin) - self.spin_j, self.n_max + 1)

    def parity(self) -> np.ndarray:
        """Diagonal of (-1)^(n + m + j); both coupling terms conserve it."""
        k = np.arange(self.n_spin)
        return np.tile((-1.0) ** k, self.n_max + 1) * np.repeat((-1.0) ** np.arange(self.n_max + 1), self.n_spin)


@dataclass(frozen=True)
class OperatorMatrix:
    basis: BasisDescriptor | None
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    ground_vector: np.ndarray
    photon_number: float
    sz_ground: float
    gap: float
    residual: float = field(default=0.0)

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])


def basis_for(params: DickeParams, n_max: int) -> BasisDescriptor:
    return BasisDescriptor(n_max=n_max, spin_j=params.j)


def _ladder(j: float):
    m = np.arange(int(round(2 * j)) + 1) - j
    # J_+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, stored at [m+1, m]
    jp = np.diag(np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1)), k=-1)
    return m, jp


def build_hamiltonian(params: DickeParams, basis: BasisDescriptor) -> OperatorMatrix:
    if basis.n_max == 0 and (params.lambda_minus or params.lambda_plus):
        warnings.warn("n_max = 0 drops every coupling matrix element", CutoffTooSmall, stacklevel=2)
    m, jp = _ladder(basis.spin_j)
    n = np.arange(basis.n_max + 1, dtype=float)
    # a |n> = sqrt(n) |n-1>, stored at [n-1, n]
    a = np.diag(np.sqrt(n[1:]), k=1)
    diag = params.omega_c * np.repeat(n, len(m)) + params.omega_a * np.tile(m, len(n))
    scale = 1.0 / math.sqrt(2.0 * params.n_atoms)
    co = np.kron(a, jp)          # a S_+
    counter = np.kron(a, jp.T)   # a S_-
    h = np.diag(diag)
    h += params.lambda_minus * scale * (co + co.T)
    h += params.lambda_plus * scale * (counter + counter.T)
    return OperatorMatrix(basis=basis, matrix=h)


def eigensolve(op: OperatorMatrix | np.ndarray, max_dimension: int = MAX_DIMENSION) -> SpectrumResult:
    """Full spectrum of a real symmetric matrix plus ground-state observables.

    The ground vector's sign is fixed (largest component positive) so that
    identical input gives identical output.  Observables that need a basis
    are NaN for a bare matrix.
    """
    if isinstance(op, np.ndarray):
        op = OperatorMatrix(basis=None, matrix=op)
    h = op.matrix
    if h.shape[0] > max_dimension:
        raise InvalidParameters(f"dimension {h.shape[0]} exceeds the limit {max_dimension}")
    try:
        evals, evecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigh failed for dimension {h.shape[0]}: {exc}") from exc
    v0 = evecs[:, 0]
    v0 = v0 * np.sign(v0[np.argmax(np.abs(v0))])
    residual = float(np.linalg.norm(h @ v0 - evals[0] * v0))
    hmax = float(np.max(np.abs(h))) if h.size else 0.0
    if residual > 1e-10 * max(hmax, 1.0) * h.shape[0]:
        raise NoConvergence(f"ground-state residual {residual:.3g} above bound")
    prob = v0 * v0
    if op.basis is not None:
        photons = float(prob @ op.basis.photon_numbers())
        sz = float(2 * prob @ op.basis.m_values())
    else:
        photons = sz = math.nan
    gap = float(evals[1] - evals[0]) if len(evals) > 1 else math.nan
    return SpectrumResult(eigenvalues=evals, ground_vector=v0, photon_number=photons,
                          sz_ground=sz, gap=gap, residual=residual)


def solve(params: DickeParams, n_max: int, max_dimension: int = MAX_DIMENSION) -> SpectrumResult:
    return eigensolve(build_hamiltonian(params, basis_for(params, n_max)), max_dimension)


def parity_expectation(result: SpectrumResult, basis: BasisDescriptor) -> float:
    return float(result.ground_vector**2 @ basis.parity())


def tail_weight(result: SpectrumResult, basis: BasisDescriptor, fraction: float = 0.9) -> float:
    """Ground-state weight on photon shells above fraction * n_max (truncation diagnostic)."""
    mask = basis.photon_numbers() > fraction * basis.n_max
    return float(result.ground_vector[mask] @ result.ground_vector[mask])


def converge_cutoff(params: DickeParams, start_nmax: int = 20, tol: float = 1e-8,
                    max_dimension: int = MAX_DIMENSION) -> tuple[int, SpectrumResult]:
    """Grow the photon cutoff until the ground energy is stable to ``tol``.

    At cutoff n the test is |E0(n) - E0(n + step)| < tol with
    step = max(10, n // 5).  n doubles until the test passes, then a
    bisection between the last failing and first passing n finds the
    smallest passing cutoff.  Returns that cutoff and the spectrum at n.
    """
    if not tol > 0:
        raise InvalidParameters(f"tol must be positive, got {tol}")
    n_spin = int(round(2 * params.j)) + 1
    cache: dict[int, SpectrumResult] = {}

    def result(n):
        if (n + 1) * n_spin > max_dimension:
            raise CutoffLimit(f"n_max = {n} exceeds the dimension cap {max_dimension}", n_max=n)
        if n not in cache:
            cache[n] = solve(params, n, max_dimension)
        return cache[n]

    def delta(n):
        step = max(10, n // 5)
        return abs(result(n).ground_energy - result(n + step).ground_energy)

    n = max(int(start_nmax), 1)
    last_fail, last_delta = None, None
    while True:
        try:
            d = delta(n)
        except CutoffLimit as exc:
            raise CutoffLimit(f"no convergence to {tol:g} below the dimension cap "
                              f"(last delta {last_delta})", n_max=n, last_delta=last_delta) from exc
        if d < tol:
            break
        last_fail, last_delta = n, d
        n *= 2
    if last_fail is not None:
        lo, hi = last_fail, n
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if delta(mid) < tol:
                hi = mid
            else:
                lo = mid
        n = hi
    return n, result(n)


@dataclass(frozen=True)
class CrossoverResult:
    lambda_star: float | None
    profile: list[tuple[float, float, float, float]]
    n_max: int
    runtime: float


def crossover_profile(params: DickeParams, lambda_grid: Sequence[float], n_max: int,
                      ratio: float | None = None, workers: int = 1) -> list[tuple[float, float, float, float]]:
    """(lambda, <a^dag a>/N, <Sz>/N, gap) at each grid point, in grid order."""
    n = params.n_atoms

    def point(lam):
        res = solve(params.with_coupling(lam, ratio), n_max)
        return (float(lam), res.photon_number / n, res.sz_ground / n, res.gap)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(point, lambda_grid))
    return [point(lam) for lam in lambda_grid]


def first_crossing(profile, threshold: float) -> float:
    prev = None
    for row in profile:
        lam, occ = row[0], row[1]
        if occ >= threshold:
            if prev is None:
                return lam
            lam0, occ0 = prev
            return lam0 + (threshold - occ0) * (lam - lam0) / (occ - occ0)
        prev = (lam, occ)
    raise NoCrossing(f"<a^dag a>/N never reaches {threshold}")


def crossover_estimate(params: DickeParams, lambda_grid: Sequence[float], threshold: float = 0.1,
                       n_max: int = 100, ratio: float | None = None, workers: int = 1) -> CrossoverResult:
    """Smallest lambda_minus where <a^dag a>/N crosses ``threshold`` (linear interpolation)."""
    grid = [float(x) for x in lambda_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidParameters("lambda grid must be strictly ascending")
    if not 0 < threshold < 1:
        raise InvalidParameters(f"threshold must lie in (0, 1), got {threshold}")
    t0 = time.perf_counter()
    profile = crossover_profile(params, grid, n_max, ratio, workers)
    return CrossoverResult(lambda_star=first_crossing(profile, threshold), profile=profile,
                           n_max=n_max, runtime=time.perf_counter() - t0)
