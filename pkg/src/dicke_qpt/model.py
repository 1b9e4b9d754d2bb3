"""Parameter records and the (lambda_minus, lambda_plus) <-> (r, Omega) map.

Units: hbar = 1 and every frequency/energy is expressed in one common unit,
conveniently omega_c.  The collective spin is normalised so that its
z-component steps by 2 (S_z = 2 J_z), so ``sz_expect`` lives in [-2j, 2j].
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import InvalidCouplings, InvalidParameters, SqueezeDivergence, ZeroCoupling


@dataclass(frozen=True)
class DickeParams:
    omega_c: float = 1.0
    omega_a: float = 1.0
    lambda_minus: float = 0.0
    lambda_plus: float = 0.0
    n_atoms: int = 1
    # None means the symmetric sector j = N/2; the |sz| <= 2j bound is then not enforced
    spin_j: float | None = None
    # None means the fully polarised value -2j
    sz_expect: float | None = None

    def __post_init__(self):
        if not (self.omega_c > 0 and math.isfinite(self.omega_c)):
            raise InvalidParameters(f"omega_c must be positive, got {self.omega_c}")
        if not (self.omega_a > 0 and math.isfinite(self.omega_a)):
            raise InvalidParameters(f"omega_a must be positive, got {self.omega_a}")
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 1:
            raise InvalidParameters(f"n_atoms must be a positive integer, got {self.n_atoms}")
        object.__setattr__(self, "n_atoms", int(self.n_atoms))
        for name in ("lambda_minus", "lambda_plus"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameters(f"{name} must be finite")
        if self.spin_j is not None:
            two_j = 2 * self.spin_j
            if two_j < 1 or abs(two_j - round(two_j)) > 1e-12:
                raise InvalidParameters(f"spin_j must be a positive half-integer, got {self.spin_j}")
            object.__setattr__(self, "spin_j", round(two_j) / 2)
        if self.sz_expect is None:
            object.__setattr__(self, "sz_expect", -2.0 * self.j)
        elif not math.isfinite(self.sz_expect):
            raise InvalidParameters("sz_expect must be finite")
        elif self.spin_j is not None and abs(self.sz_expect) > 2 * self.spin_j + 1e-12:
            raise InvalidParameters(
                f"|sz_expect| = {abs(self.sz_expect)} exceeds 2j = {2 * self.spin_j}"
            )

    @property
    def j(self) -> float:
        return self.spin_j if self.spin_j is not None else self.n_atoms / 2

    @property
    def ratio(self) -> float:
        """lambda_plus / lambda_minus, taken as 0 for the decoupled model."""
        if self.lambda_minus == 0:
            return 0.0
        return self.lambda_plus / self.lambda_minus

    @property
    def is_rabi_limit(self) -> bool:
        return self.lambda_minus != 0 and self.lambda_minus == self.lambda_plus

    def with_coupling(self, lambda_minus: float, ratio: float | None = None) -> DickeParams:
        """Copy with lambda_minus replaced and lambda_plus = ratio * lambda_minus."""
        rho = self.ratio if ratio is None else ratio
        return replace(self, lambda_minus=lambda_minus, lambda_plus=rho * lambda_minus)


@dataclass(frozen=True)
class SqueezeMap:
    r: float
    omega_rabi: float


def canonicalize(params: DickeParams) -> DickeParams:
    lm, lp = params.lambda_minus, params.lambda_plus
    if lm * lp < 0:
        raise InvalidCouplings(f"couplings of opposite sign: ({lm}, {lp})")
    if abs(lp) > abs(lm):
        raise InvalidCouplings(f"|lambda_plus| > |lambda_minus|: ({lm}, {lp})")
    if lm < 0 or lp < 0:
        return replace(params, lambda_minus=-lm, lambda_plus=-lp)
    return params


def squeeze_map(params: DickeParams) -> SqueezeMap:
    lm, lp, n = params.lambda_minus, params.lambda_plus, params.n_atoms
    if lm == 0 and lp == 0:
        raise ZeroCoupling("r is undefined for the decoupled model")
    if not lm > lp >= 0:
        if lm == lp:
            raise SqueezeDivergence("lambda_minus == lambda_plus sends r to infinity")
        raise InvalidCouplings("squeeze_map needs canonical couplings lambda_minus > lambda_plus >= 0")
    r = 0.5 * math.log((lm + lp) / (lm - lp))
    omega = math.sqrt(2.0 / n * (lm - lp) * (lm + lp))
    return SqueezeMap(r=r, omega_rabi=omega)


def inverse_squeeze_map(smap: SqueezeMap, n_atoms: int) -> tuple[float, float]:
    scale = math.sqrt(2.0 * n_atoms) * smap.omega_rabi / 2
    return scale * math.cosh(smap.r), scale * math.sinh(smap.r)


def squeezed_coupling(params: DickeParams, smap: SqueezeMap | None = None) -> float:
    """Omega * e^r, which stays finite in the Rabi limit.

    From the map, (Omega/2) e^r = (lambda_minus + lambda_plus) / sqrt(2N).
    """
    if smap is not None:
        return smap.omega_rabi * math.exp(smap.r)
    return math.sqrt(2.0 / params.n_atoms) * (params.lambda_minus + params.lambda_plus)
