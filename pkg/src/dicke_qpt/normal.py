"""Normal-phase analytics.

The transformed Hamiltonian is A a^dag a + B + C (a + a^dag)^2.  Its
Bogoliubov gap sqrt(A (A + 4C)) closes on one of two branches, A = 0 or
A + 4C = 0.  For the Dicke model, A and A + 4C are taken at the degenerate
root of the A + 4C branch, v* = Omega / (2 (omega_a + omega_c e^{-2r})),
which reproduces the Dicke-model closed forms (see ``dicke_coefficients``).

Every function here is pure.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidCouplings, NoTransition, PhaseBoundary, RatioOne, SzZero, Unstable
from .model import DickeParams, SqueezeMap, squeeze_map

BOUNDARY_RTOL = 1e-12


class Branch(str, enum.Enum):
    A_ZERO = "a0"
    A4C_ZERO = "a4c"


class Eq37Form(str, enum.Enum):
    # exponent as printed on (1+rho)/(1-rho) is 2; substituting the map into Omega_c^2 gives 1
    VERBATIM = "verbatim"
    DERIVED = "derived"


@dataclass(frozen=True)
class TransformCoefficients:
    a_coeff: float
    b_coeff: float
    c_coeff: float
    v: float

    @property
    def a_plus_4c(self) -> float:
        return self.a_coeff + 4 * self.c_coeff


@dataclass(frozen=True)
class BogoliubovSolution:
    beta: float
    gap: float
    ground_energy: float


@dataclass(frozen=True)
class CriticalPoint:
    branch: Branch
    omega_c_squared: float
    lambda_c: float
    v_star: float


@dataclass(frozen=True)
class VRoots:
    v_plus: complex | float
    v_minus: complex | float
    discriminant: float

    @property
    def is_complex(self) -> bool:
        """Negative discriminant: no real transform parameter on this branch."""
        return self.discriminant < 0

    @property
    def is_double(self) -> bool:
        return self.v_plus == self.v_minus


def _branch(branch) -> Branch:
    return branch if isinstance(branch, Branch) else Branch(branch)


def coefficients_at(params: DickeParams, smap: SqueezeMap, v: float) -> TransformCoefficients:
    wc, wa, sz = params.omega_c, params.omega_a, params.sz_expect
    r, om = smap.r, smap.omega_rabi
    em2r = math.exp(-2 * r)
    a = wc - wc * v**2 * sz - v * em2r * (om + v * wa) * sz
    c = 0.5 * v * (om * math.cosh(2 * r) - v * wa * math.sinh(2 * r)) * sz
    b = (0.5 * wa * (v**2 + sz)
         - 0.5 * v * em2r * (om + v * wa) * sz
         + 0.5 * v**2 * wc * (math.cosh(2 * r) - sz))
    return TransformCoefficients(a_coeff=a, b_coeff=b, c_coeff=c, v=v)


def v_roots(branch, params: DickeParams, smap: SqueezeMap) -> VRoots:
    """Both roots of the quadratic in v obtained from A = 0 or A + 4C = 0."""
    branch = _branch(branch)
    wc, wa, sz = params.omega_c, params.omega_a, params.sz_expect
    r, om = smap.r, smap.omega_rabi
    if sz == 0:
        raise SzZero("the v roots need a nonzero <Sz>")
    if branch is Branch.A_ZERO:
        disc = om**2 * sz**2 + 4 * wc * sz * (wc + wa * math.exp(-2 * r)) * math.exp(4 * r)
        num0, den = om * sz, -2 * sz * (wa + wc * math.exp(2 * r))
    else:
        disc = om**2 * sz**2 + 4 * wc * sz * (wa + wc * math.exp(-2 * r)) * math.exp(-2 * r)
        num0, den = om * sz, 2 * sz * (wa + wc * math.exp(-2 * r))
    if disc >= 0:
        root = math.sqrt(disc)
    else:
        root = cmath.sqrt(disc)
    return VRoots(v_plus=(num0 + root) / den, v_minus=(num0 - root) / den, discriminant=disc)


def _critical_omega_sq(branch: Branch, wc, wa, sz, em2r) -> float:
    # em2r = e^{-2r}; em2r == 0 is the Rabi limit
    if branch is Branch.A_ZERO:
        if em2r == 0:
            raise RatioOne("no A = 0 transition for lambda_minus == lambda_plus")
        return -4 * wc / sz * (wc + wa * em2r) / em2r**2
    return -4 * wc / sz * (wa + wc * em2r) * em2r


def _v_star(branch: Branch, omega, wc, wa, em2r) -> float:
    if branch is Branch.A_ZERO:
        return -omega / (2 * (wa + wc / em2r))
    return omega / (2 * (wa + wc * em2r))


def _check_sz(sz: float):
    if not sz < 0:
        raise NoTransition(f"a transition requires <Sz> < 0, got {sz}")


def critical_omega(branch, params: DickeParams, smap: SqueezeMap | None = None) -> CriticalPoint:
    """Critical Omega_c^2 on one branch, at the squeeze parameter of ``params``.

    ``lambda_c`` is the lambda_minus at which Omega reaches Omega_c for the
    coupling ratio of ``params``.  In the Rabi limit (no finite r) only the
    A + 4C branch exists and Omega_c^2 -> 0 while lambda_c stays finite.
    """
    branch = _branch(branch)
    _check_sz(params.sz_expect)
    if params.is_rabi_limit:
        rho, em2r = 1.0, 0.0
    elif smap is None and params.lambda_minus == 0:
        rho, em2r = 0.0, 1.0
    else:
        smap = smap if smap is not None else squeeze_map(params)
        rho, em2r = math.tanh(smap.r), math.exp(-2 * smap.r)
    return _critical_point(branch, rho, em2r, params)


def _critical_point(branch: Branch, rho: float, em2r: float, params: DickeParams) -> CriticalPoint:
    wc, wa, sz, n = params.omega_c, params.omega_a, params.sz_expect, params.n_atoms
    om_sq = _critical_omega_sq(branch, wc, wa, sz, em2r)
    if rho < 1:
        lam_sq = n * om_sq / (2 * (1 - rho) * (1 + rho))
    else:
        # Omega^2 / e^{-2r} = (2/N) lambda^2 (1+rho)^2 stays finite as rho -> 1
        lam_sq = -n * wc * wa / (2 * sz)
    om_c = math.sqrt(om_sq)
    return CriticalPoint(branch=branch, omega_c_squared=om_sq, lambda_c=math.sqrt(lam_sq),
                         v_star=_v_star(branch, om_c, wc, wa, em2r))


def critical_lambda(branch, ratio: float, params: DickeParams,
                    form: Eq37Form | str = Eq37Form.DERIVED) -> CriticalPoint:
    """Critical lambda_minus at fixed ratio lambda_plus / lambda_minus.

    The Omega-space condition is converted through the squeeze map.  For the
    A = 0 branch, ``form="verbatim"`` instead uses the printed lambda-space
    condition whose (1+rho)/(1-rho) factor is squared; the two agree only at
    rho = 0.
    """
    branch = _branch(branch)
    form = Eq37Form(form)
    if not 0 <= ratio <= 1:
        raise InvalidCouplings(f"ratio must lie in [0, 1], got {ratio}")
    _check_sz(params.sz_expect)
    if branch is Branch.A_ZERO and ratio == 1:
        raise RatioOne("no A = 0 transition for lambda_minus == lambda_plus")
    q = (1 - ratio) / (1 + ratio)
    point = _critical_point(branch, ratio, q, params)
    if branch is Branch.A_ZERO and form is Eq37Form.VERBATIM:
        wc, wa, sz, n = params.omega_c, params.omega_a, params.sz_expect, params.n_atoms
        lam_sq = n / 2 * (-4 * wc / sz) * (wc + wa * q) / (q**2 * (1 - ratio) ** 2)
        point = CriticalPoint(branch=branch, omega_c_squared=point.omega_c_squared,
                              lambda_c=math.sqrt(lam_sq), v_star=point.v_star)
    return point


def eq37_discrepancy(ratio: float, params: DickeParams) -> tuple[float, float, float]:
    """(derived lambda_c, verbatim lambda_c, relative difference) on the A = 0 branch."""
    derived = critical_lambda(Branch.A_ZERO, ratio, params, Eq37Form.DERIVED).lambda_c
    verbatim = critical_lambda(Branch.A_ZERO, ratio, params, Eq37Form.VERBATIM).lambda_c
    return derived, verbatim, (verbatim - derived) / derived


def v_star(params: DickeParams, smap: SqueezeMap) -> float:
    """Degenerate root of the A + 4C branch at the current Omega."""
    return smap.omega_rabi / (2 * (params.omega_a + params.omega_c * math.exp(-2 * smap.r)))


def dicke_coefficients(params: DickeParams) -> tuple[float, float]:
    """(A, A + 4C) of the Dicke model written directly in lambda space."""
    wc, wa, n, sz = params.omega_c, params.omega_a, params.n_atoms, params.sz_expect
    lm, rho = params.lambda_minus, params.ratio
    q = (1 - rho) / (1 + rho)
    d = wa + wc * q
    a = wc - lm**2 * (1 - rho**2) / (2 * d**2) * (wc * (1 + 2 * q**2) + 3 * wa * q) * sz / n
    a4c = wc + lm**2 * (1 + rho) ** 2 / (2 * d) * sz / n
    return a, a4c


def dicke_b_coefficient(params: DickeParams) -> float:
    """B of the transformed Hamiltonian at v*, rewritten in lambda space.

    The products v*^2, v*^2 cosh 2r and v* Omega e^{-2r} are finite for all
    rho in [0, 1], so the Rabi limit needs no special handling.
    """
    wc, wa, n, sz = params.omega_c, params.omega_a, params.n_atoms, params.sz_expect
    lm, rho = params.lambda_minus, params.ratio
    q = (1 - rho) / (1 + rho)
    d = wa + wc * q
    g = 2.0 / n * lm**2
    v_sq = g * (1 - rho**2) / (4 * d**2)
    v_sq_cosh = g * ((1 + rho) ** 2 + (1 - rho) ** 2) / (8 * d**2)
    v_om_em2r = g * (1 - rho) ** 2 / (2 * d)
    return (0.5 * wa * (v_sq + sz)
            - 0.5 * (v_om_em2r + wa * v_sq * q) * sz
            + 0.5 * wc * (v_sq_cosh - v_sq * sz))


def at_boundary(a: float, a4c: float) -> bool:
    return abs(a * a4c) <= BOUNDARY_RTOL * max(a * a, 1.0)


def phase_label(a: float, a4c: float) -> str:
    if at_boundary(a, a4c):
        return "critical"
    return "normal" if a > 0 and a4c > 0 else "superradiant"


def normal_gap(a: float, a4c: float) -> float:
    """sqrt(A (A + 4C)); exactly 0 inside the boundary tolerance."""
    if at_boundary(a, a4c):
        return 0.0
    if a < 0 or a4c < 0:
        raise Unstable(f"no normal phase: A = {a:.6g}, A + 4C = {a4c:.6g}")
    return math.sqrt(a * a4c)


def bogoliubov(a_coeff: float, c_coeff: float, b_coeff: float = 0.0) -> BogoliubovSolution:
    a4c = a_coeff + 4 * c_coeff
    if at_boundary(a_coeff, a4c):
        raise PhaseBoundary(f"A (A + 4C) = {a_coeff * a4c:.3g} is at the phase boundary")
    gap = normal_gap(a_coeff, a4c)
    beta = -0.25 * math.log(a4c / a_coeff)
    # additive constant kept as B - A/2 + gap (one quantum above B - A/2)
    return BogoliubovSolution(beta=beta, gap=gap, ground_energy=b_coeff - a_coeff / 2 + gap)


def normal_gap_profile(params: DickeParams, lambda_grid: Iterable[float],
                       ratio: float | None = None) -> list[tuple[float, float, float]]:
    """(lambda_minus, gap, ground energy) along a grid at fixed coupling ratio."""
    rows = []
    for lam in lambda_grid:
        p = params.with_coupling(lam, ratio)
        a, a4c = dicke_coefficients(p)
        gap = normal_gap(a, a4c)
        rows.append((lam, gap, dicke_b_coefficient(p) - a / 2 + gap))
    return rows
