"""Superradiant-phase analytics.

After the Glauber shift a -> a + alpha the atomic part is rotated into its
dressed basis (mixing angle theta, tan 2 theta = alpha Omega e^r / omega_a).
The result has the generic Rabi form

    J a^dag a + K + L tau_z + M (a + a^dag) tau_x,

which the lowest-order S(mu) transform turns into a quadratic boson form.
Its Bogoliubov gap gives the excitation energy J sqrt(1 + cos^2(2 theta) <tau_z>).

Only the combination Omega e^r enters, and for the Dicke model it equals
sqrt(2/N) (lambda_minus + lambda_plus), so the Rabi limit is finite here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BelowCritical, DegenerateL, ImaginaryGap, InvalidParameters, NumericalFailure
from .model import DickeParams, SqueezeMap, squeezed_coupling
from .normal import BOUNDARY_RTOL, Branch, critical_lambda, normal_gap

RTOL_CHECK = 1e-12


@dataclass(frozen=True)
class DressedState:
    alpha: float
    theta: float
    omega_tilde: float

    @property
    def cos2theta(self) -> float:
        return math.cos(2 * self.theta)


@dataclass(frozen=True)
class GenericRabiCoefficients:
    j_coeff: float
    k_coeff: float
    l_coeff: float
    m_coeff: float
    mu: float
    cos2theta: float


@dataclass(frozen=True)
class SuperradiantSolution:
    cos2theta_sq: float
    alpha_sq_per_n: float
    epsilon: float


def dressed_state(alpha: float, params: DickeParams, smap: SqueezeMap | None = None) -> DressedState:
    if alpha < 0:
        raise InvalidParameters(f"alpha must be non-negative, got {alpha}")
    x = alpha * squeezed_coupling(params, smap)
    wa = params.omega_a
    return DressedState(alpha=alpha, theta=0.5 * math.atan2(x, wa), omega_tilde=math.hypot(wa, x))


def generic_rabi(alpha: float, params: DickeParams, smap: SqueezeMap | None = None) -> GenericRabiCoefficients:
    ds = dressed_state(alpha, params, smap)
    wc = params.omega_c
    om_er = squeezed_coupling(params, smap)
    if om_er == 0:
        raise DegenerateL("L = 0 without coupling; mu is undefined")
    # ratio of the dressed-frame coefficients, written without a cancelling Omega
    cos2t = params.omega_a / ds.omega_tilde
    l_coeff = om_er**2 / (8 * wc)
    m_coeff = om_er * cos2t / 4
    mu = -m_coeff / (2 * l_coeff)
    closed = -wc * cos2t / om_er
    if abs(mu - closed) > RTOL_CHECK * max(abs(closed), 1e-300):
        raise NumericalFailure(f"mu = {mu!r} disagrees with -omega_c cos2theta / (Omega e^r) = {closed!r}")
    return GenericRabiCoefficients(j_coeff=wc, k_coeff=wc * alpha**2, l_coeff=l_coeff,
                                   m_coeff=m_coeff, mu=mu, cos2theta=cos2t)


def _sqrt_nonneg(x: float, scale: float, what: str) -> float:
    if abs(x) <= BOUNDARY_RTOL * scale:
        return 0.0
    if x < 0:
        raise ImaginaryGap(f"{what} argument is negative ({x:.6g})")
    return math.sqrt(x)


def s_transform_gap(coeffs: GenericRabiCoefficients, tau_z_expect: float = -1.0) -> float:
    """Excitation energy via the S(mu)-transformed quadratic form.

    The transformed Hamiltonian has A' = J and C' = -2 mu (M + mu L) <tau_z>,
    and the gap is the normal-phase one, sqrt(A' (A' + 4 C')).
    """
    if not -1 <= tau_z_expect <= 1:
        raise InvalidParameters(f"<tau_z> must lie in [-1, 1], got {tau_z_expect}")
    a = coeffs.j_coeff
    c = -2 * coeffs.mu * (coeffs.m_coeff + coeffs.mu * coeffs.l_coeff) * tau_z_expect
    a4c = a + 4 * c
    if a4c < 0 and not abs(a * a4c) <= BOUNDARY_RTOL * max(a * a, 1.0):
        raise ImaginaryGap(f"A'(A' + 4C') = {a * a4c:.6g} < 0")
    return normal_gap(a, a4c)


def closed_form_gap(j_coeff: float, cos2theta: float, tau_z_expect: float = -1.0) -> float:
    arg = 1 + cos2theta**2 * tau_z_expect
    return j_coeff * _sqrt_nonneg(arg, 1.0, "excitation energy")


def superradiant_solution(params: DickeParams) -> SuperradiantSolution:
    """cos^2(2 theta), alpha^2/N and the excitation energy on the superradiant side.

    cos^2(2 theta) is the operational definition
    4 omega_c^2 [omega_a + omega_c q]^2 / (lambda^4 (1+rho)^4 N), q = (1-rho)/(1+rho),
    alpha^2/N follows by inverting the dressed-angle relation, and
    epsilon = omega_c sqrt(1 + cos^2(2 theta) <Sz>).
    """
    wc, wa, n, sz = params.omega_c, params.omega_a, params.n_atoms, params.sz_expect
    lm, rho = params.lambda_minus, params.ratio
    if lm <= 0:
        raise BelowCritical("the superradiant branch needs lambda_minus > 0")
    q = (1 - rho) / (1 + rho)
    s = lm**2 * (1 + rho) ** 2
    cos_sq = 4 * wc**2 / (s**2 * n) * (wa + wc * q) ** 2
    if cos_sq > 1 + RTOL_CHECK:
        raise BelowCritical(f"cos^2(2 theta) = {cos_sq:.6g} > 1: lambda_minus is below the transition")
    cos_sq = min(cos_sq, 1.0)
    lam_c = critical_lambda(Branch.A4C_ZERO, rho, params).lambda_c
    if lm < lam_c * (1 - RTOL_CHECK):
        raise BelowCritical(f"lambda_minus = {lm:.6g} < lambda_c = {lam_c:.6g}")
    alpha_sq_per_n = wa**2 * (1 - cos_sq) / (2 * s * cos_sq)
    eps = wc * _sqrt_nonneg(1 + cos_sq * sz, 1.0, "excitation energy")
    return SuperradiantSolution(cos2theta_sq=cos_sq, alpha_sq_per_n=alpha_sq_per_n, epsilon=eps)
