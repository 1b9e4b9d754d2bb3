import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dicke_qpt.errors import BelowCritical, DegenerateL, ImaginaryGap, NoTransition
from dicke_qpt.model import DickeParams, SqueezeMap
from dicke_qpt.normal import critical_lambda
from dicke_qpt.superradiant import (
    GenericRabiCoefficients,
    closed_form_gap,
    dressed_state,
    generic_rabi,
    s_transform_gap,
    superradiant_solution,
)


def test_dressed_state_undisplaced():
    ds = dressed_state(0.0, DickeParams(omega_a=0.8), SqueezeMap(0.3, 1.2))
    assert ds.theta == 0 and ds.omega_tilde == 0.8


def test_dressed_state_symmetry_point():
    smap = SqueezeMap(0.2, 1.5)
    alpha = 0.9 / (1.5 * math.exp(0.2))
    ds = dressed_state(alpha, DickeParams(omega_a=0.9), smap)
    assert 2 * ds.theta == pytest.approx(math.pi / 4, rel=1e-14)
    assert ds.omega_tilde == pytest.approx(math.sqrt(2) * 0.9, rel=1e-14)


def test_dressed_state_values():
    ds = dressed_state(1.0, DickeParams(omega_a=1.0), SqueezeMap(0.0, math.sqrt(2)))
    assert math.tan(2 * ds.theta) == pytest.approx(math.sqrt(2), rel=1e-14)
    assert ds.theta == pytest.approx(0.4776583090622197, rel=1e-14)
    assert ds.omega_tilde == pytest.approx(math.sqrt(3), rel=1e-15)
    assert ds.cos2theta == pytest.approx(1 / math.sqrt(3), rel=1e-14)


def test_squeezed_coupling_routes_agree():
    # Omega e^r from the map equals sqrt(2/N)(lm + lp) written in lambda space
    p = DickeParams(omega_a=0.7, lambda_minus=3, lambda_plus=1, n_atoms=2)
    from dicke_qpt.model import squeeze_map
    a = dressed_state(0.6, p, squeeze_map(p))
    b = dressed_state(0.6, p)
    assert a.theta == pytest.approx(b.theta, rel=1e-14)
    assert a.omega_tilde == pytest.approx(b.omega_tilde, rel=1e-14)


@settings(max_examples=300)
@given(alpha=st.floats(0, 50), wa=st.floats(0.05, 10), om=st.floats(0.01, 10), r=st.floats(0, 3))
def test_dressed_invariants(alpha, wa, om, r):
    ds = dressed_state(alpha, DickeParams(omega_a=wa), SqueezeMap(r, om))
    x = alpha * om * math.exp(r)
    # tan(2 theta) = x / omega_a, cross-multiplied to stay well conditioned near 2 theta = pi/2
    assert abs(wa * math.sin(2 * ds.theta) - x * math.cos(2 * ds.theta)) <= 1e-12 * ds.omega_tilde
    assert ds.omega_tilde >= wa
    assert ds.cos2theta == pytest.approx(wa / ds.omega_tilde, rel=1e-12)
    assert 0 <= ds.theta <= math.pi / 4


def test_generic_rabi_values():
    co = generic_rabi(0.0, DickeParams(omega_c=1.0), SqueezeMap(0.0, 2.0))
    assert (co.j_coeff, co.l_coeff, co.m_coeff, co.mu) == (1.0, 0.5, 0.5, -0.5)
    assert co.k_coeff == 0.0


def test_generic_rabi_degenerate():
    with pytest.raises(DegenerateL):
        generic_rabi(0.3, DickeParams(), SqueezeMap(0.0, 0.0))


@settings(max_examples=300)
@given(alpha=st.floats(0, 20), wc=st.floats(0.05, 10), wa=st.floats(0.05, 10),
       om=st.floats(0.01, 10), r=st.floats(0, 3))
def test_mu_closed_form(alpha, wc, wa, om, r):
    co = generic_rabi(alpha, DickeParams(omega_c=wc, omega_a=wa), SqueezeMap(r, om))
    assert co.mu == pytest.approx(-co.m_coeff / (2 * co.l_coeff), rel=1e-12)
    assert abs(co.mu + wc * co.cos2theta / (om * math.exp(r))) <= 1e-12 * abs(co.mu)
    # 2 M^2 / L reduces to omega_c cos^2(2 theta)
    assert 2 * co.m_coeff**2 / co.l_coeff == pytest.approx(wc * co.cos2theta**2, rel=1e-12)


def test_s_transform_decoupled_spin():
    co = GenericRabiCoefficients(j_coeff=1.3, k_coeff=0, l_coeff=0.5, m_coeff=0.0, mu=0.0, cos2theta=0.0)
    assert s_transform_gap(co, -1.0) == 1.3
    assert closed_form_gap(1.3, 0.0, -1.0) == 1.3


def test_s_transform_collapse():
    co = generic_rabi(0.0, DickeParams(omega_c=1.0), SqueezeMap(0.0, 2.0))
    assert co.cos2theta == 1.0
    assert s_transform_gap(co, -1.0) == 0.0
    assert closed_form_gap(co.j_coeff, co.cos2theta, -1.0) == 0.0


def test_s_transform_imaginary():
    with pytest.raises(ImaginaryGap):
        closed_form_gap(1.0, 1.0, -1.5)


@settings(max_examples=500)
@given(alpha=st.floats(0, 20), wc=st.floats(0.05, 10), wa=st.floats(0.05, 10),
       om=st.floats(0.01, 10), r=st.floats(0, 3), tau=st.floats(-1, 1))
def test_pipeline_matches_closed_form(alpha, wc, wa, om, r, tau):
    co = generic_rabi(alpha, DickeParams(omega_c=wc, omega_a=wa), SqueezeMap(r, om))
    pipeline = s_transform_gap(co, tau)
    closed = closed_form_gap(co.j_coeff, co.cos2theta, tau)
    # rounding in 1 + cos^2 tau (a few ulps of 1) propagates through the square root as J^2 ulp / gap
    propagated = 8 * 2.2e-16 * wc**2 / closed if closed > 0 else 1e-7 * wc
    assert abs(pipeline - closed) <= max(1e-12 * closed, propagated)


def test_superradiant_at_critical_rabi():
    for n in (1, 2, 5, 12):
        p = DickeParams(omega_c=1, omega_a=1, lambda_minus=1 / math.sqrt(2), lambda_plus=1 / math.sqrt(2),
                        n_atoms=n)
        sol = superradiant_solution(p)
        assert sol.cos2theta_sq == pytest.approx(1 / n, rel=1e-14)
        assert sol.epsilon == 0.0
    assert superradiant_solution(DickeParams(lambda_minus=2 ** -0.5, lambda_plus=2 ** -0.5)).alpha_sq_per_n \
        == pytest.approx(0.0, abs=1e-14)


def test_superradiant_rabi_value():
    sol = superradiant_solution(DickeParams(omega_c=1, omega_a=1, lambda_minus=1, lambda_plus=1, n_atoms=1))
    assert sol.cos2theta_sq == pytest.approx(0.25, rel=1e-15)
    assert sol.epsilon == pytest.approx(math.sqrt(0.75), rel=1e-15)
    # inverting the dressed-angle relation, then re-evaluating it
    a2 = sol.alpha_sq_per_n
    assert 1 / (1 + 2 * a2 * 4) == pytest.approx(0.25, rel=1e-14)


def test_superradiant_below_critical():
    with pytest.raises(BelowCritical):
        superradiant_solution(DickeParams(omega_c=1, omega_a=1, lambda_minus=0.5, lambda_plus=0.5))
    with pytest.raises(BelowCritical):
        superradiant_solution(DickeParams(lambda_minus=0.6, lambda_plus=0.6, n_atoms=4))
    with pytest.raises(NoTransition):
        superradiant_solution(DickeParams(lambda_minus=3, lambda_plus=3, sz_expect=0.5))


def test_superradiant_imaginary_gap():
    # |Sz| = 2N: at 1.3 lambda_c, cos^2 = (Sz^2 / N^3) / 1.3^4 ~ 0.70 > 1/|Sz|
    p = DickeParams(omega_c=1, omega_a=1, n_atoms=2, spin_j=2.0, sz_expect=-4.0)
    lam_c = critical_lambda("a4c", 1.0, p).lambda_c
    with pytest.raises(ImaginaryGap):
        superradiant_solution(p.with_coupling(lam_c * 1.3, 1.0))


def test_epsilon_increasing_above_critical():
    p = DickeParams(omega_c=1, omega_a=1, n_atoms=6)
    lam_c = critical_lambda("a4c", 1.0, p).lambda_c
    eps = [superradiant_solution(p.with_coupling(lam, 1.0)).epsilon for lam in lam_c * np.linspace(1, 3, 40)]
    assert all(b > a for a, b in zip(eps, eps[1:]))


@given(lam_scale=st.floats(1, 10), ratio=st.floats(0, 1), n=st.integers(1, 30))
def test_alpha_sq_non_negative(lam_scale, ratio, n):
    p = DickeParams(omega_c=0.9, omega_a=1.1, n_atoms=n)
    lam_c = critical_lambda("a4c", ratio, p).lambda_c
    sol = superradiant_solution(p.with_coupling(lam_c * lam_scale, ratio))
    assert sol.alpha_sq_per_n >= 0
    assert 0 < sol.cos2theta_sq <= 1


def test_alpha_sq_at_critical_grows_with_n():
    # at lambda_c with <Sz> = -N, cos^2 = 1/N, so alpha^2/N = omega_a^2 (N-1) / (2 lambda_c^2 (1+rho)^2)
    for n in (1, 4, 16):
        p = DickeParams(omega_c=1, omega_a=1, n_atoms=n)
        lam_c = critical_lambda("a4c", 1.0, p).lambda_c
        sol = superradiant_solution(p.with_coupling(lam_c, 1.0))
        assert sol.alpha_sq_per_n == pytest.approx((n - 1) / (2 * lam_c**2 * 4), rel=1e-12, abs=1e-14)
