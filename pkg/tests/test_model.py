import math

import pytest
from hypothesis import given, settings, strategies as st

from dicke_qpt.errors import InvalidCouplings, InvalidParameters, SqueezeDivergence, ZeroCoupling
from dicke_qpt.model import DickeParams, SqueezeMap, canonicalize, inverse_squeeze_map, squeeze_map


def test_canonicalize_flips_all_negative():
    p = canonicalize(DickeParams(lambda_minus=-3, lambda_plus=-1))
    assert (p.lambda_minus, p.lambda_plus) == (3, 1)


def test_canonicalize_leaves_canonical_alone():
    p = DickeParams(lambda_minus=1, lambda_plus=0)
    assert canonicalize(p) == p


@pytest.mark.parametrize("lm, lp", [(1, 2), (1, -0.5), (-1, 0.5), (0, 1)])
def test_canonicalize_rejects(lm, lp):
    with pytest.raises(InvalidCouplings):
        canonicalize(DickeParams(lambda_minus=lm, lambda_plus=lp))


def test_squeeze_map_jc():
    m = squeeze_map(DickeParams(lambda_minus=1, lambda_plus=0, n_atoms=1))
    assert m.r == 0
    assert m.omega_rabi == pytest.approx(math.sqrt(2), rel=1e-15)


def test_squeeze_map_general():
    p = DickeParams(lambda_minus=3, lambda_plus=1, n_atoms=2)
    m = squeeze_map(p)
    assert m.r == pytest.approx(0.5 * math.log(2), rel=1e-14)
    assert m.omega_rabi == pytest.approx(2 * math.sqrt(2), rel=1e-14)
    # the defining relations: (Omega/2) cosh r = lm/sqrt(2N), (Omega/2) sinh r = lp/sqrt(2N)
    assert m.omega_rabi / 2 * math.cosh(m.r) == pytest.approx(3 / 2, rel=1e-12)
    assert m.omega_rabi / 2 * math.sinh(m.r) == pytest.approx(1 / 2, rel=1e-12)


def test_squeeze_map_errors():
    with pytest.raises(SqueezeDivergence):
        squeeze_map(DickeParams(lambda_minus=1, lambda_plus=1))
    with pytest.raises(ZeroCoupling):
        squeeze_map(DickeParams())


@pytest.mark.parametrize("smap, n, expected", [
    (SqueezeMap(0.0, math.sqrt(2)), 1, (1.0, 0.0)),
    (SqueezeMap(0.5 * math.log(2), 2 * math.sqrt(2)), 2, (3.0, 1.0)),
    (SqueezeMap(0.0, 0.0), 5, (0.0, 0.0)),
])
def test_inverse_squeeze_map(smap, n, expected):
    lm, lp = inverse_squeeze_map(smap, n)
    assert lm == pytest.approx(expected[0], rel=1e-12, abs=1e-15)
    assert lp == pytest.approx(expected[1], rel=1e-12, abs=1e-15)


@settings(max_examples=300)
@given(lm=st.floats(1e-3, 1e3), ratio=st.floats(0, 0.99), n=st.integers(1, 200))
def test_roundtrip(lm, ratio, n):
    p = DickeParams(lambda_minus=lm, lambda_plus=ratio * lm, n_atoms=n)
    back = inverse_squeeze_map(squeeze_map(p), n)
    assert back[0] == pytest.approx(lm, rel=1e-12)
    assert back[1] == pytest.approx(ratio * lm, rel=1e-12, abs=1e-12 * lm)


@given(lm=st.floats(1e-2, 1e2), r1=st.floats(0, 0.98), r2=st.floats(0, 0.98))
def test_r_monotone_in_ratio(lm, r1, r2):
    lo, hi = sorted((r1, r2))
    m_lo = squeeze_map(DickeParams(lambda_minus=lm, lambda_plus=lo * lm))
    m_hi = squeeze_map(DickeParams(lambda_minus=lm, lambda_plus=hi * lm))
    assert m_lo.r <= m_hi.r


@given(lm=st.floats(-10, 10), ratio=st.floats(0, 1))
def test_canonicalize_idempotent(lm, ratio):
    once = canonicalize(DickeParams(lambda_minus=lm, lambda_plus=ratio * lm))
    assert canonicalize(once) == once
    assert once.lambda_minus >= once.lambda_plus >= 0


def test_params_validation():
    with pytest.raises(InvalidParameters):
        DickeParams(omega_c=0)
    with pytest.raises(InvalidParameters):
        DickeParams(n_atoms=0)
    with pytest.raises(InvalidParameters):
        DickeParams(spin_j=0.3)
    with pytest.raises(InvalidParameters):
        DickeParams(n_atoms=2, spin_j=1, sz_expect=-3)
    # without an explicit spin sector any negative <Sz> is accepted
    assert DickeParams(n_atoms=2, sz_expect=-50).sz_expect == -50


def test_defaults():
    p = DickeParams(n_atoms=6)
    assert p.j == 3 and p.sz_expect == -6 and p.ratio == 0
