import pytest

from drinfeld.algebra import Ideal
from drinfeld.lfunctions import (delta_weights, dirichlet_series, l_prime_at_zero, pair_level,
                                 phi_function, phi_series_residual, rankin_identity_check)
from drinfeld.numbers import LogScaled
from drinfeld.quotient import build_quotient

from .helpers import graph, newforms

N = 6


@pytest.fixture(scope="module")
def pair_data(coprime_pair):
    f, g, big = coprime_pair
    ds = dirichlet_series(f, g, N)
    return f, g, big, ds


def test_pair_level(coprime_pair):
    f, g, big = coprime_pair
    assert pair_level(f, g) == big.I


def test_infinity_factor_identity(pair_data):
    *_, ds = pair_data
    assert ds.ok


def test_infinity_factor_identity_same_form():
    f = newforms(2, "T^3+T+1")[0]
    assert dirichlet_series(f, f, 5).ok


def test_rankin_identity_needs_the_symmetric_factor(pair_data):
    f, g, big, ds = pair_data
    rep = rankin_identity_check(f, g, big, N, ds)
    assert not any(rep.residual_corrected)
    assert any(rep.residual_literal)


def test_rankin_identity_same_level():
    f = newforms(2, "T^3+T+1")[0]
    rep = rankin_identity_check(f, f, f.form.graph, 5)
    assert not any(rep.residual_corrected)


def test_phi_three_forms_agree(pair_data):
    f, g, big, _ = pair_data
    for kind in ("symmetric", "plain"):
        phi = phi_function(f, g, big, kind)
        assert phi.mobius_form == phi.single_form == phi.integral_form


def test_phi_functional_equation(pair_data):
    f, g, big, _ = pair_data
    assert phi_function(f, g, big, "symmetric", with_integral=False).fe_residual().is_zero()
    assert not phi_function(f, g, big, "plain", with_integral=False).fe_residual().is_zero()


def test_phi_matches_L_series(pair_data):
    f, g, big, ds = pair_data
    phi = phi_function(f, g, big, "symmetric", with_integral=False)
    assert not any(phi_series_residual(phi, ds))


def test_special_value(pair_data):
    f, g, big, _ = pair_data
    sv = l_prime_at_zero(phi_function(f, g, big, "symmetric", with_integral=False))
    assert not sv.L0
    assert sv.consistent
    assert sv.Lprime0.power == 1 and sv.phi0.power == 0
    assert sv.Lprime0 != LogScaled(0, 1)


def test_delta_weights_are_supported_in_core(pair_data):
    f, g, big, _ = pair_data
    from drinfeld.forms import raise_level

    w = delta_weights(raise_level(f.form, big), raise_level(g.form, big))
    assert w and all(big.edges[e].n < big.stable_from for e in w)


def test_log_scaled_arithmetic():
    a, b = LogScaled(3, 1), LogScaled(5, 1)
    assert a + b == LogScaled(8, 1)
    assert (a * LogScaled(2, -1)) == LogScaled(6, 0)
    assert a + LogScaled(0, 4) == a
    with pytest.raises(ValueError):
        a + LogScaled(1, 0)
    assert a.to_json() == {"value": "3", "log_power": 1}
