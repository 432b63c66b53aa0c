import math

import pytest

from catalan_hyperlab import elliptic
from catalan_hyperlab.integrals import (
    CATALAN_METHODS,
    catalan,
    catalan_result,
    integral_A,
    integral_B,
    integral_C,
    integral_D,
    parametric_integral,
)
from catalan_hyperlab.quadrature import QuadratureSpec, central_diff, tanh_sinh
from catalan_hyperlab.sfcore import PFQParams, pfq

G12 = 0.915965594177
PIH = math.pi / 2.0
LOG2 = math.log(2.0)


# ------------------------------------------------------------- endpoints

def test_a_vanishes_at_zero():
    assert integral_A(0.0) == 0.0


def test_a_at_one_is_twice_catalan():
    assert integral_A(1.0, tol=1e-12) == pytest.approx(2.0 * G12, abs=1e-11)


def test_b_endpoints():
    assert integral_B(0.0) == 0.0
    assert integral_B(1.0, tol=1e-12) == pytest.approx(0.5 + G12, abs=1e-11)


def test_c_endpoints():
    assert integral_C(0.0) == PIH * LOG2  # closed form, no quadrature
    c1 = integral_C(1.0, tol=1e-12)
    assert c1 == pytest.approx(2.0 * G12 - PIH * LOG2, abs=1e-10)
    assert c1 == pytest.approx(0.743138143, abs=1e-9)


def test_d_requires_nonzero_parameter():
    with pytest.raises(ValueError):
        integral_D(0.0)


def test_domain_validation():
    with pytest.raises(ValueError):
        integral_A(1.5)
    with pytest.raises(ValueError):
        parametric_integral("Q", 0.5)


# ---------------------------------------------------- series cross-checks

def test_a_matches_3f2_series():
    # A(s) = (pi/2) s 3F2(1/2,1/2,1/2;1,3/2;s^2)
    series = pfq(PFQParams([0.5, 0.5, 0.5], [1.0, 1.5], 0.25), 1e-12)
    assert integral_A(0.5) == pytest.approx(PIH * 0.5 * series.value, abs=1e-10)


def test_b_matches_3f2_series():
    series = pfq(PFQParams([-0.5, 0.5, 0.5], [1.0, 1.5], 0.36), 1e-12)
    assert integral_B(0.6) == pytest.approx(PIH * 0.6 * series.value, abs=1e-10)


def test_c_matches_4f3_series():
    series = pfq(PFQParams([1.0, 1.0, 1.5, 1.5], [2.0, 2.0, 2.0], 0.25), 1e-12)
    expected = PIH * LOG2 - (math.pi / 16.0) * 0.25 * series.value
    assert integral_C(0.5) == pytest.approx(expected, abs=1e-10)


def test_parity_of_a_and_b():
    assert integral_A(-0.5) == pytest.approx(-integral_A(0.5), abs=1e-13)
    assert integral_B(-0.6) == pytest.approx(-integral_B(0.6), abs=1e-13)


# ------------------------------------------------------- log-sum relation

def test_c_plus_d_closed_form():
    for s in (0.2, 0.5, 0.8, 1.0):
        total = integral_C(s) + integral_D(s)
        assert total == pytest.approx(math.pi * math.log(s / 2.0), abs=1e-9)


def test_d_from_c_via_log_relation():
    assert integral_D(0.5) == pytest.approx(math.pi * math.log(0.25) - integral_C(0.5), abs=1e-9)
    assert integral_D(1.0) == pytest.approx(math.pi * math.log(0.5) - integral_C(1.0), abs=1e-9)


def test_change_of_variables_in_c_at_one():
    res = tanh_sinh(lambda t: math.log1p(math.cos(t)), QuadratureSpec(0.0, PIH, 1e-11))
    assert res.value == pytest.approx(integral_C(1.0, tol=1e-12), abs=1e-10)


# ------------------------------------------------------------ derivatives

@pytest.mark.parametrize("s", (0.3, 0.5, 0.7))
def test_derivatives_under_the_integral_sign(s):
    k = elliptic.ellipk(s)
    e = elliptic.ellipe(s)
    assert central_diff(lambda u: integral_A(u), s) == pytest.approx(k, abs=1e-6)
    assert central_diff(lambda u: integral_B(u), s) == pytest.approx(e, abs=1e-6)
    assert central_diff(lambda u: integral_C(u), s) == pytest.approx((PIH - k) / s, abs=1e-6)
    assert central_diff(lambda u: integral_D(u), s) == pytest.approx((PIH + k) / s, abs=1e-6)


# ---------------------------------------------------------------- catalan

def test_catalan_routes_agree_pairwise():
    values = [catalan(m) for m in CATALAN_METHODS]
    worst = max(abs(a - b) for a in values for b in values)
    assert worst <= 1e-11


def test_catalan_beta_series_matches_printed_digits():
    assert abs(catalan("beta_series") - G12) <= 5e-13


def test_catalan_arcsin_route_is_half_a1():
    assert catalan("arcsin_integral") == pytest.approx(integral_A(1.0, tol=1e-12) / 2.0, abs=1e-12)


def test_catalan_result_diagnostics():
    res = catalan_result("k_integral")
    assert res.method == "quadrature" and res.converged and res.effort > 0
    res = catalan_result("beta_series")
    assert res.method == "accelerated"


def test_catalan_unknown_method():
    with pytest.raises(ValueError):
        catalan("magic")
