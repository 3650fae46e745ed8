import math

import pytest

import bgls_osc


def test_witness_norm_is_one():
    result = bgls_osc.bgls_norm("f0", "psi0")
    assert result["value"] == pytest.approx(1.0, abs=1e-4)
    assert result["finite"]


def test_lp_norm_matches_closed_form():
    for p in (1.1, 1.5, 1.9):
        assert bgls_osc.lp_norm("f0", p) == pytest.approx((4 / (2 - p)) ** (1 / p), rel=1e-10)


def test_fresnel_limit():
    assert bgls_osc.fresnel_I(1e6) == pytest.approx(math.sqrt(math.pi / 2), abs=2e-3)


def test_sinc_field():
    lam = 8.0
    xs = [0.1, 0.5, 1.0]
    values = bgls_osc.apply_operator("fourier", lam, "one", xs)
    for x, u in zip(xs, values):
        assert u.real == pytest.approx(2 * math.sin(lam * x) / (lam * x), rel=1e-8)


def test_functionals():
    w = bgls_osc.w_functional(4.0, "f0", 1.5)
    assert 0 < w < 10
    z, q = bgls_osc.z_functional(4.0, "psi0", "f0")
    assert math.isfinite(z) and z > 0 and q > 2
    assert bgls_osc.theorem2_ratio(4.0, "psi0", "lower-power:0.5", "f0") > 0


def test_kernel_check():
    report = bgls_osc.check_kernel("fourier")
    assert report["support_ok"]
    assert report["min_abs_det"] == pytest.approx(1.0, abs=1e-6)


def test_domain_errors_surface_as_value_error():
    with pytest.raises(ValueError):
        bgls_osc.lp_norm("f0", 2.5)
    with pytest.raises(ValueError):
        bgls_osc.psi("psi0", 3.0)
