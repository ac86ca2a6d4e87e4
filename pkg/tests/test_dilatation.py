import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from angdil.dilatation import (DilatationProfile, angular_dilatation, delta_p, dilatation_on_circle,
                               dilatation_profile, min_modulus)
from angdil.errors import RegularityError, SingularPointError
from angdil.mapping import AngularReparam, Identity, PolarPoint, RadialPower, Rotation, Twist
from angdil.quadrature import CircleRule

PI = math.pi


def test_examples():
    assert angular_dilatation(Identity(), 2, PolarPoint(0.5, 1.0)) == pytest.approx(1.0, rel=1e-15)
    assert angular_dilatation(RadialPower(2), 2, PolarPoint(0.5, 0)) == pytest.approx(0.5, rel=1e-15)
    # D_p = h'(theta)^(p-1)
    assert angular_dilatation(AngularReparam((0.3,)), 3, PolarPoint(0.5, 0)) == pytest.approx(1.69, rel=1e-14)
    assert delta_p(RadialPower(2), 2, 0.5).value == pytest.approx(PI / 2, rel=1e-14)
    assert delta_p(AngularReparam((0.3,)), 3, 0.5).value == pytest.approx(PI ** 2, rel=1e-13)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 3.0])
@pytest.mark.parametrize("p", [2.0, 2.5, 3.0, 5.0])
@pytest.mark.parametrize("r", [0.05, 0.4, 0.95])
def test_radial_power_closed_form(alpha, p, r):
    D = r ** ((alpha - 1) * (p - 2)) / alpha
    assert angular_dilatation(RadialPower(alpha), p, PolarPoint(r, 0.7)) == pytest.approx(D, rel=1e-13)
    assert delta_p(RadialPower(alpha), p, r).value == pytest.approx((2 * PI * r) ** (p - 1) * D, rel=1e-12)


@pytest.mark.parametrize("m", [Identity(), Rotation(1.1), Twist((1.0,)), Twist((0.5, -0.3)),
                               AngularReparam((0.3,)), AngularReparam((0.2, 0.1), (0.05,))])
@pytest.mark.parametrize("p", [2.0, 3.0, 5.0])
def test_angular_families_have_delta_of_identity(m, p):
    # for |f| = r these maps satisfy int D_p^(1/(p-1)) r dtheta = 2 pi r exactly
    assert delta_p(m, p, 0.6).value == pytest.approx((2 * PI * 0.6) ** (p - 1), rel=1e-12)


@given(p=st.floats(2.0, 8.0), r=st.floats(0.05, 0.99), a=st.floats(-0.9, 0.9))
def test_delta_and_dilatation_positive(p, r, a):
    m = AngularReparam((a,))
    d = delta_p(m, p, r).value
    assert d > 0 and math.isfinite(d)
    D = dilatation_on_circle(m, p, r, CircleRule(256).nodes())
    assert np.all(D > 0)


def test_error_estimate_small_for_smooth_map():
    res = delta_p(AngularReparam((0.3,)), 2.5, 0.5, CircleRule(256))
    assert res.error < 1e-10


def test_p_below_two_rejected():
    for bad in (1.5, 1.999, float("nan")):
        with pytest.raises(ValueError):
            delta_p(Identity(), bad, 0.5)


def test_folded_map_raises_located_regularity_error():
    with pytest.raises(RegularityError) as info:
        delta_p(AngularReparam((1.5,)), 2, 0.5)
    assert info.value.jacobian <= 0
    assert abs(info.value.theta - PI) < 1.0
    assert info.value.r == 0.5


def test_origin_is_singular():
    with pytest.raises(SingularPointError):
        delta_p(Identity(), 2, 0.0)


@pytest.mark.parametrize("m,r,want", [
    (Identity(), 0.5, 0.5),
    (RadialPower(2), 0.5, 0.25),
    (Rotation(2.0), 0.3, 0.3),
    (AngularReparam((0.3,)), 0.7, 0.7),
])
def test_min_modulus_radial_modulus(m, r, want):
    assert min_modulus(m, r) == pytest.approx(want, rel=1e-13)


def test_min_modulus_nonradial(bulge):
    # brute force on a fine grid bounds the refined minimum from above
    t = np.linspace(0, 2 * PI, 200001)
    brute = np.min(np.abs(bulge.values(0.6, t)))
    got = min_modulus(bulge, 0.6)
    assert got <= brute + 1e-15
    assert got == pytest.approx(brute, rel=1e-9)


def test_min_modulus_at_origin():
    assert min_modulus(Identity(), 0.0) == 0.0


def test_profile_matches_pointwise():
    radii = np.linspace(0.1, 0.9, 5)
    prof = dilatation_profile(RadialPower(0.5), 3.0, radii)
    for r, v in zip(radii, prof.delta_values):
        assert v == delta_p(RadialPower(0.5), 3.0, r).value


def test_profile_validation():
    with pytest.raises(ValueError):
        DilatationProfile(2.0, [0.5, 0.4], [1.0, 1.0], [0.0, 0.0])
    with pytest.raises(ValueError):
        DilatationProfile(2.0, [0.4, 0.5], [1.0, -1.0], [0.0, 0.0])
