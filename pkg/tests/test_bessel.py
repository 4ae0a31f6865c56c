"""Bessel evaluation layer: frozen values, identities, high derivatives."""

from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from series_oracle import bessel_j_series, bessel_y0_series
from steklov.bessel import (
    MAX_DERIV_ORDER,
    BesselKind,
    bessel,
    bessel_deriv,
    derivatives_up_to,
    ratio_expansion_r3,
)
from steklov.errors import UnsupportedOrderError

# Frozen reference values, independently reproduced by the ascending-series
# oracle in series_oracle.py (and, for the half-integer order, by the
# elementary closed form J_{1/2}(z) = sqrt(2/(pi z)) sin z).
J0_AT_1 = 0.7651976865579666
J1_AT_1 = 0.4400505857449335
Y0_AT_1 = 0.08825696421567696


def test_frozen_values_match_library():
    assert bessel(BesselKind.J, 0.0, 1.0) == pytest.approx(J0_AT_1, rel=1e-15, abs=0.0)
    assert bessel(BesselKind.J, 1.0, 1.0) == pytest.approx(J1_AT_1, rel=1e-15, abs=0.0)
    assert bessel(BesselKind.Y, 0.0, 1.0) == pytest.approx(Y0_AT_1, rel=1e-14, abs=0.0)


def test_frozen_values_match_series_oracle():
    assert bessel_j_series(0.0, 1.0) == pytest.approx(J0_AT_1, rel=1e-14, abs=0.0)
    assert bessel_j_series(1.0, 1.0) == pytest.approx(J1_AT_1, rel=1e-14, abs=0.0)
    assert bessel_y0_series(1.0) == pytest.approx(Y0_AT_1, rel=1e-13, abs=0.0)


def test_half_integer_closed_form():
    # J_{1/2}(z) = sqrt(2/(pi z)) sin z, so J_{1/2}(pi/2) = 2/pi exactly.
    z = math.pi / 2.0
    assert bessel(BesselKind.J, 0.5, z) == pytest.approx(2.0 / math.pi, rel=1e-14)
    assert bessel_j_series(0.5, z) == pytest.approx(2.0 / math.pi, rel=1e-13)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5, 4.0])
@pytest.mark.parametrize("z", [0.3, 1.0, 2.7, 5.0])
def test_library_agrees_with_series_oracle_on_grid(nu, z):
    # the alternating series loses ~(z/2)^(2k*)/k*!^2 * eps of headroom to
    # cancellation, so keep z moderate and allow a small absolute floor
    assert bessel(BesselKind.J, nu, z) == pytest.approx(
        bessel_j_series(nu, z), rel=1e-12, abs=2e-14
    )


@pytest.mark.parametrize(
    "kind, nu, z",
    [
        (BesselKind.J, -0.5, 1.0),
        (BesselKind.Y, -1.0, 1.0),
        (BesselKind.J, 1.0, 0.0),
        (BesselKind.Y, 1.0, -2.0),
    ],
)
def test_domain_validation(kind, nu, z):
    with pytest.raises(ValueError):
        bessel(kind, nu, z)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 7.5, 10.0])
@pytest.mark.parametrize("z", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0])
def test_wronskian_identity(nu, z):
    """J_nu(z) Y_nu'(z) - J_nu'(z) Y_nu(z) = 2 / (pi z)."""
    w = bessel(BesselKind.J, nu, z) * bessel_deriv(BesselKind.Y, nu, z, 1) - bessel_deriv(
        BesselKind.J, nu, z, 1
    ) * bessel(BesselKind.Y, nu, z)
    expected = 2.0 / (math.pi * z)
    assert abs(w - expected) <= 1e-11 * expected


@settings(max_examples=150, deadline=None)
@given(
    nu=st.floats(min_value=0.0, max_value=5.0),
    z=st.floats(min_value=0.5, max_value=20.0),
)
def test_wronskian_identity_property(nu, z):
    # Y_nu at non-integer order goes through the reflection formula, whose
    # sin(pi nu) denominator loses precision within ~1e-3 of an integer;
    # exact integer orders take a dedicated code path and are fine.
    assume(nu == round(nu) or min(nu % 1.0, 1.0 - nu % 1.0) > 1e-3)
    w = bessel(BesselKind.J, nu, z) * bessel_deriv(BesselKind.Y, nu, z, 1) - bessel_deriv(
        BesselKind.J, nu, z, 1
    ) * bessel(BesselKind.Y, nu, z)
    expected = 2.0 / (math.pi * z)
    assert abs(w - expected) <= 1e-11 * expected


@pytest.mark.parametrize("kind", [BesselKind.J, BesselKind.Y])
@pytest.mark.parametrize("nu", [1.0, 1.5, 2.0, 3.5, 5.0, 10.0])
@pytest.mark.parametrize("z", [0.7, 2.0, 6.0, 15.0])
def test_three_term_recurrence(kind, nu, z):
    """C_{nu-1}(z) + C_{nu+1}(z) = (2 nu / z) C_nu(z)."""
    lhs = bessel(kind, nu - 1.0, z) + bessel(kind, nu + 1.0, z)
    rhs = (2.0 * nu / z) * bessel(kind, nu, z)
    scale = abs(lhs) + abs(rhs) + 1e-300
    assert abs(lhs - rhs) <= 1e-12 * scale


@pytest.mark.parametrize("kind", [BesselKind.J, BesselKind.Y])
@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5, 6.0])
@pytest.mark.parametrize("z", [0.8, 3.1, 11.0])
def test_ode_residual_small(kind, nu, z):
    ev = derivatives_up_to(kind, nu, z, 2)
    residual, scale = ev.ode_residual()
    assert residual <= 1e-12 * scale


def test_ode_residual_requires_two_derivatives():
    ev = derivatives_up_to(BesselKind.J, 1.0, 2.0, 1)
    with pytest.raises(ValueError):
        ev.ode_residual()


@pytest.mark.parametrize("kind", [BesselKind.J, BesselKind.Y])
@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5, 4.0])
@pytest.mark.parametrize("z", [0.9, 2.3, 7.0])
def test_high_derivatives_against_mpmath(kind, nu, z):
    """Derivatives 1..8 from the ODE recurrence match mpmath's.

    The upward recurrence multiplies by ~(nu^2 - m^2)/z^2 each level, so
    its conditioning worsens for nu^2 >> z^2; k <= 6 (all that the
    cross-product identities consume) gets the tight gate, 7..8 a looser
    one covering that growth.
    """
    ev = derivatives_up_to(kind, nu, z, MAX_DERIV_ORDER)
    fn = mp.besselj if kind is BesselKind.J else mp.bessely
    with mp.workdps(40):
        for k in range(1, MAX_DERIV_ORDER + 1):
            expected = float(fn(nu, z, derivative=k))
            got = ev.derivative_values[k - 1]
            scale = max(abs(expected), 1e-12)
            tol = 1e-10 if k <= 6 else 1e-8
            assert abs(got - expected) <= tol * scale, f"k={k}"


def test_fourth_derivative_against_richardson():
    """Independent finite-difference cross-check of a high derivative."""
    nu, z = 1.5, 2.0

    def f(x: float) -> float:
        return bessel(BesselKind.J, nu, x)

    def central_fourth(h: float) -> float:
        return (f(z - 2 * h) - 4 * f(z - h) + 6 * f(z) - 4 * f(z + h) + f(z + 2 * h)) / h**4

    # h is a balance: the stencil divides ~machine-eps cancellation noise
    # by h^4, so overly small h drowns the comparison in roundoff
    coarse = central_fourth(4e-2)
    fine = central_fourth(2e-2)
    richardson = (4.0 * fine - coarse) / 3.0
    got = bessel_deriv(BesselKind.J, nu, z, 4)
    assert got == pytest.approx(richardson, rel=1e-6)


def test_first_derivative_recurrence_form():
    """bessel_deriv k=1 equals (C_{nu-1} - C_{nu+1})/2 built from values."""
    for kind in (BesselKind.J, BesselKind.Y):
        for nu in (1.0, 2.5, 4.0):
            for z in (0.6, 3.0, 9.0):
                direct = bessel_deriv(kind, nu, z, 1)
                recur = 0.5 * (bessel(kind, nu - 1.0, z) - bessel(kind, nu + 1.0, z))
                assert direct == pytest.approx(recur, rel=1e-12, abs=1e-15)


def test_zeroth_derivative_is_value():
    assert bessel_deriv(BesselKind.J, 1.0, 2.0, 0) == bessel(BesselKind.J, 1.0, 2.0)


@pytest.mark.parametrize("k", [-1, 9, 12])
def test_unsupported_derivative_order(k):
    with pytest.raises(UnsupportedOrderError):
        derivatives_up_to(BesselKind.J, 1.0, 2.0, k)
    if k > 0:
        with pytest.raises(UnsupportedOrderError):
            bessel_deriv(BesselKind.J, 1.0, 2.0, k)


def test_ratio_remainder_decays_like_fifth_power():
    """log-log slope of |R3| over two decades of small z is 5."""
    nu = 1.5
    zs = np.logspace(-3.0, -1.0, 9)
    values = np.array([abs(ratio_expansion_r3(nu, z)) for z in zs])
    slope = np.polyfit(np.log(zs), np.log(values), 1)[0]
    assert abs(slope - 5.0) <= 0.1


def test_ratio_remainder_series_and_direct_branches_agree():
    """Either side of the internal switch the two evaluations coincide."""
    nu = 1.0
    for z in (0.5, 0.79, 0.81):
        r3 = ratio_expansion_r3(nu, z)
        j = bessel(BesselKind.J, nu, z)
        jp = bessel_deriv(BesselKind.J, nu, z, 1)
        direct = j / jp - z / nu - z**3 / (2.0 * nu * nu * (1.0 + nu))
        assert r3 == pytest.approx(direct, rel=1e-9, abs=1e-16)


def test_ratio_remainder_refuses_zero_order():
    with pytest.raises(ValueError, match="nu"):
        ratio_expansion_r3(0.0, 0.5)


def test_ratio_remainder_refuses_beyond_first_critical_point():
    # First zero of J_1' is at z ~ 1.8412; the ratio is not defined past it.
    with pytest.raises(ValueError, match="critical"):
        ratio_expansion_r3(1.0, 2.5)
