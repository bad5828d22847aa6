import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dickebec.errors import DivergenceError, DomainError
from dickebec.quadrature import p0_quad, rho0_prime_quad, rho0_quad
from dickebec.special_functions import (
    SERIES_SWITCH,
    ThermalCloud,
    bose_polylog,
    polylog_neg_log,
)


def mp_li(s, t):
    # exp(-t) must be formed at high precision or t itself is lost near z = 1
    with mpmath.workdps(40):
        return float(mpmath.polylog(s, mpmath.exp(-mpmath.mpf(t))))


def test_empty_sum():
    assert bose_polylog(1.5, 0.0) == 0.0


def test_li2_half(frozen):
    # pi^2/12 - ln(2)^2/2
    assert bose_polylog(2.0, 0.5) == pytest.approx(float(frozen["li2_half"]), rel=1e-12)
    assert abs(bose_polylog(2.0, 0.5) - 0.582241) < 1e-6


def test_li2_half_brute_force():
    k = np.arange(1, 10**6 + 1, dtype=float)
    brute = math.fsum(0.5**k / k**2)
    assert bose_polylog(2.0, 0.5) == pytest.approx(brute, rel=1e-12)


def test_zeta_three_halves_at_unity(frozen):
    zeta = float(frozen["zeta_3_2"])
    assert abs(polylog_neg_log(1.5, 0.0) - zeta) < 1e-8
    assert abs(zeta - 2.612375) < 1e-6
    # approach from below: Li_s(e^-t) = zeta(s) + Gamma(1-s) t^(s-1) + O(t)
    t = 1e-10
    approx = zeta + math.gamma(-0.5) * t**0.5
    assert polylog_neg_log(1.5, t) == pytest.approx(approx, abs=1e-9)


@pytest.mark.parametrize("s", [0.0, -1.0])
def test_order_domain(s):
    with pytest.raises(DomainError):
        bose_polylog(s, 0.5)


@pytest.mark.parametrize("z", [-0.1, 1.0, 1.5, math.nan])
def test_fugacity_domain(z):
    with pytest.raises(DomainError):
        bose_polylog(1.5, z)


def test_divergent_at_unity():
    with pytest.raises(DivergenceError):
        polylog_neg_log(1.0, 0.0)
    assert polylog_neg_log(2.5, math.inf) == 0.0


@pytest.mark.parametrize("s", [0.5, 1.0, 1.5, 2.0, 2.5, 3.0])
@pytest.mark.parametrize("t", [0.05, 0.2, 0.49, 0.51, 1.0, 2.0])
def test_series_and_expansion_agree(s, t):
    z = math.exp(-t)
    a = bose_polylog(s, z, method="series", tol=1e-15)
    b = bose_polylog(s, z, method="expansion")
    assert a == pytest.approx(b, rel=1e-12)


@pytest.mark.parametrize("s", [0.5, 1.0, 1.5, 2.5, -0.5])
@pytest.mark.parametrize("t", [1e-8, 1e-4, 0.01, 0.3, SERIES_SWITCH, 0.7, 5.0, 40.0])
def test_against_mpmath(s, t):
    assert polylog_neg_log(s, t) == pytest.approx(mp_li(s, t), rel=2e-12)


@pytest.mark.parametrize("s", [0.99999, 1.0 + 1e-9, 1.9995, 2.0 - 1e-13, 3.0009])
@pytest.mark.parametrize("t", [1e-10, 1e-4, 0.25, 0.49])
def test_near_integer_order(s, t):
    # the Gamma(1-s) and zeta(1+d) poles cancel; nothing may be lost to them
    assert polylog_neg_log(s, t) == pytest.approx(mp_li(s, t), rel=1e-13)


def test_near_integer_bisection():
    cloud = ThermalCloud(beta=1.0, nu=3)
    x = cloud.solve_affine(1.0 + 1e-6, 1.0, 1.0, 1.5, 1e-9, 10.0, False)
    assert polylog_neg_log(1.0 + 1e-6, x) + x == pytest.approx(1.5, abs=1e-14)


@settings(max_examples=80, deadline=None)
@given(s=st.floats(0.1, 4.0), t=st.floats(1e-9, 60.0))
def test_property_mpmath(s, t):
    assert polylog_neg_log(s, t) == pytest.approx(mp_li(s, t), rel=5e-12)


@settings(max_examples=80, deadline=None)
@given(s=st.floats(0.6, 4.0), t=st.floats(1e-6, 20.0))
def test_property_order_monotone_and_shift(s, t):
    # Li_s decreases with s; z d/dz Li_s(z) = Li_{s-1}(z), i.e. -d/dt Li_s(e^-t)
    assert polylog_neg_log(s, t) < polylog_neg_log(s - 0.5, t)
    h = 1e-5 * t
    fd = -(polylog_neg_log(s, t + h) - polylog_neg_log(s, t - h)) / (2 * h)
    assert fd == pytest.approx(polylog_neg_log(s - 1.0, t), rel=1e-5)


class TestThermalCloud:
    def test_rho0_at_zero(self, frozen):
        cloud = ThermalCloud(beta=1.0, nu=3)
        assert cloud.rho0(0.0) == pytest.approx(float(frozen["rho0_nu3_mu0"]), rel=1e-12)
        assert abs(cloud.rho0(0.0) - 0.165869) < 1e-6

    def test_p0_at_zero(self, frozen):
        # (2 pi)^{-3/2} zeta(5/2) = 0.0851759...
        cloud = ThermalCloud(beta=1.0, nu=3)
        assert cloud.p0(0.0) == pytest.approx(float(frozen["p0_nu3_mu0"]), rel=1e-12)
        assert cloud.p0(0.0) == pytest.approx(p0_quad(cloud, 0.0), rel=1e-10)

    def test_nu2_closed_form(self, frozen):
        cloud = ThermalCloud(beta=1.0, nu=2)
        expected = -math.log(1 - math.exp(-1)) / (2 * math.pi)
        assert cloud.rho0(-1.0) == pytest.approx(expected, rel=1e-11)
        assert cloud.rho0(-1.0) == pytest.approx(float(frozen["rho0_nu2_mu_m1"]), rel=1e-11)
        assert cloud.rho0(-1.0) == pytest.approx(rho0_quad(cloud, -1.0), rel=1e-10)

    @pytest.mark.parametrize("x", ["0.001", "0.5", "3"])
    def test_frozen_values(self, frozen, x):
        cloud = ThermalCloud(beta=1.0, nu=3)
        xf = float(x)
        assert cloud.rho0(-xf) == pytest.approx(float(frozen[f"rho0_nu3_x{x}"]), rel=2e-12)
        assert cloud.p0(-xf) == pytest.approx(float(frozen[f"p0_nu3_x{x}"]), rel=2e-12)
        assert cloud.rho0_prime(-xf) == pytest.approx(float(frozen[f"rho0p_nu3_x{x}"]), rel=2e-12)

    @pytest.mark.parametrize("nu", [1, 2, 3, 4])
    def test_empty_gas(self, nu):
        cloud = ThermalCloud(beta=1.0, nu=nu)
        assert cloud.rho0(-800.0) == 0.0
        assert cloud.p0(-800.0) == 0.0
        assert cloud.rho0_prime(-800.0) == 0.0
        assert cloud.rho0(-40.0) < 1e-16

    @pytest.mark.parametrize("nu", [1, 2, 3, 4])
    @pytest.mark.parametrize("mu", [-5.0, -1.0, -0.2, -0.01])
    def test_finite_differences(self, nu, mu):
        cloud = ThermalCloud(beta=1.3, mass=0.7, nu=nu)
        h = 1e-5 * abs(mu)
        dp = (cloud.p0(mu + h) - cloud.p0(mu - h)) / (2 * h)
        dr = (cloud.rho0(mu + h) - cloud.rho0(mu - h)) / (2 * h)
        assert dp == pytest.approx(cloud.rho0(mu), rel=1e-6)
        assert dr == pytest.approx(cloud.rho0_prime(mu), rel=1e-6)

    def test_rho0_prime_example(self):
        cloud = ThermalCloud(beta=1.0, nu=3)
        h = 1e-5
        fd = (cloud.rho0(-0.5 + h) - cloud.rho0(-0.5 - h)) / (2 * h)
        assert cloud.rho0_prime(-0.5) == pytest.approx(fd, rel=1e-6)
        assert cloud.rho0_prime(-0.5) == pytest.approx(rho0_prime_quad(cloud, -0.5), rel=1e-9)

    @pytest.mark.parametrize("nu", [1, 2, 3, 4, 5])
    def test_monotonicity(self, nu):
        cloud = ThermalCloud(beta=1.0, nu=nu)
        xs = np.linspace(0.01, 5.0, 100)
        rp = [cloud.rho0_prime(-x) for x in xs]
        r = [cloud.rho0(-x) for x in xs]
        p = [cloud.p0(-x) for x in xs]
        assert np.all(np.diff(rp) < 0)
        assert np.all(np.diff(r) < 0)
        assert np.all(np.diff(p) < 0)
        assert min(rp) > 0

    @pytest.mark.parametrize("nu", [1, 2])
    def test_finite_off_zero_low_dimension(self, nu):
        cloud = ThermalCloud(beta=1.0, nu=nu)
        assert math.isfinite(cloud.rho0(-1e-9))
        with pytest.raises(DivergenceError):
            cloud.rho0(0.0)

    def test_rho0_prime_diverges_nu3(self):
        cloud = ThermalCloud(beta=1.0, nu=3)
        values = [cloud.rho0_prime(-x) for x in (1e-2, 1e-4, 1e-8, 1e-12)]
        assert np.all(np.diff(values) > 0)
        assert values[-1] > 1e4

    def test_domain(self):
        cloud = ThermalCloud(beta=1.0, nu=3)
        with pytest.raises(DomainError):
            cloud.rho0(0.1)
        with pytest.raises(DomainError):
            cloud.p0(0.1)
        with pytest.raises(DomainError):
            cloud.rho0_prime(0.0)
        for bad in (dict(beta=0.0), dict(beta=1.0, mass=-1.0), dict(beta=1.0, nu=0),
                    dict(beta=1.0, nu=2.5), dict(beta=1.0, mode="other")):
            with pytest.raises(DomainError):
                ThermalCloud(**bad)

    def test_zero_mode_only(self):
        cloud = ThermalCloud(beta=1.0, nu=3, mode="zero_mode_only")
        assert cloud.rho0(-0.3) == 0.0
        assert cloud.p0(0.0) == 0.0
        assert cloud.rho0_prime(-0.3) == 0.0

    def test_thermal_prefactor(self):
        cloud = ThermalCloud(beta=2.0, mass=3.0, nu=3)
        assert cloud.thermal_volume_inv == pytest.approx((3.0 / (4 * math.pi)) ** 1.5, rel=1e-15)
