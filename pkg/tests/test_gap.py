"""Density of the gap between the running maximum and the current log price."""

import math
import random

import pytest

from sellopt.argmax import h_factor
from sellopt.gap import GapPoint, f_factor, g_factor, gap_pdf
from sellopt.model import ModelParams
from sellopt.propagator import joint_pdf_Q, survival_integral
from sellopt.quadrature import integrate_semi_infinite


def test_f_factor_against_direct_formula():
    # f(y) = e^{-z1^2} + (mu/sigma) sqrt(pi tau/2) e^{-2 mu y/sigma^2} erfc(z2),
    # z1 = (y + mu tau)/sqrt(2 sigma^2 tau), z2 = (y - mu tau)/sqrt(2 sigma^2 tau)
    import mpmath
    mpmath.mp.dps = 40
    rng = random.Random(5)
    worst = 0.0
    for _ in range(150):
        y = rng.uniform(0.0, 5.0)
        tau = rng.uniform(0.05, 3.0)
        mu = rng.uniform(-2.0, 2.0)
        sigma = rng.uniform(0.3, 2.0)
        denom = mpmath.sqrt(2 * sigma * sigma * tau)
        z1 = (y + mu * tau) / denom
        z2 = (y - mu * tau) / denom
        want = mpmath.e ** (-z1 * z1) + (mu / sigma) * mpmath.sqrt(
            mpmath.pi * tau / 2
        ) * mpmath.e ** (-2 * mu * y / (sigma * sigma)) * mpmath.erfc(z2)
        got = f_factor(y, tau, mu, sigma)
        if abs(want) > 1e-280:
            worst = max(worst, abs((got - want) / want))
    assert worst < 1e-12, f"worst f_factor relative error {worst}"


def test_f_factor_at_zero_gap_equals_peak_time_factor():
    # f(0, tau) reduces to the factor h(tau) of the peak-time density
    for mu in (-1.5, -0.3, 0.0, 0.4, 2.0):
        for tau in (0.1, 1.0, 2.7):
            a = f_factor(0.0, tau, mu, 1.2)
            b = h_factor(tau, mu, 1.2)
            assert math.isclose(a, b, rel_tol=1e-12)


def test_g_factor_is_twice_the_survival_integral():
    rng = random.Random(9)
    for _ in range(200):
        y = rng.uniform(1e-6, 5.0)
        tau = rng.uniform(0.05, 3.0)
        mu = rng.uniform(-2.0, 2.0)
        sigma = rng.uniform(0.3, 2.0)
        assert g_factor(y, tau, mu, sigma) == 2.0 * survival_integral(
            y, -mu, sigma, tau
        )


def test_g_factor_range_and_absorption_at_zero():
    assert g_factor(0.0, 0.7, 0.3, 1.0) == 0.0
    assert g_factor(0.0, 0.7, -0.3, 1.0) == 0.0
    rng = random.Random(13)
    for _ in range(200):
        g = g_factor(rng.uniform(0.0, 6.0), rng.uniform(0.05, 3.0),
                     rng.uniform(-2.0, 2.0), rng.uniform(0.3, 2.0))
        assert 0.0 <= g <= 2.0
    assert g_factor(50.0, 1.0, 0.0, 1.0) == 2.0


def test_gap_pdf_zero_at_origin_and_nonnegative():
    p = ModelParams(mu=0.3, sigma=1.0, horizon=1.0)
    assert gap_pdf(0.0, 0.4, p) == 0.0
    for y in (0.01, 0.1, 0.5, 1.0, 3.0, 8.0):
        for tau in (0.1, 0.5, 0.9):
            assert gap_pdf(y, tau, p) >= 0.0


def test_gap_pdf_normalizes_to_one():
    for mu in (-1.0, 0.0, 0.5):
        p = ModelParams(mu=mu, sigma=1.0, horizon=1.0)
        for tau in (0.2, 0.5, 0.8):
            scale = 1.0 + abs(mu)
            total = integrate_semi_infinite(
                lambda y: gap_pdf(y, tau, p) if y > 0 else 0.0,
                0.0, tol=1e-10, scale=scale,
            ).value
            assert abs(total - 1.0) < 1e-8, (mu, tau, total)


def test_gap_pdf_time_reversal_symmetry():
    # P_mu(y, tau) = P_{-mu}(y, T - tau)
    T = 1.7
    pp = ModelParams(mu=0.6, sigma=0.8, horizon=T)
    pm = ModelParams(mu=-0.6, sigma=0.8, horizon=T)
    worst = 0.0
    for y in (0.05, 0.3, 1.0, 2.5):
        for tau in (0.1 * T, 0.37 * T, 0.5 * T, 0.82 * T):
            a = gap_pdf(y, tau, pp)
            b = gap_pdf(y, T - tau, pm)
            worst = max(worst, abs(a - b) / max(abs(a), 1e-300))
    assert worst < 1e-12, f"worst time-reversal error {worst}"


def test_gap_pdf_equals_max_marginalized_joint_density():
    # P(y, tau) = integral over m of Q(m - y, m, tau)
    p = ModelParams(mu=-0.35, sigma=1.2, horizon=1.4)
    tau = 0.6
    for y in (0.2, 0.8, 2.0):
        scale = p.sigma * math.sqrt(p.horizon) + abs(p.mu) * p.horizon
        total = integrate_semi_infinite(
            lambda m: joint_pdf_Q(m - y, m, tau, p) if m > 0 else 0.0,
            0.0, tol=1e-10, scale=scale,
        ).value
        want = gap_pdf(y, tau, p)
        assert abs(total - want) < 1e-7 * max(1.0, want), (y, total, want)


def test_gap_domain_validation():
    p = ModelParams(mu=0.3, sigma=1.0, horizon=1.0)
    with pytest.raises(ValueError):
        gap_pdf(-0.1, 0.5, p)
    for tau in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            gap_pdf(0.5, tau, p)
    with pytest.raises(ValueError):
        f_factor(-1.0, 1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        f_factor(1.0, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        g_factor(1.0, 1.0, 0.0, -1.0)
    with pytest.raises(ValueError):
        g_factor(math.nan, 1.0, 0.0, 1.0)


def test_gap_point_validation():
    ok = GapPoint(y=0.5, tau=0.3, density=0.2)
    assert ok.density == 0.2
    with pytest.raises(ValueError):
        GapPoint(y=-0.5, tau=0.3, density=0.2)
    with pytest.raises(ValueError):
        GapPoint(y=0.5, tau=-0.3, density=0.2)
    with pytest.raises(ValueError):
        GapPoint(y=0.5, tau=0.3, density=-0.2)
    with pytest.raises(ValueError):
        GapPoint(y=math.inf, tau=0.3, density=0.2)
