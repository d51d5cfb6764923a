"""Error-function family against an arbitrary-precision oracle (mpmath)."""

import math
import random

import mpmath
import pytest

from sellopt.special import erfc, erfcx, exp_erfc, normal_cdf

mpmath.mp.dps = 40


def _rel_err(got: float, want: mpmath.mpf) -> float:
    if want == 0:
        return abs(got)
    return abs((mpmath.mpf(got) - want) / want)


def _grid():
    rng = random.Random(20260814)
    pts = [i * 0.25 for i in range(-100, 101)]
    pts += [rng.uniform(-25.0, 25.0) for _ in range(200)]
    pts += [1e-300, -1e-300, 1e-12, -1e-12, 0.46875, -0.46875, 0.468751,
            4.0, -4.0, 4.000001, 25.0, -25.0]
    return pts


def test_erfc_matches_oracle_below_1e13():
    worst = 0.0
    for x in _grid():
        want = mpmath.erfc(x)
        if abs(want) < 1e-290:  # subnormal region, covered by saturation test
            continue
        worst = max(worst, _rel_err(erfc(x), want))
    assert worst < 1e-13, f"worst erfc relative error {worst}"


def test_erfcx_matches_oracle_below_1e13():
    rng = random.Random(7)
    pts = [x for x in _grid() if x > -26.0]
    pts += [50.0, 1e3, 1e6, 6.7e7, 6.72e7, 1e9, 1e300]
    pts += [rng.uniform(-26.0, -4.0) for _ in range(50)]
    worst = 0.0
    for x in pts:
        want = mpmath.exp(mpmath.mpf(x) ** 2) * mpmath.erfc(x)
        worst = max(worst, _rel_err(erfcx(x), want))
    assert worst < 1e-13, f"worst erfcx relative error {worst}"


def test_normal_cdf_matches_oracle():
    # the x/sqrt(2) argument rounding is amplified by the tail condition
    # number (about x^2), so the deep tail gets a looser bound
    worst_core = 0.0
    worst_tail = 0.0
    for x in _grid():
        want = mpmath.ncdf(x)
        if abs(want) < 1e-290:
            continue
        err = _rel_err(normal_cdf(x), want)
        if abs(x) <= 20.0:
            worst_core = max(worst_core, err)
        else:
            worst_tail = max(worst_tail, err)
    assert worst_core < 1e-13, f"worst normal_cdf relative error {worst_core}"
    assert worst_tail < 1e-12, f"worst tail normal_cdf relative error {worst_tail}"


def test_exp_erfc_stabilized_product():
    cases = [
        (0.0, 1.0), (5.0, 2.0), (-3.0, 0.5), (500.0, 23.0), (700.0, 26.4),
        (100.0, -2.0), (-50.0, -1.0), (0.5, 0.0), (250.0, 15.0), (2.0, -8.0),
    ]
    worst = 0.0
    for a, z in cases:
        want = mpmath.exp(a) * mpmath.erfc(z)
        worst = max(worst, _rel_err(exp_erfc(a, z), want))
    assert worst < 1e-13, f"worst exp_erfc relative error {worst}"


def test_saturation_thresholds():
    assert erfc(26.543) == 0.0
    assert erfc(100.0) == 0.0
    assert erfc(-26.543) == 2.0
    assert erfc(-100.0) == 2.0
    assert erfcx(-26.7) == math.inf
    assert erfcx(-1000.0) == math.inf
    # far-tail closed form 1/(x sqrt(pi))
    x = 1e10
    assert abs(erfcx(x) - 1.0 / (x * math.sqrt(math.pi))) < 1e-25
    assert normal_cdf(-40.0) == 0.0
    assert normal_cdf(40.0) == 1.0


def test_exact_special_values():
    assert erfc(0.0) == 1.0
    assert erfcx(0.0) == 1.0
    assert normal_cdf(0.0) == 0.5


def test_normal_cdf_monotone():
    xs = [x * 0.5 for x in range(-80, 81)]
    vals = [normal_cdf(x) for x in xs]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    assert all(0.0 <= v <= 1.0 for v in vals)


def test_erfc_complement_identity():
    for x in (0.1, 0.7, 2.3, 11.0):
        assert math.isclose(erfc(-x), 2.0 - erfc(x), rel_tol=0, abs_tol=4e-16)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_inputs_raise(bad):
    for fn in (erfc, erfcx, normal_cdf):
        with pytest.raises(ValueError):
            fn(bad)
    with pytest.raises(ValueError):
        exp_erfc(bad, 1.0)
    with pytest.raises(ValueError):
        exp_erfc(1.0, bad)
