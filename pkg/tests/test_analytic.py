"""Weierstrass calibration-function tests."""

import math

import numpy as np
import pytest

from wavereg import (
    WeierstrassParams,
    theoretical_regularity,
    weierstrass_eval,
    weierstrass_mesh,
)

# 60-term partial sum of sum 0.5^n sin(4^n x) at the binary64 value of pi/2,
# computed with mpmath at 60 decimal digits:
#   mp.dps = 60; fsum(mpf(0.5)**n * sin(mpf(4)**n * mpf(math.pi/2))
#                     for n in range(1, 61))
PARTIAL_SUM_ORACLE = -1.0179874146028964e-08


def test_params_validation():
    with pytest.raises(ValueError):
        WeierstrassParams(A=1.0, B=2.0)
    with pytest.raises(ValueError):
        WeierstrassParams(A=0.4, B=2.0)  # A B <= 1
    with pytest.raises(ValueError):
        WeierstrassParams(A=0.5, B=0.9)
    with pytest.raises(ValueError):
        WeierstrassParams(A=0.5, B=2.0, truncation_tol=0.0)


def test_eval_at_zero_is_zero():
    assert weierstrass_eval(WeierstrassParams(A=0.7, B=2.0), 0.0) == 0.0


def test_eval_oddness():
    params = WeierstrassParams(A=0.7, B=3.0)
    for x in (0.1, 0.37, 1.0, 2.5):
        assert weierstrass_eval(params, -x) == pytest.approx(
            -weierstrass_eval(params, x), abs=1e-15
        )


def test_eval_matches_extended_precision_partial_sum():
    params = WeierstrassParams(A=0.5, B=4.0)
    got = weierstrass_eval(params, math.pi / 2)
    assert abs(got - PARTIAL_SUM_ORACLE) <= 1e-16


def test_truncation_tail_bound():
    """Loosening the tolerance moves the value by at most tol/(1-A)."""
    xs = (0.123, 0.5, 0.986)
    for tol in (1e-10, 1e-6):
        tight = WeierstrassParams(A=0.8, B=2.0, truncation_tol=1e-16)
        loose = WeierstrassParams(A=0.8, B=2.0, truncation_tol=tol)
        for x in xs:
            diff = abs(weierstrass_eval(tight, x) - weierstrass_eval(loose, x))
            assert diff <= tol / (1.0 - 0.8)


def test_term_count_rule():
    params = WeierstrassParams(A=0.5, B=4.0)
    assert params.n_terms == math.ceil(math.log(1e-16) / math.log(0.5))
    capped = WeierstrassParams(A=0.9999, B=1.5, truncation_tol=1e-300)
    assert capped.n_terms == 2000


@pytest.mark.parametrize("sampling", ["verbatim", "circle"])
def test_mesh_starts_at_zero_and_is_deterministic(sampling):
    params = WeierstrassParams(A=0.86745, B=2.0)
    mesh1 = weierstrass_mesh(params, 10, sampling=sampling)
    mesh2 = weierstrass_mesh(params, 10, sampling=sampling)
    assert mesh1.values[0] == 0.0
    assert np.array_equal(mesh1.values, mesh2.values)


def test_mesh_verbatim_matches_pointwise_eval():
    params = WeierstrassParams(A=0.7, B=2.0)
    mesh = weierstrass_mesh(params, 6, sampling="verbatim")
    for n in (0, 1, 17, 63):
        assert mesh.values[n] == pytest.approx(
            weierstrass_eval(params, n / 64.0), abs=1e-13
        )


def test_mesh_circle_requires_integer_ratio():
    with pytest.raises(ValueError, match="integer"):
        weierstrass_mesh(WeierstrassParams(A=0.9, B=2.5), 8, sampling="circle")


def test_mesh_rejects_small_J_and_bad_sampling():
    params = WeierstrassParams(A=0.7, B=2.0)
    with pytest.raises(ValueError, match="at least 4"):
        weierstrass_mesh(params, 3)
    with pytest.raises(ValueError, match="unknown sampling"):
        weierstrass_mesh(params, 8, sampling="fourier")


def test_theoretical_regularity_values():
    assert theoretical_regularity(WeierstrassParams(A=0.5, B=2.0)) == 1.0
    assert theoretical_regularity(
        WeierstrassParams(A=0.86745, B=2.0)
    ) == pytest.approx(0.205147, abs=2e-5)
    assert theoretical_regularity(
        WeierstrassParams(A=0.56745, B=2.0)
    ) == pytest.approx(0.8174, abs=1e-4)
    assert theoretical_regularity(
        WeierstrassParams(A=0.5, B=4.0)
    ) == pytest.approx(0.5, abs=1e-15)
