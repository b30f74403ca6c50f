import math

import numpy as np
import pytest
from scipy.integrate import quad

from locfit.errors import DomainError
from locfit.special import gamma_fn, inc_gamma_ratio, log1mexp


def test_gamma_factorial_values():
    assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-12)
    assert gamma_fn(1.0) == pytest.approx(1.0, rel=1e-12)
    for n in range(2, 12):
        assert gamma_fn(float(n)) == pytest.approx(math.factorial(n - 1), rel=1e-12)


def test_gamma_half_against_quadrature():
    # independent oracle: integrate t^(x-1) e^-t directly
    oracle, _ = quad(lambda t: t**-0.5 * math.exp(-t), 0.0, 60.0, limit=200)
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert gamma_fn(0.5) == pytest.approx(oracle, rel=1e-9)


def test_gamma_domain_error():
    with pytest.raises(DomainError):
        gamma_fn(0.0)
    with pytest.raises(DomainError):
        gamma_fn(-1.5)


def test_inc_gamma_ratio_exponential_identity():
    # gamma1(1, z) = 1 - e^-z, so gamma1(1, ln 2) = 1/2
    assert inc_gamma_ratio(1.0, math.log(2.0)) == pytest.approx(0.5, abs=1e-12)


def test_inc_gamma_ratio_limits():
    assert inc_gamma_ratio(3.0, 0.0) == 0.0
    assert inc_gamma_ratio(3.0, 1e6) == pytest.approx(1.0, abs=1e-12)


def test_inc_gamma_ratio_quadrature_oracle():
    k, z = 2.7, 1.9
    oracle, _ = quad(lambda t: t ** (k - 1.0) * math.exp(-t), 0.0, z, limit=200)
    assert inc_gamma_ratio(k, z) == pytest.approx(oracle / gamma_fn(k), abs=1e-12)


def test_inc_gamma_ratio_monotone_and_bounded():
    zs = np.linspace(0.0, 30.0, 400)
    vals = inc_gamma_ratio(2.5, zs)
    assert np.all(np.diff(vals) >= 0.0)
    assert np.all((vals >= 0.0) & (vals <= 1.0))


def test_inc_gamma_ratio_domain_errors():
    with pytest.raises(DomainError):
        inc_gamma_ratio(0.0, 1.0)
    with pytest.raises(DomainError):
        inc_gamma_ratio(1.0, -0.1)


def test_log1mexp_matches_naive_where_safe():
    ts = np.array([-50.0, -5.0, -1.0, -0.5, -1e-3, -1e-9])
    naive = np.log(1.0 - np.exp(ts))
    out = log1mexp(ts)
    safe = ts < -1e-6
    assert np.allclose(out[safe], naive[safe], rtol=1e-12)
    # tiny arguments: log(1 - e^t) ~ log(-t)
    assert log1mexp(-1e-9) == pytest.approx(math.log(1e-9), abs=1e-6)
