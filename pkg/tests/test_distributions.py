import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from locfit.distributions import (
    FAMILIES,
    FAMILY_NAMES,
    Interval,
    beta_family,
    compose_cdf,
    fix_params,
    get_family,
    sample_stats,
    shift_by,
    truncate_at,
    uniform01_family,
)
from locfit.errors import ContractError, DegenerateTruncationError, DomainError

Q_GRID = (0.001, 0.01, 0.1, 0.5, 0.9, 0.99, 0.999)


def test_registry_names_exact():
    assert FAMILY_NAMES == (
        "weibull",
        "gamma",
        "ggamma",
        "eweibull",
        "normal",
        "tnormal",
        "lnormal",
        "kwcwg",
        "ollgg",
    )


def test_get_family_unknown_lists_names():
    with pytest.raises(DomainError) as err:
        get_family("zeta")
    for name in FAMILY_NAMES:
        assert name in str(err.value)


# --- log_pdf -----------------------------------------------------------------


def test_gamma_logpdf_hand_value():
    # f(x) = e^(-x/theta)/theta at alpha=1, so log f(1) = -1/2 - ln 2
    g = get_family("gamma")
    assert g.log_pdf((1.0, 2.0), 1.0) == pytest.approx(-0.5 - math.log(2.0), abs=1e-12)


def test_weibull_outside_support():
    w = get_family("weibull")
    assert w.log_pdf((1.0, 1.0), -1.0) == -math.inf


def test_ollgg_reduces_to_ggamma_at_unit_lambda():
    og, gg = get_family("ollgg"), get_family("ggamma")
    assert og.log_pdf((1.0, 2.0, 3.0, 1.0), 0.7) == pytest.approx(
        gg.log_pdf((1.0, 2.0, 3.0), 0.7), abs=1e-12
    )


def test_params_out_of_domain_raise():
    g = get_family("gamma")
    with pytest.raises(DomainError):
        g.log_pdf((-1.0, 2.0), 1.0)
    with pytest.raises(DomainError):
        g.cdf((1.0,), 1.0)
    kw = get_family("kwcwg")
    with pytest.raises(DomainError):
        kw.log_pdf((1.0, 1.0, 1.0, 1.0, 1.0), 1.0)  # alpha domain is open (0, 1)


# --- cdf / quantile ----------------------------------------------------------


def test_cdf_hand_values():
    w = get_family("weibull")
    assert w.cdf((1.0, 1.0), 0.0) == 0.0
    ln = get_family("lnormal")
    assert ln.cdf((0.0, 1.0), 1.0) == pytest.approx(0.5, abs=1e-12)
    g = get_family("gamma")
    assert g.cdf((1.0, 1.0), math.log(2.0)) == pytest.approx(0.5, abs=1e-12)


def test_quantile_hand_values():
    ln = get_family("lnormal")
    assert ln.quantile((0.0, 1.0), 0.5) == pytest.approx(1.0, abs=1e-12)
    g = get_family("gamma")
    assert g.quantile((1.0, 1.0), 0.5) == pytest.approx(math.log(2.0), abs=1e-12)


def test_quantile_domain_errors():
    g = get_family("gamma")
    for bad in (0.0, 1.0, -0.2, 1.3):
        with pytest.raises(DomainError):
            g.quantile((1.0, 1.0), bad)


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_cdf_quantile_round_trip(name):
    fam = get_family(name)
    for params in fam.default_grid:
        xs = fam.quantile(params, np.array(Q_GRID))
        back = fam.cdf(params, xs)
        assert np.max(np.abs(back - np.array(Q_GRID))) < 1e-9


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_cdf_monotone_on_grid(name):
    fam = get_family(name)
    params = fam.default_grid[len(fam.default_grid) // 2]
    lo = fam.quantile(params, 1e-6)
    hi = fam.quantile(params, 1.0 - 1e-6)
    xs = np.linspace(lo, hi, 1000)
    vals = fam.cdf(params, xs)
    assert np.all(np.diff(vals) >= -1e-12)
    assert np.all((vals >= 0.0) & (vals <= 1.0))


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_pdf_matches_cdf_derivative(name):
    fam = get_family(name)
    params = fam.default_grid[0]
    for q in (0.2, 0.5, 0.8):
        x = float(fam.quantile(params, q))
        h = 1e-6 * max(1.0, abs(x))
        fd = (fam.cdf(params, x + h) - fam.cdf(params, x - h)) / (2.0 * h)
        pdf = math.exp(fam.log_pdf(params, x))
        assert fd == pytest.approx(pdf, rel=1e-4)


# --- draw --------------------------------------------------------------------


def test_draw_deterministic_and_in_support():
    w = get_family("weibull")
    a = w.draw((1.0, 1.0), 100, seed=11)
    b = w.draw((1.0, 1.0), 100, seed=11)
    assert np.array_equal(a, b)
    assert np.all(a > 0.0)
    assert w.draw((1.0, 1.0), 1, seed=0).shape == (1,)


def test_draw_empirical_cdf_within_dkw_band():
    # DKW band at nu = 0.01: sqrt(-ln(0.005) / (2 n))
    n = 10_000
    bound = math.sqrt(-math.log(0.005) / (2.0 * n))
    w = get_family("weibull")
    xs = np.sort(w.draw((1.0, 1.0), n, seed=101))
    ecdf = np.arange(1, n + 1) / n
    true = w.cdf((1.0, 1.0), xs)
    sup = max(np.max(np.abs(ecdf - true)), np.max(np.abs(ecdf - 1.0 / n - true)))
    assert sup < bound


def test_draw_requires_positive_n():
    with pytest.raises(DomainError):
        get_family("gamma").draw((1.0, 1.0), 0, seed=1)


# --- exact sub-model reductions ----------------------------------------------


def _reduction_points():
    return np.linspace(0.05, 6.0, 100)


def test_eweibull_reduces_to_weibull():
    ew, w = get_family("eweibull"), get_family("weibull")
    xs = _reduction_points()
    diff = ew.log_pdf((1.4, 1.0, 0.8), xs) - w.log_pdf((0.8, 1.4), xs)
    assert np.max(np.abs(diff)) < 1e-10


def test_ggamma_reduces_to_weibull():
    gg, w = get_family("ggamma"), get_family("weibull")
    xs = _reduction_points()
    diff = gg.log_pdf((0.8, 1.4, 1.0), xs) - w.log_pdf((0.8, 1.4), xs)
    assert np.max(np.abs(diff)) < 1e-10


def test_ollgg_reduces_to_ggamma():
    og, gg = get_family("ollgg"), get_family("ggamma")
    xs = _reduction_points()
    diff = og.log_pdf((1.2, 1.7, 2.5, 1.0), xs) - gg.log_pdf((1.2, 1.7, 2.5), xs)
    assert np.max(np.abs(diff)) < 1e-10


def test_kwcwg_limits_to_weibull():
    kw, w = get_family("kwcwg"), get_family("weibull")
    xs = _reduction_points()
    beta, gamma = 1.3, 0.9
    diff = kw.log_pdf((1.0 - 1e-8, beta, gamma, 1.0, 1.0), xs) - w.log_pdf(
        (1.0 / gamma, beta), xs
    )
    assert np.max(np.abs(diff)) < 1e-4


# --- compose_cdf --------------------------------------------------------------


def test_compose_with_uniform_is_identity():
    inner = get_family("gamma")
    composed = compose_cdf(uniform01_family(), inner)
    xs = np.linspace(0.01, 8.0, 50)
    p = (2.0, 1.5)
    assert np.allclose(composed.cdf(p, xs), inner.cdf(p, xs), atol=1e-14)
    assert np.allclose(composed.log_pdf(p, xs), inner.log_pdf(p, xs), atol=1e-12)
    assert composed.quantile(p, 0.3) == pytest.approx(inner.quantile(p, 0.3), rel=1e-12)


def test_compose_cdf_limits():
    composed = compose_cdf(beta_family(), get_family("gamma"))
    p = (0.2, 0.1, 10.0, 0.25)
    assert composed.cdf(p, -1e9) == 0.0
    assert composed.cdf(p, 0.0) == 0.0
    assert composed.cdf(p, 1e9) == pytest.approx(1.0, abs=1e-12)


def test_compose_beta_gamma_is_valid_cdf():
    # shape-only check of the beta-over-gamma composition
    composed = compose_cdf(beta_family(), get_family("gamma"))
    p = (0.2, 0.1, 10.0, 0.25)
    xs = np.linspace(0.0, 20.0, 500)
    vals = composed.cdf(p, xs)
    assert np.all(np.diff(vals) >= -1e-12)
    assert np.all((vals >= 0.0) & (vals <= 1.0))
    total, _ = quad(lambda t: math.exp(composed.log_pdf(p, t)), 0.0, 200.0, limit=300)
    assert total == pytest.approx(1.0, abs=1e-4)


def test_compose_rejects_non_unit_outer():
    with pytest.raises(ContractError):
        compose_cdf(get_family("gamma"), get_family("weibull"))


@settings(max_examples=15, deadline=None)
@given(
    outer_choice=st.booleans(),
    inner_name=st.sampled_from(("weibull", "gamma", "lnormal")),
    idx=st.integers(min_value=0, max_value=8),
)
def test_compose_satisfies_cdf_axioms(outer_choice, inner_name, idx):
    outer = beta_family() if outer_choice else uniform01_family()
    inner = get_family(inner_name)
    composed = compose_cdf(outer, inner)
    grid = composed.default_grid
    params = grid[idx % len(grid)]
    xs = np.linspace(0.0, 50.0, 300)
    vals = composed.cdf(params, xs)
    assert np.all(np.diff(vals) >= -1e-12)  # non-decreasing
    assert vals[0] >= 0.0 and vals[-1] <= 1.0
    assert composed.cdf(params, -1e12) == 0.0  # -inf limit
    assert composed.cdf(params, 1e12) == pytest.approx(1.0, abs=1e-6)  # +inf limit


# --- truncate_at ---------------------------------------------------------------


def test_truncate_at_zero_is_base_family():
    g = get_family("gamma")
    t = truncate_at(g, 0.0)
    xs = np.linspace(0.01, 10.0, 50)
    p = (2.0, 1.5)
    assert np.allclose(t.log_pdf(p, xs), g.log_pdf(p, xs), atol=1e-12)
    assert np.allclose(t.cdf(p, xs), g.cdf(p, xs), atol=1e-12)


def test_truncation_likelihood_identity():
    # shifting into the truncated density costs exactly -n ln(1 - F(c)) at any theta
    g = get_family("gamma")
    p = (2.0, 1.5)
    c = 1.2
    t = truncate_at(g, c)
    x = g.draw(p, 200, seed=3)
    x = x[x > c]
    y = x - c
    n = x.size
    base = float(np.sum(g.log_pdf(p, x)))
    trunc = float(np.sum(t.log_pdf(p, y)))
    offset = -n * math.log(1.0 - float(g.cdf(p, c)))
    assert trunc - base == pytest.approx(offset, abs=1e-9)


def test_truncated_density_zero_below_support():
    t = truncate_at(get_family("gamma"), 1.0)
    assert t.log_pdf((2.0, 1.5), -0.5) == -math.inf


def test_truncate_degenerate_cut():
    w = get_family("weibull")
    t = truncate_at(w, 1e9)  # cdf rounds to 1 at any unit-scale parameter
    with pytest.raises(DegenerateTruncationError):
        t.log_pdf((1.0, 1.0), 1.0)


def test_truncate_quantile_round_trip():
    t = truncate_at(get_family("gamma"), 0.8)
    p = (2.0, 1.5)
    for q in (0.1, 0.5, 0.9):
        assert t.cdf(p, t.quantile(p, q)) == pytest.approx(q, abs=1e-9)


def test_tnormal_equals_truncated_normal():
    tn = get_family("tnormal")
    constructed = truncate_at(get_family("normal"), 0.0)
    xs = np.linspace(0.05, 6.0, 80)
    p = (1.0, 1.5)
    assert np.allclose(tn.log_pdf(p, xs), constructed.log_pdf(p, xs), atol=1e-10)
    assert np.allclose(tn.cdf(p, xs), constructed.cdf(p, xs), atol=1e-10)


# --- shift_by ------------------------------------------------------------------


def test_shift_by_zero_is_base():
    g = get_family("gamma")
    s = shift_by(g, 0.0)
    xs = np.linspace(0.01, 10.0, 50)
    assert np.allclose(s.log_pdf((1.0, 2.0), xs), g.log_pdf((1.0, 2.0), xs), atol=1e-14)


def test_shift_by_translates_density_and_quantile():
    g = get_family("gamma")
    s = shift_by(g, 100.0)
    assert s.log_pdf((1.0, 2.0), 101.0) == pytest.approx(
        g.log_pdf((1.0, 2.0), 1.0), abs=1e-12
    )
    assert s.log_pdf((1.0, 2.0), 99.0) == -math.inf
    assert s.quantile((1.0, 2.0), 0.3) == pytest.approx(
        100.0 + g.quantile((1.0, 2.0), 0.3), abs=1e-9
    )
    assert s.support_lower == 100.0


# --- integral validity over the default grids ----------------------------------


@pytest.mark.parametrize("name", ("weibull", "normal", "kwcwg"))
def test_density_integrates_to_one_spot_checks(name):
    fam = get_family(name)
    params = fam.default_grid[0]
    lo = fam.support_lower
    mid = float(fam.quantile(params, 0.5))
    hi = float(fam.quantile(params, 1.0 - 1e-9))
    total = (
        quad(lambda t: math.exp(fam.log_pdf(params, t)), lo, mid, limit=300)[0]
        + quad(lambda t: math.exp(fam.log_pdf(params, t)), mid, hi, limit=300)[0]
    )
    assert total == pytest.approx(1.0, abs=1e-4)


# --- grids and stats -----------------------------------------------------------


def test_default_grid_entries_inside_domains():
    for name in FAMILY_NAMES:
        fam = get_family(name)
        for entry in fam.default_grid:
            assert len(entry) == fam.param_count
            for dom, v in zip(fam.param_domains, entry):
                assert dom.contains(v)


def test_grid_adapts_to_sample_scale():
    g = get_family("gamma")
    grid = g.make_grid([100.0, 110.0, 120.0, 130.0])
    scales = sorted({entry[1] for entry in grid})
    assert scales == [0.5 * 115.0, 115.0, 2.0 * 115.0]


def test_sample_stats_guards_degenerate_input():
    s = sample_stats([5.0, 5.0, 5.0])
    assert s.mean == 5.0
    assert s.std > 0.0
    s2 = sample_stats([-1.0, -2.0, -3.0])
    assert s2.scale > 0.0


def test_interval_contains():
    iv = Interval(0.0, 1.0)
    assert iv.contains(0.5)
    assert not iv.contains(0.0)
    assert not iv.contains(1.0)
    assert not iv.contains(float("nan"))
    closed = Interval(0.0, 1.0, lower_open=False, upper_open=False)
    assert closed.contains(0.0) and closed.contains(1.0)


def test_fix_params_freezes_and_projects_grid():
    g = get_family("gamma")
    exp = fix_params(g, {0: 1.0})
    assert exp.param_names == ("theta",)
    assert exp.log_pdf((2.0,), 1.0) == pytest.approx(g.log_pdf((1.0, 2.0), 1.0))
    assert all(len(e) == 1 for e in exp.default_grid)
    with pytest.raises(DomainError):
        fix_params(g, {0: -1.0})
    with pytest.raises(DomainError):
        fix_params(g, {7: 1.0})
