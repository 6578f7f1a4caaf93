"""Semi-infinite quadrature: analytic Laplace transforms, Bose moments,
oscillatory kernel integrals against their closed forms, and the report
objects built on top of them.
"""

from fractions import Fraction

import mpmath
import pytest

from cmlab import (
    DomainError,
    GridSpec,
    IntegrationError,
    K_kernel,
    PrecisionContext,
    bose_derivative,
    bose_moment,
    cos_kernel_integral,
    f_kernel,
    laplace,
    remark3_inequalities,
    sin_kernel_integral,
    verify_degree_representation,
)

EULER_GAMMA = "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709"


# -- grids -------------------------------------------------------------


def test_gridspec_points_are_log_spaced():
    ctx = PrecisionContext(30)
    grid = GridSpec(1e-2, 1e2, 5)
    pts = grid.points(ctx)
    assert len(pts) == 5
    # endpoints reproduce the stored (float) bounds, not their decimal look
    assert abs(pts[0] - ctx.mpf(1e-2)) < ctx.mpf(10) ** (-25)
    assert abs(pts[-1] - 100) < ctx.mpf(10) ** (-22)
    ratios = [pts[k + 1] / pts[k] for k in range(4)]
    for r in ratios[1:]:
        assert abs(r - ratios[0]) < ctx.mpf(10) ** (-20)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"t_min": 0, "t_max": 1, "count": 5},
        {"t_min": -1, "t_max": 1, "count": 5},
        {"t_min": 2, "t_max": 1, "count": 5},
        {"t_min": 1, "t_max": 2, "count": 1},
        {"t_min": 1, "t_max": 2, "count": 5, "spacing": "linear"},
    ],
)
def test_gridspec_validation(kwargs):
    with pytest.raises(DomainError):
        GridSpec(**kwargs)


# -- Laplace transforms ------------------------------------------------


def test_laplace_constant_kernel():
    ctx = PrecisionContext(40)
    tol = ctx.mpf(10) ** (-30)
    res = laplace(ctx, lambda v: ctx.mpf(1), 2, tol, kernel_bound=1)
    assert abs(res.value - ctx.mpf(1) / 2) < tol
    assert res.est_error < tol
    assert res.evaluations > 0


def test_laplace_linear_kernel_growth_path():
    # no kernel_bound: forces the sampled growth-degree tail estimate
    ctx = PrecisionContext(40)
    tol = ctx.mpf(10) ** (-30)
    t = ctx.mpf("1.5")
    res = laplace(ctx, lambda v: v, t, tol)
    assert abs(res.value - 1 / t**2) < tol


def test_laplace_quartic_kernel():
    ctx = PrecisionContext(40)
    tol = ctx.mpf(10) ** (-30)
    res = laplace(ctx, lambda v: v**4, 3, tol)
    exact = ctx.mpf(24) / 243
    assert abs(res.value - exact) < tol


def test_laplace_exponential_kernel():
    ctx = PrecisionContext(40)
    tol = ctx.mpf(10) ** (-30)
    res = laplace(ctx, lambda v: ctx.exp(-v), 1, tol, kernel_bound=1)
    assert abs(res.value - ctx.mpf(1) / 2) < tol


def test_laplace_of_f0_gives_half_minus_gamma():
    # int_0^inf f_0(v) e^{-v} dv = 1/2 - gamma
    ctx = PrecisionContext(50)
    tol = ctx.mpf(10) ** (-40)
    res = laplace(ctx, lambda v: f_kernel(ctx, 0, v), 1, tol, kernel_bound=ctx.mpf(1) / 2)
    expected = ctx.mpf(1) / 2 - ctx.mpf(EULER_GAMMA)
    assert abs(res.value - expected) < ctx.mpf(10) ** (-39)


def test_laplace_domain_and_budget():
    ctx = PrecisionContext(40)
    tol = ctx.mpf(10) ** (-30)
    with pytest.raises(DomainError):
        laplace(ctx, lambda v: v, 0, tol)
    with pytest.raises(IntegrationError):
        laplace(ctx, lambda v: ctx.mpf(1), 1, tol, budget=50, kernel_bound=1)


# -- Bose moments -------------------------------------------------------


@pytest.mark.parametrize(
    "s,exact",
    [
        (1, Fraction(1, 24)),
        (3, Fraction(1, 240)),
        (5, Fraction(1, 504)),
    ],
)
def test_bose_moment_odd_integers(s, exact):
    ctx = PrecisionContext(40)
    tol = ctx.mpf(10) ** (-32)
    res = bose_moment(ctx, s, tol)
    assert abs(res.value - ctx.mpf(exact)) < tol
    assert res.est_error < tol


@pytest.mark.parametrize("s", ["2", "2.5", "0.5"])
def test_bose_moment_general_s_vs_zeta(s):
    # int w^s/(e^{2 pi w}-1) dw = Gamma(s+1) zeta(s+1) / (2 pi)^{s+1}
    digits = 40
    ctx = PrecisionContext(digits)
    tol = ctx.mpf(10) ** (-30)
    res = bose_moment(ctx, s, tol)
    with mpmath.workdps(digits + 15):
        sv = mpmath.mpf(s)
        oracle = mpmath.gamma(sv + 1) * mpmath.zeta(sv + 1) / (2 * mpmath.pi) ** (sv + 1)
    assert abs(res.value - ctx.mpf(oracle)) < 2 * tol


def test_bose_moment_domain():
    ctx = PrecisionContext(30)
    with pytest.raises(DomainError):
        bose_moment(ctx, 0, ctx.mpf(10) ** (-20))
    with pytest.raises(DomainError):
        bose_moment(ctx, -2, ctx.mpf(10) ** (-20))


# -- oscillatory kernel integrals ---------------------------------------


def test_cos_kernel_integral_vanishes_at_zero():
    ctx = PrecisionContext(35)
    res = cos_kernel_integral(ctx, 1, 0, ctx.mpf(10) ** (-25))
    assert abs(res.value) < ctx.mpf(10) ** (-25)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("v", ["0.5", "2", "10"])
def test_cos_kernel_integral_matches_K(n, v):
    # int w^{2n-1} (1 - cos(wv))/(e^{2 pi w}-1) dw = (-1)^{n-1} K_{2n-1}(v)/2
    ctx = PrecisionContext(35)
    tol = ctx.mpf(10) ** (-25)
    res = cos_kernel_integral(ctx, n, v, tol)
    sign = 1 if n % 2 == 1 else -1
    expected = sign * K_kernel(ctx, 2 * n - 1, v) / 2
    assert abs(res.value - expected) < ctx.mpf(10) ** (-20)


def test_cos_kernel_integral_domain():
    ctx = PrecisionContext(30)
    tol = ctx.mpf(10) ** (-20)
    with pytest.raises(DomainError):
        cos_kernel_integral(ctx, 0, 1, tol)
    with pytest.raises(DomainError):
        cos_kernel_integral(ctx, 1, -1, tol)


def sin_moment_oracle(ctx, p, s):
    """(-1)^{p/2} [pi (2 pi)^p B^{(p)}(2 pi s) - p!/(2 s^{p+1})] where B is
    the Bose factor 1/(e^v - 1); independent of the quadrature path."""
    s = ctx.mpf(s)
    sign = -1 if (p // 2) % 2 == 1 else 1
    two_pi = 2 * ctx.pi
    fact = 1
    for d in range(2, p + 1):
        fact *= d
    inner = ctx.pi * two_pi**p * bose_derivative(ctx, p, two_pi * s)
    return sign * (inner - ctx.mpf(fact) / (2 * s ** (p + 1)))


@pytest.mark.parametrize("p,s", [(2, "0.5"), (2, "1"), (2, "5"), (4, "1"), (4, "5")])
def test_sin_kernel_integral_matches_closed_form(p, s):
    ctx = PrecisionContext(40)
    tol = ctx.mpf(10) ** (-30)
    res = sin_kernel_integral(ctx, p, s, tol)
    assert abs(res.value - sin_moment_oracle(ctx, p, s)) < ctx.mpf(10) ** (-25)


def test_sin_kernel_integral_signs():
    # p=2 moments stay positive; the p=4 moment is already negative at s=5
    ctx = PrecisionContext(35)
    tol = ctx.mpf(10) ** (-22)
    assert sin_kernel_integral(ctx, 2, 5, tol).value > 0
    neg = sin_kernel_integral(ctx, 4, 5, tol).value
    assert neg < 0
    assert abs(neg + ctx.mpf("0.00384")) < ctx.mpf("2e-4")


def test_sin_kernel_integral_domain():
    ctx = PrecisionContext(30)
    tol = ctx.mpf(10) ** (-20)
    for p, s in ((3, 1), (0, 1), (2, 0), (2, -1)):
        with pytest.raises(DomainError):
            sin_kernel_integral(ctx, p, s, tol)


# -- assembled checks ----------------------------------------------------


def test_verify_degree_representation_fast_case():
    ctx = PrecisionContext(25)
    dev = verify_degree_representation(ctx, 1, 10, ctx.mpf(10) ** (-15))
    assert dev < ctx.mpf(10) ** (-15)


def test_verify_degree_representation_domain():
    ctx = PrecisionContext(25)
    tol = ctx.mpf(10) ** (-15)
    with pytest.raises(DomainError):
        verify_degree_representation(ctx, 0, 1, tol)
    with pytest.raises(DomainError):
        verify_degree_representation(ctx, 1, 0, tol)


@pytest.mark.parametrize("n,exact", [(1, Fraction(1, 24)), (2, Fraction(1, 240))])
def test_remark3_report(n, exact):
    ctx = PrecisionContext(30)
    report = remark3_inequalities(ctx, n, GridSpec(1e-2, 1e2, 40))
    assert report.bound_exact == exact
    assert report.all_hold
    assert not report.violations
    assert len(report.max_lhs) == 3
    for margin in report.min_margin:
        assert margin > 0
    for lhs in report.max_lhs:
        assert lhs < report.bound


def test_remark3_domain():
    ctx = PrecisionContext(30)
    with pytest.raises(DomainError):
        remark3_inequalities(ctx, 0, GridSpec(1e-2, 1e2, 10))
