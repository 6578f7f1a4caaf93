"""Remainder family R_n and its first two derivatives: closed-form anchors,
the exact two-term envelope identity, sign structure, and tail limits.
"""

from fractions import Fraction

import mpmath
import pytest

from cmlab import (
    DomainError,
    PrecisionContext,
    RemainderSpec,
    bernoulli,
    ratio_bound,
    remainder,
    remainder_d1,
    remainder_d2,
    remainder_deriv,
    tail_limits,
)

EULER_GAMMA = "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709"


def test_r0_at_one_closed_form():
    # R_0(1) = 1 - ln(2 pi)/2
    ctx = PrecisionContext(50)
    expected = 1 - ctx.ln(2 * ctx.pi) / 2
    assert abs(remainder(ctx, 0, 1) - expected) < ctx.mpf(10) ** (-48)


def test_r0_at_half_closed_form():
    # R_0(1/2) = (1 - ln 2)/2, reached through the small-argument branch
    ctx = PrecisionContext(50)
    expected = (1 - ctx.ln(2)) / 2
    assert abs(remainder(ctx, 0, "0.5") - expected) < ctx.mpf(10) ** (-48)


def test_r1_at_half_complement():
    ctx = PrecisionContext(50)
    lhs = remainder(ctx, 1, "0.5") + remainder(ctx, 0, "0.5")
    assert abs(lhs - ctx.mpf(Fraction(1, 6))) < ctx.mpf(10) ** (-48)


def test_d1_at_one_closed_form():
    # -R_2'(1) = gamma - 23/40
    ctx = PrecisionContext(60)
    expected = ctx.mpf(EULER_GAMMA) - ctx.mpf(Fraction(23, 40))
    assert abs(remainder_d1(ctx, 2, 1) - expected) < ctx.mpf(10) ** (-55)


@pytest.mark.parametrize("n", [0, 1])
@pytest.mark.parametrize("t", ["0.1", "0.9"])
def test_small_argument_branch_matches_raw_definition(n, t):
    # the shifted-gamma reformulation must agree with the textbook formula,
    # which is well conditioned at these points and safe to evaluate raw
    digits = 50
    ctx = PrecisionContext(digits)
    with mpmath.workdps(digits + 25):
        tv = mpmath.mpf(t)
        a0 = (
            mpmath.loggamma(tv)
            - (tv - mpmath.mpf(1) / 2) * mpmath.ln(tv)
            + tv
            - mpmath.ln(2 * mpmath.pi) / 2
        )
        raw = a0 if n == 0 else -(a0 - 1 / (12 * tv))
    assert abs(remainder(ctx, n, t) - ctx.mpf(raw)) < ctx.mpf(10) ** (-45)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("t", ["0.5", "1", "3", "10"])
def test_envelope_identity(n, t):
    # R_n + R_{n+1} = |B_{2n+2}| / ((2n+2)(2n+1)) * t^{-(2n+1)}, exactly
    ctx = PrecisionContext(40)
    tv = ctx.mpf(t)
    env = ctx.mpf(abs(bernoulli(2 * n + 2)) / ((2 * n + 2) * (2 * n + 1)))
    rhs = env * tv ** (-(2 * n + 1))
    lhs = remainder(ctx, n, tv) + remainder(ctx, n + 1, tv)
    assert abs(lhs - rhs) < ctx.mpf(10) ** (-32) * rhs


def test_leading_blowup_near_zero():
    # t R_1(t) -> 1/12 and R_0(t) ~ -(1/2) ln t - ln(2 pi)/2
    ctx = PrecisionContext(40)
    t = ctx.mpf(10) ** (-8)
    assert abs(t * remainder(ctx, 1, t) - ctx.mpf(Fraction(1, 12))) < ctx.mpf(10) ** (-6)
    t = ctx.mpf(10) ** (-10)
    approx = -ctx.ln(t) / 2 - ctx.ln(2 * ctx.pi) / 2
    assert abs(remainder(ctx, 0, t) - approx) < ctx.mpf(10) ** (-8)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
@pytest.mark.parametrize("t", ["0.7", "2", "15"])
def test_derivative_sign_alternation(n, t):
    # complete monotonicity pattern: (-1)^j R_n^{(j)} > 0
    ctx = PrecisionContext(35)
    for j in range(0, 7):
        value = remainder_deriv(ctx, n, j, t)
        signed = value if j % 2 == 0 else -value
        assert signed > 0, (n, j, t)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_d1_d2_consistency(n):
    ctx = PrecisionContext(40)
    t = ctx.mpf(2)
    assert abs(remainder_d1(ctx, n, t) + remainder_deriv(ctx, n, 1, t)) < ctx.mpf(10) ** (-45)
    assert abs(remainder_d2(ctx, n, t) - remainder_deriv(ctx, n, 2, t)) < ctx.mpf(10) ** (-45)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("j", [0, 1, 2])
def test_derivative_ladder_finite_difference(n, j):
    ctx = PrecisionContext(60)
    t0 = ctx.mpf("1.5")
    h = ctx.mpf(10) ** (-10)

    def g(x):
        return remainder_deriv(ctx, n, j, x)

    fd = (-g(t0 + 2 * h) + 8 * g(t0 + h) - 8 * g(t0 - h) + g(t0 - 2 * h)) / (12 * h)
    assert abs(remainder_deriv(ctx, n, j + 1, t0) - fd) < ctx.mpf(10) ** (-35)


def test_ratio_bound_limits():
    ctx = PrecisionContext(40)
    # t d2/d1 -> 2n as t -> 0+ and -> 2n+2 as t -> inf
    r = ratio_bound(ctx, 1, ctx.mpf(10) ** (-4))
    assert 0 < r - 2 < ctx.mpf(10) ** (-3)
    r = ratio_bound(ctx, 3, ctx.mpf(10) ** (-4))
    assert 0 < r - 6 < ctx.mpf(10) ** (-6)
    r = ratio_bound(ctx, 1, ctx.mpf(10) ** 6)
    assert abs(r - 4) < ctx.mpf(10) ** (-3)


def test_ratio_bound_domain():
    ctx = PrecisionContext(30)
    with pytest.raises(DomainError):
        ratio_bound(ctx, -1, 1)
    with pytest.raises(DomainError):
        ratio_bound(ctx, 1, 0)


def test_tail_limits_structure():
    ctx = PrecisionContext(40)
    report = tail_limits(ctx, 1)
    assert report.n == 1
    assert [e.power for e in report.entries] == [1, 3, 4, 2]
    assert report.entries[0].target == 0
    assert report.entries[1].target == 0
    assert report.entries[2].target == Fraction(-1, 120)
    assert report.entries[3].target == Fraction(-1, 12)
    assert report.max_deviation < ctx.mpf(10) ** (-5)
    for entry in report.entries:
        assert entry.deviation == abs(entry.value - entry.target_value)


def test_tail_limits_domain():
    ctx = PrecisionContext(30)
    with pytest.raises(DomainError):
        tail_limits(ctx, 0)


def test_large_argument_stability():
    # R_3(1e8) ~ 5.9e-60: the internal boost must keep the cancellation
    # of ~66 leading digits from contaminating the result
    ctx = PrecisionContext(40)
    t = ctx.mpf(10) ** 8
    env = ctx.mpf(abs(bernoulli(8)) / (8 * 7)) * t ** (-7)
    value = remainder(ctx, 3, t)
    assert value > 0
    assert abs(value / env - 1) < ctx.mpf(10) ** (-10)


def test_remainder_spec_dispatch():
    ctx = PrecisionContext(35)
    t = ctx.mpf(2)
    assert RemainderSpec(1, 0).evaluate(ctx, t) == remainder(ctx, 1, t)
    assert RemainderSpec(1, 1).evaluate(ctx, t) == remainder_d1(ctx, 1, t)
    assert RemainderSpec(1, 2).evaluate(ctx, t) == remainder_d2(ctx, 1, t)


def test_remainder_spec_validation():
    with pytest.raises(DomainError):
        RemainderSpec(-1, 0)
    with pytest.raises(DomainError):
        RemainderSpec(1, 3)
    with pytest.raises(DomainError):
        RemainderSpec(31, 0)


def test_remainder_domain():
    ctx = PrecisionContext(30)
    with pytest.raises(DomainError):
        remainder(ctx, 0, 0)
    with pytest.raises(DomainError):
        remainder(ctx, 0, -2)
    with pytest.raises(DomainError):
        remainder_deriv(ctx, 1, 17, 1)
