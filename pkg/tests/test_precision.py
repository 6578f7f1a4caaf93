"""Context arithmetic: conversions, checked functions, domain guards."""

from fractions import Fraction

import pytest

from cmlab import DomainError, PrecisionContext, elem

# coth(1) to 80 digits, from an independent high-precision evaluation
COTH_1 = (
    "1.31303528549933130363616124693084783291201394124045265554315296756708427046187"
    "4383"
)


def test_default_digits():
    ctx = PrecisionContext()
    assert ctx.digits == 50
    assert ctx.mpf(1) / 3 != 0


@pytest.mark.parametrize("digits", [14, 10, 0, -3])
def test_minimum_digits_enforced(digits):
    with pytest.raises(DomainError):
        PrecisionContext(digits)


def test_mpf_conversions():
    ctx = PrecisionContext(30)
    assert ctx.mpf(7) == 7
    assert ctx.mpf("0.5") == ctx.mpf(1) / 2
    assert ctx.mpf(0.25) == ctx.mpf(1) / 4
    # Fractions convert through exact integer parts, not through float;
    # 1 + 1e-25 survives at 30 digits but would vanish in a double
    third = ctx.mpf(Fraction(1, 3))
    assert abs(third - ctx.mpf(1) / 3) == 0
    big = ctx.mpf(Fraction(10**25 + 1, 10**25))
    assert big > 1


def test_cross_context_values_survive():
    lo = PrecisionContext(20)
    hi = PrecisionContext(60)
    x = hi.ln(2)
    again = lo.mpf(x)
    assert abs(again - x) < lo.mpf(10) ** (-18)


def test_boosted_adds_digits():
    ctx = PrecisionContext(25)
    assert ctx.boosted(15).digits == 40
    assert ctx.boosted(-5).digits == 25
    # the original context is untouched
    assert ctx.digits == 25


def test_eps_matches_digits():
    ctx = PrecisionContext(33)
    assert ctx.eps == ctx.mpf(10) ** (-33)


def test_coth_against_frozen_value():
    ctx = PrecisionContext(60)
    dev = abs(ctx.coth(1) - ctx.mpf(COTH_1))
    assert dev < ctx.mpf(10) ** (-58)
    # odd reflection
    assert ctx.coth(-1) == -ctx.coth(1)


def test_coth_large_argument_stays_finite():
    ctx = PrecisionContext(30)
    assert ctx.coth(800) == 1  # tail below resolution, no overflow


@pytest.mark.parametrize(
    "which,args",
    [
        ("ln", (0,)),
        ("ln", (-2,)),
        ("coth", (0,)),
        ("pow", (-1, "0.5")),
        ("pow", (0, 2)),
    ],
)
def test_domain_violations(which, args):
    ctx = PrecisionContext(20)
    with pytest.raises(DomainError):
        elem(ctx, which, *args)


def test_elem_dispatch_and_arity():
    ctx = PrecisionContext(30)
    assert elem(ctx, "exp", 0) == 1
    assert abs(elem(ctx, "sin", ctx.pi)) < ctx.mpf(10) ** (-28)
    assert abs(elem(ctx, "cos", 0) - 1) == 0
    assert abs(elem(ctx, "pow", 2, 10) - 1024) == 0
    with pytest.raises(DomainError):
        elem(ctx, "nosuch", 1)
    with pytest.raises(DomainError):
        elem(ctx, "exp", 1, 2)
    with pytest.raises(DomainError):
        elem(ctx, "pow", 2)


def test_expm1_accurate_near_zero():
    ctx = PrecisionContext(40)
    x = ctx.mpf(10) ** (-30)
    rel = abs(ctx.expm1(x) - x) / x
    assert rel < ctx.mpf(10) ** (-25)
