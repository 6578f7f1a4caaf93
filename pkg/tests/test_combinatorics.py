"""Exact combinatorial ingredients, checked against independent recurrences."""

from fractions import Fraction

import pytest

from cmlab import DomainError, PrecisionContext, bernoulli, falling, stirling2, zeta_even


def akiyama_tanigawa(n):
    """Independent Bernoulli oracle (first-kind convention, B_1 = -1/2)."""
    row = [Fraction(1, m + 1) for m in range(n + 1)]
    for j in range(1, n + 1):
        for m in range(n + 1 - j):
            row[m] = (m + 1) * (row[m] - row[m + 1])
    # the algorithm produces B_n with B_1 = +1/2; flip to the convention used here
    return -row[0] if n == 1 else row[0]


def stirling_triangle(rows):
    """S(n, k) by the standard triangular recurrence."""
    tri = {(0, 0): 1}
    for n in range(1, rows + 1):
        for k in range(1, n + 1):
            tri[(n, k)] = k * tri.get((n - 1, k), 0) + tri.get((n - 1, k - 1), 0)
    return tri


@pytest.mark.parametrize("n", list(range(0, 42)))
def test_bernoulli_matches_akiyama_tanigawa(n):
    assert bernoulli(n) == akiyama_tanigawa(n)


def test_bernoulli_known_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert all(bernoulli(k) == 0 for k in (3, 5, 7, 9, 11))


def test_bernoulli_sign_alternation():
    # B_{2k} alternates in sign: (-1)^{k+1} B_{2k} > 0
    for k in range(1, 16):
        signed = bernoulli(2 * k) * (-1) ** (k + 1)
        assert signed > 0


def test_bernoulli_rejects_negative():
    with pytest.raises(DomainError):
        bernoulli(-1)


def test_stirling2_matches_triangle():
    tri = stirling_triangle(14)
    for n in range(1, 15):
        for k in range(1, n + 1):
            assert stirling2(n, k) == tri[(n, k)], (n, k)


def test_stirling2_known_row():
    assert [stirling2(5, k) for k in range(1, 6)] == [1, 15, 25, 10, 1]


@pytest.mark.parametrize("args", [(0, 1), (3, 0), (3, 4), (-1, 1)])
def test_stirling2_domain(args):
    with pytest.raises(DomainError):
        stirling2(*args)


def test_falling_integers():
    assert falling(5, 0) == 1
    assert falling(5, 3) == 60
    assert falling(5, 6) == 0  # passes through zero
    assert falling(-2, 3) == -24


def test_falling_preserves_kind():
    ctx = PrecisionContext(30)
    a = ctx.mpf("2.5")
    out = falling(a, 2)
    assert type(out) is type(a)
    assert abs(out - ctx.mpf("3.75")) == 0
    assert isinstance(falling(7, 2), int)
    exact = falling(Fraction(1, 2), 3)
    assert exact == Fraction(1, 2) * Fraction(-1, 2) * Fraction(-3, 2)


def test_falling_rejects_negative_count():
    with pytest.raises(DomainError):
        falling(3, -1)


def test_zeta_even_small_cases():
    # zeta(2) = pi^2/6, zeta(4) = pi^4/90, zeta(6) = pi^6/945
    assert zeta_even(1) == (Fraction(1, 6), 2)
    assert zeta_even(2) == (Fraction(1, 90), 4)
    assert zeta_even(3) == (Fraction(1, 945), 6)


@pytest.mark.parametrize("n", list(range(1, 9)))
def test_zeta_even_against_mpmath(n):
    import mpmath

    ctx = PrecisionContext(50)
    q, power = zeta_even(n)
    assert power == 2 * n
    value = ctx.mpf(q) * ctx.pi ** power
    with mpmath.workdps(60):
        oracle = ctx.mpf(mpmath.zeta(2 * n))
    assert abs(value - oracle) < ctx.mpf(10) ** (-45)


def test_zeta_even_rejects_nonpositive():
    with pytest.raises(DomainError):
        zeta_even(0)
