"""Remainders of the Stirling series for ln Gamma and their derivatives.

With c_k = B_{2k}/((2k)(2k-1)) and the elementary part
(t - 1/2) ln t - t + (1/2) ln(2 pi), define

    A_n(t) = ln Gamma(t) - elementary(t) - sum_{k=1}^n c_k t^{1-2k}
    R_n(t) = (-1)^n A_n(t)

Every R_n is completely monotonic on (0, inf).  The module exposes R_n,
the positive first-derivative remainder -R_n' (phi(t) is the n = 1 case),
the second derivative R_n'', arbitrary-order derivatives for the degree
machinery, the pointwise degree bound -t R_n''/R_n', and the power-scaled
limits of R_n' at both ends of the axis.

Large-t evaluation cancels catastrophically (the result is of size
t^{-(2n+j+1)} while the ingredients are of size ln t or larger), so every
evaluation runs under a precision boost proportional to (2n+j+2) log10 t.
Small t is benign for n >= 2, and for n <= 1 the order-zero values are
computed through the Gamma(t+3) rewriting, which keeps ln Gamma away from
its pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import bernoulli
from .errors import DomainError
from .gammakit import ln_gamma, polygamma
from .precision import PrecisionContext

__all__ = [
    "RemainderSpec",
    "remainder",
    "remainder_d1",
    "remainder_d2",
    "remainder_deriv",
    "ratio_bound",
    "TailLimitEntry",
    "TailLimits",
    "tail_limits",
]

_MAX_N = 30
_MAX_DERIV = 16


@dataclass(frozen=True)
class RemainderSpec:
    """A remainder selection: truncation order n and derivative 0, 1 or 2."""

    n: int
    deriv: int = 0

    def __post_init__(self):
        _check_n(self.n)
        if self.deriv not in (0, 1, 2):
            raise DomainError("RemainderSpec.deriv must be 0, 1 or 2, got %r" % (self.deriv,))

    def evaluate(self, ctx: PrecisionContext, t):
        if self.deriv == 0:
            return remainder(ctx, self.n, t)
        if self.deriv == 1:
            return remainder_d1(ctx, self.n, t)
        return remainder_d2(ctx, self.n, t)


def _check_n(n) -> int:
    if int(n) != n or n < 0 or n > _MAX_N:
        raise DomainError("truncation order n must be an integer in [0, %d], got %r" % (_MAX_N, n))
    return int(n)


def _check_t(ctx, t):
    t0 = ctx.mpf(t)
    if not (ctx.isfinite(t0) and t0 > 0):
        raise DomainError("remainder evaluation requires t > 0, got %s" % t0)
    return t0


def _boost(n: int, j: int, t) -> int:
    """Extra digits to absorb the large-t cancellation down to the
    t^-(2n+j+1) tail."""
    lt = math.log10(float(t)) if float(t) > 1 else 0.0
    return int(math.ceil((2 * n + j + 2) * lt)) + 15


# c_k = B_{2k}/((2k)(2k-1)), index k-1
_C_COEFF: list = []
# per derivative order j >= 2: B_{2k} (2k+1)(2k+2)...(2k+j-2), index k-1
_D_COEFF: dict = {}


def _c_coeff(k: int) -> Fraction:
    while len(_C_COEFF) < k:
        j = len(_C_COEFF) + 1
        _C_COEFF.append(bernoulli(2 * j) / ((2 * j) * (2 * j - 1)))
    return _C_COEFF[k - 1]


def _d_coeff(j: int, k: int) -> Fraction:
    lst = _D_COEFF.setdefault(j, [])
    while len(lst) < k:
        kk = len(lst) + 1
        mult = 1
        for i in range(1, j - 1):
            mult *= 2 * kk + i
        lst.append(bernoulli(2 * kk) * mult)
    return lst[k - 1]


def remainder(ctx: PrecisionContext, n, t):
    """R_n(t) = (-1)^n A_n(t); strictly positive on (0, inf)."""
    n = _check_n(n)
    t0 = _check_t(ctx, t)
    wctx = ctx.boosted(_boost(n, 0, t0))
    tw = wctx.mpf(t0)
    half = wctx.mpf(1) / 2
    log_two_pi = wctx.ln(2 * wctx.pi)
    if n <= 1 and t0 < 1:
        # pole-free rewriting: ln Gamma(t) = ln Gamma(t+3) - ln(t(t+1)(t+2))
        r0 = (
            ln_gamma(wctx, tw + 3).value
            - wctx.ln(tw + 2)
            - wctx.ln(tw + 1)
            - (tw + half) * wctx.ln(tw)
            + tw
            - log_two_pi / 2
        )
        val = r0 if n == 0 else 1 / (12 * tw) - r0
    else:
        acc = ln_gamma(wctx, tw).value - (tw - half) * wctx.ln(tw) + tw - log_two_pi / 2
        for k in range(1, n + 1):
            acc -= wctx.mpf(_c_coeff(k)) * tw ** (1 - 2 * k)
        val = acc if n % 2 == 0 else -acc
    return ctx.mpf(val)


def _a_deriv(ctx: PrecisionContext, n: int, j: int, t0):
    """A_n^(j)(t) for j >= 1, from polygamma plus exact power corrections."""
    wctx = ctx.boosted(_boost(n, j, t0))
    tw = wctx.mpf(t0)
    if j == 1:
        acc = polygamma(wctx, 0, tw).value - wctx.ln(tw) + 1 / (2 * tw)
        for k in range(1, n + 1):
            acc += wctx.mpf(Fraction(bernoulli(2 * k), 2 * k)) * tw ** (-2 * k)
    else:
        acc = polygamma(wctx, j - 1, tw).value
        corr = (
            wctx.mpf(math.factorial(j - 2)) * tw ** (-(j - 1))
            + wctx.mpf(math.factorial(j - 1)) / (2 * tw ** j)
        )
        for k in range(1, n + 1):
            corr += wctx.mpf(_d_coeff(j, k)) * tw ** (-(2 * k + j - 1))
        if (j - 1) % 2 == 0:
            acc += corr
        else:
            acc -= corr
    return ctx.mpf(acc)


def remainder_deriv(ctx: PrecisionContext, n, j: int, t):
    """R_n^(j)(t) for 0 <= j <= 16; the degree machinery's raw material."""
    n = _check_n(n)
    if int(j) != j or j < 0 or j > _MAX_DERIV:
        raise DomainError("derivative order j must be an integer in [0, %d], got %r" % (_MAX_DERIV, j))
    j = int(j)
    if j == 0:
        return remainder(ctx, n, t)
    t0 = _check_t(ctx, t)
    a = _a_deriv(ctx, n, j, t0)
    return a if n % 2 == 0 else -a


def remainder_d1(ctx: PrecisionContext, n, t):
    """-R_n'(t) = (-1)^{n+1} A_n'(t); positive (completely monotonic)."""
    n = _check_n(n)
    t0 = _check_t(ctx, t)
    a = _a_deriv(ctx, n, 1, t0)
    return -a if n % 2 == 0 else a


def remainder_d2(ctx: PrecisionContext, n, t):
    """R_n''(t) = (-1)^n A_n''(t); non-negative by complete monotonicity."""
    n = _check_n(n)
    t0 = _check_t(ctx, t)
    a = _a_deriv(ctx, n, 2, t0)
    return a if n % 2 == 0 else -a


def ratio_bound(ctx: PrecisionContext, n, t):
    """-t R_n''(t)/R_n'(t), the pointwise necessary upper bound for the
    degree of -R_n'; tends to 2n as t -> 0+ for n >= 1."""
    n = _check_n(n)
    t0 = _check_t(ctx, t)
    d1 = remainder_d1(ctx, n, t0)
    if not ctx.isfinite(d1) or d1 == 0:
        raise DomainError("ratio_bound: -R_%d'(%s) vanished or overflowed" % (n, t0))
    d2 = remainder_d2(ctx, n, t0)
    return t0 * d2 / d1


@dataclass
class TailLimitEntry:
    """One power-scaled limit check: value of t^power * R_n'(t) at ``t``
    against the exact limit ``target``."""

    power: int
    t: object
    value: object
    target: Fraction
    target_value: object

    @property
    def deviation(self):
        return abs(self.value - self.target_value)


@dataclass
class TailLimits:
    """The four scaled limits of R_n': three for t -> inf (powers 2n-1 and
    2n+1 give 0, power 2n+2 gives (-1)^{n+1} B_{2n+2}/(2n+2)) and one for
    t -> 0+ (power 2n gives (-1)^n B_{2n}/(2n))."""

    n: int
    entries: list

    @property
    def max_deviation(self):
        return max(e.deviation for e in self.entries)


def tail_limits(ctx: PrecisionContext, n) -> TailLimits:
    """Evaluate the four scaled tail expressions at t = 10^6 / 10^-6."""
    n = _check_n(n)
    if n < 1:
        raise DomainError("tail_limits requires n >= 1, got %d" % n)
    t_inf = ctx.mpf(10) ** 6
    t_zero = ctx.mpf(10) ** (-6)
    rp_inf = -remainder_d1(ctx, n, t_inf)
    rp_zero = -remainder_d1(ctx, n, t_zero)

    sign_inf = 1 if n % 2 == 1 else -1  # (-1)^{n+1}
    target3 = Fraction(sign_inf) * Fraction(bernoulli(2 * n + 2), 2 * n + 2)
    sign_zero = -sign_inf  # (-1)^n
    target4 = Fraction(sign_zero) * Fraction(bernoulli(2 * n), 2 * n)

    entries = []
    for power, target in ((2 * n - 1, Fraction(0)), (2 * n + 1, Fraction(0)), (2 * n + 2, target3)):
        value = t_inf ** power * rp_inf
        entries.append(TailLimitEntry(power, t_inf, value, target, ctx.mpf(target)))
    value = t_zero ** (2 * n) * rp_zero
    entries.append(TailLimitEntry(2 * n, t_zero, value, target4, ctx.mpf(target4)))
    return TailLimits(n, entries)
