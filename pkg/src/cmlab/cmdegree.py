"""Numerical complete-monotonicity checking and degree bracketing.

For a function h with known limit L at infinity, the shifted function
h - L is tested for complete monotonicity after multiplication by t^alpha:
g(t) = t^alpha (h(t) - L) and the check requires (-1)^j g^(j)(t) >= -tol
for every derivative order j <= J on every point of a grid.  The degree of
h - L is the largest alpha for which g stays completely monotonic, so a
bisection on alpha between a passing and a failing endpoint brackets it.

The check is one-sided by construction: a failure is a certificate (an
explicit (j, t) witness up to rounding), while a pass only says no
violation was visible at this grid, derivative order and tolerance.
Degree brackets inherit that asymmetry; ``passed_alpha`` can overshoot
the true degree when the grid misses the violating region, which is why
the grid reaches far into both tails by default.

g^(j) is assembled by the Leibniz rule from exact derivatives of t^alpha
and the family's own derivatives, so no numerical differentiation happens
anywhere; families supply analytic derivatives to order ``max_order``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import BracketError, DomainError
from .gammakit import polygamma
from .precision import PrecisionContext
from .quadrature import GridSpec
from .remainders import remainder_deriv

__all__ = [
    "DEFAULT_GRID",
    "FunctionFamily",
    "CMCheckResult",
    "DegreeBracket",
    "builtin_families",
    "cm_check",
    "first_deriv_bound",
    "degree_estimate",
    "conjecture_probe",
]

logger = logging.getLogger(__name__)

#: log-spaced default grid; the low end is deep enough that the power-law
#: behaviour of every built-in family near 0 is visible to the check
DEFAULT_GRID = GridSpec(1e-10, 1e3, 400)

#: grid used by :func:`conjecture_probe`
PROBE_GRID = GridSpec(1e-8, 1e3, 300)

_BISECT_CAP = 200


@dataclass(frozen=True)
class FunctionFamily:
    """A function together with its analytic derivatives.

    ``eval_deriv(ctx, j, t)`` returns the j-th derivative at t (j = 0 is
    the function itself, not shifted); ``limit_at_infinity`` is subtracted
    from the order-0 values before monotonicity is tested.
    """

    name: str
    eval_deriv: Callable
    limit_at_infinity: object = 0
    max_order: int = 12


@dataclass
class CMCheckResult:
    """Outcome of one t^alpha-weighted monotonicity sweep.

    On failure, ``order``/``t``/``value`` hold the first witness in scan
    order (derivative order outer, grid ascending inner).
    """

    passed: bool
    order: Optional[int] = None
    t: object = None
    value: object = None

    def __bool__(self):
        return self.passed


@dataclass
class DegreeBracket:
    """Bisection output: alpha still passing, alpha already failing."""

    passed_alpha: object
    failed_alpha: object
    order_used: int
    grid: GridSpec
    first_deriv_bound: object

    @property
    def width(self):
        return self.failed_alpha - self.passed_alpha

    def __contains__(self, x):
        return self.passed_alpha <= x <= self.failed_alpha


def _h_value(ctx, family, cache, limit, order, idx, pts):
    key = (order, idx)
    val = cache.get(key)
    if val is None:
        val = ctx.mpf(family.eval_deriv(ctx, order, pts[idx]))
        if order == 0:
            val = val - limit
        cache[key] = val
    return val


def cm_check(
    ctx: PrecisionContext,
    family: FunctionFamily,
    alpha,
    order: int = 8,
    grid: Optional[GridSpec] = None,
    tol=None,
    _cache=None,
) -> CMCheckResult:
    """Test (-1)^j [t^alpha (h - L)]^(j) >= -tol for all j <= order on the grid.

    ``_cache`` may be a dict shared between calls with the same context,
    family and grid; it memoizes the family's derivative values, which
    dominate the cost when scanning many alphas.
    """
    if not isinstance(family, FunctionFamily):
        raise DomainError("cm_check needs a FunctionFamily, got %r" % (family,))
    if int(order) != order or order < 0:
        raise DomainError("derivative order must be a nonnegative integer, got %r" % (order,))
    order = int(order)
    if order > family.max_order:
        raise DomainError(
            "family %s supplies derivatives up to order %d, requested %d"
            % (family.name, family.max_order, order)
        )
    alpha0 = ctx.mpf(alpha)
    if not (ctx.isfinite(alpha0) and alpha0 >= 0):
        raise DomainError("alpha must be finite and >= 0, got %s" % alpha0)
    if grid is None:
        grid = DEFAULT_GRID
    tol0 = ctx.mpf(10) ** (-(ctx.digits // 2)) if tol is None else ctx.mpf(tol)
    pts = grid.points(ctx)
    cache = _cache if _cache is not None else {}
    limit = ctx.mpf(family.limit_at_infinity)

    # falling factorials of alpha: d^i/dt^i t^alpha = fall[i] t^(alpha-i)
    fall = [ctx.mpf(1)]
    for i in range(1, order + 1):
        fall.append(fall[-1] * (alpha0 - (i - 1)))
    tpow = [None] * len(pts)

    for j in range(order + 1):
        negate = j % 2 == 1
        for idx, t in enumerate(pts):
            if tpow[idx] is None:
                tpow[idx] = ctx.power(t, alpha0)
            cur = tpow[idx]
            acc = ctx.mpf(0)
            for i in range(j + 1):
                acc += math.comb(j, i) * fall[i] * cur * _h_value(
                    ctx, family, cache, limit, j - i, idx, pts
                )
                cur = cur / t
            signed = -acc if negate else acc
            if not signed >= -tol0:
                return CMCheckResult(False, j, +t, signed)
    return CMCheckResult(True)


def first_deriv_bound(
    ctx: PrecisionContext,
    family: FunctionFamily,
    grid: Optional[GridSpec] = None,
    _cache=None,
):
    """inf over the grid of -t h'(t) / (h(t) - L).

    Any alpha above this value fails the j = 1 check at the minimizing
    grid point, so it is a grid-certified upper bound for ``passed_alpha``
    (up to tolerance).  Points where the shifted function is not positive
    are skipped.
    """
    if grid is None:
        grid = DEFAULT_GRID
    pts = grid.points(ctx)
    cache = _cache if _cache is not None else {}
    limit = ctx.mpf(family.limit_at_infinity)
    best = None
    for idx, t in enumerate(pts):
        h0 = _h_value(ctx, family, cache, limit, 0, idx, pts)
        if not h0 > 0:
            continue
        h1 = _h_value(ctx, family, cache, limit, 1, idx, pts)
        val = -t * h1 / h0
        if best is None or val < best:
            best = val
    if best is None:
        raise DomainError(
            "first_deriv_bound: %s - limit is nonpositive on the whole grid" % family.name
        )
    return best


def degree_estimate(
    ctx: PrecisionContext,
    family: FunctionFamily,
    alpha_lo,
    alpha_hi,
    resolution=0.05,
    order: int = 8,
    grid: Optional[GridSpec] = None,
    tol=None,
) -> DegreeBracket:
    """Bisect alpha between a passing and a failing endpoint.

    ``alpha_lo`` must pass and ``alpha_hi`` must fail, otherwise a
    :class:`BracketError` reports the offending endpoint (with the failure
    witness where there is one).  The returned bracket has width at most
    ``resolution``.
    """
    lo = ctx.mpf(alpha_lo)
    hi = ctx.mpf(alpha_hi)
    if not lo < hi:
        raise DomainError("need alpha_lo < alpha_hi, got %s >= %s" % (lo, hi))
    res = ctx.mpf(resolution)
    if not res > 0:
        raise DomainError("resolution must be positive, got %s" % res)
    if grid is None:
        grid = DEFAULT_GRID
    cache = {}

    r_lo = cm_check(ctx, family, lo, order=order, grid=grid, tol=tol, _cache=cache)
    if not r_lo.passed:
        raise BracketError(
            "alpha_lo=%s already fails for %s: derivative %s at t=%s gave %s"
            % (lo, family.name, r_lo.order, r_lo.t, r_lo.value)
        )
    r_hi = cm_check(ctx, family, hi, order=order, grid=grid, tol=tol, _cache=cache)
    if r_hi.passed:
        raise BracketError(
            "alpha_hi=%s still passes for %s; the bracket must straddle the degree"
            % (hi, family.name)
        )

    steps = 0
    while hi - lo > res and steps < _BISECT_CAP:
        mid = (lo + hi) / 2
        if cm_check(ctx, family, mid, order=order, grid=grid, tol=tol, _cache=cache).passed:
            lo = mid
        else:
            hi = mid
        steps += 1

    bound = first_deriv_bound(ctx, family, grid=grid, _cache=cache)
    return DegreeBracket(lo, hi, order, grid, bound)


# -- built-in families ------------------------------------------------


def _lnminuspsi_deriv(ctx, j, t):
    if j == 0:
        return ctx.ln(t) - polygamma(ctx, 0, t).value
    lead = ctx.mpf(math.factorial(j - 1)) * ctx.mpf(t) ** (-j)
    if (j - 1) % 2 == 1:
        lead = -lead
    return lead - polygamma(ctx, j, t).value


def _r_family(n):
    def eval_deriv(ctx, j, t, _n=n):
        return remainder_deriv(ctx, _n, j, t)

    return eval_deriv


def _neg_rprime_family(n):
    def eval_deriv(ctx, j, t, _n=n):
        return -remainder_deriv(ctx, _n, j + 1, t)

    return eval_deriv


def builtin_families() -> dict:
    """Name -> family for the functions this package studies.

    ``lnminuspsi`` is ln t - psi(t) (degree 1); ``phi``/``negR1prime``
    are both -R_1' (degree 2); ``R:n`` and ``negRprime:n`` for n = 0..6
    are R_n and -R_n'.  All tend to 0 at infinity.
    """
    fams = {
        "lnminuspsi": FunctionFamily("lnminuspsi", _lnminuspsi_deriv),
        "phi": FunctionFamily("phi", _neg_rprime_family(1)),
        "negR1prime": FunctionFamily("negR1prime", _neg_rprime_family(1)),
    }
    for n in range(7):
        fams["R:%d" % n] = FunctionFamily("R:%d" % n, _r_family(n))
        fams["negRprime:%d" % n] = FunctionFamily("negRprime:%d" % n, _neg_rprime_family(n))
    return fams


def conjecture_probe(
    ctx: PrecisionContext,
    n,
    m,
    order: int = 6,
    grid: Optional[GridSpec] = None,
    resolution=0.1,
) -> DegreeBracket:
    """EXPLORATORY bracket for the degree of (-1)^m R_n^(m).

    Centers the starting bracket on m + n for n <= 1 and m + 2(n - 1)
    for n >= 2 and bisects from [center - 1, center + 1].  Only the cases
    with proved degrees (small n, m) are certificates; everything else is
    a finite-grid observation, and the log record says so.
    """
    if int(n) != n or not 0 <= n <= 6:
        raise DomainError("conjecture_probe supports 0 <= n <= 6, got %r" % (n,))
    if int(m) != m or not 0 <= m <= 4:
        raise DomainError("conjecture_probe supports 0 <= m <= 4, got %r" % (m,))
    n = int(n)
    m = int(m)
    sign = 1 if m % 2 == 0 else -1

    def eval_deriv(ctx_, j, t, _n=n, _m=m, _s=sign):
        val = remainder_deriv(ctx_, _n, _m + j, t)
        return val if _s == 1 else -val

    fam = FunctionFamily("probe:R%d^(%d)" % (n, m), eval_deriv, 0, max_order=12 - m)
    center = m + n if n <= 1 else m + 2 * (n - 1)
    lo = max(0, center - 1)
    hi = center + 1
    if grid is None:
        grid = PROBE_GRID
    logger.info(
        "conjecture_probe(n=%d, m=%d): EXPLORATORY bracket around alpha=%d; "
        "a pass is only as strong as the grid and order=%d allow",
        n,
        m,
        center,
        order,
    )
    return degree_estimate(ctx, fam, lo, hi, resolution=resolution, order=order, grid=grid)
