"""High-precision semi-infinite quadrature.

Covers the four integral shapes the package needs:

* Laplace transforms  int_0^inf kernel(v) e^{-tv} dv        (``laplace``)
* Bose-type moments   int_0^inf w^s / (e^{2 pi w} - 1) dw   (``bose_moment``)
* the cosine kernel   int_0^inf w^{2n-1}[1-cos(wv)]/(e^{2 pi w}-1) dw
* the sine moments    int_0^inf u^p sin(su)/(e^u - 1) du

The engine is deliberately simple and certifiable: panels integrated by a
*nested pair* of Gauss-Legendre rules (the two results must agree to the
panel tolerance, otherwise the panel is bisected), plus analytic
exponential tail bounds for the cutoff.  Oscillatory integrands get panels
aligned to half-periods so each panel is smooth and non-oscillatory.

Two stability rules are applied throughout: 1 - cos(x) is always evaluated
as 2 sin^2(x/2), and 1/(e^x - 1) always goes through expm1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from mpmath.calculus.quadrature import GaussLegendre

from .errors import DomainError, IntegrationError
from .precision import PrecisionContext

__all__ = [
    "IntegralResult",
    "GridSpec",
    "laplace",
    "bose_moment",
    "cos_kernel_integral",
    "sin_kernel_integral",
    "verify_degree_representation",
    "remark3_inequalities",
    "Remark3Report",
    "DEFAULT_BUDGET",
]

#: default cap on integrand evaluations per integral
DEFAULT_BUDGET = 200_000

_MAX_SPLIT_DEPTH = 40


@dataclass
class IntegralResult:
    """Value of a semi-infinite integral with a conservative error bound.

    ``est_error`` adds the nested-rule disagreement of every panel to the
    analytic bound on the discarded tail; on success it is below the
    tolerance that was requested.
    """

    value: object
    est_error: object
    evaluations: int


@dataclass(frozen=True)
class GridSpec:
    """A log-spaced evaluation grid on (0, inf)."""

    t_min: object
    t_max: object
    count: int
    spacing: str = "log"

    def __post_init__(self):
        if float(self.t_min) <= 0:
            raise DomainError("GridSpec requires t_min > 0, got %s" % (self.t_min,))
        if not float(self.t_min) < float(self.t_max):
            raise DomainError(
                "GridSpec requires t_min < t_max, got [%s, %s]" % (self.t_min, self.t_max)
            )
        if int(self.count) < 2:
            raise DomainError("GridSpec requires count >= 2, got %s" % (self.count,))
        if self.spacing != "log":
            raise DomainError("GridSpec supports only log spacing, got %r" % (self.spacing,))

    def points(self, ctx: PrecisionContext):
        lo = ctx.ln(ctx.mpf(self.t_min))
        hi = ctx.ln(ctx.mpf(self.t_max))
        n = int(self.count)
        step = (hi - lo) / (n - 1)
        return [ctx.exp(lo + k * step) for k in range(n)]


class _Budget:
    """Mutable evaluation counter shared by the panels of one integral."""

    def __init__(self, limit: int):
        self.limit = int(limit)
        self.used = 0

    def spend(self, n: int):
        self.used += n
        if self.used > self.limit:
            raise IntegrationError(
                "evaluation budget of %d integrand calls exhausted" % self.limit,
                evaluations=self.used,
            )


# -- Gauss-Legendre panel machinery -----------------------------------

# (digits, degree) -> list of (node, weight) on [-1, 1]
_GL_CACHE: dict = {}


def _gl_nodes(ctx: PrecisionContext, degree: int):
    key = (ctx.digits, degree)
    nodes = _GL_CACHE.get(key)
    if nodes is None:
        rule = GaussLegendre(ctx._mp)
        nodes = rule.calc_nodes(degree, ctx._mp.prec)
        _GL_CACHE[key] = nodes
    return nodes


def _panel(ctx, f, a, b, budget, degree):
    """One Gauss-Legendre pass of the given degree over [a, b]."""
    nodes = _gl_nodes(ctx, degree)
    budget.spend(len(nodes))
    mid = (a + b) / 2
    half = (b - a) / 2
    acc = ctx.mpf(0)
    for x, w in nodes:
        acc += w * f(mid + half * x)
    return half * acc


def _integrate_panel(ctx, f, a, b, panel_tol, budget, degree=5, depth=0):
    """Nested-pair panel integral: accepted when rules of consecutive
    degree agree, else the panel is bisected (error bounds then add)."""
    lo = _panel(ctx, f, a, b, budget, degree)
    hi = _panel(ctx, f, a, b, budget, degree + 1)
    diff = abs(hi - lo)
    # rounding floor: below this level the disagreement is noise, not signal
    floor = 10 * ctx.eps * (1 + abs(hi))
    if diff <= panel_tol or diff <= floor:
        return hi, diff
    if depth >= _MAX_SPLIT_DEPTH:
        raise IntegrationError(
            "panel [%s, %s] did not converge after %d bisections" % (a, b, depth),
            est_error=diff,
            evaluations=budget.used,
        )
    m = (a + b) / 2
    v1, e1 = _integrate_panel(ctx, f, a, m, panel_tol / 2, budget, degree, depth + 1)
    v2, e2 = _integrate_panel(ctx, f, m, b, panel_tol / 2, budget, degree, depth + 1)
    return v1 + v2, e1 + e2


def _exp_tail_bound(ctx, U, p, c):
    """Bound int_U^inf u^p e^{-cu} du <= U^p e^{-cU} / (c - p/U).

    Valid whenever cU > p (geometric-majorant argument on the shifted
    series).  Returns None when the premise fails and the caller must keep
    integrating panels instead of cutting off.
    """
    U = ctx.mpf(U)
    c = ctx.mpf(c)
    if c * U <= p:
        return None
    return ctx.power(U, p) * ctx.exp(-c * U) / (c - ctx.mpf(p) / U)


# -- Laplace transforms ------------------------------------------------


def laplace(
    ctx: PrecisionContext,
    kernel: Callable,
    t,
    tol,
    budget: int = DEFAULT_BUDGET,
    kernel_bound=None,
) -> IntegralResult:
    """int_0^inf kernel(v) e^{-tv} dv for a kernel of at most polynomial
    growth.

    Panels are the variable-doubling sequence [0,1], [1,2], [2,4], ...;
    integration stops when the analytic tail bound (a sampled sup of the
    kernel times e^{-tV}/t, with a growth-degree correction) drops below
    the tolerance.  ``kernel_bound``, when given, is a caller-supplied
    uniform bound on |kernel| that replaces the sampling.
    """
    t = ctx.mpf(t)
    if t <= 0:
        raise DomainError("laplace requires t > 0, got %s" % t)
    tol = ctx.mpf(tol)
    bud = _Budget(budget)

    def integrand(v):
        return kernel(v) * ctx.exp(-t * v)

    total = ctx.mpf(0)
    err = ctx.mpf(0)
    a = ctx.mpf(0)
    idx = 0
    while True:
        b = ctx.mpf(1) if a == 0 else 2 * a
        panel_tol = tol / ctx.mpf(2) ** (idx + 3)
        val, perr = _integrate_panel(ctx, integrand, a, b, panel_tol, bud)
        total += val
        err += perr

        tail = _laplace_tail(ctx, kernel, t, b, bud, kernel_bound)
        if tail is not None and tail < tol / 4:
            err += tail
            break
        a, idx = b, idx + 1
        if idx > 200:
            raise IntegrationError(
                "tail bound did not engage before panel cap",
                est_error=err,
                evaluations=bud.used,
            )
    return IntegralResult(total, err, bud.used)


def _laplace_tail(ctx, kernel, t, b, bud, kernel_bound):
    """Conservative bound on int_b^inf |kernel| e^{-tv} dv, or None if the
    decay has not yet overtaken the kernel's growth at v = b."""
    if kernel_bound is not None:
        return ctx.mpf(kernel_bound) * ctx.exp(-t * b) / t
    # sample the kernel on [b, b + extent] to estimate size and growth
    extent = max(b, 4 / t)
    pts = [b + extent * k / 8 for k in range(9)]
    bud.spend(len(pts))
    vals = [abs(kernel(p)) for p in pts]
    sup0 = max(vals[0], vals[1])
    if max(vals) == 0:
        return ctx.mpf(0)
    if vals[0] == 0 or vals[-1] == 0:
        deg = 0
    else:
        ratio = float(vals[-1] / vals[0])
        span = float(pts[-1] / pts[0])
        deg = max(0, math.ceil(math.log(max(ratio, 1e-300)) / math.log(span)) + 1)
    # decay must already dominate the growth, with margin, before we trust
    # the envelope int_b^inf (v/b)^deg e^{-tv} dv <= e^{-tb}/(t - deg/b)
    if float(t * b) <= 2 * deg + 1:
        return None
    return 4 * sup0 * ctx.exp(-t * b) / (t - ctx.mpf(deg) / b)


# -- Bose-type moments -------------------------------------------------


def bose_moment(ctx: PrecisionContext, s, tol, budget: int = DEFAULT_BUDGET) -> IntegralResult:
    """int_0^inf w^s / (e^{2 pi w} - 1) dw for s > 0.

    The integrand behaves like w^{s-1}/(2 pi) at the origin.  For integer
    s the regrouped integrand w^{s-1} * [w / (e^{2 pi w} - 1)] is analytic
    there and plain panels converge; for non-integer s the first panel is
    summed through the exact Bernoulli generating-function series instead
    (term bound 2.1/(2 pi)^j keeps the truncation certified).
    """
    s = ctx.mpf(s)
    if s <= 0:
        raise DomainError("bose_moment requires s > 0, got %s" % s)
    tol = ctx.mpf(tol)
    bud = _Budget(budget)
    two_pi = 2 * ctx.pi

    def integrand(w):
        return ctx.power(w, s) / ctx.expm1(two_pi * w)

    total = ctx.mpf(0)
    err = ctx.mpf(0)
    is_int = s == int(s)
    if is_int:
        a = ctx.mpf(0)
    else:
        a = ctx.mpf(1) / 8
        val, serr = _bose_corner_series(ctx, s, a, tol / 8)
        total += val
        err += serr

    idx = 0
    while True:
        b = _next_dyadic(ctx, a)
        panel_tol = tol / ctx.mpf(2) ** (idx + 3)
        val, perr = _integrate_panel(ctx, integrand, a, b, panel_tol, bud)
        total += val
        err += perr
        # tail: w^s e^{-2 pi w} / (1 - e^{-2 pi b})
        env = _exp_tail_bound(ctx, b, float(s), two_pi)
        if env is not None:
            tail = env / (1 - ctx.exp(-two_pi * b))
            if tail < tol / 4:
                err += tail
                break
        a, idx = b, idx + 1
        if idx > 200:
            raise IntegrationError(
                "bose_moment tail did not engage", est_error=err, evaluations=bud.used
            )
    return IntegralResult(total, err, bud.used)


def _next_dyadic(ctx, a):
    """Panel endpoints 0 (or 1/8), then doubling: 1/4, 1/2, 1, 2, 4, ..."""
    if a == 0:
        return ctx.mpf(1) / 2
    return 2 * a


def _bose_corner_series(ctx, s, w0, tol):
    """int_0^{w0} w^s/(e^{2 pi w}-1) dw by the generating-function series

    w^s/(e^{2 pi w}-1) = w^{s-1}/(2 pi) * sum_j B_j (2 pi w)^j / j!

    Integrating termwise gives sum_j B_j (2 pi)^{j-1} w0^{s+j} / (j! (s+j)).
    Valid for 2 pi w0 < 2 pi; with w0 = 1/8 the term ratio is below 1/7 so
    convergence is geometric and the tail is bounded by the last term.
    """
    from .combinatorics import bernoulli  # local import: keeps module deps one-way

    two_pi = 2 * ctx.pi
    total = ctx.mpf(0)
    jfact = 1
    for j in range(0, 400):
        if j > 1 and j % 2 == 1:
            jfact *= j
            continue  # odd Bernoulli numbers vanish
        bj = bernoulli(j)
        if j > 0:
            jfact *= j
        term = (
            ctx.mpf(bj)
            * ctx.power(two_pi, j - 1)
            * ctx.power(w0, s + j)
            / (jfact * (s + j))
        )
        total += term
        if j > 2 and abs(term) < tol / 4:
            # ratio of consecutive kept terms is < (2 pi w0)^2 / (2 pi)^2 = w0^2
            tail = abs(term) * 2
            return total, tail
    raise IntegrationError("bose corner series did not converge")


# -- oscillatory kernels -----------------------------------------------


def cos_kernel_integral(
    ctx: PrecisionContext, n: int, v, tol, budget: int = DEFAULT_BUDGET
) -> IntegralResult:
    """int_0^inf w^{2n-1} [1 - cos(wv)] / (e^{2 pi w} - 1) dw  (n >= 1, v >= 0).

    The integrand is pointwise nonnegative (written as 2 sin^2(wv/2), which
    is also what keeps it cancellation-free).  Panels are aligned to the
    half-period pi/v (capped at width 1) so each panel sees at most one
    hump of the oscillation; at v = 0 the integral is exactly 0.
    """
    n = int(n)
    if n < 1:
        raise DomainError("cos_kernel_integral requires n >= 1, got %d" % n)
    v = ctx.mpf(v)
    if v < 0:
        raise DomainError("cos_kernel_integral requires v >= 0, got %s" % v)
    if v == 0:
        return IntegralResult(ctx.mpf(0), ctx.mpf(0), 0)
    tol = ctx.mpf(tol)
    bud = _Budget(budget)
    two_pi = 2 * ctx.pi
    p = 2 * n - 1

    def integrand(w):
        sh = ctx.sin(w * v / 2)
        return ctx.power(w, p) * 2 * sh * sh / ctx.expm1(two_pi * w)

    width = min(ctx.mpf(1), ctx.pi / v)
    n_est = _estimate_panels(float(tol), p, 2 * math.pi, float(width))
    panel_tol = tol / (8 * n_est)

    total = ctx.mpf(0)
    err = ctx.mpf(0)
    a = ctx.mpf(0)
    while True:
        b = a + width
        val, perr = _integrate_panel(ctx, integrand, a, b, panel_tol, bud, degree=4)
        total += val
        err += perr
        env = _exp_tail_bound(ctx, b, p, two_pi)
        if env is not None:
            tail = 2 * env / (1 - ctx.exp(-two_pi * b))
            if tail < tol / 4:
                err += tail
                break
        a = b
    return IntegralResult(total, err, bud.used)


def sin_kernel_integral(
    ctx: PrecisionContext, p: int, s, tol, budget: int = DEFAULT_BUDGET
) -> IntegralResult:
    """int_0^inf u^p sin(su) / (e^u - 1) du for even p >= 2, s > 0.

    Panels are aligned to the zeros of sin(su) (width pi/s, capped at 1),
    so panel contributions alternate in sign once u^p/(e^u-1) decays; the
    cutoff uses the exponential envelope, which needs no sign argument.
    """
    p = int(p)
    if p < 2 or p % 2 != 0:
        raise DomainError("sin_kernel_integral requires even p >= 2, got %d" % p)
    s = ctx.mpf(s)
    if s <= 0:
        raise DomainError("sin_kernel_integral requires s > 0, got %s" % s)
    tol = ctx.mpf(tol)
    bud = _Budget(budget)

    def integrand(u):
        return ctx.power(u, p) * ctx.sin(s * u) / ctx.expm1(u)

    width = min(ctx.mpf(1), ctx.pi / s)
    n_est = _estimate_panels(float(tol), p, 1.0, float(width))
    panel_tol = tol / (8 * n_est)

    total = ctx.mpf(0)
    err = ctx.mpf(0)
    a = ctx.mpf(0)
    while True:
        b = a + width
        val, perr = _integrate_panel(ctx, integrand, a, b, panel_tol, bud, degree=4)
        total += val
        err += perr
        env = _exp_tail_bound(ctx, b, p, 1)
        if env is not None:
            tail = env / (1 - ctx.exp(-b))
            if tail < tol / 4:
                err += tail
                break
        a = b
    return IntegralResult(total, err, bud.used)


def _estimate_panels(tol, p, rate, width):
    """Rough (float) count of half-period panels before the exponential
    tail bound engages; only used to apportion the tolerance."""
    target = -math.log(max(tol, 1e-300)) + 8
    u = max(2.0, p / rate + 1)
    for _ in range(60):
        u_new = (target + p * math.log(u)) / rate
        if u_new <= u:
            break
        u = u_new
    return max(4, int(u / width) + 2)


# -- cross-module verifications ---------------------------------------


def verify_degree_representation(ctx: PrecisionContext, n: int, t, tol):
    """Check t^{2n-1} [-R_n'(t)] against its double-integral representation

        2 int_0^inf ( int_0^inf w^{2n-1}[1-cos(wv)]/(e^{2 pi w}-1) dw ) e^{-tv} dv

    The left side comes from the shift+series evaluator, the right side
    entirely from quadrature, so agreement is a genuine cross-check.
    Returns the absolute deviation (caller compares against ``tol``).

    The tolerance is split so the inner integrals cannot pollute the outer
    one.  The inner tolerance is tol*t/12 scaled up by e^{3tv/4}: the
    total inner contribution is then bounded by (tol*t/12) int e^{-tv/4}
    dv = tol/3, while the integrals under the flat part of the weight stay
    tight and the (expensive, high-frequency) ones at large v relax where
    the weight has already collapsed.  The outer quadrature itself gets
    tol/8.
    """
    from . import remainders  # deferred: remainders sits above this module
    from .combinatorics import bernoulli

    n = int(n)
    if n < 1:
        raise DomainError("verify_degree_representation requires n >= 1, got %d" % n)
    t = ctx.mpf(t)
    if t <= 0:
        raise DomainError("verify_degree_representation requires t > 0, got %s" % t)
    tol = ctx.mpf(tol)

    lhs = ctx.power(t, 2 * n - 1) * remainders.remainder_d1(ctx, n, t)

    tol_inner = tol * t / 12
    # the inner integral is bounded by twice the pure Bose moment; give the
    # outer tail test that bound so it never has to sample the (expensive)
    # inner integral at large v
    moment_bound = 3 * abs(ctx.mpf(bernoulli(2 * n))) / (4 * n) + 1

    def inner(v):
        relax = ctx.exp(3 * t * v / 4)
        return cos_kernel_integral(ctx, n, v, tol_inner * relax).value

    outer = laplace(ctx, inner, t, tol / 8, kernel_bound=moment_bound)
    rhs = 2 * outer.value
    return abs(lhs - rhs)


@dataclass
class Remark3Report:
    """Grid scan of the three cosine-moment bounds for one n.

    Each of the three left-hand sides is computed by a structurally
    different route; all must stay strictly below the shared bound.
    """

    n: int
    bound_exact: Fraction
    bound: object
    max_lhs: list
    min_margin: list
    argmin: list
    violations: list = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return not self.violations


def remark3_inequalities(ctx: PrecisionContext, n: int, grid: GridSpec) -> Remark3Report:
    """Check, at every grid point, that three independently computed forms
    of the oscillatory cosine moment stay strictly below
    (2n-1)! zeta(2n) / (2 pi)^{2n} (exact rational times pi-power).

    Routes: (1) the assembled kernel K_{2n-1} minus its constant;
    (2) the derivative closed form -(2n-1)!/v^{2n} - (d^{2n-1}/dv^{2n-1}) of
    the Bose factor; (3) the negated form through the explicit Stirling-
    number polynomial.  Violations are report entries, not exceptions.
    """
    from . import kernels  # deferred: kernels sits above this module
    from .combinatorics import bernoulli, stirling2, zeta_even

    n = int(n)
    if n < 1:
        raise DomainError("remark3_inequalities requires n >= 1, got %d" % n)

    q, _power = zeta_even(n)
    fact = 1
    for d in range(2, 2 * n):
        fact *= d
    bound_exact = Fraction(fact) * q / Fraction(2) ** (2 * n)
    bound = ctx.mpf(bound_exact)

    sign = -1 if n % 2 else 1
    b2n = ctx.mpf(bernoulli(2 * n))
    m = 2 * n - 1
    srow = [ctx.mpf(int(stirling2(2 * n, p))) for p in range(1, 2 * n + 1)]
    pfact = [ctx.mpf(math.factorial(p - 1)) for p in range(1, 2 * n + 1)]

    max_lhs = [None, None, None]
    min_margin = [None, None, None]
    argmin = [None, None, None]
    violations = []

    for v in grid.points(ctx):
        # boost for the v^{-2n} cancellation in the raw closed forms
        extra = 0
        if v < 1:
            extra = int(2 * n * (-math.log10(float(v)))) + 10
        wctx = ctx.boosted(extra)
        vv = wctx.mpf(v)
        mfact_w = wctx.mpf(fact)
        vpow = wctx.power(vv, 2 * n)

        lhs1 = ctx.mpf(sign) / 2 * (kernels.K_kernel(ctx, m, v) - b2n / (2 * n))
        lhs2 = wctx.mpf(sign) / 2 * (
            -mfact_w / vpow - kernels.bose_derivative(wctx, m, vv)
        )
        u = 1 / wctx.expm1(vv)
        ssum = wctx.mpf(0)
        upow = wctx.mpf(1)
        for p in range(1, 2 * n + 1):
            upow *= u
            ssum += wctx.mpf(pfact[p - 1]) * wctx.mpf(srow[p - 1]) * upow
        lhs3 = wctx.mpf(sign) / 2 * (mfact_w / vpow - ssum)

        for i, lhs in enumerate((ctx.mpf(lhs1), ctx.mpf(lhs2), ctx.mpf(lhs3))):
            margin = bound - lhs
            if max_lhs[i] is None or lhs > max_lhs[i]:
                max_lhs[i] = lhs
            if min_margin[i] is None or margin < min_margin[i]:
                min_margin[i] = margin
                argmin[i] = v
            if not margin > 0:
                violations.append((i + 1, v, lhs))

    return Remark3Report(n, bound_exact, bound, max_lhs, min_margin, argmin, violations)
