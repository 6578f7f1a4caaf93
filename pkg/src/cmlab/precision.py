"""Configurable-precision real arithmetic used by every numeric module.

A :class:`PrecisionContext` owns an independent mpmath context, so two
computations at different precisions never interfere through global state
and results are reproducible regardless of evaluation order or threading.

Precision is an explicit parameter threaded through every call in this
package; nothing reads an ambient global.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath.ctx_mp import MPContext

from .errors import DomainError

__all__ = ["PrecisionContext", "elem"]

MIN_DIGITS = 15

#: functions evaluable through :func:`elem`
ELEM_FUNCTIONS = ("exp", "ln", "sin", "cos", "coth", "pow")


class PrecisionContext:
    """Carries the working precision (decimal digits) for real arithmetic.

    All elementary operations performed under a context are correctly
    rounded to within a couple of units in the last place at ``digits``
    decimal digits.  Values produced under one context can be fed to
    another; they are re-rounded on conversion.
    """

    def __init__(self, digits: int = 50):
        digits = int(digits)
        if digits < MIN_DIGITS:
            raise DomainError(
                "PrecisionContext requires digits >= %d, got %d" % (MIN_DIGITS, digits)
            )
        self.digits = digits
        self._mp = MPContext()
        self._mp.dps = digits

    def __repr__(self):
        return "PrecisionContext(digits=%d)" % self.digits

    # -- conversions -------------------------------------------------

    def mpf(self, x):
        """Convert ``x`` (int, float, str, Fraction, or any mpf) to this
        context's arbitrary-precision float."""
        if isinstance(x, Fraction):
            # exact integer conversion, then a single correctly rounded division
            return self._mp.mpf(x.numerator) / self._mp.mpf(x.denominator)
        return self._mp.mpf(x)

    def boosted(self, extra_digits: int) -> "PrecisionContext":
        """A fresh context with ``extra_digits`` more working digits."""
        return PrecisionContext(self.digits + max(0, int(extra_digits)))

    # -- constants ---------------------------------------------------

    @property
    def pi(self):
        return +self._mp.pi

    @property
    def eps(self):
        """10**(-digits): the relative resolution of this context."""
        return self._mp.mpf(10) ** (-self.digits)

    # -- checked elementary functions ---------------------------------

    def isfinite(self, x) -> bool:
        return self._mp.isfinite(self.mpf(x))

    def exp(self, x):
        return self._finite("exp", self._mp.exp(self.mpf(x)), x)

    def expm1(self, x):
        return self._finite("expm1", self._mp.expm1(self.mpf(x)), x)

    def ln(self, x):
        x = self.mpf(x)
        if x <= 0:
            raise DomainError("ln requires a positive argument, got %s" % x)
        return self._finite("ln", self._mp.ln(x), x)

    def sin(self, x):
        return self._finite("sin", self._mp.sin(self.mpf(x)), x)

    def cos(self, x):
        return self._finite("cos", self._mp.cos(self.mpf(x)), x)

    def sqrt(self, x):
        x = self.mpf(x)
        if x < 0:
            raise DomainError("sqrt requires a nonnegative argument, got %s" % x)
        return self._finite("sqrt", self._mp.sqrt(x), x)

    def power(self, x, a):
        x = self.mpf(x)
        if x <= 0:
            raise DomainError("pow requires a positive base, got %s" % x)
        return self._finite("pow", self._mp.power(x, self.mpf(a)), x)

    def coth(self, v):
        """coth(v) through 2/(1 - e^{-2v}) - 1, which stays exact as the
        hyperbolic tail dies off (no large-v cancellation)."""
        v = self.mpf(v)
        if v == 0:
            raise DomainError("coth requires a nonzero argument")
        if v < 0:
            return -self.coth(-v)
        em = self._mp.exp(-2 * v)
        return self._finite("coth", 2 / (1 - em) - 1, v)

    def _finite(self, name, value, arg):
        if not self._mp.isfinite(value):
            raise DomainError("%s(%s) is not finite at %d digits" % (name, arg, self.digits))
        return value


def elem(ctx: PrecisionContext, which: str, *args):
    """Evaluate an elementary function under ``ctx``.

    ``which`` is one of ``exp, ln, sin, cos, coth, pow``; ``pow`` takes two
    arguments (positive base, arbitrary real exponent), the rest take one.
    Domain violations raise :class:`DomainError` naming the function and
    the offending argument.
    """
    if which not in ELEM_FUNCTIONS:
        raise DomainError("unknown elementary function %r" % (which,))
    if which == "pow":
        if len(args) != 2:
            raise DomainError("pow takes exactly 2 arguments, got %d" % len(args))
        return ctx.power(args[0], args[1])
    if len(args) != 1:
        raise DomainError("%s takes exactly 1 argument, got %d" % (which, len(args)))
    return getattr(ctx, which)(args[0])
