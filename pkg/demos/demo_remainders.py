#!/usr/bin/env python3
"""Tour of the remainder family R_n.

Shows the values of R_n across scales, the exact two-term envelope
identity that pins consecutive remainders to a Bernoulli multiple of a
power of t, the alternating-sign derivative pattern that makes each R_n
completely monotonic, and the tail-limit table for the first derivative.

Run:  python3 demos/demo_remainders.py
"""

from fractions import Fraction

from cmlab import (
    PrecisionContext,
    bernoulli,
    remainder,
    remainder_d1,
    remainder_deriv,
    tail_limits,
)


def banner(title):
    print()
    print("=" * 72)
    print(title)
    print("=" * 72)


def main():
    ctx = PrecisionContext(30)

    banner("values of R_n(t)")
    print("%-10s %-22s %-22s %-22s" % ("t", "R_0", "R_1", "R_2"))
    for t in ("0.1", "1", "10", "1000"):
        row = [remainder(ctx, n, t) for n in (0, 1, 2)]
        print("%-10s %-22.12e %-22.12e %-22.12e" % ((t,) + tuple(float(v) for v in row)))
    print()
    print("R_0 blows up like -(1/2) ln t near zero; for large t every R_n")
    print("collapses onto its leading Bernoulli term.")

    banner("envelope identity: R_n + R_{n+1} = |B_{2n+2}|/((2n+2)(2n+1)) t^{-(2n+1)}")
    t = ctx.mpf(2)
    for n in range(0, 4):
        lhs = remainder(ctx, n, t) + remainder(ctx, n + 1, t)
        coeff = abs(bernoulli(2 * n + 2)) / ((2 * n + 2) * (2 * n + 1))
        rhs = ctx.mpf(coeff) * t ** (-(2 * n + 1))
        print(
            "n=%d   coeff=%-12s   |lhs-rhs| = %.3e"
            % (n, coeff, float(abs(lhs - rhs)))
        )
    print()
    print("The identity is exact; the residuals above are pure rounding.")

    banner("complete monotonicity: signs of R_n^(j) alternate")
    t = ctx.mpf("1.5")
    for n in (0, 1, 2):
        signs = []
        for j in range(0, 7):
            v = remainder_deriv(ctx, n, j, t)
            signs.append("+" if v > 0 else "-")
        print("n=%d   j=0..6 signs: %s" % (n, " ".join(signs)))
    print()
    print("(-1)^j R_n^(j) stays positive, the defining alternation.")

    banner("first-derivative magnitude -R_n'(t)")
    print("%-8s %-22s %-22s" % ("t", "-R_1'", "-R_2'"))
    for t in ("0.5", "2", "50"):
        print(
            "%-8s %-22.12e %-22.12e"
            % (t, float(remainder_d1(ctx, 1, t)), float(remainder_d1(ctx, 2, t)))
        )

    banner("tail limits of t^p (-R_n')")
    for n in (1, 2):
        report = tail_limits(ctx, n)
        print("n=%d" % n)
        for e in report.entries:
            target = e.target if isinstance(e.target, Fraction) else Fraction(e.target)
            print(
                "  power %-3d at t=%-8.0e  value %-15.6e  target %-10s  dev %.2e"
                % (e.power, float(e.t), float(e.value), target, float(e.deviation))
            )
        print("  max deviation: %.3e" % float(report.max_deviation))
    print()
    print("Two powers flatten to zero, the next two land on Bernoulli ratios:")
    print("the transition pins the decay rate of -R_n' at both ends.")


if __name__ == "__main__":
    main()
