#!/usr/bin/env python3
"""Exact verification of the tail-comparison inequalities.

Each checker sweeps P(||S_j|| > t) <= c1 * P(||S_k|| > t/c2) over ALL
t > 0 at once.  Both sides are step functions, so it suffices to evaluate
at finitely many critical thresholds; the verdict is exact, not sampled.
A report either HOLDS with a margin, is VACUOUS (both sides zero beyond
some point and nothing to compare), or is VIOLATED with a re-checkable
witness threshold.
"""

from fractions import Fraction as F

from iidtails import (
    DiscreteDist,
    Norm,
    check_corollary4,
    check_corollary5,
    check_corollary6,
    check_latala_sharp,
    check_levy_ottaviani,
    check_theorem1,
    iid_sum,
    tail,
    tail_curve,
    threshold_candidates,
    upper_envelope,
)


def section(title):
    print()
    print(title)
    print("-" * len(title))


def show(report):
    print(f"  {report.claim_id}: {report.status.upper()}"
          f"  worst t = {report.worst_t}"
          f"  lhs = {report.lhs}  rhs(with factor) = {report.rhs}"
          f"  margin = {report.margin}")
    if report.note:
        print(f"    note: {report.note}")


section("The headline comparison: j-fold vs k-fold sums, constants (3, 10)")
coin = DiscreteDist({-1: F(1, 2), 1: F(1, 2)})
show(check_theorem1(coin, j=1, k=2))
skew = DiscreteDist({-2: F(1, 5), 0: F(3, 5), 5: F(1, 5)})
show(check_theorem1(skew, j=2, k=5))

section("How a violation is reported")
# With constants (1, 1) the claim P(|S_1| > t) <= P(|S_2| > t) is simply
# false for the coin: at t just below 1 the left side is 1 but S_2 sits at
# 0 with probability 1/2.
bad = check_theorem1(coin, j=1, k=2, c1=1, c2=1)
show(bad)
w = bad.witness
print(f"  witness threshold t = {w['t']}: re-check it directly:")
lhs = tail(iid_sum(coin, 1), Norm.ABS1D, F(w["t"]))
rhs = tail(iid_sum(coin, 2), Norm.ABS1D, F(w["t"]))
print(f"    P(|S_1| > {w['t']}) = {lhs} > {rhs} = P(|S_2| > {w['t']})")

section("A sharp two-sum comparison: constants (2, 3/2)")
# At the +-1 coin, t = 1/2 this holds with equality: margin 0, so neither
# constant can be improved on this instance.
show(check_latala_sharp(coin))

section("Running maximum against the endpoint: constants (3, 3)")
show(check_levy_ottaviani(coin, k=4))

section("Maximum over prefix sums, same scale both sides: constants (9, 30)")
show(check_corollary4(skew, k=3))

section("Weighted sums with |alpha_i| <= 1 dominated by the plain sum")
show(check_corollary5(coin, alphas=[1, F(1, 2), F(-1, 4)]))

section("A long sum against a short one: constants stretch by j/k")
show(check_corollary6(skew, j=4, k=2))

section("The machinery underneath: critical thresholds")
jumps = [F(1, 2), F(1), F(3)]
probes = threshold_candidates(jumps)
print(f"step-function jumps at {[str(q) for q in jumps]} need probes at:"
      f" {[str(q) for q in probes]}")
print("(one probe below the first jump, one at each jump, one beyond the"
      " last; midpoints too when the two sides use different modes)")

section("Upper envelopes of tail curves stay step functions")
curves = [tail_curve(iid_sum(coin, k), Norm.ABS1D) for k in (1, 2, 3)]
env = upper_envelope(curves)
for t in (F(1, 2), F(3, 2), F(5, 2)):
    vals = [str(c.at_radius(t)) for c in curves]
    print(f"  max_k P(|S_k| > {t}) = {env.at_radius(t)}"
          f"  (componentwise: {vals})")
