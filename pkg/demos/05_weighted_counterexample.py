#!/usr/bin/env python3
"""An explicit failure of tail comparison for non-identical weights.

The positive results compare P(|S_j| > t) against P(|S_k| > t/c2) for
partial sums of the SAME law.  Shifted copies break this.  Take Y with
P(Y = N-1) = 1/N and P(Y = -1) = (N-1)/N, set X_i = Y_i + M^(-1/3), and
normalize: S_M = M^(-2/3) * (X_1 + ... + X_M).  For suitable M the first
M terms concentrate near 1 (the deterministic drift M^(1/3) dominates),
while adding the single term X_{M+1} recenters a large chunk of mass back
toward 0.  Then P(|S_M| > 1/2) is close to 1 but
P(|S_M + X_{M+1}| > something smaller) stays near 2/N, so no constant
c <= N/3 can bridge the two.  Every probability below is an exact
rational: comparisons against multiples of M^(1/3) are settled by cubing
into integer arithmetic (sign of a + b*M^(1/3) + c*M^(2/3) equals the sign
of its field norm).
"""

from fractions import Fraction as F

from iidtails import (
    cbrt_combo_sign,
    centered_sum_tail,
    extended_sum_tail,
    find_M,
    normalized_sum_tail,
    refutes_constant,
    verify_counterexample,
)


def section(title):
    print()
    print(title)
    print("-" * len(title))


section("Exact sign arithmetic in Q(M^(1/3))")
# -2 + 8^(1/3) = 0 exactly; for non-cubes the norm trick decides the sign
# without any floating point.
print(f"sign(-2 + 8^(1/3))        = {cbrt_combo_sign(-2, 1, 0, 8)}")
print(f"sign(-2 + 7^(1/3))        = {cbrt_combo_sign(-2, 1, 0, 7)}")
print(f"sign(1 - 3*2^(1/3) + 2^(2/3)) = {cbrt_combo_sign(1, -3, 1, 2)}")

section("Finding an admissible horizon M for N = 2")
# Admissible means the centered sum is already concentrated at scale
# M^(2/3)/N: P(|Y_1 + ... + Y_M| > M^(2/3)/N) <= 1/N.
M = find_M(2, 100)
print(f"smallest admissible M with N = 2: {M}")
print(f"  check: P(|sum Y_i| > M^(2/3)/2) = {centered_sum_tail(2, 8, F(1, 2))}"
      f" <= 1/2")

section("The two tails that cannot be reconciled (N = 2, M = 8)")
p_cent = normalized_sum_tail(2, 8, F(1, 2))
p_ext = extended_sum_tail(2, 8, F(3, 2))
print(f"P(|S_M| > 1/2)          = {p_cent} ~ {float(p_cent):.4f}"
      f"   (wants to be >= 1 - 1/N = 1/2)")
print(f"P(|S_M + X_(M+1)| > 3/2) = {p_ext} ~ {float(p_ext):.4f}"
      f"   (wants to be <= 2/N = 1)")

section("No constant c <= N/3 works")
fails, lhs, rhs = refutes_constant(2, 8, F(2, 3), F(1, 2))
print(f"testing P(|S_M| > t) <= c * P(|S_M + X_(M+1)| > t/c)"
      f" at c = 2/3, t = 1/2:")
print(f"  lhs = {lhs}, c * rhs = {F(2, 3) * rhs}, violated = {fails}")
fails, lhs, rhs = refutes_constant(2, 8, 100, F(1, 2))
print(f"at a generous c = 100 the inequality is satisfiable:"
      f" violated = {fails}")
print("failure at c propagates to every smaller c, so the refuted range"
      " is an interval")

section("The packaged report")
rep = verify_counterexample(2)
print(f"N = {rep.N}: found M = {rep.M}")
print(f"  admissible tail    {rep.admissible_tail}")
print(f"  centered bound     {rep.p_centered} >= {rep.bound_centered}:"
      f" {rep.centered_holds}")
print(f"  extended bound     {rep.p_extended} <= {rep.bound_extended}:"
      f" {rep.extended_holds}")
ref = rep.refutation
print(f"  refutation at c = {ref['c']}, t = {ref['t']}: fails = "
      f"{ref['fails']}")

section("Larger N: the admissible horizon grows fast")
# For N = 3 the scan has to reach into the thousands; each candidate M is
# rejected cheaply via the binomial modal term, so this stays quick.
rep3 = verify_counterexample(3, cap=5000)
print(f"N = 3: M = {rep3.M}, centered {rep3.centered_holds},"
      f" extended {rep3.extended_holds}")
print(f"N = 10 under a small cap: found ="
      f" {verify_counterexample(10, cap=2000).found}"
      f"  (the true horizon for N = 10 sits near 1.5e10)")
