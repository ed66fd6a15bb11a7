#!/usr/bin/env python3
"""Concentration points and what they buy.

A point x is a concentration point of X at scale t when more than 2/3 of
the mass sits inside the closed window [x - t, x + t].  In one dimension
the full set of such points is a finite union of closed intervals,
computed exactly here.  Two consequences follow: a two-variable
anti-concentration bound (when both variables concentrate but their sum
misses the combined window, a quantitative gap appears), and a refinement
for subsums sharing a common index.
"""

from fractions import Fraction as F

from iidtails import (
    DiscreteDist,
    Norm,
    check_corollary3,
    check_lemma2,
    classify_case,
    concentration_set,
    delta,
    has_concentration_point,
    window_mass,
)


def section(title):
    print()
    print(title)
    print("-" * len(title))


def fmt_intervals(cs):
    return " union ".join(f"[{lo}, {hi}]" for lo, hi in cs.intervals)


section("Window mass and the concentration set")
X = DiscreteDist({0: F(4, 5), 10: F(1, 5)})
t = F(1)
print(f"X = {X}, scale t = {t}")
for x in (F(0), F(1, 2), F(1), F(10)):
    print(f"  mass of [{x - t}, {x + t}] = {window_mass(X, x, t)}")
cs = concentration_set(X, t)
print(f"concentration set at t = {t}: {fmt_intervals(cs)}")
print(f"  0 in set: {cs.contains(F(0))},  2 in set: {cs.contains(F(2))}")

section("The set can be empty: the fair coin at small scales")
coin = DiscreteDist({-1: F(1, 2), 1: F(1, 2)})
cs = concentration_set(coin, F(1, 2))
print(f"coin at t = 1/2: empty = {cs.is_empty}")
cs = concentration_set(coin, F(3, 2))
print(f"coin at t = 3/2: {fmt_intervals(cs)}"
      f"  (window wide enough to cover both atoms)")

section("Existence query (works in any dimension)")
found, witness, exact = has_concentration_point(X, F(1))
print(f"1-d query is exact: found = {found}, witness = {witness},"
      f" exact = {exact}")
Z = DiscreteDist({(0, 0): F(9, 10), (5, 5): F(1, 10)})
found, witness, exact = has_concentration_point(Z, F(1), Norm.EUCLIDEAN)
print(f"2-d query probes atoms (approximate): found = {found},"
      f" witness = ({', '.join(str(c) for c in witness)}), exact = {exact}")

section("Two-variable anti-concentration")
# If |x + y - z| > 3t on windows around x, y, z that carry the mass, the
# sum X + Y cannot concentrate near z.  delta laws make the bound tight.
r = check_lemma2(delta(1), delta(1), F(1, 2))
print(f"X = Y = point mass at 1, t = 1/2:")
print(f"  status = {r.status}, attained = {r.lhs}, bound 3t = {r.rhs},"
      f" margin = {r.margin}")
r = check_lemma2(coin, delta(0), F(1, 4))
print(f"coin vs point mass at 0, t = 1/4:")
print(f"  status = {r.status}  ({r.note})")

section("Shared-index refinement for subsums")
r = check_corollary3(DiscreteDist({0: F(99, 100), 1: F(1, 100)}),
                     k=2, t=F(1, 2))
print(f"rare-hit law, k = 2, t = 1/2: status = {r.status},"
      f" margin = {r.margin}")
print(f"  note: {r.note}")

section("Case classification for a j-of-k comparison")
v = classify_case(DiscreteDist({0: F(99, 100), 1: F(1, 100)}),
                  j=1, k=2, t=F(1, 2))
print(f"rare-hit law, j=1, k=2, t=1/2: {v.case_id}")
print(f"  gap term P(|S_(k-j)| > 9t/10) = {v.witnesses['p_gap']}"
      f" <= 1/3, so the direct comparison branch applies")
print(f"  its bound: {v.bound_desc}: {v.bound_lhs} <= {v.bound_rhs}"
      f" -> {v.bound_holds}")
v = classify_case(delta(1), j=1, k=3, t=F(1))
print(f"point mass at 1, j=1, k=3, t=1: {v.case_id}")
print(f"  its bound: {v.bound_desc}: {v.bound_lhs} >= {v.bound_rhs}"
      f" -> {v.bound_holds}")
v = classify_case(coin, j=1, k=2, t=F(1))
print(f"coin, j=1, k=2, t=1: {v.case_id}"
      f"  (some prefix sum has no concentration point at scale t/10)")
