"""Exact weighted-sum counterexample computations.

The instance: Y takes value N-1 with probability 1/N and -1 otherwise, so
sum_{i<=M} Y_i = N*B - M with B ~ Binomial(M, 1/N).  The normalized sums
S_M = M^(-2/3) sum_{i<=M} (Y_i + M^(-1/3)) = 1 + (N*B - M) * M^(-2/3)
live in the field Q(M^(1/3)); every event probability below is an exact
rational because all order comparisons are decided by integer arithmetic.

Sign rule used throughout: for rational a, b, c and M not a perfect cube,

    sign(a + b*M^(1/3) + c*M^(2/3)) = sign(A^3 + B^3*M + C^3*M^2 - 3*A*B*C*M)

after clearing denominators to integers (A, B, C).  The right side is the
field norm of the left, and the two complex conjugate factors have positive
product, so the signs agree; for perfect cubes M^(1/3) is an integer and the
expression is evaluated directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .reports import jsonify

ZERO = Fraction(0)


def icbrt(n: int) -> int:
    """Floor integer cube root of n >= 0 (Newton, exact)."""
    if n < 0:
        raise ValueError("icbrt needs n >= 0")
    if n == 0:
        return 0
    x = 1 << (-(-n.bit_length() // 3))  # upper-ish start: 2^(ceil(bits/3))
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def cbrt_combo_sign(a, b, c, M: int) -> int:
    """Sign of a + b*M^(1/3) + c*M^(2/3) for rational a, b, c and M >= 1."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if M < 1:
        raise ValueError("M must be >= 1")
    den = a.denominator
    den = den * b.denominator // gcd(den, b.denominator)
    den = den * c.denominator // gcd(den, c.denominator)
    A = int(a * den)
    B = int(b * den)
    C = int(c * den)
    r = icbrt(M)
    if r * r * r == M:
        val = A + B * r + C * r * r
        return (val > 0) - (val < 0)
    if A == 0 and B == 0 and C == 0:
        return 0
    norm = A ** 3 + B ** 3 * M + C ** 3 * M * M - 3 * A * B * C * M
    return (norm > 0) - (norm < 0)


def _abs_combo_gt(a, b, c, ta, tb, tc, M: int) -> bool:
    """|a + b*M^(1/3) + c*M^(2/3)| > ta + tb*M^(1/3) + tc*M^(2/3),
    assuming the right side is nonnegative."""
    return (cbrt_combo_sign(a - ta, b - tb, c - tc, M) > 0
            or cbrt_combo_sign(a + ta, b + tb, c + tc, M) < 0)


def centered_sum_tail(N: int, M: int, threshold) -> Fraction:
    """Exact Pr(|sum_{i<=M} Y_i| > M^(2/3) * threshold).

    Uses |N*b - M| > M^(2/3)*theta  <=>  |N*b - M|^3 * q^3 > M^2 * p^3 for
    theta = p/q, so the cube comparison never leaves the integers.
    """
    theta = Fraction(threshold)
    if N < 2 or M < 1:
        raise ValueError("need N >= 2 and M >= 1")
    if theta < 0:
        raise ValueError("threshold must be >= 0")
    p3 = theta.numerator ** 3
    q3 = theta.denominator ** 3
    bound = M * M * p3
    num = 0
    for b in range(M + 1):
        u = abs(N * b - M)
        if u ** 3 * q3 > bound:
            num += comb(M, b) * (N - 1) ** (M - b)
    return Fraction(num, N ** M)


def find_M(N: int, M_cap: int):
    """Smallest M in [N^3, M_cap] with centered_sum_tail(N, M, 1/N) <= 1/N,
    or None when no such M exists under the cap.

    The tail condition is equivalent to W >= (N-1)*N^(M-1) where W is the
    binomial window mass sum_{|N*b-M| <= M^(2/3)/N} C(M,b)*(N-1)^(M-b).
    The scan keeps the distribution's modal term T incrementally; since
    every window term is <= T, window_count * T < threshold rejects M
    outright, and only inconclusive cases pay for the exact window sum.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    if M_cap < N ** 3:
        raise ValueError(f"cap {M_cap} is below N^3 = {N ** 3}")
    M0 = N ** 3
    m = (M0 + 1) // N                       # binomial mode floor((M+1)/N)
    T = comb(M0, m) * (N - 1) ** (M0 - m)   # modal term at M0
    thr = (N - 1) * N ** (M0 - 1)
    for M in range(M0, M_cap + 1):
        if M > M0:
            # advance modal term M-1 -> M at the old mode b = m
            T, rem = divmod(T * (N - 1) * M, M - m)
            assert rem == 0
            new_m = (M + 1) // N
            if new_m != m:
                # shift mode b = m -> m+1: multiply C ratio, drop one
                # factor of N-1
                T, rem = divmod(T * (M - m), (m + 1) * (N - 1))
                assert rem == 0
                m = new_m
            thr *= N
        u_max = icbrt(M * M // N ** 3)      # largest |N*b - M| inside
        lo = -(-(M - u_max) // N)           # ceil
        hi = (M + u_max) // N
        if hi < lo:
            continue                        # empty window, tail is 1
        if (hi - lo + 1) * T < thr:
            continue                        # window mass provably < 1 - 1/N
        if _window_sum_reaches(N, M, lo, hi, m, T, thr):
            return M
    return None


def _window_sum_reaches(N: int, M: int, lo: int, hi: int, m: int,
                        T: int, thr: int) -> bool:
    """Exact test sum_{b=lo..hi} C(M,b)*(N-1)^(M-b) >= thr, walking outward
    from the modal term with exact integer ratio updates."""
    total = T if lo <= m <= hi else 0
    if total >= thr:
        return True
    term = T
    b = m
    while b < hi:                            # walk right
        term, rem = divmod(term * (M - b), (b + 1) * (N - 1))
        assert rem == 0
        b += 1
        if b >= lo:
            total += term
            if total >= thr:
                return True
    term = T
    b = m
    while b > lo:                            # walk left
        term, rem = divmod(term * b * (N - 1), M - b + 1)
        assert rem == 0
        b -= 1
        if b <= hi:
            total += term
            if total >= thr:
                return True
    return total >= thr


@dataclass(frozen=True)
class CounterexampleReport:
    N: int
    M: "int | None"
    found: bool
    cap: "int | None"
    admissible_tail: "Fraction | None"       # Pr(|sum Y| > M^(2/3)/N)
    p_centered: "Fraction | None"            # Pr(|S_M| > 1/2)
    bound_centered: Fraction                 # 1 - 1/N
    centered_holds: "bool | None"
    p_extended: "Fraction | None"            # Pr(|S_M + X_{M+1}| > 3/N)
    bound_extended: Fraction                 # 2/N
    extended_holds: "bool | None"
    refutation: "dict | None"

    def to_jsonable(self) -> dict:
        law = {"Y": {str(self.N - 1): Fraction(1, self.N),
                     "-1": Fraction(self.N - 1, self.N)},
               "X": "Y + M^(-1/3)",
               "S_M": "M^(-2/3) * (X_1 + ... + X_M)"}
        return jsonify({
            "N": self.N, "M": self.M, "found": self.found, "cap": self.cap,
            "law": law,
            "admissible_tail": self.admissible_tail,
            "p_centered": self.p_centered,
            "bound_centered": self.bound_centered,
            "centered_holds": self.centered_holds,
            "p_extended": self.p_extended,
            "bound_extended": self.bound_extended,
            "extended_holds": self.extended_holds,
            "refutation": self.refutation,
        })


def _pmf_numerators(N: int, M: int) -> "list[int]":
    """C(M,b)*(N-1)^(M-b) for b = 0..M (denominator N^M)."""
    out = []
    term = (N - 1) ** M          # b = 0
    out.append(term)
    for b in range(M):
        term, rem = divmod(term * (M - b), (b + 1) * (N - 1))
        assert rem == 0
        out.append(term)
    return out


def normalized_sum_tail(N: int, M: int, t) -> Fraction:
    """Exact Pr(|S_M| > t) with S_M = 1 + (N*B - M)*M^(-2/3)."""
    t = Fraction(t)
    if t < 0:
        raise ValueError("t must be >= 0")
    nums = _pmf_numerators(N, M)
    total = 0
    for b in range(M + 1):
        u = N * b - M
        # M^(2/3) * S_M = u + M^(2/3); threshold scales the same way
        if _abs_combo_gt(u, 0, 1, 0, 0, t, M):
            total += nums[b]
    return Fraction(total, N ** M)


def extended_sum_tail(N: int, M: int, t) -> Fraction:
    """Exact Pr(|S_M + X_{M+1}| > t) with X_{M+1} = Y_{M+1} + M^(-1/3)."""
    t = Fraction(t)
    if t < 0:
        raise ValueError("t must be >= 0")
    nums = _pmf_numerators(N, M)
    total = 0
    for b in range(M + 1):
        u = N * b - M
        # M^(2/3)*(S_M + X_{M+1}) = u + M^(1/3) + (1 + y)*M^(2/3)
        for y, weight in ((N - 1, 1), (-1, N - 1)):
            if _abs_combo_gt(u, 1, 1 + y, 0, 0, t, M):
                total += nums[b] * weight
    return Fraction(total, N ** (M + 1))


def refutes_constant(N: int, M: int, c, t) -> "tuple[bool, Fraction, Fraction]":
    """Does Pr(|S_M| > t) <= c * Pr(|S_M + X_{M+1}| > t/c) fail here?

    Failure at c propagates to every c' <= c because c * Pr(> t/c) is
    nondecreasing in c.
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    lhs = normalized_sum_tail(N, M, t)
    rhs = extended_sum_tail(N, M, Fraction(t) / c)
    return lhs > c * rhs, lhs, rhs


def verify_counterexample(N: int, M: "int | None" = None,
                          cap: "int | None" = None) -> CounterexampleReport:
    """Exact verification of the weighted-sum failure instance.

    Checks Pr(|S_M| > 1/2) >= 1 - 1/N and Pr(|S_M + X_{M+1}| > 3/N) <= 2/N,
    then evaluates the contrast at c = N/3, t = 1/2: together these show no
    universal constant c <= N/3 can relate the two weighted partial sums.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    used_cap = None
    if M is None:
        used_cap = cap if cap is not None else max(N ** 3, 100_000)
        M = find_M(N, used_cap)
        if M is None:
            return CounterexampleReport(
                N=N, M=None, found=False, cap=used_cap,
                admissible_tail=None, p_centered=None,
                bound_centered=1 - Fraction(1, N), centered_holds=None,
                p_extended=None, bound_extended=Fraction(2, N),
                extended_holds=None, refutation=None)
    admissible = centered_sum_tail(N, M, Fraction(1, N))
    p_cent = normalized_sum_tail(N, M, Fraction(1, 2))
    p_ext = extended_sum_tail(N, M, Fraction(3, N))
    c_star = Fraction(N, 3)
    fails, lhs, rhs = refutes_constant(N, M, c_star, Fraction(1, 2))
    return CounterexampleReport(
        N=N, M=M, found=True, cap=used_cap,
        admissible_tail=admissible,
        p_centered=p_cent,
        bound_centered=1 - Fraction(1, N),
        centered_holds=p_cent >= 1 - Fraction(1, N),
        p_extended=p_ext,
        bound_extended=Fraction(2, N),
        extended_holds=p_ext <= Fraction(2, N),
        refutation={
            "c": c_star,
            "t": Fraction(1, 2),
            "lhs": lhs,
            "rhs_prob": rhs,
            "rhs_total": c_star * rhs,
            "fails": fails,
            "covers": "all c <= N/3 by monotonicity of c * Pr(> t/c) in c",
            # the two headline bounds alone already force failure for
            # c <= min(N/6, (N-1)/2); the direct evaluation above extends
            # the range to N/3
            "bound_implied_c": min(Fraction(N, 6), Fraction(N - 1, 2)),
        })
