"""Exact verification of tail comparison inequalities.

Every checker here decides a statement of the form

    Pr(||L|| > t) <= factor * Pr(||R|| > t / scale)   for all t > 0

(with > replaced by >= in weak mode on either side) by evaluating both step
functions at a finite set of critical thresholds.  Both sides are constant
between consecutive jump radii, so the sweep is exhaustive; no sampling or
rounding is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dists import (
    DEFAULT_SUPPORT_CAP,
    DiscreteDist,
    Norm,
    STRICT,
    TailCurve,
    WEAK,
    _check_mode,
    iid_sum,
    path_max_curve,
    rat,
    tail_curve,
    weighted_iid_sum,
)
from .reports import HOLDS, InequalityReport, VIOLATED

ZERO = Fraction(0)
ONE = Fraction(1)


def threshold_candidates(jumps, mixed_modes: bool = False) -> "list[Fraction]":
    """Finite set of thresholds covering every constancy region.

    jumps: all gauge values (from both sides, already in a common space)
    where either step function can change.  Returns each positive jump, a
    point below the first, a point beyond the last, and, when the two sides
    use different modes, the midpoints of consecutive jumps (a left
    continuous and a right continuous step function realize a new value pair
    strictly between jumps).
    """
    pos = sorted({q for q in jumps if q > 0})
    if not pos:
        return [ONE]
    cands = [pos[0] / 2]
    cands.extend(pos)
    cands.append(pos[-1] * 2)
    if mixed_modes:
        cands.extend((a + b) / 2 for a, b in zip(pos, pos[1:]))
        cands.sort()
    return cands


@dataclass(frozen=True)
class SweepOutcome:
    """Worst case found while sweeping candidate thresholds."""

    status: str
    worst_q: Fraction          # gauge-space threshold at the worst margin
    lhs: Fraction              # lhs tail there
    rhs: Fraction              # factor * rhs tail there
    margin: Fraction           # rhs - lhs there (negative iff violated)
    witness_q: "Fraction | None"
    max_lhs: Fraction          # largest lhs seen (0 means the check was idle)


def sweep_curves(lhs_curve: TailCurve, rhs_curve: TailCurve, factor: Fraction,
                 scale: Fraction, lhs_mode: str = STRICT,
                 rhs_mode: "str | None" = None) -> SweepOutcome:
    """Exact sweep of lhs(t) <= factor * rhs(t/scale) over all t > 0.

    scale is in radius space; in gauge space (euclidean) it acts squared.
    Candidates carry both coordinates so no per-candidate division happens
    in the hot loop.
    """
    rhs_mode = lhs_mode if rhs_mode is None else rhs_mode
    _check_mode(lhs_mode)
    _check_mode(rhs_mode)
    if lhs_curve.norm is not rhs_curve.norm:
        raise ValueError("curves use different norms")
    scale_g = scale ** lhs_curve.norm.scale_exponent
    jumps = set(lhs_curve.criticals)
    jumps.update(r * scale_g for r in rhs_curve.criticals)
    qs = threshold_candidates(jumps, mixed_modes=lhs_mode != rhs_mode)

    # Track the worst margin only where lhs > 0: a candidate with lhs = 0
    # can never violate, and past both supports every comparison degenerates
    # to 0 <= 0, which would mask the real worst case.
    worst = None  # (margin, q, lhs, rhs)
    idle = None   # fallback when lhs is identically zero
    witness_q = None
    max_lhs = ZERO
    for q in qs:
        lv = lhs_curve.at_gauge(q, lhs_mode)
        rv = factor * rhs_curve.at_gauge(q / scale_g, rhs_mode)
        margin = rv - lv
        if lv > max_lhs:
            max_lhs = lv
        if lv == 0:
            if idle is None:
                idle = (margin, q, lv, rv)
            continue
        if worst is None or margin < worst[0]:
            worst = (margin, q, lv, rv)
            if margin < 0 and witness_q is None:
                witness_q = q
    margin, q, lv, rv = worst if worst is not None else idle
    status = VIOLATED if margin < 0 else HOLDS
    return SweepOutcome(status, q, lv, rv, margin, witness_q, max_lhs)


def _report(claim_id: str, params: dict, outcome: SweepOutcome,
            norm: Norm, note: "str | None" = None) -> InequalityReport:
    witness = None
    if outcome.status == VIOLATED:
        witness = {
            "t": outcome.worst_q,
            "lhs": outcome.lhs,
            "rhs": outcome.rhs,
        }
    if outcome.max_lhs == 0:
        idle_note = "lhs identically zero"
        note = idle_note if note is None else f"{note}; {idle_note}"
    if norm.scale_exponent == 2:
        space_note = "thresholds are squared radii (euclidean gauge)"
        note = space_note if note is None else f"{note}; {space_note}"
    return InequalityReport(
        claim_id=claim_id,
        params=params,
        worst_t=outcome.worst_q,
        lhs=outcome.lhs,
        rhs=outcome.rhs,
        margin=outcome.margin,
        status=outcome.status,
        witness=witness,
        note=note,
    )


def check_theorem1(X: DiscreteDist, j: int, k: int, c1=Fraction(3),
                   c2=Fraction(10), norm: Norm = Norm.ABS1D,
                   lhs_mode: str = STRICT, rhs_mode: "str | None" = None,
                   cap: int = DEFAULT_SUPPORT_CAP) -> InequalityReport:
    """Pr(||S_j|| > t) <= c1 * Pr(||S_k|| > t/c2) for all t > 0."""
    c1, c2 = rat(c1), rat(c2)
    _require(1 <= j <= k, f"need 1 <= j <= k, got j={j}, k={k}")
    _require(c1 > 0 and c2 > 0, "constants must be positive")
    lhs = tail_curve(iid_sum(X, j, cap), norm)
    rhs = tail_curve(iid_sum(X, k, cap), norm)
    outcome = sweep_curves(lhs, rhs, c1, c2, lhs_mode, rhs_mode)
    params = {"j": j, "k": k, "c1": c1, "c2": c2, "norm": norm,
              "modes": (lhs_mode, rhs_mode or lhs_mode)}
    return _report("theorem1", params, outcome, norm)


def check_latala_sharp(X: DiscreteDist, norm: Norm = Norm.ABS1D,
                       lhs_mode: str = STRICT, rhs_mode: "str | None" = None,
                       cap: int = DEFAULT_SUPPORT_CAP) -> InequalityReport:
    """Pr(||X1|| > t) <= 2 * Pr(||X1 + X2|| > 2t/3) for all t > 0.

    Treated as an external claim under test, not assumed.
    """
    lhs = tail_curve(X, norm)
    rhs = tail_curve(iid_sum(X, 2, cap), norm)
    outcome = sweep_curves(lhs, rhs, Fraction(2), Fraction(3, 2),
                           lhs_mode, rhs_mode)
    params = {"j": 1, "k": 2, "c1": Fraction(2), "c2": Fraction(3, 2),
              "norm": norm, "modes": (lhs_mode, rhs_mode or lhs_mode)}
    return _report("latala_sharp", params, outcome, norm,
                   note="external claim [L]")


def check_levy_ottaviani(X: DiscreteDist, k: int, c1=Fraction(3),
                         c2=Fraction(3), norm: Norm = Norm.ABS1D,
                         lhs_mode: str = STRICT,
                         rhs_mode: "str | None" = None,
                         cap: int = DEFAULT_SUPPORT_CAP) -> InequalityReport:
    """Pr(max_j ||S_j|| > t) <= c1 * max_j Pr(||S_j|| > t/c2), all t > 0."""
    c1, c2 = rat(c1), rat(c2)
    _require(k >= 1, f"k must be >= 1, got {k}")
    lhs = path_max_curve(X, k, norm, cap)
    partial_curves = [tail_curve(iid_sum(X, j, cap), norm)
                      for j in range(1, k + 1)]
    rhs = upper_envelope(partial_curves)
    outcome = sweep_curves(lhs, rhs, c1, c2, lhs_mode, rhs_mode)
    params = {"k": k, "c1": c1, "c2": c2, "norm": norm,
              "modes": (lhs_mode, rhs_mode or lhs_mode)}
    return _report("levy_ottaviani", params, outcome, norm)


def check_corollary4(X: DiscreteDist, k: int, c1=Fraction(9),
                     c2=Fraction(30), norm: Norm = Norm.ABS1D,
                     lhs_mode: str = STRICT, rhs_mode: "str | None" = None,
                     cap: int = DEFAULT_SUPPORT_CAP) -> InequalityReport:
    """Pr(max_j ||S_j|| > t) <= c1 * Pr(||S_k|| > t/c2) for all t > 0."""
    c1, c2 = rat(c1), rat(c2)
    _require(k >= 1, f"k must be >= 1, got {k}")
    lhs = path_max_curve(X, k, norm, cap)
    rhs = tail_curve(iid_sum(X, k, cap), norm)
    outcome = sweep_curves(lhs, rhs, c1, c2, lhs_mode, rhs_mode)
    params = {"k": k, "c1": c1, "c2": c2, "norm": norm,
              "modes": (lhs_mode, rhs_mode or lhs_mode)}
    return _report("corollary4", params, outcome, norm)


def check_corollary5(X: DiscreteDist, alphas, c1=Fraction(10),
                     c2=Fraction(90), norm: Norm = Norm.ABS1D,
                     lhs_mode: str = STRICT, rhs_mode: "str | None" = None,
                     cap: int = DEFAULT_SUPPORT_CAP) -> InequalityReport:
    """Pr(||sum_i alpha_i X_i|| > t) <= c1 * Pr(||S_k|| > t/c2), |alpha_i| <= 1."""
    c1, c2 = rat(c1), rat(c2)
    coeffs = [rat(a) for a in alphas]
    _require(bool(coeffs), "alphas must be nonempty")
    for a in coeffs:
        if abs(a) > 1:
            raise ValueError(f"weight {a} out of range, need |alpha_i| <= 1")
    k = len(coeffs)
    lhs = tail_curve(weighted_iid_sum(X, coeffs, cap), norm)
    rhs = tail_curve(iid_sum(X, k, cap), norm)
    outcome = sweep_curves(lhs, rhs, c1, c2, lhs_mode, rhs_mode)
    params = {"k": k, "alphas": coeffs, "c1": c1, "c2": c2, "norm": norm,
              "modes": (lhs_mode, rhs_mode or lhs_mode)}
    return _report("corollary5", params, outcome, norm)


def check_corollary6(X: DiscreteDist, j: int, k: int, c1=Fraction(6),
                     c2=Fraction(20), norm: Norm = Norm.ABS1D,
                     lhs_mode: str = STRICT, rhs_mode: "str | None" = None,
                     cap: int = DEFAULT_SUPPORT_CAP) -> InequalityReport:
    """Pr(||S_j|| > t) <= (c1*j/k) * Pr(||S_k|| > k*t/(c2*j)) for 1 <= k <= j."""
    c1, c2 = rat(c1), rat(c2)
    _require(1 <= k <= j, f"need 1 <= k <= j, got j={j}, k={k}")
    lhs = tail_curve(iid_sum(X, j, cap), norm)
    rhs = tail_curve(iid_sum(X, k, cap), norm)
    ratio = Fraction(j, k)
    outcome = sweep_curves(lhs, rhs, c1 * ratio, c2 * ratio,
                           lhs_mode, rhs_mode)
    params = {"j": j, "k": k, "c1": c1, "c2": c2, "norm": norm,
              "modes": (lhs_mode, rhs_mode or lhs_mode)}
    return _report("corollary6", params, outcome, norm)


def upper_envelope(curves: "list[TailCurve]") -> TailCurve:
    """Pointwise maximum of survival step curves, again a step curve.

    All inputs share a norm.  The envelope jumps only where some input
    jumps, so its criticals are the union of the inputs' criticals.
    """
    if not curves:
        raise ValueError("need at least one curve")
    norm = curves[0].norm
    if any(c.norm is not norm for c in curves):
        raise ValueError("curves use different norms")
    crits = sorted({q for c in curves for q in c.criticals})
    values = tuple(
        max(c.at_gauge(q, STRICT) for c in curves) for q in crits
    )
    return TailCurve(norm, tuple(crits), values)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)
