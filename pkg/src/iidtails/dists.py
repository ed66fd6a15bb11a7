"""Exact finite discrete distributions on rational points.

Everything here is computed in exact rational arithmetic (fractions.Fraction).
The euclidean norm is handled through squared values (the "gauge") so that
every order comparison against a rational threshold stays rational; abs1d and
sup norms compare radii directly.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Union

PointLike = Union[tuple, list, int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_SUPPORT_CAP = 2_000_000

STRICT = "strict"
WEAK = "weak"
MODES = (STRICT, WEAK)


class SupportCapExceeded(RuntimeError):
    """An intermediate support grew past the configured atom cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"support size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


def rat(value) -> Fraction:
    """Coerce to Fraction, rejecting floats (they are not exact inputs)."""
    if isinstance(value, float):
        raise TypeError(
            f"refusing float {value!r}: pass Fraction, int, or 'p/q' string"
        )
    return Fraction(value)


def as_point(x: PointLike, dim: "int | None" = None) -> "tuple[Fraction, ...]":
    """Coerce a scalar or coordinate sequence to a canonical point."""
    if isinstance(x, (tuple, list)):
        pt = tuple(rat(c) for c in x)
    else:
        pt = (rat(x),)
    if dim is not None and len(pt) != dim:
        raise ValueError(f"point {x!r} has length {len(pt)}, expected {dim}")
    return pt


class Norm(Enum):
    """Supported norms. abs1d is |x| in dimension 1, sup is max_i |x_i|,
    euclidean is the usual 2-norm compared through its square."""

    ABS1D = "abs1d"
    SUP = "sup"
    EUCLIDEAN = "euclidean"

    @property
    def scale_exponent(self) -> int:
        """e such that gauge(c*x) = c**e * gauge(x) for rational c > 0."""
        return 2 if self is Norm.EUCLIDEAN else 1

    def gauge(self, point: "tuple[Fraction, ...]") -> Fraction:
        """Order-preserving rational stand-in for ||point||: the norm itself
        for abs1d and sup, the squared norm for euclidean."""
        if self is Norm.ABS1D:
            if len(point) != 1:
                raise ValueError("abs1d norm requires dimension 1")
            return abs(point[0])
        if self is Norm.SUP:
            return max(abs(c) for c in point)
        return sum((c * c for c in point), ZERO)

    def to_gauge(self, t: Fraction) -> Fraction:
        """Map a radius t >= 0 into gauge space (t or t**2)."""
        return t * t if self is Norm.EUCLIDEAN else t


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be 'strict' or 'weak', got {mode!r}")
    return mode


class DiscreteDist:
    """A finite map point -> probability with probabilities summing to 1.

    Atoms are canonical: points are tuples of Fractions in lowest terms, all
    distinct, all of length ``dim``; probabilities are strictly positive.
    Instances are immutable by convention and compare by value.
    """

    __slots__ = ("dim", "atoms")

    def __init__(self, atoms, dim: "int | None" = None):
        pairs = atoms.items() if isinstance(atoms, Mapping) else list(atoms)
        canon: "dict[tuple[Fraction, ...], Fraction]" = {}
        for x, p in pairs:
            pt = as_point(x)
            if dim is None:
                dim = len(pt)
            elif len(pt) != dim:
                raise ValueError(
                    f"point {pt} has length {len(pt)}, expected dim {dim}"
                )
            prob = rat(p)
            if prob <= 0:
                raise ValueError(f"probability of atom {pt} is {prob}, not positive")
            if pt in canon:
                raise ValueError(f"duplicate atom at {pt}")
            canon[pt] = prob
        if not canon:
            raise ValueError("distribution needs at least one atom")
        total = sum(canon.values())
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, expected exactly 1")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "atoms", canon)

    def __setattr__(self, name, value):
        raise AttributeError("DiscreteDist is immutable")

    @property
    def support(self) -> "list[tuple[Fraction, ...]]":
        """Atoms in sorted (lexicographic) order, for deterministic iteration."""
        return sorted(self.atoms)

    def p(self, x: PointLike) -> Fraction:
        return self.atoms.get(as_point(x, self.dim), ZERO)

    def scalar_items(self) -> "list[tuple[Fraction, Fraction]]":
        """Sorted (value, probability) pairs; only valid in dimension 1."""
        if self.dim != 1:
            raise ValueError("scalar_items requires dimension 1")
        return sorted((x[0], p) for x, p in self.atoms.items())

    def __eq__(self, other):
        if not isinstance(other, DiscreteDist):
            return NotImplemented
        return self.dim == other.dim and self.atoms == other.atoms

    def __len__(self):
        return len(self.atoms)

    def __repr__(self):
        inner = ", ".join(
            f"{tuple(map(str, x)) if self.dim > 1 else str(x[0])}: {p}"
            for x, p in sorted(self.atoms.items())
        )
        return f"DiscreteDist({{{inner}}})"


def delta(x: PointLike, dim: "int | None" = None) -> DiscreteDist:
    """Point mass at x."""
    return DiscreteDist({as_point(x, dim): ONE})


def zero_point(dim: int) -> "tuple[Fraction, ...]":
    return (ZERO,) * dim


def convolve(a: DiscreteDist, b: DiscreteDist,
             cap: int = DEFAULT_SUPPORT_CAP) -> DiscreteDist:
    """Law of U + V for independent U ~ a, V ~ b, with exact merging."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    out: "dict[tuple[Fraction, ...], Fraction]" = {}
    for x, p in a.atoms.items():
        for y, q in b.atoms.items():
            z = tuple(xi + yi for xi, yi in zip(x, y))
            prev = out.get(z)
            if prev is None:
                if len(out) >= cap:
                    raise SupportCapExceeded(len(out) + 1, cap)
                out[z] = p * q
            else:
                out[z] = prev + p * q
    return DiscreteDist(out, dim=a.dim)


def affine(a: DiscreteDist, scale, shift: PointLike = 0) -> DiscreteDist:
    """Law of scale*U + shift; atoms merge when scale = 0."""
    s = rat(scale)
    sh = as_point(shift, a.dim) if isinstance(shift, (tuple, list)) \
        else (rat(shift),) * a.dim
    out: "dict[tuple[Fraction, ...], Fraction]" = {}
    for x, p in a.atoms.items():
        z = tuple(s * xi + ci for xi, ci in zip(x, sh))
        out[z] = out.get(z, ZERO) + p
    return DiscreteDist(out, dim=a.dim)


def iid_sum(x: DiscreteDist, k: int, cap: int = DEFAULT_SUPPORT_CAP) -> DiscreteDist:
    """Exact law of S_k = X_1 + ... + X_k for i.i.d. X_i ~ x.

    Uses a binary-power convolution schedule; the result is schedule
    independent because convolution is associative and commutative.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    result = None
    base = x
    n = k
    while True:
        if n & 1:
            result = base if result is None else convolve(result, base, cap)
        n >>= 1
        if n == 0:
            return result
        base = convolve(base, base, cap)


def weighted_iid_sum(x: DiscreteDist, alphas: Iterable,
                     cap: int = DEFAULT_SUPPORT_CAP) -> DiscreteDist:
    """Exact law of sum_i alpha_i X_i for i.i.d. X_i ~ x."""
    coeffs = [rat(a) for a in alphas]
    if not coeffs:
        raise ValueError("alphas must be nonempty")
    if all(a == 1 for a in coeffs):
        return iid_sum(x, len(coeffs), cap)
    result = None
    for a in coeffs:
        term = affine(x, a, 0)
        result = term if result is None else convolve(result, term, cap)
    return result


def tail(a: DiscreteDist, norm: Norm, t, mode: str = STRICT) -> Fraction:
    """Exact Pr(||U|| > t) (strict) or Pr(||U|| >= t) (weak)."""
    _check_mode(mode)
    tq = norm.to_gauge(_nonneg(t))
    total = ZERO
    if mode == STRICT:
        for pt, p in a.atoms.items():
            if norm.gauge(pt) > tq:
                total += p
    else:
        for pt, p in a.atoms.items():
            if norm.gauge(pt) >= tq:
                total += p
    return total


def _nonneg(t) -> Fraction:
    tt = rat(t)
    if tt < 0:
        raise ValueError(f"threshold must be >= 0, got {tt}")
    return tt


@dataclass(frozen=True)
class TailCurve:
    """The survival function t -> Pr(||U|| > t) as a finite step function.

    criticals are the distinct gauge values of the support, sorted ascending
    (squared radii under the euclidean norm); values[i] = Pr(gauge > criticals[i]),
    so values is nonincreasing and ends at 0.  Below the first critical the
    survival probability is 1.
    """

    norm: Norm
    criticals: "tuple[Fraction, ...]"
    values: "tuple[Fraction, ...]"

    def __post_init__(self):
        if len(self.criticals) != len(self.values):
            raise ValueError("criticals and values must have equal length")
        if not self.criticals:
            raise ValueError("a tail curve needs at least one critical")
        if any(b <= a for a, b in zip(self.criticals, self.criticals[1:])):
            raise ValueError("criticals must be strictly increasing")
        if any(b > a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("values must be nonincreasing")
        if self.values[-1] != 0:
            raise ValueError("survival beyond the largest critical must be 0")

    def at_gauge(self, q: Fraction, mode: str = STRICT) -> Fraction:
        """Evaluate at a threshold already in gauge space."""
        _check_mode(mode)
        if mode == STRICT:
            i = bisect_right(self.criticals, q)
        else:
            i = bisect_left(self.criticals, q)
        return ONE if i == 0 else self.values[i - 1]

    def at_radius(self, t, mode: str = STRICT) -> Fraction:
        return self.at_gauge(self.norm.to_gauge(_nonneg(t)), mode)


def tail_curve(a: DiscreteDist, norm: Norm) -> TailCurve:
    """Exact survival step function of ||U|| in gauge space."""
    mass: "dict[Fraction, Fraction]" = {}
    for pt, p in a.atoms.items():
        g = norm.gauge(pt)
        mass[g] = mass.get(g, ZERO) + p
    crits = sorted(mass)
    values = []
    acc = ZERO  # mass strictly above the current critical
    for g in reversed(crits):
        values.append(acc)
        acc += mass[g]
    values.reverse()
    return TailCurve(norm, tuple(crits), tuple(values))


def _path_dp(x: DiscreteDist, k: int, norm: Norm, t, mode: str,
             cap: int) -> "tuple[list[Fraction], Fraction]":
    """Shared DP: returns (per-step absorbed masses, surviving mass).

    Maintains the sub-probability law of S_j restricted to paths whose
    prefixes all stayed inside the threshold, absorbing exceeding mass at
    each step.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    _check_mode(mode)
    tq = norm.to_gauge(_nonneg(t))
    strict = mode == STRICT
    alive: "dict[tuple[Fraction, ...], Fraction]" = {zero_point(x.dim): ONE}
    absorbed: "list[Fraction]" = []
    for _ in range(k):
        nxt: "dict[tuple[Fraction, ...], Fraction]" = {}
        out_mass = ZERO
        for s, ps in alive.items():
            for y, py in x.atoms.items():
                z = tuple(si + yi for si, yi in zip(s, y))
                p = ps * py
                g = norm.gauge(z)
                if (g > tq) if strict else (g >= tq):
                    out_mass += p
                elif z in nxt:
                    nxt[z] += p
                else:
                    if len(nxt) >= cap:
                        raise SupportCapExceeded(len(nxt) + 1, cap)
                    nxt[z] = p
        absorbed.append(out_mass)
        alive = nxt
    retained = sum(alive.values(), ZERO)
    return absorbed, retained


def path_max_tail(x: DiscreteDist, k: int, norm: Norm, t,
                  mode: str = STRICT, cap: int = DEFAULT_SUPPORT_CAP) -> Fraction:
    """Exact Pr(sup_{1<=j<=k} ||S_j|| > t) (or >= t in weak mode)."""
    _, retained = _path_dp(x, k, norm, t, mode, cap)
    return ONE - retained


def first_exceedance_probs(x: DiscreteDist, k: int, norm: Norm, t,
                           mode: str = STRICT,
                           cap: int = DEFAULT_SUPPORT_CAP) -> "list[Fraction]":
    """Pr(A_j) for A_j = {||S_i|| inside for all i < j, ||S_j|| outside}.

    The A_j partition the path-max exceedance event, so their sum equals
    path_max_tail exactly.
    """
    absorbed, _ = _path_dp(x, k, norm, t, mode, cap)
    return absorbed


def path_max_gauge_dist(x: DiscreteDist, k: int, norm: Norm,
                        cap: int = DEFAULT_SUPPORT_CAP) -> "dict[Fraction, Fraction]":
    """Exact law of max_{1<=j<=k} gauge(S_j) as a map gauge value -> mass.

    Independent of path_max_tail's absorbing DP; used to build the running
    maximum's full tail curve (and to cross-check the DP).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    # state: (current sum, running max gauge) -> mass
    states: "dict[tuple[tuple[Fraction, ...], Fraction], Fraction]" = {}
    for y, py in x.atoms.items():
        g = norm.gauge(y)
        key = (y, g)
        states[key] = states.get(key, ZERO) + py
    for _ in range(k - 1):
        nxt: "dict[tuple[tuple[Fraction, ...], Fraction], Fraction]" = {}
        for (s, m), ps in states.items():
            for y, py in x.atoms.items():
                z = tuple(si + yi for si, yi in zip(s, y))
                g = norm.gauge(z)
                key = (z, m if m >= g else g)
                if key in nxt:
                    nxt[key] += ps * py
                else:
                    if len(nxt) >= cap:
                        raise SupportCapExceeded(len(nxt) + 1, cap)
                    nxt[key] = ps * py
        states = nxt
    out: "dict[Fraction, Fraction]" = {}
    for (_, m), p in states.items():
        out[m] = out.get(m, ZERO) + p
    return out


def path_max_curve(x: DiscreteDist, k: int, norm: Norm,
                   cap: int = DEFAULT_SUPPORT_CAP) -> TailCurve:
    """Tail curve (in gauge space) of the running maximum max_j ||S_j||."""
    mass = path_max_gauge_dist(x, k, norm, cap)
    crits = sorted(mass)
    values = []
    acc = ZERO
    for g in reversed(crits):
        values.append(acc)
        acc += mass[g]
    values.reverse()
    return TailCurve(norm, tuple(crits), tuple(values))
