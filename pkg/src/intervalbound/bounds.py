"""Sharp second-moment bounds on P(X outside (-a, b)).

For a zero-mean unit-variance random variable X and an open interval
(-a, b) containing 0 with a >= b, the exclusion probability satisfies

    P(X not in (-a, b)) <=  1                       if a*b <= 1,
                            (4 + (a-b)^2)/(a+b)^2   if (a-b)*b <= 2 <= 2*a*b,
                            1/(1 + b^2)             if (a-b)*b >= 2,

and each case is attained by an explicit two- or three-atom distribution.
The family interpolates between the (modified) Chebyshev bound at a = b
and the Cantelli bound as a -> infinity.  This module evaluates the bound,
classifies the active case, builds the attaining distributions, expands the
dual quadratic-majorant certificates, and reduces general mean/variance
inputs and quadratic-polynomial events to the canonical setting.

Everything here is pure float arithmetic on scalars; the functions are
stateless and thread-safe.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "DomainError",
    "IntervalSpec",
    "BoundCase",
    "BoundResult",
    "DiscreteDistribution",
    "QuadraticCertificate",
    "QuadraticEventResult",
    "canonicalize",
    "classify_case",
    "bound",
    "always_bound",
    "chebyshev_bound",
    "modified_chebyshev_bound",
    "cantelli_bound",
    "extremal_distribution",
    "certificate",
    "standardize",
    "quadratic_event_bound",
]

# Tolerance for the moment identities a returned distribution must satisfy.
# Closed-form constructions meet 1e-12 easily; numerically derived supports
# (oracle solutions) are guaranteed to 1e-9, so the type gate sits there.
MOMENT_TOL = 1e-9

# Atoms whose mass falls below this are artifacts of a case boundary and
# are dropped before the remaining masses are renormalized.
MASS_DROP_TOL = 1e-15


class DomainError(ValueError):
    """An input violates the hypotheses of the bound (no silent clamping)."""


def _require_finite(name, x):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise DomainError(f"{name} must be a real number, got {x!r}")
    if math.isnan(x):
        raise DomainError(f"{name} must not be NaN")
    return float(x)


@dataclass(frozen=True)
class IntervalSpec:
    """Open interval (-a, b) around 0 in canonical orientation a >= b.

    ``a`` may be +infinity (the one-sided Cantelli limit); ``b`` is always
    finite.  ``reflected`` records whether the user's interval had to be
    mirrored (x -> -x preserves mean 0 and variance 1) to reach this form.
    """

    a: float
    b: float
    reflected: bool = False

    def __post_init__(self):
        a = _require_finite("a", self.a)
        b = _require_finite("b", self.b)
        if a <= 0 or b <= 0:
            raise DomainError(f"interval endpoints must be positive, got a={a}, b={b}")
        if math.isinf(b):
            raise DomainError("b must be finite (only a may be infinite)")
        if a < b:
            raise DomainError(f"canonical orientation requires a >= b, got a={a} < b={b}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


class BoundCase(enum.Enum):
    """Which of the three closed forms is active."""

    DEGENERATE_ONE = "DegenerateOne"
    INTERPOLATED = "Interpolated"
    CANTELLI_LIKE = "CantelliLike"


@dataclass(frozen=True)
class BoundResult:
    value: float
    case: BoundCase
    interval: IntervalSpec
    sharp: bool = True


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finitely supported distribution with mean 0 and second moment 1.

    ``atoms`` is a tuple of (location, mass) pairs with strictly increasing
    locations and strictly positive masses summing to 1.
    """

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((float(x), float(p)) for x, p in self.atoms)
        if not atoms:
            raise DomainError("distribution needs at least one atom")
        locs = [x for x, _ in atoms]
        masses = [p for _, p in atoms]
        if any(math.isnan(x) or math.isinf(x) for x in locs):
            raise DomainError("atom locations must be finite")
        if any(x1 >= x2 for x1, x2 in zip(locs, locs[1:])):
            raise DomainError("atom locations must be strictly increasing")
        if any(p <= 0 for p in masses):
            raise DomainError("atom masses must be positive (drop zero-mass atoms)")
        total = math.fsum(masses)
        mean = math.fsum(p * x for x, p in atoms)
        second = math.fsum(p * x * x for x, p in atoms)
        if abs(total - 1.0) > MOMENT_TOL:
            raise DomainError(f"masses sum to {total}, not 1")
        if abs(mean) > MOMENT_TOL:
            raise DomainError(f"mean is {mean}, not 0")
        if abs(second - 1.0) > MOMENT_TOL:
            raise DomainError(f"second moment is {second}, not 1")
        object.__setattr__(self, "atoms", atoms)

    @property
    def locations(self):
        return tuple(x for x, _ in self.atoms)

    @property
    def masses(self):
        return tuple(p for _, p in self.atoms)

    def mean(self):
        return math.fsum(p * x for x, p in self.atoms)

    def second_moment(self):
        return math.fsum(p * x * x for x, p in self.atoms)

    def exclusion_mass(self, interval: IntervalSpec):
        """Total mass on {x <= -a} union {x >= b} (endpoints count as excluded)."""
        return math.fsum(p for x, p in self.atoms if x <= -interval.a or x >= interval.b)


def _build_distribution(pairs):
    """Drop boundary artifacts (mass < 1e-15), renormalize, sort, validate."""
    kept = [(x, p) for x, p in pairs if p > MASS_DROP_TOL]
    total = math.fsum(p for _, p in kept)
    kept = [(x, p / total) for x, p in sorted(kept)]
    return DiscreteDistribution(tuple(kept))


@dataclass(frozen=True)
class QuadraticCertificate:
    """Coefficients of f(x) = c0 + c1*x + c2*x^2 with f >= 0 on all of R.

    For any distribution with mean 0 and second moment 1, E f(X) = c0 + c2;
    when f additionally dominates the exclusion indicator, c0 + c2 is an
    upper bound on the exclusion probability.
    """

    c0: float
    c1: float
    c2: float

    def __post_init__(self):
        c0 = _require_finite("c0", self.c0)
        c1 = _require_finite("c1", self.c1)
        c2 = _require_finite("c2", self.c2)
        scale = 1.0 + abs(c0) + abs(c1) + abs(c2)
        if c2 < -1e-12 * scale:
            raise DomainError(f"c2 must be nonnegative, got {c2}")
        if c2 <= 1e-12 * scale:
            # Degenerate to an affine function: only nonnegative constants qualify.
            if abs(c1) > 1e-12 * scale or c0 < -1e-12 * scale:
                raise DomainError("a quadratic with c2 = 0 is nonnegative only if c1 = 0 and c0 >= 0")
        elif c1 * c1 > 4.0 * c0 * c2 + 1e-10 * scale * scale:
            raise DomainError("quadratic dips below zero: c1^2 > 4*c0*c2")
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    @property
    def objective(self):
        return self.c0 + self.c2

    def __call__(self, x):
        return self.c0 + self.c1 * x + self.c2 * x * x


def canonicalize(left_magnitude, right) -> IntervalSpec:
    """Orient an interval (-left_magnitude, right) so that a >= b.

    The exclusion probability is invariant under x -> -x, so the bound for
    the reflected interval equals the bound for the original one.  Only the
    left magnitude may be infinite; pass the one-sided interval as
    ``canonicalize(math.inf, b)``.
    """
    left = _require_finite("left_magnitude", left_magnitude)
    right = _require_finite("right", right)
    if left <= 0 or right <= 0:
        raise DomainError(f"endpoints must be positive, got ({left}, {right})")
    if math.isinf(right):
        raise DomainError("right endpoint must be finite (only the left magnitude may be infinite)")
    if left >= right:
        return IntervalSpec(a=left, b=right, reflected=False)
    return IntervalSpec(a=right, b=left, reflected=True)


def classify_case(interval: IntervalSpec) -> BoundCase:
    """Classify with exact float comparisons: a*b <= 1 first, then (a-b)*b <= 2.

    The closed forms agree at both boundaries, so the tie-break affects only
    the label, never the value.  a = +inf always lands in the Cantelli case.
    """
    a, b = interval.a, interval.b
    if a * b <= 1.0:
        return BoundCase.DEGENERATE_ONE
    if (a - b) * b <= 2.0:
        return BoundCase.INTERPOLATED
    return BoundCase.CANTELLI_LIKE


def bound(interval: IntervalSpec) -> BoundResult:
    """Sharp upper bound on P(X not in (-a, b)) over mean-0 variance-1 laws."""
    a, b = interval.a, interval.b
    case = classify_case(interval)
    if case is BoundCase.DEGENERATE_ONE:
        value = 1.0
    elif case is BoundCase.INTERPOLATED:
        d = a - b
        s = a + b
        value = (4.0 + d * d) / (s * s)
    else:
        value = 1.0 / (1.0 + b * b)
    return BoundResult(value=value, case=case, interval=interval)


def always_bound(interval: IntervalSpec) -> float:
    """min(1, (4+(a-b)^2)/(a+b)^2): valid in all three cases, sharp in the first two."""
    a, b = interval.a, interval.b
    if math.isinf(a):
        raise DomainError("always_bound requires finite a; use bound() for the Cantelli limit")
    d = a - b
    s = a + b
    return min(1.0, (4.0 + d * d) / (s * s))


def _positive_finite(name, x):
    v = _require_finite(name, x)
    if v <= 0 or math.isinf(v):
        raise DomainError(f"{name} must be positive and finite, got {v}")
    return v


def chebyshev_bound(b) -> float:
    """P(|X| >= b) <= 1/b^2 (sharp only for b >= 1)."""
    b = _positive_finite("b", b)
    return 1.0 / (b * b)


def modified_chebyshev_bound(b) -> float:
    """P(|X| >= b) <= min(1, 1/b^2), sharp for every b > 0."""
    b = _positive_finite("b", b)
    return min(1.0, 1.0 / (b * b))


def cantelli_bound(b) -> float:
    """One-sided bound P(X >= b) <= 1/(1+b^2), sharp for every b > 0."""
    b = _positive_finite("b", b)
    return 1.0 / (1.0 + b * b)


def extremal_distribution(interval: IntervalSpec) -> DiscreteDistribution:
    """Distribution attaining bound(interval) with equality.

    Case DegenerateOne: atoms -sqrt(a/b), sqrt(b/a) with masses b/(a+b),
    a/(a+b) (both atoms lie outside the interval, so the whole mass is
    excluded).  Case Interpolated: atoms -a, (b-a)/2, b with masses
    (2-(a-b)*b)/(a+b)^2, 4*(a*b-1)/(a+b)^2, (2+(a-b)*a)/(a+b)^2.  Case
    CantelliLike (including a = +inf): atoms -1/b, b with masses
    b^2/(1+b^2), 1/(1+b^2).  Zero-mass atoms at case boundaries are dropped.
    """
    a, b = interval.a, interval.b
    case = classify_case(interval)
    if case is BoundCase.DEGENERATE_ONE:
        pairs = [(-math.sqrt(a / b), b / (a + b)), (math.sqrt(b / a), a / (a + b))]
    elif case is BoundCase.INTERPOLATED:
        s2 = (a + b) * (a + b)
        pairs = [
            (-a, (2.0 - (a - b) * b) / s2),
            ((b - a) / 2.0, 4.0 * (a * b - 1.0) / s2),
            (b, (2.0 + (a - b) * a) / s2),
        ]
    else:
        pairs = [(-1.0 / b, b * b / (1.0 + b * b)), (b, 1.0 / (1.0 + b * b))]
    return _build_distribution(pairs)


def certificate(interval: IntervalSpec) -> QuadraticCertificate:
    """Quadratic dominating the exclusion indicator with E f(X) = bound(interval).

    The three majorants are the constant 1, ((2x+a-b)/(a+b))^2, and
    ((b*x+1)/(b^2+1))^2, expanded here to c0 + c1*x + c2*x^2.
    """
    a, b = interval.a, interval.b
    case = classify_case(interval)
    if case is BoundCase.DEGENERATE_ONE:
        return QuadraticCertificate(1.0, 0.0, 0.0)
    if case is BoundCase.INTERPOLATED:
        d = a - b
        s2 = (a + b) * (a + b)
        return QuadraticCertificate(d * d / s2, 4.0 * d / s2, 4.0 / s2)
    q = 1.0 + b * b
    return QuadraticCertificate(1.0 / (q * q), 2.0 * b / (q * q), b * b / (q * q))


def standardize(lower, upper, mean, variance) -> IntervalSpec:
    """Reduce a general mean/variance problem to the canonical interval.

    For any Y with the given mean and variance, (Y - mean)/sqrt(variance)
    has mean 0 and variance 1, and Y not in (lower, upper) is the event that
    the standardized variable leaves (-(mean-lower)/sd, (upper-mean)/sd).
    Exactly one of lower/upper may be infinite.
    """
    mean = _require_finite("mean", mean)
    variance = _require_finite("variance", variance)
    lower = _require_finite("lower", lower)
    upper = _require_finite("upper", upper)
    if variance <= 0 or math.isinf(variance) or math.isinf(mean):
        raise DomainError(f"variance must be positive and finite, got {variance}")
    if math.isinf(lower) and math.isinf(upper):
        raise DomainError("at most one of lower/upper may be infinite")
    if not (lower < mean < upper):
        raise DomainError(f"interval ({lower}, {upper}) must contain the mean {mean}")
    sd = math.sqrt(variance)
    left = (mean - lower) / sd
    right = (upper - mean) / sd
    if math.isinf(right):
        # (left-tail event) reflect x -> -x so the infinite side becomes the left one
        return IntervalSpec(a=math.inf, b=left, reflected=True)
    return canonicalize(left, right)


@dataclass(frozen=True)
class QuadraticEventResult:
    """Bound on P(X^2 + A*X + B >= 0), tagged sharp or merely valid.

    ``roots`` holds the real roots (r1 <= r2) of the polynomial when they
    exist; the event is then {X not in (r1, r2)}.  ``reduced`` carries the
    canonical interval bound when 0 lies strictly between the roots.
    """

    value: float
    sharp: bool
    roots: tuple | None = None
    reduced: BoundResult | None = None

    @property
    def tag(self):
        return "sharp" if self.sharp else "valid_not_sharp"


def quadratic_event_bound(A, B) -> QuadraticEventResult:
    """Sharp bound on P(X^2 + A*X + B >= 0) when the complement straddles 0.

    With no real roots the event is certain (value 1, sharp).  With real
    roots r1 < 0 < r2 (equivalently B < 0) the event is the exclusion of
    (r1, r2) and the interval bound applies after reflection.  Otherwise 0
    is not interior to (r1, r2), the interval hypothesis fails, and 1 is
    returned as a valid but not sharp bound.
    """
    A = _require_finite("A", A)
    B = _require_finite("B", B)
    disc = A * A - 4.0 * B
    if disc <= 0.0:
        # x^2 + A*x + B >= 0 everywhere: the event is certain.
        return QuadraticEventResult(value=1.0, sharp=True)
    # Stable root pair: larger-magnitude root first, the other via B = r1*r2.
    sqrt_disc = math.sqrt(disc)
    if A >= 0:
        r_big = (-A - sqrt_disc) / 2.0
    else:
        r_big = (-A + sqrt_disc) / 2.0
    r_other = B / r_big if r_big != 0 else -A
    r1, r2 = min(r_big, r_other), max(r_big, r_other)
    if B < 0.0:
        reduced = bound(canonicalize(-r1, r2))
        return QuadraticEventResult(value=reduced.value, sharp=True, roots=(r1, r2), reduced=reduced)
    return QuadraticEventResult(value=1.0, sharp=False, roots=(r1, r2))
