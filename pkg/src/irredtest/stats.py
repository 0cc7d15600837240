"""Exact zero-count distributions and their normal approximations.

Counting zeros of a uniformly random function f : F_q^n -> F_q at the
q^n domain points is a binomial experiment; the models below record the
exact success probabilities as Fractions so that identities can be tested
with equality, not tolerance.  Normal approximations and quantiles serve
the planning side, where floats are the right tool.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian

from .errors import EmptyList, OrderOverflow, RangeError, TooLarge

KIND_SINGLE = "single"
KIND_PRODUCT = "product"
KIND_INTERSECTION = "intersection"
KIND_SUBSTITUTION = "substitution"


@dataclass(frozen=True)
class NormalApprox:
    """N(mean, sd) approximation to an observed zero fraction."""

    mean: float
    sd: float

    def central_interval(self, epsilon: float, s: float = None):
        """Symmetric interval with tail mass epsilon on each side."""
        if s is None:
            s = inverse_tail_quantile(epsilon)
        return ConfidenceInterval(
            estimate=self.mean, half_width=s * self.sd, level=1 - 2 * epsilon
        )


@dataclass(frozen=True)
class ConfidenceInterval:
    estimate: float
    half_width: float
    level: float

    @property
    def lo(self) -> float:
        return max(0.0, self.estimate - self.half_width)

    @property
    def hi(self) -> float:
        return min(1.0, self.estimate + self.half_width)

    @property
    def degenerate(self) -> bool:
        """True when the width collapsed (all-or-nothing counts)."""
        return self.half_width == 0.0

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class BinomialModel:
    """Zero counts k ~ B(trials, success_p) with exact rational parameters."""

    trials: int
    success_p: Fraction

    def __post_init__(self):
        if self.trials < 0:
            raise RangeError(f"trials must be >= 0, got {self.trials}")
        if not 0 <= self.success_p <= 1:
            raise RangeError(f"success probability {self.success_p} outside [0, 1]")

    def pmf(self, k: int) -> Fraction:
        if k < 0 or k > self.trials:
            return Fraction(0)
        p = self.success_p
        return math.comb(self.trials, k) * p**k * (1 - p) ** (self.trials - k)

    def pmf_float(self, k: int) -> float:
        """Log-space evaluation; usable at trial counts where exact
        rationals are too big to be worth materializing."""
        if k < 0 or k > self.trials:
            return 0.0
        p = float(self.success_p)
        if p == 0.0:
            return 1.0 if k == 0 else 0.0
        if p == 1.0:
            return 1.0 if k == self.trials else 0.0
        n = self.trials
        log_pmf = (
            math.lgamma(n + 1)
            - math.lgamma(k + 1)
            - math.lgamma(n - k + 1)
            + k * math.log(p)
            + (n - k) * math.log1p(-p)
        )
        return math.exp(log_pmf)

    def pmf_vector(self):
        return [self.pmf(k) for k in range(self.trials + 1)]

    def mean_fraction(self) -> Fraction:
        """Expected zero fraction k/trials; equals success_p."""
        return self.success_p

    def normal_approx(self) -> NormalApprox:
        """Gaussian approximation to the zero fraction k/trials."""
        if self.trials == 0:
            raise RangeError("no normal approximation for 0 trials")
        p = float(self.success_p)
        return NormalApprox(mean=p, sd=math.sqrt(p * (1 - p) / self.trials))


def _check_qn(q, n):
    if q < 2:
        raise RangeError(f"field order must be >= 2, got {q}")
    if n < 1:
        raise RangeError(f"need at least one variable, got {n}")
    if q**n >= 1 << 63:
        raise OrderOverflow(f"{q}^{n} points exceed the supported 64-bit range")


def gamma_model(q: int, n: int) -> BinomialModel:
    """Zero counts of a uniform function on q^n points: B(q^n, 1/q)."""
    _check_qn(q, n)
    return BinomialModel(trials=q**n, success_p=Fraction(1, q))


def product_model(q: int, n: int) -> BinomialModel:
    """Zero counts of a product of two independent uniform functions.

    At each point the product vanishes when either factor does, so the
    per-point probability is 1 - (1 - 1/q)^2 = (2q - 1)/q^2.
    """
    _check_qn(q, n)
    return BinomialModel(trials=q**n, success_p=Fraction(2 * q - 1, q * q))


def intersection_model(q: int, n: int, x_count: int) -> BinomialModel:
    """Zeros of a uniform function restricted to a fixed set of x_count points."""
    _check_qn(q, n)
    if not 0 <= x_count <= q**n:
        raise RangeError(f"x_count {x_count} outside [0, {q}^{n}]")
    return BinomialModel(trials=x_count, success_p=Fraction(1, q))


def intersection_expectation(q: int, c: int) -> Fraction:
    """Expected fraction cut out by c independent uniform constraints: q^-c."""
    if q < 2:
        raise RangeError(f"field order must be >= 2, got {q}")
    if c < 0:
        raise RangeError(f"constraint count must be >= 0, got {c}")
    return Fraction(1, q**c)


def substitution_model(q: int, n: int, gamma_x) -> BinomialModel:
    """Zero counts after substituting a uniform map into a fixed target set.

    gamma_x is the density of the target zero set X inside its own space;
    each of the q^n substituted points lands in X independently with that
    probability.
    """
    _check_qn(q, n)
    gamma_x = Fraction(gamma_x)
    if not 0 <= gamma_x <= 1:
        raise RangeError(f"gamma_x {gamma_x} outside [0, 1]")
    return BinomialModel(trials=q**n, success_p=gamma_x)


def det_expectation(q: int, r: int, c: int) -> Fraction:
    """Probability that a uniform r x c matrix over F_q has rank < r.

    Full row rank needs each of the r rows to avoid the span of the previous
    ones: success probability prod_{i<r} (1 - q^(i-c)).
    """
    if q < 2:
        raise RangeError(f"field order must be >= 2, got {q}")
    if not 1 <= r <= c:
        raise RangeError(f"need 1 <= rows <= cols, got {r} x {c}")
    full = Fraction(1)
    for i in range(r):
        full *= 1 - Fraction(1, q ** (c - i))
    return 1 - full


# ---------------------------------------------------------------------------
# quantiles and intervals

def inverse_tail_quantile(epsilon: float) -> float:
    """s such that the upper Gaussian tail beyond s has mass epsilon.

    Solved by bisection on the complementary error function; accurate to
    about 1e-9 over the supported range 0 < epsilon <= 1/2.
    """
    if not 0 < epsilon <= 0.5:
        raise RangeError(f"tail mass must be in (0, 1/2], got {epsilon}")
    lo, hi = 0.0, 40.0

    def tail(s):
        return 0.5 * math.erfc(s / math.sqrt(2))

    if tail(hi) > epsilon:
        raise RangeError(f"tail mass {epsilon} too small to invert")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if tail(mid) > epsilon:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12:
            break
    return 0.5 * (lo + hi)


def wald_interval(k: int, n_samples: int, epsilon: float) -> ConfidenceInterval:
    """Normal-approximation interval for a zero fraction from k hits in N draws.

    Two-sided level 1 - 2*epsilon; the plug-in width collapses to zero at
    k = 0 or k = N, flagged via `degenerate`.
    """
    if n_samples < 1:
        raise RangeError(f"need at least one sample, got {n_samples}")
    if not 0 <= k <= n_samples:
        raise RangeError(f"count {k} outside [0, {n_samples}]")
    s = inverse_tail_quantile(epsilon)
    p_hat = k / n_samples
    half = s * math.sqrt(p_hat * (1 - p_hat) / n_samples)
    return ConfidenceInterval(estimate=p_hat, half_width=half, level=1 - 2 * epsilon)


# ---------------------------------------------------------------------------
# brute force ground truth

def _as_point_indices(q, dims, points):
    """Mixed-radix indices of the given coordinate tuples inside F_q^dims."""
    idx = []
    for pt in points:
        if len(pt) != dims:
            raise RangeError(f"point {pt} does not have {dims} coordinates")
        acc = 0
        for c in pt:
            if not 0 <= c < q:
                raise RangeError(f"coordinate {c} outside [0, {q})")
            acc = acc * q + c
        idx.append(acc)
    return sorted(set(idx))


def brute_force_distribution(
    q: int,
    n: int,
    kind: str,
    x_points=None,
    m: int = None,
    limit: int = 10**7,
):
    """Exact zero-count pmf by enumerating every function in the model.

    Returns a list of q^n + 1 Fractions summing to one.  `kind` selects the
    generating process: "single" and "product" draw uniform functions on
    F_q^n, "intersection" restricts a single function to the point set
    x_points, "substitution" draws a uniform map into F_q^m and counts how
    often its values land in x_points.  Work is bounded by `limit`
    enumerated functions (pairs count once per component).
    """
    _check_qn(q, n)
    domain = q**n
    counts = [0] * (domain + 1)

    if kind == KIND_SINGLE:
        total = q ** domain
        if total > limit:
            raise TooLarge(f"{total} functions exceed the limit {limit}")
        for table in _cartesian(range(q), repeat=domain):
            counts[sum(1 for v in table if v == 0)] += 1
    elif kind == KIND_PRODUCT:
        per = q ** domain
        total = per * per
        if total > limit:
            raise TooLarge(f"{total} function pairs exceed the limit {limit}")
        tables = list(_cartesian(range(q), repeat=domain))
        zero_masks = [tuple(v == 0 for v in t) for t in tables]
        for za in zero_masks:
            for zb in zero_masks:
                counts[sum(1 for a, b in zip(za, zb) if a or b)] += 1
    elif kind == KIND_INTERSECTION:
        if x_points is None:
            raise EmptyList("intersection needs the point set x_points")
        xs = _as_point_indices(q, n, x_points)
        total = q ** domain
        if total > limit:
            raise TooLarge(f"{total} functions exceed the limit {limit}")
        for table in _cartesian(range(q), repeat=domain):
            counts[sum(1 for i in xs if table[i] == 0)] += 1
    elif kind == KIND_SUBSTITUTION:
        if m is None or m < 1:
            raise RangeError("substitution needs the target dimension m >= 1")
        if x_points is None:
            raise EmptyList("substitution needs the target point set x_points")
        codomain = q**m
        xs = set(_as_point_indices(q, m, x_points))
        total = codomain ** domain
        if total > limit:
            raise TooLarge(f"{total} maps exceed the limit {limit}")
        for table in _cartesian(range(codomain), repeat=domain):
            counts[sum(1 for v in table if v in xs)] += 1
    else:
        raise RangeError(f"unknown kind {kind!r}")

    return [Fraction(c, total) for c in counts]
