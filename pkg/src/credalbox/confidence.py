"""Exact binomial confidence intervals by direct tail inversion.

The two-sided interval at confidence level c puts (1-c)/2 of tail
probability on each side: the lower endpoint is the p solving
P[X >= x] = (1-c)/2 and the upper the p solving P[X <= x] = (1-c)/2,
with the endpoints pinned to 0 and 1 when x is 0 or n.  Tail
probabilities are summed directly from log-binomial terms and inverted
by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .intervals import ProbInterval

#: bisection stops once the bracket is narrower than this
BISECTION_TOL = 1e-10


@dataclass(frozen=True)
class SampleCount:
    """Successes out of trials, both non-negative with successes <= trials."""

    successes: int
    trials: int

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials!r}")
        if not 0 <= self.successes <= self.trials:
            raise ValueError(
                f"successes {self.successes!r} must lie in [0, {self.trials}]"
            )


def _binomial_terms(n: int, p: float, support: range) -> float:
    log_p = math.log(p)
    log_q = math.log1p(-p)
    lg_n = math.lgamma(n + 1)
    total = math.fsum(
        math.exp(lg_n - math.lgamma(i + 1) - math.lgamma(n - i + 1)
                 + i * log_p + (n - i) * log_q)
        for i in support
    )
    return min(1.0, total)


def binomial_cdf(k: int, n: int, p: float) -> float:
    """P[X <= k] for X ~ Binomial(n, p)."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n!r}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    if k < 0:
        return 0.0
    if k >= n:
        return 1.0
    if p == 0.0:
        return 1.0
    if p == 1.0:
        return 0.0
    return _binomial_terms(n, p, range(0, k + 1))


def binomial_sf(k: int, n: int, p: float) -> float:
    """P[X >= k] for X ~ Binomial(n, p)."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n!r}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    if k <= 0:
        return 1.0
    if k > n:
        return 0.0
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    return _binomial_terms(n, p, range(k, n + 1))


def _bisect(fn, target: float) -> float:
    """Root of fn(p) = target for fn monotone on [0, 1]."""
    lo, hi = 0.0, 1.0
    increasing = fn(1.0) >= fn(0.0)
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        value = fn(mid)
        if (value < target) == increasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def clopper_pearson(count: SampleCount, confidence: float) -> ProbInterval:
    """Two-sided exact binomial interval at the given confidence level."""
    if not 0.0 < confidence < 1.0:
        raise ValueError(
            f"confidence must lie strictly inside (0, 1), got {confidence!r}"
        )
    x, n = count.successes, count.trials
    tail = (1.0 - confidence) / 2.0
    if x == 0:
        lo = 0.0
    else:
        lo = _bisect(lambda p: binomial_sf(x, n, p), tail)
    if x == n:
        hi = 1.0
    else:
        hi = _bisect(lambda p: binomial_cdf(x, n, p), tail)
    lo = min(max(lo, 0.0), 1.0)
    hi = min(max(hi, lo), 1.0)
    return ProbInterval(lo, hi)
