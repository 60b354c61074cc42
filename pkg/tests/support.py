"""Shared oracles and generators for the test suite.

The expected-utility oracle enumerates the vertices of the feasible
polytope {p : lo <= p <= hi, sum p = 1} directly: every vertex has at
most one coordinate strictly between its bounds, so fixing all but one
coordinate at a bound and solving for the free one visits every vertex.
"""

from __future__ import annotations

import itertools
import math
import random

from hypothesis import strategies as st

from credalbox import Act, Outcome, ProbInterval

TOL = 1e-9


def close(got: float, want: float, tol: float = TOL) -> bool:
    return abs(got - want) <= tol


def interval_close(iv, lo: float, hi: float, tol: float = TOL) -> bool:
    return abs(iv.lo - lo) <= tol and abs(iv.hi - hi) <= tol


def vertex_distributions(lows, highs):
    """Extreme points of the box-constrained probability simplex slice."""
    n = len(lows)
    vertices = []
    for free in range(n):
        others = [i for i in range(n) if i != free]
        for bits in itertools.product((0, 1), repeat=n - 1):
            p = [0.0] * n
            for idx, bit in zip(others, bits):
                p[idx] = highs[idx] if bit else lows[idx]
            rest = 1.0 - math.fsum(p[i] for i in others)
            # the window absorbs float noise; the clamp restores the bound
            if lows[free] - 1e-12 <= rest <= highs[free] + 1e-12:
                p[free] = min(max(rest, lows[free]), highs[free])
                vertices.append(tuple(p))
    return vertices


def vertex_eu_bounds(utils, lows, highs):
    """Oracle inf/sup of expected utility, by vertex enumeration."""
    vertices = vertex_distributions(lows, highs)
    values = [
        math.fsum(p * u for p, u in zip(vertex, utils))
        for vertex in vertices
    ]
    return min(values), max(values), vertices


def random_box(rng: random.Random, n: int):
    """A feasible probability box built around a random anchor
    distribution; the anchor always satisfies the box."""
    raw = [rng.random() + 1e-3 for _ in range(n)]
    total = math.fsum(raw)
    anchor = [x / total for x in raw]
    lows = [max(0.0, p * rng.random()) for p in anchor]
    highs = [min(1.0, p + (1.0 - p) * rng.random()) for p in anchor]
    return lows, highs, anchor


def random_act(rng: random.Random, name: str = "a",
               n_min: int = 2, n_max: int = 5) -> Act:
    n = rng.randint(n_min, n_max)
    lows, highs, _ = random_box(rng, n)
    return Act(name, tuple(
        Outcome(f"o{i}", rng.uniform(-50.0, 50.0), ProbInterval(lows[i], highs[i]))
        for i in range(n)
    ))


@st.composite
def feasible_boxes(draw, n_min: int = 2, n_max: int = 5):
    """(lows, highs) with sum(lows) <= 1 <= sum(highs) by construction."""
    n = draw(st.integers(n_min, n_max))
    weights = draw(st.lists(
        st.floats(0.01, 1.0, allow_nan=False), min_size=n, max_size=n))
    total = math.fsum(weights)
    anchor = [w / total for w in weights]
    lo_frac = draw(st.lists(
        st.floats(0.0, 1.0, allow_nan=False), min_size=n, max_size=n))
    hi_frac = draw(st.lists(
        st.floats(0.0, 1.0, allow_nan=False), min_size=n, max_size=n))
    lows = [max(0.0, p * f) for p, f in zip(anchor, lo_frac)]
    highs = [min(1.0, p + (1.0 - p) * f) for p, f in zip(anchor, hi_frac)]
    return lows, highs


@st.composite
def feasible_acts(draw, name: str = "a", n_min: int = 2, n_max: int = 5):
    lows, highs = draw(feasible_boxes(n_min, n_max))
    utils = draw(st.lists(
        st.floats(-50.0, 50.0, allow_nan=False),
        min_size=len(lows), max_size=len(lows)))
    return Act(name, tuple(
        Outcome(f"o{i}", u, ProbInterval(lo, hi))
        for i, (u, lo, hi) in enumerate(zip(utils, lows, highs))
    ))


def prob_intervals():
    """Strategy for arbitrary probability intervals."""
    return st.tuples(
        st.floats(0.0, 1.0, allow_nan=False),
        st.floats(0.0, 1.0, allow_nan=False),
    ).map(lambda pair: ProbInterval(min(pair), max(pair)))


def utility_intervals(span: float = 100.0):
    from credalbox import Interval

    return st.tuples(
        st.floats(-span, span, allow_nan=False),
        st.floats(-span, span, allow_nan=False),
    ).map(lambda pair: Interval(min(pair), max(pair)))


def int_intervals(span: int = 100):
    """Intervals with integer endpoints: argmax and tie-break properties
    stay decidable because all the score arithmetic is exact."""
    from credalbox import Interval

    return st.tuples(
        st.integers(-span, span), st.integers(-span, span),
    ).map(lambda pair: Interval(float(min(pair)), float(max(pair))))
