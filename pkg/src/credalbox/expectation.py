"""Interval expected utility over box-constrained probability simplexes.

An act carries an exhaustive, mutually exclusive set of outcomes; each
outcome has a utility and a probability interval.  The feasible
distributions are the points of the simplex that respect every bound.
The extreme expected utilities are reached by greedy mass allocation:
fix every coordinate at its lower bound, then pour the leftover mass
into the worst-utility outcomes first (for the infimum) or the
best-utility outcomes first (for the supremum), capping each coordinate
at its upper bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .intervals import VACUOUS, Interval, ProbInterval

#: slack used when checking that a probability box admits a distribution
FEASIBILITY_TOL = 1e-9


class FeasibilityError(ValueError):
    """No distribution satisfies the act's probability box."""


@dataclass(frozen=True)
class Outcome:
    """One cell of an act's outcome partition."""

    label: str
    utility: float
    prob: ProbInterval = field(default_factory=lambda: VACUOUS)

    def __post_init__(self):
        if not self.label:
            raise ValueError("outcome label must be non-empty")
        if math.isnan(self.utility) or math.isinf(self.utility):
            raise ValueError(f"outcome {self.label!r} has non-finite utility")


@dataclass(frozen=True)
class Act:
    """A named act with its outcome partition."""

    name: str
    outcomes: tuple[Outcome, ...]

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        if not self.name:
            raise ValueError("act name must be non-empty")
        if not self.outcomes:
            raise ValueError(f"act {self.name!r} has no outcomes")
        labels = [o.label for o in self.outcomes]
        if len(set(labels)) != len(labels):
            raise ValueError(f"act {self.name!r} repeats an outcome label")
        _check_feasible(self.name, [o.prob.lo for o in self.outcomes],
                        [o.prob.hi for o in self.outcomes])

    def labels(self) -> tuple[str, ...]:
        return tuple(o.label for o in self.outcomes)

    def outcome(self, label: str) -> Outcome:
        for o in self.outcomes:
            if o.label == label:
                return o
        raise KeyError(f"act {self.name!r} has no outcome {label!r}")


@dataclass(frozen=True)
class DecisionProblem:
    """A named, ordered collection of acts."""

    name: str
    acts: tuple[Act, ...]

    def __post_init__(self):
        object.__setattr__(self, "acts", tuple(self.acts))
        if not self.acts:
            raise ValueError(f"problem {self.name!r} has no acts")
        names = [a.name for a in self.acts]
        if len(set(names)) != len(names):
            raise ValueError(f"problem {self.name!r} repeats an act name")

    def act(self, name: str) -> Act:
        for a in self.acts:
            if a.name == name:
                return a
        raise KeyError(f"problem {self.name!r} has no act {name!r}")

    @property
    def act_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.acts)


def _check_feasible(name: str, lows: list[float], highs: list[float]) -> None:
    lo_sum = math.fsum(lows)
    hi_sum = math.fsum(highs)
    if lo_sum > 1.0 + FEASIBILITY_TOL:
        raise FeasibilityError(
            f"act {name!r}: outcome lower bounds sum to {lo_sum:.12g}, above 1"
        )
    if hi_sum < 1.0 - FEASIBILITY_TOL:
        raise FeasibilityError(
            f"act {name!r}: outcome upper bounds sum to {hi_sum:.12g}, below 1"
        )


def _allocate(lows: list[float], highs: list[float], utils: list[float],
              order: list[int]) -> float:
    p = list(lows)
    residual = 1.0 - math.fsum(lows)
    for i in order:
        if residual <= 0.0:
            break
        room = highs[i] - p[i]
        add = room if room < residual else residual
        p[i] += add
        residual -= add
    # summed in outcome order so both passes agree exactly on point boxes
    return math.fsum(p[i] * utils[i] for i in range(len(p)))


def eu_interval(act: Act) -> Interval:
    """Exact bounds on expected utility over the act's probability box."""
    lows = [o.prob.lo for o in act.outcomes]
    highs = [o.prob.hi for o in act.outcomes]
    utils = [o.utility for o in act.outcomes]
    _check_feasible(act.name, lows, highs)
    n = len(utils)
    ascending = sorted(range(n), key=lambda i: (utils[i], i))
    descending = sorted(range(n), key=lambda i: (-utils[i], i))
    lo = _allocate(lows, highs, utils, ascending)
    hi = _allocate(lows, highs, utils, descending)
    if lo > hi:  # guard against stray rounding on near-degenerate boxes
        lo = hi = (lo + hi) / 2.0
    return Interval(lo, hi)


def eu_all(problem: DecisionProblem) -> dict[str, Interval]:
    """Expected-utility interval for every act, keyed by act name."""
    return {a.name: eu_interval(a) for a in problem.acts}
