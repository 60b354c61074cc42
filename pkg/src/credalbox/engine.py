"""Best-first exploration of a credal sequence under a tolerable-error
cutoff, plus two point-probability extensions: mixture expected utility
over weighted credal members and the share-of-parameter-range criterion."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .expectation import DecisionProblem, FeasibilityError, eu_all
from .intervals import Interval
from .knowledge import CredalLevel, CredalSequence, apply_level
from .ordering import maximal_set

DECIDED = "decided"
RISK_PROBLEM = "risk-problem"
NO_MANDATE = "no-mandate"


class InfeasibleLevelError(ValueError):
    """A credal level leaves some act with an empty probability box."""


@dataclass(frozen=True)
class ToleranceSpec:
    """How much probability of error the agent will tolerate.

    explicit mode carries the cutoff directly; odds-derived mode reads it
    off the stakes, as 1/(rho + 1) for rho the ratio of the larger of
    best gain and worst loss to the smaller.
    """

    mode: str
    max_error: float | None = None

    def __post_init__(self):
        if self.mode not in ("explicit", "odds-derived"):
            raise ValueError(f"unknown tolerance mode {self.mode!r}")
        if self.mode == "explicit":
            if self.max_error is None or not 0.0 <= self.max_error <= 1.0:
                raise ValueError(
                    f"explicit tolerance needs max_error in [0, 1], "
                    f"got {self.max_error!r}"
                )
        elif self.max_error is not None:
            raise ValueError("odds-derived tolerance carries no max_error")

    @classmethod
    def explicit(cls, max_error: float) -> ToleranceSpec:
        return cls(mode="explicit", max_error=max_error)

    @classmethod
    def odds_derived(cls) -> ToleranceSpec:
        return cls(mode="odds-derived")


def tolerable_error(problem: DecisionProblem, spec: ToleranceSpec) -> float:
    """Resolve a tolerance spec against a problem's stakes."""
    if spec.mode == "explicit":
        return spec.max_error
    utilities = [o.utility for act in problem.acts for o in act.outcomes]
    gain = max(utilities)
    loss = -min(utilities)
    if gain <= 0.0 or loss <= 0.0:
        raise ValueError(
            "odds-derived tolerance needs both a positive gain and a "
            "positive loss among the outcome utilities"
        )
    rho = max(gain, loss) / min(gain, loss)
    return 1.0 - rho / (rho + 1.0)


@dataclass(frozen=True)
class TraceRow:
    """What one explored level looked like."""

    index: int
    error: float
    eu: Mapping[str, Interval]
    maximal: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "eu", dict(self.eu))
        object.__setattr__(self, "maximal", tuple(self.maximal))


@dataclass(frozen=True)
class DecisionReport:
    """Outcome of exploring a credal sequence.

    status is decided (a single act survives dominance), risk-problem
    (every box collapsed to a point and point expected utility tied), or
    no-mandate (the tolerance cut exploration off first).
    """

    problem: str
    status: str
    tolerance: float
    act: str | None = None
    level_used: int | None = None
    error_used: float | None = None
    ambiguous: bool = False
    trace: tuple[TraceRow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "trace", tuple(self.trace))
        if self.status not in (DECIDED, RISK_PROBLEM, NO_MANDATE):
            raise ValueError(f"unknown report status {self.status!r}")

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "status": self.status,
            "tolerance": self.tolerance,
            "act": self.act,
            "level_used": self.level_used,
            "error_used": self.error_used,
            "ambiguous": self.ambiguous,
            "trace": [
                {
                    "index": row.index,
                    "error": row.error,
                    "eu": {
                        name: [iv.lo, iv.hi]
                        for name, iv in row.eu.items()
                    },
                    "maximal": list(row.maximal),
                }
                for row in self.trace
            ],
        }


def explore(problem: DecisionProblem, seq: CredalSequence,
            spec: ToleranceSpec | None = None) -> DecisionReport:
    """Walk the sequence from level 0 while error stays below tolerance.

    Stops with a decision at the first level whose maximal set is a
    single act.  A level whose boxes have all collapsed to points with
    the top acts still tied is reported as a bare risk problem: the
    first best act is named and flagged ambiguous.  Running out of
    tolerable levels yields no mandate.
    """
    spec = spec if spec is not None else ToleranceSpec.explicit(1.0)
    tolerance = tolerable_error(problem, spec)
    trace: list[TraceRow] = []
    for level in seq.levels:
        if level.error >= tolerance:
            break
        try:
            effective = apply_level(problem, level)
            eu = eu_all(effective)
        except FeasibilityError as exc:
            raise InfeasibleLevelError(
                f"level {level.index} (error {level.error:g}): {exc}"
            ) from exc
        surviving = maximal_set(eu)
        trace.append(TraceRow(level.index, level.error, eu, surviving.names))
        if len(surviving) == 1:
            return DecisionReport(
                problem=problem.name, status=DECIDED, tolerance=tolerance,
                act=surviving.names[0], level_used=level.index,
                error_used=level.error, trace=tuple(trace),
            )
        degenerate = all(
            o.prob.lo == o.prob.hi
            for act in effective.acts for o in act.outcomes
        )
        if degenerate:
            # ties are certain here: a unique point maximum would have
            # been a singleton maximal set already
            best = max(eu, key=lambda name: eu[name].lo)
            return DecisionReport(
                problem=problem.name, status=RISK_PROBLEM, tolerance=tolerance,
                act=best, level_used=level.index, error_used=level.error,
                ambiguous=True, trace=tuple(trace),
            )
    return DecisionReport(
        problem=problem.name, status=NO_MANDATE, tolerance=tolerance,
        trace=tuple(trace),
    )


def _point_eu(utils: Sequence[float], probs: Sequence[float], act: str) -> float:
    if len(utils) != len(probs):
        raise ValueError(
            f"act {act!r}: {len(probs)} probabilities for {len(utils)} outcomes"
        )
    total = math.fsum(probs)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"act {act!r}: probabilities sum to {total!r}, not 1")
    if any(p < 0.0 for p in probs):
        raise ValueError(f"act {act!r}: negative probability")
    return math.fsum(p * u for p, u in zip(probs, utils))


@dataclass(frozen=True)
class WeightedCredal:
    """Finitely many point-probability members with weights summing to 1.

    Each member maps act name -> per-outcome probabilities, aligned with
    the act's outcome order.
    """

    members: tuple[tuple[Mapping[str, Sequence[float]], float], ...]

    def __post_init__(self):
        members = tuple(
            ({act: tuple(probs) for act, probs in assignment.items()}, weight)
            for assignment, weight in self.members
        )
        object.__setattr__(self, "members", members)
        if not members:
            raise ValueError("a weighted credal needs at least one member")
        if any(w < 0.0 for _, w in members):
            raise ValueError("member weights must be non-negative")
        total = math.fsum(w for _, w in members)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"member weights sum to {total!r}, not 1")


def higher_order_eu(problem: DecisionProblem, credal: WeightedCredal
                    ) -> dict[str, float]:
    """Weight-averaged point expected utility per act."""
    out: dict[str, float] = {}
    for act in problem.acts:
        utils = [o.utility for o in act.outcomes]
        terms = []
        for assignment, weight in credal.members:
            if act.name not in assignment:
                raise ValueError(f"a member assigns nothing to act {act.name!r}")
            terms.append(weight * _point_eu(utils, assignment[act.name], act.name))
        out[act.name] = math.fsum(terms)
    return out


@dataclass(frozen=True)
class ParameterizedCredal:
    """Credal members indexed by one real parameter over [lo, hi].

    mapping sends a parameter value to act-keyed outcome distributions;
    resolution fixes the uniform evaluation grid.
    """

    lo: float
    hi: float
    mapping: Callable[[float], Mapping[str, Sequence[float]]]
    resolution: int = 1000

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(
                f"parameter range [{self.lo!r}, {self.hi!r}] must be non-empty"
            )
        if self.resolution < 100:
            raise ValueError(
                f"resolution must be at least 100, got {self.resolution!r}"
            )


def starr(problem: DecisionProblem, credal: ParameterizedCredal
          ) -> tuple[str, dict[str, float]]:
    """Share of the parameter range where each act is point-optimal.

    The range is sampled at cell midpoints; a grid point where several
    acts tie contributes equally to each.  Returns the act with the
    largest share (ties to the first act) and every act's share.
    """
    span = credal.hi - credal.lo
    step = span / credal.resolution
    share = 1.0 / credal.resolution
    measures = {act.name: 0.0 for act in problem.acts}
    utils = {act.name: [o.utility for o in act.outcomes] for act in problem.acts}
    for k in range(credal.resolution):
        theta = credal.lo + (k + 0.5) * step
        assignment = credal.mapping(theta)
        scores: dict[str, float] = {}
        for act in problem.acts:
            if act.name not in assignment:
                raise ValueError(
                    f"parameter {theta!r}: no distribution for act {act.name!r}"
                )
            scores[act.name] = _point_eu(utils[act.name],
                                         assignment[act.name], act.name)
        best = max(scores.values())
        winners = [name for name, value in scores.items() if value == best]
        for name in winners:
            measures[name] += share / len(winners)
    winner = max(measures, key=lambda name: measures[name])
    return winner, measures
