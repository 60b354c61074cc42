"""Accepted statements, error-indexed bodies of knowledge, and the credal
levels they induce on a decision problem.

A body of knowledge collects the statements an agent is willing to treat
as settled at a given risk of error.  Two rules build bodies from an
initial corpus: a threshold rule (accept everything whose improbability
stays below the body's error level) and a next-most-probable rule (grow
the body one statement at a time, most probable first).  A body induces
a credal level by reading its statements as constraints on the outcome
probabilities of a decision problem: interval statements clamp an
event's bounds, accepted conditions pin an event as certain or
impossible, and class memberships trigger direct inference from the
most specific accepted reference class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .expectation import Act, DecisionProblem, FeasibilityError, Outcome, _check_feasible
from .intervals import CERTAIN, IMPOSSIBLE, ProbInterval, intersect


class InconsistentBodyError(ValueError):
    """A body of knowledge contains statements that cannot all hold."""


class ConflictingConstraintError(ValueError):
    """Constraints on the same event have an empty intersection."""


class NoUniqueReferenceClassError(ValueError):
    """Direct inference found no single most specific reference class."""


STATEMENT_KINDS = ("event-interval", "condition", "membership", "class-frequency")


@dataclass(frozen=True)
class Statement:
    """One statement of an initial corpus, with its credence.

    kind selects which fields apply:
      event-interval   -- event, interval
      condition        -- event, value
      membership       -- item, cls
      class-frequency  -- cls, event, interval
    """

    id: str
    kind: str
    prob: float = 1.0
    event: str | None = None
    interval: ProbInterval | None = None
    value: bool = True
    item: str | None = None
    cls: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("statement id must be non-empty")
        if self.kind not in STATEMENT_KINDS:
            raise ValueError(f"unknown statement kind {self.kind!r}")
        if not 0.0 <= self.prob <= 1.0:
            raise ValueError(f"statement {self.id!r}: prob must lie in [0, 1]")
        needs = {
            "event-interval": ("event", "interval"),
            "condition": ("event",),
            "membership": ("item", "cls"),
            "class-frequency": ("cls", "event", "interval"),
        }[self.kind]
        for name in needs:
            if getattr(self, name) is None:
                raise ValueError(
                    f"statement {self.id!r} of kind {self.kind!r} needs {name!r}"
                )

    @classmethod
    def event_interval(cls, id: str, event: str, interval: ProbInterval,
                       prob: float = 1.0) -> Statement:
        return cls(id=id, kind="event-interval", prob=prob, event=event,
                   interval=interval)

    @classmethod
    def condition(cls, id: str, event: str, value: bool = True,
                  prob: float = 1.0) -> Statement:
        return cls(id=id, kind="condition", prob=prob, event=event, value=value)

    @classmethod
    def membership(cls, id: str, item: str, in_cls: str,
                   prob: float = 1.0) -> Statement:
        return cls(id=id, kind="membership", prob=prob, item=item, cls=in_cls)

    @classmethod
    def class_frequency(cls, id: str, of_cls: str, event: str,
                        interval: ProbInterval, prob: float = 1.0) -> Statement:
        return cls(id=id, kind="class-frequency", prob=prob, cls=of_cls,
                   event=event, interval=interval)


def _check_statements_consistent(statements: Sequence[Statement]) -> None:
    ids = [s.id for s in statements]
    if len(set(ids)) != len(ids):
        raise InconsistentBodyError("statement ids repeat within one body")
    by_event: dict[str, list[Statement]] = {}
    for s in statements:
        if s.kind in ("event-interval", "condition"):
            by_event.setdefault(s.event, []).append(s)
    for event, group in by_event.items():
        merged: ProbInterval | None = None
        for s in group:
            iv = s.interval if s.kind == "event-interval" else (
                CERTAIN if s.value else IMPOSSIBLE)
            merged = iv if merged is None else intersect(merged, iv)
            if merged is None:
                culprits = ", ".join(repr(t.id) for t in group)
                raise InconsistentBodyError(
                    f"statements {culprits} cannot all hold for event {event!r}"
                )


@dataclass(frozen=True)
class BodyOfKnowledge:
    """Statements accepted at one error level of a nested (or merely
    indexed) family of corpora."""

    index: int
    error: float
    statements: tuple[Statement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "statements", tuple(self.statements))
        if self.index < 0:
            raise ValueError(f"body index must be non-negative, got {self.index!r}")
        if not 0.0 <= self.error <= 1.0:
            raise ValueError(f"body error must lie in [0, 1], got {self.error!r}")
        _check_statements_consistent(self.statements)


def accept_threshold(statements: Sequence[Statement],
                     error_levels: Sequence[float]) -> list[BodyOfKnowledge]:
    """Bodies K_0..K_m where K_j holds the statements with 1 - prob below
    the j-th error level.  K_0 is always the empty body at error 0."""
    levels = list(error_levels)
    for j, eps in enumerate(levels):
        if not 0.0 < eps <= 1.0:
            raise ValueError(f"error level {eps!r} must lie in (0, 1]")
        if j > 0 and eps <= levels[j - 1]:
            raise ValueError("error levels must be strictly increasing")
    bodies = [BodyOfKnowledge(0, 0.0, ())]
    for j, eps in enumerate(levels, start=1):
        accepted = tuple(s for s in statements if 1.0 - s.prob < eps)
        try:
            bodies.append(BodyOfKnowledge(j, eps, accepted))
        except InconsistentBodyError as exc:
            raise InconsistentBodyError(
                f"body {j} at error level {eps}: {exc}"
            ) from exc
    return bodies


def accept_next_most_probable(statements: Sequence[Statement]) -> list[BodyOfKnowledge]:
    """Bodies K_0..K_n grown one statement at a time, most probable first;
    each body's error is the largest improbability accepted so far."""
    ordered = sorted(statements, key=lambda s: -s.prob)
    bodies = [BodyOfKnowledge(0, 0.0, ())]
    error = 0.0
    accepted: list[Statement] = []
    for j, s in enumerate(ordered, start=1):
        accepted.append(s)
        error = max(error, 1.0 - s.prob)
        try:
            bodies.append(BodyOfKnowledge(j, error, tuple(accepted)))
        except InconsistentBodyError as exc:
            raise InconsistentBodyError(f"body {j}: {exc}") from exc
    return bodies


def _transitive_closure(pairs: frozenset[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    closure = set(pairs)
    grew = True
    while grew:
        grew = False
        for a, b in list(closure):
            for c, d in list(closure):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    grew = True
    return frozenset(closure)


@dataclass(frozen=True)
class ReferenceClassTable:
    """Known class frequencies plus a specificity order between classes.

    entries maps (class, event) pairs to frequency intervals; specificity
    lists (more_specific, less_specific) pairs and is closed under
    transitivity here.
    """

    entries: tuple[tuple[str, str, ProbInterval], ...] = ()
    specificity: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(self, "specificity",
                           _transitive_closure(frozenset(self.specificity)))
        for a, b in self.specificity:
            if a == b:
                raise ValueError(f"specificity order is cyclic at class {a!r}")
        seen: dict[tuple[str, str], ProbInterval] = {}
        for cls, event, iv in self.entries:
            key = (cls, event)
            if key in seen and seen[key] != iv:
                raise ValueError(
                    f"class {cls!r} has two different frequencies for {event!r}"
                )
            seen[key] = iv

    def freq(self, cls: str, event: str) -> ProbInterval | None:
        for c, e, iv in self.entries:
            if c == cls and e == event:
                return iv
        return None

    def more_specific(self, a: str, b: str) -> bool:
        return (a, b) in self.specificity

    def with_entries(self, extra: Iterable[tuple[str, str, ProbInterval]]
                     ) -> ReferenceClassTable:
        return ReferenceClassTable(self.entries + tuple(extra), self.specificity)


EMPTY_TABLE = ReferenceClassTable()


def direct_inference(item: str, event: str, accepted_classes: Iterable[str],
                     refs: ReferenceClassTable) -> ProbInterval:
    """Frequency interval from the unique most specific accepted class.

    Every accepted class must carry a frequency for the event.  When the
    most specific classes are incomparable and disagree, there is no
    unique answer and an error is raised.
    """
    classes = sorted(set(accepted_classes))
    if not classes:
        raise NoUniqueReferenceClassError(
            f"no reference class accepted for item {item!r} and event {event!r}"
        )
    missing = [c for c in classes if refs.freq(c, event) is None]
    if missing:
        raise NoUniqueReferenceClassError(
            f"class {missing[0]!r} has no known frequency for event {event!r}"
        )
    most_specific = [
        c for c in classes
        if not any(refs.more_specific(d, c) for d in classes if d != c)
    ]
    answers = {refs.freq(c, event) for c in most_specific}
    if len(answers) > 1:
        culprits = ", ".join(repr(c) for c in most_specific)
        raise NoUniqueReferenceClassError(
            f"incomparable reference classes {culprits} disagree about {event!r}"
        )
    return next(iter(answers))


@dataclass(frozen=True)
class CredalLevel:
    """Per-act probability assignments at one error level.

    assignments maps act name -> outcome label -> interval; outcomes not
    mentioned keep the bounds declared on the problem itself.
    """

    index: int
    error: float
    assignments: Mapping[str, Mapping[str, ProbInterval]] = field(default_factory=dict)

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"level index must be non-negative, got {self.index!r}")
        if not 0.0 <= self.error <= 1.0:
            raise ValueError(f"level error must lie in [0, 1], got {self.error!r}")
        frozen = {act: dict(boxes) for act, boxes in self.assignments.items()}
        object.__setattr__(self, "assignments", frozen)


@dataclass(frozen=True)
class CredalSequence:
    """Credal levels indexed 0..n with non-decreasing errors."""

    levels: tuple[CredalLevel, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        if not self.levels:
            raise ValueError("a credal sequence needs at least one level")
        for pos, level in enumerate(self.levels):
            if level.index != pos:
                raise ValueError(
                    f"level at position {pos} carries index {level.index}"
                )
            if pos > 0 and level.error < self.levels[pos - 1].error:
                raise ValueError(
                    f"level {pos} error {level.error} drops below level "
                    f"{pos - 1} error {self.levels[pos - 1].error}"
                )


def apply_level(problem: DecisionProblem, level: CredalLevel) -> DecisionProblem:
    """The problem with outcome bounds replaced by the level's assignments.

    Replacement is wholesale: an assigned interval need not nest inside
    the declared one.  Unknown act or outcome names are an error.
    """
    known = {a.name for a in problem.acts}
    for act_name in level.assignments:
        if act_name not in known:
            raise ValueError(
                f"level {level.index} assigns to unknown act {act_name!r}"
            )
    acts = []
    for act in problem.acts:
        over = level.assignments.get(act.name, {})
        labels = {o.label for o in act.outcomes}
        for label in over:
            if label not in labels:
                raise ValueError(
                    f"level {level.index} assigns to unknown outcome "
                    f"{label!r} of act {act.name!r}"
                )
        outs = tuple(
            Outcome(o.label, o.utility, over.get(o.label, o.prob))
            for o in act.outcomes
        )
        acts.append(Act(act.name, outs))
    return DecisionProblem(problem.name, tuple(acts))


def _event_constraints(body: BodyOfKnowledge,
                       refs: ReferenceClassTable) -> dict[str, ProbInterval]:
    """Event bounds entailed by a body's statements."""
    table = refs.with_entries(
        (s.cls, s.event, s.interval)
        for s in body.statements if s.kind == "class-frequency"
    )
    constraints: dict[str, ProbInterval] = {}

    def clamp(event: str, iv: ProbInterval, why: str) -> None:
        merged = iv if event not in constraints else intersect(constraints[event], iv)
        if merged is None:
            raise ConflictingConstraintError(
                f"body {body.index}: {why} leaves no probability for event {event!r}"
            )
        constraints[event] = merged

    for s in body.statements:
        if s.kind == "event-interval":
            clamp(s.event, s.interval, f"statement {s.id!r}")
        elif s.kind == "condition":
            clamp(s.event, CERTAIN if s.value else IMPOSSIBLE, f"statement {s.id!r}")

    memberships: dict[str, set[str]] = {}
    for s in body.statements:
        if s.kind == "membership":
            memberships.setdefault(s.item, set()).add(s.cls)
    for item in sorted(memberships):
        classes = memberships[item]
        events = sorted({
            e for c, e, _ in table.entries
            if c in classes and table.freq(c, e) is not None
        })
        for event in events:
            usable = {c for c in classes if table.freq(c, event) is not None}
            iv = direct_inference(item, event, usable, table)
            clamp(event, iv, f"direct inference for item {item!r}")
    return constraints


def level_from_body(body: BodyOfKnowledge, problem: DecisionProblem,
                    refs: ReferenceClassTable = EMPTY_TABLE,
                    extra: Mapping[str, Mapping[str, ProbInterval]] | None = None,
                    ) -> CredalLevel:
    """Resolve a body's statements into a credal level for the problem.

    Event constraints apply to every outcome sharing the event's label.
    In a two-outcome act, a constraint on one outcome forces the
    complementary bounds onto the other.  extra supplies act-keyed
    interval assertions that are intersected on top.
    """
    constraints = _event_constraints(body, refs)
    if extra:
        known = {a.name: set(a.labels()) for a in problem.acts}
        for act_name, box in extra.items():
            if act_name not in known:
                raise ValueError(
                    f"body {body.index}: asserted intervals for unknown "
                    f"act {act_name!r}"
                )
            for label in box:
                if label not in known[act_name]:
                    raise ValueError(
                        f"body {body.index}: asserted interval for unknown "
                        f"outcome {label!r} of act {act_name!r}"
                    )
    assignments: dict[str, dict[str, ProbInterval]] = {}
    for act in problem.acts:
        over: dict[str, ProbInterval] = {}
        for o in act.outcomes:
            if o.label in constraints:
                over[o.label] = constraints[o.label]
        if len(act.outcomes) == 2:
            first, second = act.outcomes
            forced = dict(over)
            for mine, other in ((first, second), (second, first)):
                if mine.label not in over:
                    continue
                comp = over[mine.label].complement()
                if other.label in forced:
                    merged = intersect(forced[other.label], comp)
                    if merged is None:
                        raise ConflictingConstraintError(
                            f"body {body.index}: constraints on {first.label!r} "
                            f"and {second.label!r} of act {act.name!r} conflict"
                        )
                    forced[other.label] = merged
                else:
                    forced[other.label] = comp
            over = forced
        for label, iv in ((extra or {}).get(act.name) or {}).items():
            if label in over:
                merged = intersect(over[label], iv)
                if merged is None:
                    raise ConflictingConstraintError(
                        f"body {body.index}: asserted interval for outcome "
                        f"{label!r} of act {act.name!r} conflicts with the "
                        f"statement-derived bounds"
                    )
                over[label] = merged
            else:
                over[label] = iv
        if over:
            box_lo = [over.get(o.label, o.prob).lo for o in act.outcomes]
            box_hi = [over.get(o.label, o.prob).hi for o in act.outcomes]
            try:
                _check_feasible(act.name, box_lo, box_hi)
            except FeasibilityError as exc:
                raise FeasibilityError(f"body {body.index}: {exc}") from exc
            assignments[act.name] = over
    return CredalLevel(index=body.index, error=body.error, assignments=assignments)


def sequence_from_bodies(bodies: Sequence[BodyOfKnowledge],
                         problem: DecisionProblem,
                         refs: ReferenceClassTable = EMPTY_TABLE) -> CredalSequence:
    """Credal sequence induced by resolving each body against the problem."""
    return CredalSequence(tuple(
        level_from_body(body, problem, refs) for body in bodies
    ))


def is_nested(seq: CredalSequence, problem: DecisionProblem) -> bool:
    """True when every later level's boxes sit inside every earlier one's."""
    resolved = [apply_level(problem, level) for level in seq.levels]
    for later in range(len(resolved)):
        for earlier in range(later):
            for act_late, act_early in zip(resolved[later].acts,
                                           resolved[earlier].acts):
                for o_late, o_early in zip(act_late.outcomes, act_early.outcomes):
                    if (o_late.prob.lo < o_early.prob.lo
                            or o_late.prob.hi > o_early.prob.hi):
                        return False
    return True
