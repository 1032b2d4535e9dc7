"""Measurement scenarios, their joint events, and the ordered nerve of the cover."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import CoverageError, EmptyOutcome, MaximalityError, NotSubset, ScenarioError

Domain = tuple  # sorted tuple of measurement names


@dataclass(frozen=True, order=True)
class JointEvent:
    """An outcome assignment to a set of measurements.

    ``domain`` is sorted; ``outcomes[i]`` is the outcome of ``domain[i]``.
    The empty event (empty domain) is the unique event over no measurements.
    """

    domain: tuple[str, ...]
    outcomes: tuple[str, ...]

    def __post_init__(self):
        if len(self.domain) != len(self.outcomes):
            raise ScenarioError("event domain and outcomes differ in length")

    @classmethod
    def from_mapping(cls, assignment: Mapping[str, str]) -> "JointEvent":
        domain = tuple(sorted(assignment))
        return cls(domain, tuple(str(assignment[x]) for x in domain))

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.domain, self.outcomes))

    def outcome(self, measurement: str) -> str:
        return self.outcomes[self.domain.index(measurement)]

    def restrict(self, target: Iterable[str]) -> "JointEvent":
        return restrict_event(self, target)

    @property
    def key(self) -> str:
        """Outcome string in domain order, e.g. ``"01"``."""
        return "".join(self.outcomes)

    def __str__(self):
        return f"{''.join(self.domain)}->{self.key}" if self.domain else "()"


def restrict_event(e: JointEvent, target: Iterable[str]) -> JointEvent:
    target = set(target)
    if not target <= set(e.domain):
        raise NotSubset(f"{sorted(target)} is not a subset of {list(e.domain)}")
    pairs = [(x, o) for x, o in zip(e.domain, e.outcomes) if x in target]
    return JointEvent(tuple(x for x, _ in pairs), tuple(o for _, o in pairs))


def agrees(e: JointEvent, f: JointEvent) -> bool:
    """True when ``e`` and ``f`` assign the same outcome on their common domain."""
    fd = f.as_dict()
    return all(fd.get(x, o) == o for x, o in zip(e.domain, e.outcomes))


@dataclass(frozen=True)
class Simplex:
    """An ordered tuple of distinct contexts with nonempty common intersection."""

    indices: tuple[int, ...]
    members: tuple[tuple[str, ...], ...]

    @property
    def degree(self) -> int:
        return len(self.indices) - 1

    @cached_property
    def intersection(self) -> tuple[str, ...]:
        common = set(self.members[0])
        for m in self.members[1:]:
            common &= set(m)
        return tuple(sorted(common))

    def __str__(self):
        return "(" + ",".join("".join(m) for m in self.members) + ")"


def face(sigma: Simplex, k: int) -> Simplex:
    """Drop the ``k``-th context of ``sigma``."""
    if not 0 <= k <= sigma.degree:
        raise IndexError(f"face index {k} out of range for degree {sigma.degree}")
    return Simplex(
        sigma.indices[:k] + sigma.indices[k + 1:],
        sigma.members[:k] + sigma.members[k + 1:],
    )


@dataclass(frozen=True)
class Scenario:
    """Measurements, a cover by maximal contexts, and per-measurement outcomes.

    Contexts are stored as sorted name tuples and ordered lexicographically;
    that order indexes the ordered nerve.  Build instances with
    :func:`build_scenario`, which validates the cover.
    """

    measurements: tuple[str, ...]
    contexts: tuple[tuple[str, ...], ...]
    outcome_sets: tuple[tuple[str, tuple[str, ...]], ...]

    @cached_property
    def outcomes(self) -> dict[str, tuple[str, ...]]:
        return dict(self.outcome_sets)

    def context_index(self, context) -> int:
        """Resolve a context given as an index, a name collection, or a compact string.

        Strings may be comma separated (``"a,b"``) or, when every measurement
        name is a single character, concatenated (``"ab"``, ``"da"``).
        """
        if isinstance(context, int):
            if not 0 <= context < len(self.contexts):
                raise ScenarioError(f"no context with index {context}")
            return context
        names = self._split_names(context)
        key = tuple(sorted(names))
        try:
            return self.contexts.index(key)
        except ValueError:
            raise ScenarioError(f"{context!r} is not a context of the scenario") from None

    def _split_names(self, context) -> tuple[str, ...]:
        if isinstance(context, str):
            if "," in context:
                return tuple(p.strip() for p in context.split(",") if p.strip())
            if context in self.measurements:
                return (context,)
            if all(len(x) == 1 for x in self.measurements):
                return tuple(context)
            raise ScenarioError(f"cannot split context name {context!r}")
        return tuple(context)

    def events(self, domain: Iterable[str]) -> list[JointEvent]:
        """All joint events over ``domain`` in lexicographic order."""
        domain = tuple(sorted(domain))
        unknown = set(domain) - set(self.measurements)
        if unknown:
            raise NotSubset(f"unknown measurements {sorted(unknown)}")
        return [
            JointEvent(domain, combo)
            for combo in itertools.product(*(self.outcomes[x] for x in domain))
        ]

    def event(self, domain: Iterable[str], key) -> JointEvent:
        """Build the event over ``domain`` named by ``key``.

        ``key`` is an outcome string in sorted-measurement order (``"01"``),
        a sequence of outcomes, or a ``{measurement: outcome}`` mapping.
        """
        domain = tuple(sorted(domain))
        if isinstance(key, JointEvent):
            ev = key
        elif isinstance(key, Mapping):
            ev = JointEvent.from_mapping(key)
        else:
            if isinstance(key, str) and len(key) != len(domain):
                raise ScenarioError(f"event key {key!r} does not match domain {''.join(domain)}")
            ev = JointEvent(domain, tuple(str(o) for o in key))
        if ev.domain != domain:
            raise ScenarioError(f"event {ev} is not over {domain}")
        for x, o in zip(ev.domain, ev.outcomes):
            if o not in self.outcomes[x]:
                raise ScenarioError(f"{o!r} is not an outcome of {x}")
        return ev

    @cached_property
    def _nerve_cache(self) -> dict[int, list[Simplex]]:
        return {}

    def nerve(self, max_q: int = 2) -> list[list[Simplex]]:
        return nerve(self, max_q)

    def simplices(self, q: int) -> list[Simplex]:
        cache = self._nerve_cache
        if q not in cache:
            cache[q] = _simplices(self, q)
        return cache[q]

    @property
    def n_global(self) -> int:
        n = 1
        for x in self.measurements:
            n *= len(self.outcomes[x])
        return n

    def is_connected(self) -> bool:
        if not self.contexts:
            return True
        seen = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j, ctx in enumerate(self.contexts):
                if j not in seen and set(ctx) & set(self.contexts[i]):
                    seen.add(j)
                    frontier.append(j)
        return len(seen) == len(self.contexts)


def build_scenario(
    measurements: Iterable[str],
    contexts: Iterable[Iterable[str]],
    outcomes: Mapping[str, Sequence] | Sequence,
) -> Scenario:
    """Validate and canonicalize a measurement scenario.

    ``outcomes`` is either a mapping ``measurement -> outcome labels`` or a
    single sequence shared by every measurement.  Labels are stored as
    strings.
    """
    meas = tuple(sorted({str(x) for x in measurements}))
    if not meas:
        raise ScenarioError("a scenario needs at least one measurement")
    ctxs = []
    for c in contexts:
        names = tuple(sorted({str(x) for x in c}))
        if not names:
            raise ScenarioError("empty context")
        unknown = set(names) - set(meas)
        if unknown:
            raise ScenarioError(f"context {names} uses undeclared measurements {sorted(unknown)}")
        if names not in ctxs:
            ctxs.append(names)
    if not ctxs:
        raise ScenarioError("a scenario needs at least one context")
    covered = set().union(*map(set, ctxs))
    missing = [x for x in meas if x not in covered]
    if missing:
        raise CoverageError(f"measurements {missing} belong to no context")
    for a, b in itertools.permutations(ctxs, 2):
        if set(a) < set(b):
            raise MaximalityError(f"context {a} is contained in {b}")

    if isinstance(outcomes, Mapping):
        table = {str(k): v for k, v in outcomes.items()}
        missing = [x for x in meas if x not in table]
        if missing:
            raise EmptyOutcome(f"no outcome set for {missing}")
    else:
        table = {x: outcomes for x in meas}
    outcome_sets = []
    for x in meas:
        labels = tuple(sorted({str(o) for o in table[x]}))
        if not labels:
            raise EmptyOutcome(f"measurement {x} has no outcomes")
        outcome_sets.append((x, labels))
    return Scenario(meas, tuple(sorted(ctxs)), tuple(outcome_sets))


def _simplices(s: Scenario, q: int) -> list[Simplex]:
    out = []
    for idx in itertools.combinations(range(len(s.contexts)), q + 1):
        members = tuple(s.contexts[i] for i in idx)
        common = set(members[0]).intersection(*map(set, members[1:]))
        if common:
            out.append(Simplex(idx, members))
    return out


def nerve(s: Scenario, max_q: int = 2) -> list[list[Simplex]]:
    """Simplices of the ordered nerve, one list per degree ``0..max_q``."""
    if max_q < 0:
        raise ValueError("max_q must be nonnegative")
    return [s.simplices(q) for q in range(max_q + 1)]


def global_events(s: Scenario, cutoff: int | None = None) -> list[JointEvent]:
    from .errors import TooLarge

    if cutoff is not None and s.n_global > cutoff:
        raise TooLarge(s.n_global, cutoff)
    return s.events(s.measurements)


def glue(family: Sequence[JointEvent]) -> JointEvent:
    """Glue pairwise-agreeing events into one event over the union of domains."""
    merged: dict[str, str] = {}
    for e in family:
        for x, o in zip(e.domain, e.outcomes):
            if merged.setdefault(x, o) != o:
                raise ScenarioError(f"events disagree on {x}")
    return JointEvent.from_mapping(merged)
