"""R-empirical models: per-context exact tables over a measurement scenario."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    InvalidValue,
    NormalizationError,
    NotSubcontext,
    ScenarioError,
    TooLarge,
    UnknownEvent,
)
from .scenario import JointEvent, Scenario, global_events
from .semiring import Element, Semiring, get_semiring

DEFAULT_CUTOFF = 2**20


@dataclass(frozen=True, eq=False)
class EmpiricalModel:
    """Exact R-valued tables, one per maximal context.

    ``tables[i]`` maps every joint event of ``scenario.contexts[i]`` (in
    lexicographic order) to its weight; absent events were filled with zero.
    """

    scenario: Scenario
    semiring: Semiring
    tables: tuple[dict[JointEvent, Element], ...]
    name: str = ""

    def table(self, context) -> dict[JointEvent, Element]:
        return self.tables[self.scenario.context_index(context)]

    def weight(self, context, event) -> Element:
        i = self.scenario.context_index(context)
        ev = self.scenario.event(self.scenario.contexts[i], event)
        return self.tables[i][ev]

    def support(self, context) -> list[JointEvent]:
        r = self.semiring
        return [e for e, w in self.table(context).items() if not r.is_zero(w)]

    def sections(self) -> list[tuple[int, JointEvent]]:
        """Every supported ``(context index, event)`` pair in canonical order."""
        return [
            (i, e)
            for i, tab in enumerate(self.tables)
            for e, w in tab.items()
            if not self.semiring.is_zero(w)
        ]

    def p_vector(self) -> list[Element]:
        """All table entries in incidence-matrix row order."""
        return [w for tab in self.tables for w in tab.values()]

    def same_tables(self, other: "EmpiricalModel") -> bool:
        return (
            self.scenario == other.scenario
            and self.semiring == other.semiring
            and all(a == b for a, b in zip(self.tables, other.tables))
        )

    def with_name(self, name: str) -> "EmpiricalModel":
        return EmpiricalModel(self.scenario, self.semiring, self.tables, name)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<EmpiricalModel{label} over {self.semiring.name}, contexts {[''.join(c) for c in self.scenario.contexts]}>"


def make_model(
    s: Scenario,
    r: Semiring | str,
    tables: Mapping[Any, Mapping[Any, Any]] | Sequence[Mapping[Any, Any]],
    name: str = "",
) -> EmpiricalModel:
    """Validate tables and build an :class:`EmpiricalModel`.

    ``tables`` maps each context (index, name tuple, or compact string such
    as ``"ab"``) to a mapping from event keys (``"01"``, outcome tuples, or
    :class:`JointEvent`) to values accepted by ``r.coerce``.  Missing events
    are zero; every context must be present and sum to ``1_R``.
    """
    r = get_semiring(r)
    if isinstance(tables, Mapping):
        items = list(tables.items())
    else:
        items = list(enumerate(tables))
    by_index: dict[int, Mapping] = {}
    for ctx_key, tab in items:
        try:
            i = s.context_index(ctx_key)
        except ScenarioError as exc:
            raise UnknownEvent(str(exc)) from None
        if i in by_index:
            raise UnknownEvent(f"context {ctx_key!r} given twice")
        by_index[i] = tab
    missing = [s.contexts[i] for i in range(len(s.contexts)) if i not in by_index]
    if missing:
        raise UnknownEvent(f"no table for contexts {[''.join(c) for c in missing]}")

    built = []
    for i, ctx in enumerate(s.contexts):
        dense = {e: r.zero for e in s.events(ctx)}
        for key, value in by_index[i].items():
            try:
                ev = s.event(ctx, key)
            except ScenarioError as exc:
                raise UnknownEvent(f"context {''.join(ctx)}: {exc}") from None
            try:
                dense[ev] = r.coerce(value)
            except InvalidValue as exc:
                raise InvalidValue(f"context {''.join(ctx)}, event {ev.key}: {exc}") from None
        total = r.sum(dense.values())
        if total != r.one:
            raise NormalizationError(ctx, total, r.one)
        built.append(dense)
    return EmpiricalModel(s, r, tuple(built), name)


@dataclass(frozen=True)
class Measure:
    domain: tuple[str, ...]
    weights: dict[JointEvent, Element]

    def total(self, r: Semiring) -> Element:
        return r.sum(self.weights.values())


def marginalize(m: EmpiricalModel, context, subset: Iterable[str]) -> Measure:
    """Push the table of ``context`` forward to the events of ``subset``."""
    i = m.scenario.context_index(context)
    ctx = m.scenario.contexts[i]
    subset = tuple(sorted(set(subset)))
    if not set(subset) <= set(ctx):
        raise NotSubcontext(f"{subset} is not contained in context {ctx}")
    r = m.semiring
    weights = {t: r.zero for t in m.scenario.events(subset)}
    for e, w in m.tables[i].items():
        t = e.restrict(subset)
        weights[t] = r.add(weights[t], w)
    return Measure(subset, weights)


class NonDisturbance(NamedTuple):
    holds: bool
    witness: tuple | None  # (context_j, context_k, event on the intersection)

    def __bool__(self):
        return self.holds


def is_nondisturbing(m: EmpiricalModel) -> NonDisturbance:
    """Check that all pairs of context marginals agree on their intersections."""
    contexts = m.scenario.contexts
    for j in range(len(contexts)):
        for k in range(j + 1, len(contexts)):
            common = tuple(sorted(set(contexts[j]) & set(contexts[k])))
            if not common:
                continue
            mj = marginalize(m, j, common).weights
            mk = marginalize(m, k, common).weights
            for t in mj:
                if mj[t] != mk[t]:
                    return NonDisturbance(False, (contexts[j], contexts[k], t))
    return NonDisturbance(True, None)


def require_nondisturbing(m: EmpiricalModel) -> None:
    from .errors import Disturbing

    check = is_nondisturbing(m)
    if not check:
        raise Disturbing(check.witness)


def support_section(m: EmpiricalModel, context, event):
    """The accessible section ``mu(event) [event]`` of the free semimodule."""
    from .cochain import FreeVector

    i = m.scenario.context_index(context)
    ctx = m.scenario.contexts[i]
    ev = m.scenario.event(ctx, event)
    return FreeVector.basis(ctx, ev, m.tables[i][ev], m.semiring)


def global_sections(s: Scenario, cutoff: int = DEFAULT_CUTOFF) -> list[JointEvent]:
    """Every global assignment X -> O, in lexicographic order."""
    return global_events(s, cutoff)


@dataclass(frozen=True)
class IncidenceMatrix:
    """Rows: ``(context index, event)``; columns: global assignments.

    ``entries[row][col]`` is ``1_R`` when the column restricts to the row's
    event and ``0_R`` otherwise.
    """

    rows: tuple[tuple[int, JointEvent], ...]
    columns: tuple[JointEvent, ...]
    entries: tuple[tuple[Element, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def apply(self, b: Sequence[Element], r: Semiring) -> list[Element]:
        return [
            r.sum(r.mul(a, x) for a, x in zip(row, b) if not r.is_zero(a))
            for row in self.entries
        ]


def incidence_matrix(s: Scenario, r: Semiring | str, cutoff: int = DEFAULT_CUTOFF) -> IncidenceMatrix:
    r = get_semiring(r)
    cols = global_sections(s, cutoff)
    rows = [(i, e) for i, ctx in enumerate(s.contexts) for e in s.events(ctx)]
    if len(rows) * len(cols) > cutoff * 16:
        raise TooLarge(len(rows) * len(cols), cutoff * 16)
    restricted = {}
    entries = []
    for i, e in rows:
        ctx = s.contexts[i]
        if ctx not in restricted:
            restricted[ctx] = [g.restrict(ctx) for g in cols]
        entries.append(tuple(r.one if gr == e else r.zero for gr in restricted[ctx]))
    return IncidenceMatrix(tuple(rows), tuple(cols), tuple(entries))
