"""Obstructions to extending a local section to a compatible family.

Two constructions live here:

* :func:`classical_obstruction`: the ring-coefficient class ``[z]`` with
  ``z = d c`` in the relative complex of the base context.  ``[z] = 0`` is
  decided by solving ``z = d u`` exactly over Z or Q.
* :func:`generalized_obstruction`: the difference-cochain obstruction over
  a semifield.  It needs no negatives; triviality is decided by searching for
  a compatible family that starts at the section and respects the model.

:func:`cancellative_bridge_check` verifies, for cancellative coefficients,
that the two constructions line up: ``z = plus - minus = (Id - g) plus``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cochain import (
    IDENTITY,
    Cochain,
    DifferenceCochain,
    FreeVector,
    RelativeMask,
    apply_row_operator,
    coboundary_minus,
    coboundary_plus,
    coboundary_ring,
    is_cocycle,
    relative_member,
)
from .errors import (
    NoAgreeingSection,
    NoNegation,
    NotCancellative,
    NotSemifield,
    ZeroMeasureEvent,
)
from .linalg import solve_integer, solve_rational
from .lp import INFEASIBLE, check_farkas, solve_lp
from .model import DEFAULT_CUTOFF, EmpiricalModel, incidence_matrix, require_nondisturbing
from .scenario import JointEvent, agrees
from .semiring import BOOLEAN, INTEGER, Semiring, embed, make_ring_completion

TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"


@dataclass(eq=False)
class ObstructionResult:
    """Outcome of one obstruction query for the section ``weight·[event]`` of ``context``."""

    context: int
    event: JointEvent
    base: FreeVector
    verdict: str
    method: str
    witness: Cochain | None = None
    certificate: dict[str, Any] = field(default_factory=dict)
    extension: Cochain | None = None
    difference: DifferenceCochain | None = None
    z: Cochain | None = None

    @property
    def trivial(self) -> bool:
        return self.verdict == TRIVIAL

    def check(self) -> bool:
        """Re-verify the stored witness (trivial) or certificate (nontrivial)."""
        if self.trivial:
            return (
                self.witness is not None
                and is_cocycle(self.witness)
                and self.witness.family()[self.context] == self.base
            )
        if "farkas" in self.certificate:
            c = self.certificate
            return check_farkas(None, None, c["A_eq"], c["b_eq"], c["farkas"])
        return bool(self.certificate)


def _section(m: EmpiricalModel, context, event) -> tuple[int, JointEvent, FreeVector]:
    j0 = m.scenario.context_index(context)
    ctx = m.scenario.contexts[j0]
    if isinstance(event, FreeVector):
        event = _single_event(event)[0]
    ev = m.scenario.event(ctx, event)
    weight = m.tables[j0][ev]
    if m.semiring.is_zero(weight):
        raise ZeroMeasureEvent(f"event {ev} has zero weight; only supported sections are accessible")
    return j0, ev, FreeVector.basis(ctx, ev, weight, m.semiring)


def _single_event(c0: FreeVector) -> tuple[JointEvent, Any]:
    if len(c0.coeffs) != 1:
        raise ValueError("the base section must be a single scaled basis event")
    (ev, a), = c0.coeffs.items()
    return ev, a


def extend_section(m: EmpiricalModel, j0, c0: FreeVector, choice: str = "least") -> Cochain:
    """Canonical 0-cochain extending ``c0`` so that every member agrees with it.

    Contexts are filled in index order.  Context ``k`` receives ``a·[t]``
    where ``a`` is the coefficient of ``c0`` and ``t`` is the least (or, with
    ``choice="greatest"``, greatest) supported event of ``U_k`` that agrees
    with ``c0`` on ``U_j0 ∩ U_k``, preferring events that also agree with
    the members already chosen.
    """
    require_nondisturbing(m)
    s = m.scenario
    j0 = s.context_index(j0)
    ev0, a = _single_event(c0)
    if c0.domain != s.contexts[j0]:
        raise ValueError("base section is not over the base context")
    pick = min if choice == "least" else max
    chosen: dict[int, JointEvent] = {j0: ev0}
    for k, ctx in enumerate(s.contexts):
        if k == j0:
            continue
        candidates = [t for t in m.support(k) if agrees(t, ev0)]
        if not candidates:
            raise NoAgreeingSection(f"no supported event of {''.join(ctx)} agrees with {ev0}")
        preferred = [t for t in candidates if all(agrees(t, e) for e in chosen.values())]
        chosen[k] = pick(preferred or candidates)
    vecs = [FreeVector.basis(ctx, chosen[k], a, m.semiring) for k, ctx in enumerate(s.contexts)]
    return Cochain.from_family(s, vecs, m.semiring)


def default_ring(r: Semiring) -> Semiring:
    """Coefficient ring used for the classical obstruction of an R-model."""
    if r.has_negation:
        return r
    if r == BOOLEAN:
        return INTEGER
    return make_ring_completion(r)


def classical_obstruction(
    m: EmpiricalModel,
    context,
    event,
    ring: Semiring | None = None,
    presheaf: str = "events",
) -> ObstructionResult:
    """Ring-coefficient obstruction of the section ``mu(event)[event]``.

    ``presheaf="events"`` uses the free module on all joint events of each
    context; ``presheaf="support"`` restricts the basis of every context to
    its supported events.
    """
    if presheaf not in ("events", "support"):
        raise ValueError(f"unknown presheaf {presheaf!r}")
    ring = ring or default_ring(m.semiring)
    if not ring.has_negation:
        raise NoNegation(f"classical obstruction needs a ring, got {ring.name}")
    j0, ev0, c0 = _section(m, context, event)
    s = m.scenario

    ext = extend_section(m, j0, c0)

    def to_ring(x):
        return embed(x, m.semiring, ring)

    c = ext.recast(ring, to_ring)
    base = c0.recast(ring, to_ring)
    z = coboundary_ring(c)
    mask = RelativeMask(j0)
    if not relative_member(z, mask):
        raise AssertionError("z = dc left the relative complex")

    # Unknowns: coefficients of u_k over the chosen basis of U_k, k != j0.
    columns = []
    for k, ctx in enumerate(s.contexts):
        if k == j0:
            continue
        basis = s.events(ctx) if presheaf == "events" else m.support(k)
        columns.extend((k, e) for e in basis)
    col_index = {key: i for i, key in enumerate(columns)}
    rows, rhs = [], []
    # relative condition: u_k restricted to U_j0 ∩ U_k vanishes
    base_ctx = set(s.contexts[j0])
    for k, ctx in enumerate(s.contexts):
        if k == j0:
            continue
        common = tuple(sorted(base_ctx & set(ctx)))
        for t in s.events(common):
            row = [0] * len(columns)
            for e in s.events(ctx):
                if (k, e) in col_index and e.restrict(common) == t:
                    row[col_index[(k, e)]] = 1
            rows.append(row)
            rhs.append(ring.zero)
    # coboundary condition: (du)(j, k) = u_k|jk - u_j|jk = z(j, k)
    for sigma in s.simplices(1):
        j, k = sigma.indices
        for t in s.events(sigma.intersection):
            row = [0] * len(columns)
            for idx, sign in ((k, 1), (j, -1)):
                if idx == j0:
                    continue
                for e in s.events(s.contexts[idx]):
                    if (idx, e) in col_index and e.restrict(sigma.intersection) == t:
                        row[col_index[(idx, e)]] += sign
            rows.append(row)
            rhs.append(z[sigma].coefficient(t))

    if ring == INTEGER:
        sol = solve_integer(rows, rhs) if columns else ([] if all(v == 0 for v in rhs) else None)
    else:
        sol = solve_rational(rows, rhs) if columns else ([] if all(v == 0 for v in rhs) else None)

    result = ObstructionResult(
        context=j0, event=ev0, base=base, verdict=NONTRIVIAL, method=f"{ring.name}-solve/{presheaf}",
        extension=c, z=z,
    )
    if sol is None:
        result.certificate = {"unsolvable": True, "equations": len(rows), "unknowns": len(columns)}
        return result
    u_vecs = []
    for k, ctx in enumerate(s.contexts):
        coeffs = {e: ring.coerce(sol[col_index[(k, e)]]) for e in s.events(ctx) if (k, e) in col_index}
        u_vecs.append(FreeVector(ctx, coeffs, ring))
    u = Cochain.from_family(s, u_vecs, ring)
    witness = c - u
    if not (is_cocycle(witness) and witness.family()[j0] == base):
        raise AssertionError("solver returned a non-compatible witness")
    result.verdict = TRIVIAL
    result.witness = witness
    return result


def difference_of(c: Cochain) -> DifferenceCochain:
    """Coboundary pair of a 0-cochain with canonical row-stochastic witnesses.

    Where ``plus(σ) != minus(σ)`` and both have the same nonzero mass, the
    witness is the rank-one operator whose every row is ``minus(σ) / mass``;
    it is row R-stochastic and sends ``plus(σ)`` to ``minus(σ)`` under the
    row-vector action.  Otherwise no matrix witness is stored.
    """
    r = c.semiring
    if not r.has_division:
        raise NotSemifield(f"difference cochains need a semifield, got {r.name}")
    plus, minus = coboundary_plus(c), coboundary_minus(c)
    witnesses: dict = {}
    for sigma in plus.simplices:
        p, q = plus[sigma], minus[sigma]
        if p == q:
            witnesses[sigma] = IDENTITY
            continue
        mp, mq = p.mass(), q.mass()
        if r.is_zero(mp) or mp != mq:
            witnesses[sigma] = None
            continue
        basis = c.scenario.events(sigma.intersection)
        row = [r.div(x, mp) for x in q.dense(basis)]
        witnesses[sigma] = [list(row) for _ in basis]
    return DifferenceCochain(c, plus, minus, witnesses)


# -- generalized obstruction -------------------------------------------------


def _boolean_search(m: EmpiricalModel, j0: int, ev0: JointEvent):
    """Depth-first search for one supported event per context, all agreeing.

    Contexts are visited breadth-first from ``j0``; after each choice every
    unassigned context must keep at least one consistent candidate.
    """
    s = m.scenario
    n = len(s.contexts)
    order = [j0]
    seen = {j0}
    queue = deque([j0])
    while queue:
        i = queue.popleft()
        for k in range(n):
            if k not in seen and set(s.contexts[i]) & set(s.contexts[k]):
                seen.add(k)
                order.append(k)
                queue.append(k)
    order += [k for k in range(n) if k not in seen]
    support = [m.support(k) for k in range(n)]
    chosen: dict[int, JointEvent] = {j0: ev0}
    nodes = 0

    def consistent(k, t):
        return all(agrees(t, e) for e in chosen.values())

    def forward_ok():
        return all(
            any(consistent(k, t) for t in support[k]) for k in range(n) if k not in chosen
        )

    def dfs(pos):
        nonlocal nodes
        if pos == len(order):
            return True
        k = order[pos]
        for t in support[k]:
            if not consistent(k, t):
                continue
            nodes += 1
            chosen[k] = t
            if forward_ok() and dfs(pos + 1):
                return True
            del chosen[k]
        return False

    found = forward_ok() and dfs(1)
    family = [chosen[k] for k in range(n)] if found else None
    return family, nodes


def generalized_obstruction(
    m: EmpiricalModel,
    context,
    event,
    semifield: Semiring | None = None,
    cutoff: int = DEFAULT_CUTOFF,
) -> ObstructionResult:
    """Difference-cochain obstruction of the section ``mu(event)[event]``.

    Trivial exactly when a compatible family starting at the section exists
    that respects the model:

    * Boolean: one supported event per context, pairwise agreeing
      (depth-first search with forward checking).
    * nonneg-rational: the hidden-variable system ``M b = p, b >= 0`` with the
      weight of the global sections through ``event`` pinned to ``mu(event)``
      is feasible (exact simplex; a Farkas ray certifies infeasibility).
    * rational: the same system without the sign constraint.
    """
    r = m.semiring
    if semifield is not None and semifield != r:
        raise ValueError(f"model is over {r.name}, not {semifield.name}")
    if not r.has_division:
        raise NotSemifield(f"generalized obstruction needs a semifield, got {r.name}")
    require_nondisturbing(m)
    j0, ev0, c0 = _section(m, context, event)
    s = m.scenario
    extension = extend_section(m, j0, c0)
    result = ObstructionResult(
        context=j0, event=ev0, base=c0, verdict=NONTRIVIAL, method="",
        extension=extension, difference=difference_of(extension),
    )

    if r == BOOLEAN:
        family, nodes = _boolean_search(m, j0, ev0)
        result.method = "boolean-dfs"
        if family is None:
            result.certificate = {"exhausted": True, "nodes": nodes}
            return result
        vecs = [FreeVector.basis(ctx, e, r.one, r) for ctx, e in zip(s.contexts, family)]
        result.witness = Cochain.from_family(s, vecs, r)
        result.certificate = {"nodes": nodes}
        result.verdict = TRIVIAL
        return result

    inc = incidence_matrix(s, r, cutoff)
    weight = m.tables[j0][ev0]
    pin = [1 if g.restrict(s.contexts[j0]) == ev0 else 0 for g in inc.columns]
    A_eq = [list(row) for row in inc.entries] + [pin]
    b_eq = m.p_vector() + [weight]
    if r.has_negation:
        b = solve_rational(A_eq, b_eq)
        result.method = "signed-solve"
        if b is None:
            result.certificate = {"unsolvable": True}
            return result
    else:
        lp = solve_lp([0] * len(inc.columns), A_eq=A_eq, b_eq=b_eq)
        result.method = "exact-lp"
        if lp.status == INFEASIBLE:
            result.certificate = {"farkas": lp.dual, "A_eq": A_eq, "b_eq": b_eq}
            return result
        b = lp.x
    vecs = []
    for ctx in s.contexts:
        coeffs: dict[JointEvent, Fraction] = {}
        for g, bg, through in zip(inc.columns, b, pin):
            if through and bg:
                t = g.restrict(ctx)
                coeffs[t] = coeffs.get(t, r.zero) + bg
        vecs.append(FreeVector(ctx, coeffs, r))
    result.witness = Cochain.from_family(s, vecs, r)
    result.verdict = TRIVIAL
    return result


def cancellative_bridge_check(m: EmpiricalModel, context, event) -> bool:
    """Check ``z = plus - minus = (Id - g) plus`` in the ring of differences.

    ``z`` is the ring coboundary of the canonical extension of the section;
    also checks that ``z`` vanishes exactly when ``plus == minus``.
    """
    r = m.semiring
    if not r.cancellative:
        raise NotCancellative(f"{r.name} is not cancellative")
    ring = make_ring_completion(r)
    j0, _, c0 = _section(m, context, event)
    c = extend_section(m, j0, c0)

    def lift(x):
        return embed(x, r, ring)

    z = coboundary_ring(c.recast(ring, lift))
    plus = coboundary_plus(c).recast(ring, lift)
    minus = coboundary_minus(c).recast(ring, lift)
    if z != plus - minus:
        return False
    if z.is_zero() != (plus == minus):
        return False
    if r.has_division:
        diff = difference_of(c)
        for sigma, g in diff.witnesses.items():
            if g is None:
                continue
            p = plus[sigma]
            if g == IDENTITY:
                image = p
            else:
                basis = m.scenario.events(sigma.intersection)
                g_ring = [[lift(x) for x in row] for row in g]
                image = apply_row_operator(p, g_ring, basis)
            if p - image != z[sigma]:
                return False
    return True


__all__ = [
    "NONTRIVIAL",
    "TRIVIAL",
    "ObstructionResult",
    "cancellative_bridge_check",
    "classical_obstruction",
    "default_ring",
    "difference_of",
    "extend_section",
    "generalized_obstruction",
]
