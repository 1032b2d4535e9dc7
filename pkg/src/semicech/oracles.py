"""Brute-force decision procedures used to cross-check the obstruction machinery.

None of these touch cochains, the simplex solver or the incidence matrix:
they enumerate global assignments directly, use the binary n-cycle
inequalities, or enumerate vertices by exact Gaussian elimination.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .linalg import rank, solve_rational
from .model import EmpiricalModel
from .scenario import JointEvent
from .semiring import BOOLEAN, NONNEG_RATIONAL, RATIONAL


def _globals(m: EmpiricalModel):
    s = m.scenario
    for combo in itertools.product(*(s.outcomes[x] for x in s.measurements)):
        yield JointEvent(s.measurements, combo)


def _consistent_globals(m: EmpiricalModel) -> list[JointEvent]:
    s = m.scenario
    r = m.semiring
    return [
        g for g in _globals(m)
        if all(not r.is_zero(tab[g.restrict(ctx)]) for ctx, tab in zip(s.contexts, m.tables))
    ]


def boolean_extendable(m: EmpiricalModel, context: int, event: JointEvent) -> bool:
    """Some global assignment restricts to ``event`` and to supported events everywhere."""
    ctx = m.scenario.contexts[context]
    return any(g.restrict(ctx) == event for g in _consistent_globals(m))


def boolean_noncontextual(m: EmpiricalModel) -> bool:
    return all(boolean_extendable(m, j, e) for j, e in m.sections())


def _is_binary_cycle(m: EmpiricalModel) -> list[tuple[str, str]] | None:
    """Context pairs in cycle order when the scenario is a binary n-cycle."""
    s = m.scenario
    if any(len(c) != 2 for c in s.contexts) or any(len(o) != 2 for o in s.outcomes.values()):
        return None
    n = len(s.measurements)
    if len(s.contexts) != n or n < 3:
        return None
    adj = {x: [] for x in s.measurements}
    for x, y in s.contexts:
        adj[x].append(y)
        adj[y].append(x)
    if any(len(v) != 2 for v in adj.values()):
        return None
    order = [s.measurements[0]]
    prev = None
    while len(order) < n:
        nxt = next(y for y in adj[order[-1]] if y != prev)
        prev = order[-1]
        order.append(nxt)
    if order[0] not in adj[order[-1]]:
        return None
    return [(order[i], order[(i + 1) % n]) for i in range(n)]


def cycle_inequalities_hold(m: EmpiricalModel) -> bool | None:
    """Noncontextuality of a binary n-cycle model via the correlator inequalities.

    With ``E = P(equal) - P(different)`` on each edge, the model is
    noncontextual iff ``Σ γ_i E_i <= n - 2`` for every sign vector with an
    odd number of ``-1`` entries.  Returns ``None`` for other scenarios.
    """
    edges = _is_binary_cycle(m)
    if edges is None:
        return None
    s = m.scenario
    corr = []
    for x, y in edges:
        i = s.context_index((x, y))
        val = Fraction(0)
        for e, w in m.tables[i].items():
            val += Fraction(w) if e.outcomes[0] == e.outcomes[1] else -Fraction(w)
        corr.append(val)
    n = len(edges)
    for signs in itertools.product((1, -1), repeat=n):
        if signs.count(-1) % 2 == 1 and sum(g * e for g, e in zip(signs, corr)) > n - 2:
            return False
    return True


def _system(m: EmpiricalModel, columns: list[JointEvent]):
    s = m.scenario
    rows, rhs = [], []
    for ctx, tab in zip(s.contexts, m.tables):
        for e, w in tab.items():
            rows.append([int(g.restrict(ctx) == e) for g in columns])
            rhs.append(Fraction(w))
    rows.append([1] * len(columns))
    rhs.append(Fraction(1))
    return rows, rhs


def vertex_noncontextual(m: EmpiricalModel, limit: int = 200_000) -> bool:
    """Search for a nonnegative basic solution of ``M b = p, Σb = 1``.

    Only global assignments consistent with the support can carry weight.
    Every subset of those columns up to the system rank is solved exactly;
    a feasible polytope always has a vertex of this form.
    """
    cols = _consistent_globals(m)
    if not cols:
        return False
    rows, rhs = _system(m, cols)
    if rank(rows) != rank([row + [b] for row, b in zip(rows, rhs)]):
        return False
    k_max = rank(rows)
    tried = 0
    for k in range(1, k_max + 1):
        for subset in itertools.combinations(range(len(cols)), k):
            tried += 1
            if tried > limit:
                raise RuntimeError("vertex enumeration limit exceeded")
            sub = [[row[j] for j in subset] for row in rows]
            x = solve_rational(sub, rhs)
            if x is not None and all(v >= 0 for v in x):
                return True
    return False


def rational_noncontextual(m: EmpiricalModel) -> bool:
    """Signed hidden-variable model exists iff ``rank M = rank [M | p]``."""
    cols = list(_globals(m))
    rows, rhs = _system(m, cols)
    return rank(rows) == rank([row + [b] for row, b in zip(rows, rhs)])


def oracle_noncontextual(m: EmpiricalModel) -> bool:
    """Independent noncontextuality verdict for Boolean, nonneg-rational or rational models."""
    r = m.semiring
    if r == BOOLEAN:
        return boolean_noncontextual(m)
    if r == NONNEG_RATIONAL:
        verdict = cycle_inequalities_hold(m)
        return vertex_noncontextual(m) if verdict is None else verdict
    if r == RATIONAL:
        return rational_noncontextual(m)
    raise ValueError(f"no oracle for {r.name}")


def oracle_section_trivial(m: EmpiricalModel, context: int, event: JointEvent) -> bool:
    """Oracle verdict for one supported section.

    Boolean sections are decided individually; for nonneg-rational and
    rational models every section shares the model-level verdict, since the
    weight pinned on the section is already fixed by the model.
    """
    if m.semiring == BOOLEAN:
        return boolean_extendable(m, context, event)
    return oracle_noncontextual(m)
