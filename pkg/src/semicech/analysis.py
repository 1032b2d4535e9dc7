"""Contextuality verdicts, hidden-variable decompositions and the contextual fraction."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import ModelError, NotSemifield
from .linalg import solve_rational
from .lp import OPTIMAL, check_optimal, solve_lp
from .model import (
    DEFAULT_CUTOFF,
    EmpiricalModel,
    incidence_matrix,
    is_nondisturbing,
    make_model,
    require_nondisturbing,
)
from .obstruction import ObstructionResult, generalized_obstruction
from .scenario import JointEvent
from .semiring import BOOLEAN, NONNEG_RATIONAL

CONTEXTUAL = "contextual"
NONCONTEXTUAL = "noncontextual"


@dataclass(eq=False)
class ContextualityVerdict:
    semiring: str
    verdict: str
    # hidden-variable weights (noncontextual) or the first nontrivial section
    witness: Any
    sections: list[ObstructionResult] = field(default_factory=list)

    @property
    def contextual(self) -> bool:
        return self.verdict == CONTEXTUAL


@dataclass(eq=False)
class FractionResult:
    value: Fraction
    b: dict[JointEvent, Fraction]
    residual: dict[tuple[int, JointEvent], Fraction]
    dual: list[Fraction]
    certified: bool

    @property
    def noncontextual_weight(self) -> Fraction:
        return 1 - self.value


def _require_semifield(m: EmpiricalModel) -> None:
    if not m.semiring.has_division:
        raise NotSemifield(f"{m.semiring.name} is not a semifield")


def verify_decomposition(m: EmpiricalModel, weights: dict[JointEvent, Any]) -> bool:
    """Check that ``weights`` reproduces every table entry and sums to ``1_R``.

    Each entry must equal the R-sum of the weights of the global assignments
    restricting to it.
    """
    r = m.semiring
    if r.sum(weights.values()) != r.one:
        return False
    for ctx, table in zip(m.scenario.contexts, m.tables):
        acc = {e: r.zero for e in table}
        for g, w in weights.items():
            e = g.restrict(ctx)
            acc[e] = r.add(acc[e], w)
        if acc != table:
            return False
    return True


def noncontextual_decompose(m: EmpiricalModel, cutoff: int = DEFAULT_CUTOFF) -> dict[JointEvent, Any] | None:
    """Hidden-variable weights over global assignments, or ``None`` if none exist.

    Boolean: the union of every global assignment whose restrictions are all
    supported, accepted when it covers the whole support.  Nonnegative
    rationals: exact LP ``M b = p``, ``b >= 0``.  Rationals: signed solve.
    """
    require_nondisturbing(m)
    _require_semifield(m)
    r = m.semiring
    inc = incidence_matrix(m.scenario, r, cutoff)
    if r == BOOLEAN:
        support = [set(m.support(i)) for i in range(len(m.tables))]
        weights = {
            g: r.one
            for g in inc.columns
            if all(g.restrict(ctx) in support[i] for i, ctx in enumerate(m.scenario.contexts))
        }
        found = verify_decomposition(m, weights)
        return weights if found else None
    A_eq = [list(row) for row in inc.entries] + [[1] * len(inc.columns)]
    b_eq = m.p_vector() + [r.one]
    if r.has_negation:
        b = solve_rational(A_eq, b_eq)
    else:
        lp = solve_lp([0] * len(inc.columns), A_eq=A_eq, b_eq=b_eq)
        b = lp.x if lp.status == OPTIMAL else None
    if b is None:
        return None
    weights = {g: r.coerce(x) for g, x in zip(inc.columns, b) if x}
    if not verify_decomposition(m, weights):
        raise AssertionError("decomposition does not reproduce the model")
    return weights


def is_r_contextual(m: EmpiricalModel, cutoff: int = DEFAULT_CUTOFF) -> ContextualityVerdict:
    """Sweep every supported section through the generalized obstruction.

    The model is contextual iff some section has a nontrivial obstruction.
    """
    require_nondisturbing(m)
    _require_semifield(m)
    results = [generalized_obstruction(m, j, e, cutoff=cutoff) for j, e in m.sections()]
    bad = next((res for res in results if not res.trivial), None)
    if bad is not None:
        return ContextualityVerdict(m.semiring.name, CONTEXTUAL, bad, results)
    return ContextualityVerdict(
        m.semiring.name, NONCONTEXTUAL, noncontextual_decompose(m, cutoff), results
    )


def contextual_fraction(m: EmpiricalModel, cutoff: int = DEFAULT_CUTOFF) -> FractionResult:
    """``1 - max Σb`` subject to ``M b <= p``, ``b >= 0``, solved exactly.

    The optimal dual is checked against the primal before returning.
    """
    if m.semiring != NONNEG_RATIONAL:
        raise ModelError(f"contextual fraction needs a nonneg-rational model, got {m.semiring.name}")
    require_nondisturbing(m)
    inc = incidence_matrix(m.scenario, m.semiring, cutoff)
    n = len(inc.columns)
    A_ub = [list(row) for row in inc.entries]
    p = m.p_vector()
    c = [1] * n
    lp = solve_lp(c, A_ub=A_ub, b_ub=p)
    if lp.status != OPTIMAL:
        raise AssertionError(f"contextual-fraction LP ended {lp.status}")
    certified = check_optimal(c, A_ub, p, None, None, lp.x, lp.dual)
    b = {g: x for g, x in zip(inc.columns, lp.x) if x}
    used = inc.apply(lp.x, m.semiring)
    residual = {row: pi - ui for row, pi, ui in zip(inc.rows, p, used)}
    return FractionResult(1 - lp.objective, b, residual, lp.dual, certified)


def signed_realization(m: EmpiricalModel, cutoff: int = DEFAULT_CUTOFF) -> dict[JointEvent, Fraction] | None:
    """Signed weights over global assignments with ``M b = p`` and ``Σb = 1``.

    Returns a basic solution (free variables set to zero).
    """
    if m.semiring == BOOLEAN:
        raise ModelError("signed realizations are defined for numeric models, not boolean ones")
    require_nondisturbing(m)
    inc = incidence_matrix(m.scenario, m.semiring, cutoff)
    A = [list(row) for row in inc.entries] + [[1] * len(inc.columns)]
    rhs = [Fraction(x) for x in m.p_vector()] + [Fraction(1)]
    b = solve_rational(A, rhs)
    if b is None:
        return None
    return {g: x for g, x in zip(inc.columns, b) if x}


def signed_residual(m: EmpiricalModel, b: dict[JointEvent, Fraction]) -> list[Fraction]:
    """``M b - p`` followed by ``Σb - 1``; all zero for an exact realization."""
    out = []
    for ctx, table in zip(m.scenario.contexts, m.tables):
        acc = {e: Fraction(0) for e in table}
        for g, w in b.items():
            acc[g.restrict(ctx)] += w
        out.extend(acc[e] - Fraction(table[e]) for e in table)
    out.append(sum(b.values(), Fraction(0)) - 1)
    return out


def possibilistic_collapse(m: EmpiricalModel) -> EmpiricalModel:
    """Boolean model with the same support."""
    r = m.semiring
    tables = [{e: int(not r.is_zero(w)) for e, w in tab.items()} for tab in m.tables]
    out = make_model(m.scenario, BOOLEAN, tables, m.name)
    if is_nondisturbing(m) and not is_nondisturbing(out):
        raise AssertionError("support of a non-disturbing model must be non-disturbing")
    return out
