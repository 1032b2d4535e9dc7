"""Standard models and seeded random non-disturbing models on binary cycles."""

from __future__ import annotations

import random
import string
from fractions import Fraction

from .model import EmpiricalModel, make_model
from .scenario import JointEvent, Scenario, build_scenario
from .semiring import BOOLEAN, NONNEG_RATIONAL, Semiring, get_semiring

HALF = Fraction(1, 2)


def cycle_scenario(n: int = 4, outcomes: str = "01") -> Scenario:
    """Measurements ``a, b, ...`` with contexts ``{x_i, x_{i+1}}`` around a cycle."""
    if n < 3:
        raise ValueError("a cycle needs at least three measurements")
    names = string.ascii_lowercase[:n]
    contexts = [names[i] + names[(i + 1) % n] for i in range(n)]
    return build_scenario(names, contexts, outcomes)


def table1_model() -> EmpiricalModel:
    """Possibilistic 4-cycle: equal outcomes on ab, bc, cd; anything on ad."""
    s = cycle_scenario(4)
    same = {"00": 1, "11": 1}
    tables = {"ab": same, "bc": same, "cd": same, "ad": {"00": 1, "01": 1, "10": 1, "11": 1}}
    return make_model(s, BOOLEAN, tables, "table1")


def pr_box(semiring: Semiring | str = NONNEG_RATIONAL, n: int = 4) -> EmpiricalModel:
    """Perfect correlation on every cycle edge except the closing one, which anticorrelates."""
    r = get_semiring(semiring)
    s = cycle_scenario(n)
    w = r.one if r == BOOLEAN else HALF
    tables = {}
    for i, ctx in enumerate(s.contexts):
        closing = ctx == ("a", s.measurements[-1])
        tables[i] = {"01": w, "10": w} if closing else {"00": w, "11": w}
    return make_model(s, r, tables, "prbox" if r != BOOLEAN else "prbox_boolean")


def hardy_model() -> EmpiricalModel:
    """Hardy-type possibilistic 4-cycle: ab full support and three forbidden events."""
    s = cycle_scenario(4)
    full = ["00", "01", "10", "11"]
    forbidden = {"ab": None, "ad": "00", "bc": "00", "cd": "11"}
    tables = {
        ctx: {e: int(e != bad) for e in full} for ctx, bad in forbidden.items()
    }
    return make_model(s, BOOLEAN, tables, "hardy")


def deterministic_model(
    s: Scenario, semiring: Semiring | str = NONNEG_RATIONAL, assignment: JointEvent | None = None
) -> EmpiricalModel:
    """Point masses on the restrictions of one global assignment (default: first outcomes)."""
    r = get_semiring(semiring)
    if assignment is None:
        assignment = JointEvent(s.measurements, tuple(s.outcomes[x][0] for x in s.measurements))
    tables = {i: {assignment.restrict(ctx): r.one} for i, ctx in enumerate(s.contexts)}
    return make_model(s, r, tables, "deterministic")


def fully_mixed(s: Scenario) -> EmpiricalModel:
    """Uniform distribution in every context."""
    tables = {}
    for i, ctx in enumerate(s.contexts):
        events = s.events(ctx)
        tables[i] = {e: Fraction(1, len(events)) for e in events}
    return make_model(s, NONNEG_RATIONAL, tables, "fully_mixed")


def mix(m1: EmpiricalModel, m2: EmpiricalModel, t, name: str = "") -> EmpiricalModel:
    """Convex combination ``t·m1 + (1-t)·m2`` of two nonneg-rational models."""
    t = Fraction(t)
    if not (m1.scenario == m2.scenario and m1.semiring == m2.semiring == NONNEG_RATIONAL):
        raise ValueError("mixing needs two nonneg-rational models on one scenario")
    tables = [
        {e: t * a[e] + (1 - t) * b[e] for e in a} for a, b in zip(m1.tables, m2.tables)
    ]
    return make_model(m1.scenario, NONNEG_RATIONAL, tables, name)


# -- random models -----------------------------------------------------------


def _binary_pair_scenario(s: Scenario) -> None:
    if any(len(ctx) != 2 for ctx in s.contexts) or any(len(o) != 2 for o in s.outcomes.values()):
        raise ValueError("random models are generated for binary two-measurement contexts")


def random_rational_model(s: Scenario, rng: random.Random, denominator: int = 6) -> EmpiricalModel:
    """A non-disturbing nonneg-rational model with entries in ``(1/D)``Z.

    ``D`` is ``denominator`` rounded down to an even number (at least 2).

    Each measurement gets a marginal ``k/D`` (half of the models use the
    balanced marginal 1/2 everywhere); each context then gets a joint weight
    ``t`` for the ``00`` event anywhere in its feasible range, hitting an
    endpoint with probability 1/2.  Endpoints produce the extremal, often
    contextual, correlations.
    """
    _binary_pair_scenario(s)
    D = 2 * (denominator // 2) or 2
    if rng.random() < 0.5:
        marg = {x: HALF for x in s.measurements}
    else:
        marg = {x: Fraction(rng.randint(0, D), D) for x in s.measurements}
    tables = []
    for ctx in s.contexts:
        x, y = ctx
        lo = max(Fraction(0), marg[x] + marg[y] - 1)
        hi = min(marg[x], marg[y])
        if rng.random() < 0.5:
            t = rng.choice([lo, hi])
        else:
            t = lo + Fraction(rng.randint(0, int((hi - lo) * D)), D)
        events = s.events(ctx)
        weights = [t, marg[x] - t, marg[y] - t, 1 - marg[x] - marg[y] + t]
        tables.append(dict(zip(events, weights)))
    return make_model(s, NONNEG_RATIONAL, tables, "random")


def random_boolean_model(s: Scenario, rng: random.Random) -> EmpiricalModel:
    """A non-disturbing possibilistic model.

    Each measurement gets a nonempty outcome support (the full outcome set
    in half of the models); each context gets a random subset of the
    product of its supports whose projections are onto (drawn by rejection).
    """
    _binary_pair_scenario(s)
    full = rng.random() < 0.5
    supp = {}
    for x in s.measurements:
        opts = list(s.outcomes[x])
        supp[x] = set(opts if full else rng.choice([opts[:1], opts[1:], opts]))
    tables = []
    for ctx in s.contexts:
        x, y = ctx
        cells = [e for e in s.events(ctx) if e.outcomes[0] in supp[x] and e.outcomes[1] in supp[y]]
        while True:
            chosen = [e for e in cells if rng.random() < 0.5]
            if {e.outcomes[0] for e in chosen} == supp[x] and {e.outcomes[1] for e in chosen} == supp[y]:
                break
        tables.append({e: 1 for e in chosen})
    return make_model(s, BOOLEAN, tables, "random")


def random_model(s: Scenario, semiring: Semiring | str, rng: random.Random, denominator: int = 6) -> EmpiricalModel:
    r = get_semiring(semiring)
    if r == BOOLEAN:
        return random_boolean_model(s, rng)
    if r == NONNEG_RATIONAL:
        return random_rational_model(s, rng, denominator)
    raise ValueError(f"no random generator for {r.name}")


def random_sweep(seed: int, count: int) -> list[EmpiricalModel]:
    """``count`` models cycling through (4-cycle, triangle) x (boolean, nonneg-rational)."""
    rng = random.Random(seed)
    kinds = [(cycle_scenario(4), BOOLEAN), (cycle_scenario(4), NONNEG_RATIONAL),
             (cycle_scenario(3), BOOLEAN), (cycle_scenario(3), NONNEG_RATIONAL)]
    out = []
    for i in range(count):
        s, r = kinds[i % len(kinds)]
        out.append(random_model(s, r, rng).with_name(f"random-{seed}-{i}"))
    return out
