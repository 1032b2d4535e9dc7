"""Čech cochains with values in free (semi)modules of joint events.

A q-cochain assigns to every q-simplex of the ordered nerve a vector in the
free semimodule generated by the joint events of the simplex's
intersection.  Over a ring the usual alternating coboundary is available;
over any semiring the coboundary is split into its even-face part
``coboundary_plus`` and odd-face part ``coboundary_minus``.

Face convention: on an ordered 1-simplex ``(U_j, U_k)`` with ``j < k``, face
0 drops ``U_j``.  Hence for a 0-cochain ``c``::

    plus(c)(U_j, U_k)  = c[U_k] restricted to U_j ∩ U_k
    minus(c)(U_j, U_k) = c[U_j] restricted to U_j ∩ U_k
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NoNegation, NotSubset, TooLarge
from .scenario import JointEvent, Scenario, Simplex, agrees, face, glue
from .semiring import Element, Semiring, random_element


class FreeVector:
    """A finite formal R-combination of joint events over one domain.

    Zero coefficients are never stored, so equality is exact structural
    equality of the support maps.
    """

    __slots__ = ("domain", "coeffs", "semiring")

    def __init__(self, domain: Iterable[str], coeffs: Mapping[JointEvent, Element], semiring: Semiring):
        self.domain = tuple(sorted(domain))
        self.semiring = semiring
        clean = {}
        for e, a in coeffs.items():
            if e.domain != self.domain:
                raise ValueError(f"event {e} is not over domain {self.domain}")
            if not semiring.is_zero(a):
                clean[e] = a
        self.coeffs = clean

    @classmethod
    def basis(cls, domain, event: JointEvent, coeff: Element, semiring: Semiring) -> "FreeVector":
        return cls(domain, {event: coeff}, semiring)

    @classmethod
    def zero(cls, domain, semiring: Semiring) -> "FreeVector":
        return cls(domain, {}, semiring)

    def coefficient(self, e: JointEvent) -> Element:
        return self.coeffs.get(e, self.semiring.zero)

    def is_zero(self) -> bool:
        return not self.coeffs

    def mass(self) -> Element:
        return self.semiring.sum(self.coeffs.values())

    def support(self) -> list[JointEvent]:
        return sorted(self.coeffs)

    def __add__(self, other: "FreeVector") -> "FreeVector":
        if other.domain != self.domain:
            raise ValueError("cannot add vectors over different domains")
        r = self.semiring
        out = dict(self.coeffs)
        for e, a in other.coeffs.items():
            out[e] = r.add(out.get(e, r.zero), a)
        return FreeVector(self.domain, out, r)

    def __neg__(self) -> "FreeVector":
        r = self.semiring
        return FreeVector(self.domain, {e: r.neg(a) for e, a in self.coeffs.items()}, r)

    def __sub__(self, other: "FreeVector") -> "FreeVector":
        return self + (-other)

    def scale(self, a: Element) -> "FreeVector":
        r = self.semiring
        return FreeVector(self.domain, {e: r.mul(a, x) for e, x in self.coeffs.items()}, r)

    def push(self, target: Iterable[str]) -> "FreeVector":
        return push_vector(self, target)

    def recast(self, semiring: Semiring, convert=None) -> "FreeVector":
        """The same combination read in another semiring (via ``convert``)."""
        convert = convert or semiring.coerce
        return FreeVector(self.domain, {e: convert(a) for e, a in self.coeffs.items()}, semiring)

    def dense(self, basis: Sequence[JointEvent]) -> list[Element]:
        return [self.coefficient(e) for e in basis]

    def __eq__(self, other):
        if not isinstance(other, FreeVector):
            return NotImplemented
        return self.domain == other.domain and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.domain, frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return f"0[{''.join(self.domain)}]"
        terms = [f"{a}·[{e.key}]" for e, a in sorted(self.coeffs.items())]
        return f"{''.join(self.domain)}: " + " + ".join(terms)


def push_vector(v: FreeVector, target: Iterable[str]) -> FreeVector:
    """Extend event restriction linearly: sum coefficients over each fibre."""
    target = tuple(sorted(set(target)))
    if not set(target) <= set(v.domain):
        raise NotSubset(f"{target} is not contained in {v.domain}")
    if target == v.domain:
        return v
    r = v.semiring
    out: dict[JointEvent, Element] = {}
    for e, a in v.coeffs.items():
        t = e.restrict(target)
        out[t] = r.add(out.get(t, r.zero), a)
    return FreeVector(target, out, r)


@dataclass(eq=False)
class Cochain:
    """A value in ``F(|σ|)`` for every q-simplex σ of the nerve."""

    scenario: Scenario
    degree: int
    semiring: Semiring
    values: dict[Simplex, FreeVector]

    def __post_init__(self):
        expected = self.scenario.simplices(self.degree)
        for sigma in expected:
            v = self.values.get(sigma)
            if v is None:
                self.values[sigma] = FreeVector.zero(sigma.intersection, self.semiring)
            elif v.domain != sigma.intersection:
                raise ValueError(f"value at {sigma} is not over {sigma.intersection}")
        extra = set(self.values) - set(expected)
        if extra:
            raise ValueError(f"{len(extra)} values on simplices outside the nerve")

    @property
    def simplices(self) -> list[Simplex]:
        return self.scenario.simplices(self.degree)

    def __getitem__(self, sigma: Simplex) -> FreeVector:
        return self.values[sigma]

    def at(self, *indices: int) -> FreeVector:
        """Value at the simplex with the given context indices."""
        for sigma in self.simplices:
            if sigma.indices == tuple(indices):
                return self.values[sigma]
        raise KeyError(indices)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.scenario == other.scenario
            and all(self.values[s] == other.values[s] for s in self.simplices)
        )

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def _combine(self, other, op) -> "Cochain":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Cochain(
            self.scenario,
            self.degree,
            self.semiring,
            {s: op(self.values[s], other.values[s]) for s in self.simplices},
        )

    def __add__(self, other: "Cochain") -> "Cochain":
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self._combine(other, lambda a, b: a - b)

    def recast(self, semiring: Semiring, convert=None) -> "Cochain":
        return Cochain(
            self.scenario,
            self.degree,
            semiring,
            {s: v.recast(semiring, convert) for s, v in self.values.items()},
        )

    @classmethod
    def zero(cls, scenario: Scenario, degree: int, semiring: Semiring) -> "Cochain":
        return cls(scenario, degree, semiring, {})

    @classmethod
    def from_family(cls, scenario: Scenario, vectors: Sequence[FreeVector], semiring: Semiring) -> "Cochain":
        """A 0-cochain from one vector per context (in context order)."""
        sims = scenario.simplices(0)
        if len(vectors) != len(sims):
            raise ValueError("need exactly one vector per context")
        return cls(scenario, 0, semiring, dict(zip(sims, vectors)))

    def family(self) -> list[FreeVector]:
        if self.degree != 0:
            raise ValueError("only 0-cochains are families")
        return [self.values[s] for s in self.simplices]

    def __repr__(self):
        body = "; ".join(f"{s}: {v!r}" for s, v in self.values.items() if not v.is_zero())
        return f"Cochain(q={self.degree}, {body or '0'})"


def model_cochain(m) -> Cochain:
    """The model itself as a 0-cochain: each context carries its table as a vector."""
    s = m.scenario
    vecs = [FreeVector(ctx, tab, m.semiring) for ctx, tab in zip(s.contexts, m.tables)]
    return Cochain.from_family(s, vecs, m.semiring)


def _coboundary(c: Cochain, parity: int | None) -> Cochain:
    r = c.semiring
    values = {}
    for sigma in c.scenario.simplices(c.degree + 1):
        total = FreeVector.zero(sigma.intersection, r)
        for k in range(sigma.degree + 1):
            if parity is not None and k % 2 != parity:
                continue
            term = c.values[face(sigma, k)].push(sigma.intersection)
            if parity is None and k % 2:
                term = -term
            total = total + term
        values[sigma] = total
    return Cochain(c.scenario, c.degree + 1, r, values)


def coboundary_ring(c: Cochain) -> Cochain:
    """Alternating-sign coboundary; needs additive inverses."""
    if not c.semiring.has_negation:
        raise NoNegation(f"{c.semiring.name} has no negatives; use coboundary_plus/minus")
    return _coboundary(c, None)


def coboundary_plus(c: Cochain) -> Cochain:
    return _coboundary(c, 0)


def coboundary_minus(c: Cochain) -> Cochain:
    return _coboundary(c, 1)


def is_cocycle(c: Cochain) -> bool:
    return coboundary_plus(c) == coboundary_minus(c)


def random_cochain(
    scenario: Scenario,
    degree: int,
    semiring: Semiring,
    rng: random.Random,
    density: float = 0.5,
) -> Cochain:
    values = {}
    for sigma in scenario.simplices(degree):
        coeffs = {}
        for e in scenario.events(sigma.intersection):
            if rng.random() < density:
                coeffs[e] = random_element(semiring, rng)
        values[sigma] = FreeVector(sigma.intersection, coeffs, semiring)
    return Cochain(scenario, degree, semiring, values)


def four_term_holds(c: Cochain) -> bool:
    """``d+d+ c + d-d- c == d-d+ c + d+d- c`` for this cochain."""
    p, m = coboundary_plus(c), coboundary_minus(c)
    lhs = coboundary_plus(p) + coboundary_minus(m)
    rhs = coboundary_minus(p) + coboundary_plus(m)
    return lhs == rhs


def complex_condition_check(
    scenario: Scenario,
    semiring: Semiring,
    trials: int = 50,
    rng: random.Random | None = None,
    degree: int = 0,
) -> bool:
    """Sample ``trials`` random cochains of ``degree`` and test the four-term identity."""
    rng = rng or random.Random(0)
    return all(
        four_term_holds(random_cochain(scenario, degree, semiring, rng))
        for _ in range(trials)
    )


# -- degree zero -------------------------------------------------------------


def in_zeroth_cohomology(c: Cochain) -> bool:
    """Membership in H^0, which equals Z^0 because C^{-1} = 0."""
    return c.degree == 0 and is_cocycle(c)


def congruent_zero(x: Cochain, y: Cochain) -> bool:
    """The degree-0 congruence ``x + d+u + d-v = y + d+v + d-u`` with ``u, v`` in C^{-1} = 0."""
    return x == y


def compatible_basis_families(
    scenario: Scenario,
    allowed: Sequence[Iterable[JointEvent]] | None = None,
    cutoff: int = 2**20,
) -> Iterator[tuple[JointEvent, ...]]:
    """Enumerate families of one basis event per context that agree pairwise.

    ``allowed[i]`` restricts the events tried in context ``i`` (default: all
    events).  Enumeration is exhaustive over the product of candidate sets.
    """
    pools = [
        list(allowed[i]) if allowed is not None else scenario.events(ctx)
        for i, ctx in enumerate(scenario.contexts)
    ]
    size = 1
    for p in pools:
        size *= len(p)
    if size > cutoff:
        raise TooLarge(size, cutoff)
    for family in itertools.product(*pools):
        if all(agrees(a, b) for a, b in itertools.combinations(family, 2)):
            yield family


def basis_family_cochain(scenario: Scenario, family: Sequence[JointEvent], semiring: Semiring) -> Cochain:
    vecs = [FreeVector.basis(ctx, e, semiring.one, semiring) for ctx, e in zip(scenario.contexts, family)]
    return Cochain.from_family(scenario, vecs, semiring)


def glue_family(family: Sequence[JointEvent]) -> JointEvent:
    return glue(family)


# -- relative presheaf ------------------------------------------------------


@dataclass(frozen=True)
class RelativeMask:
    """Selects the relative presheaf F_Ū: sections vanishing on ``U_excluded``."""

    excluded: int


def _relative_domain(scenario: Scenario, mask: RelativeMask, sigma: Simplex) -> tuple[str, ...]:
    base = set(scenario.contexts[mask.excluded])
    return tuple(sorted(base & set(sigma.intersection)))


def relative_member(c, mask: RelativeMask) -> bool:
    """Membership of a cochain (or difference cochain) in the relative complex.

    For a plain cochain: every value restricts to zero on ``U_j0 ∩ |σ|``.
    For a :class:`DifferenceCochain`: the plus and minus parts agree after
    restriction to ``U_j0 ∩ |σ|``.
    """
    if isinstance(c, DifferenceCochain):
        s = c.plus.scenario
        return all(
            c.plus[sigma].push(_relative_domain(s, mask, sigma))
            == c.minus[sigma].push(_relative_domain(s, mask, sigma))
            for sigma in c.plus.simplices
        )
    s = c.scenario
    return all(
        c[sigma].push(_relative_domain(s, mask, sigma)).is_zero() for sigma in c.simplices
    )


# -- difference cochains -----------------------------------------------------

IDENTITY = "identity"


@dataclass(eq=False)
class DifferenceCochain:
    """A 0-cochain with its coboundary pair and per-simplex operator witnesses.

    ``witnesses[σ]`` is :data:`IDENTITY` when plus and minus agree at σ, a
    dense row R-stochastic matrix ``g`` (rows and columns indexed by the
    events of ``|σ|`` in lexicographic order) with ``plus(σ)·g == minus(σ)``,
    or ``None`` when no witness was constructed.  The class of the pair is
    determined by ``(plus, minus)`` alone.
    """

    base: Cochain
    plus: Cochain
    minus: Cochain
    witnesses: dict[Simplex, object] = field(default_factory=dict)

    def is_trivial(self) -> bool:
        return self.plus == self.minus

    def nontrivial_simplices(self) -> list[Simplex]:
        return [s for s in self.plus.simplices if self.plus[s] != self.minus[s]]

    def check_witnesses(self) -> bool:
        """Every stored matrix is row R-stochastic and maps plus to minus."""
        r = self.base.semiring
        for sigma, g in self.witnesses.items():
            if g is None:
                continue
            if g == IDENTITY:
                if self.plus[sigma] != self.minus[sigma]:
                    return False
                continue
            basis = self.base.scenario.events(sigma.intersection)
            if any(r.sum(row) != r.one for row in g):
                return False
            if apply_row_operator(self.plus[sigma], g, basis) != self.minus[sigma]:
                return False
        return True


def apply_row_operator(v: FreeVector, g: Sequence[Sequence[Element]], basis: Sequence[JointEvent]) -> FreeVector:
    """Row-vector action ``v · g`` over the dense basis order."""
    r = v.semiring
    x = v.dense(basis)
    out = {}
    for col, e in enumerate(basis):
        out[e] = r.sum(r.mul(x[row], g[row][col]) for row in range(len(basis)) if not r.is_zero(x[row]))
    return FreeVector(v.domain, out, r)
