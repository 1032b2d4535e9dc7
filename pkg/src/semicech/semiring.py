"""Exact semirings over which measures, vectors and matrices are built.

Four semirings ship with the package and are addressed by name in model
files and on the command line: ``boolean``, ``nonneg-rational``,
``rational`` and ``integer``.  ``natural`` is also available, mostly as the
textbook example of a cancellative semiring whose ring completion is ``integer``.

Elements are plain immutable Python values: ``int`` 0/1 for the Boolean
semiring, ``int`` for the integers and naturals, :class:`fractions.Fraction`
for the rationals.  Nothing here ever touches floating point.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, NamedTuple

from .errors import InvalidValue, NoNegation, NotCancellative, NotSemifield

Element = Any


@dataclass(frozen=True, eq=False)
class Semiring:
    """A commutative semiring with exact elements and capability flags.

    Instances compare equal by ``name``.  ``add``/``mul``/``neg``/``inv`` are
    the raw operations; ``coerce`` parses user input (ints, fractions, strings
    such as ``"3/4"``) into a canonical element and rejects values outside the
    carrier.
    """

    name: str
    zero: Element
    one: Element
    add: Callable[[Element, Element], Element]
    mul: Callable[[Element, Element], Element]
    coerce: Callable[[Any], Element]
    cancellative: bool
    has_negation: bool = False
    has_division: bool = False
    _neg: Callable[[Element], Element] | None = field(default=None, repr=False)
    _inv: Callable[[Element], Element] | None = field(default=None, repr=False)
    completion: str | None = field(default=None, repr=False)

    def __eq__(self, other):
        return isinstance(other, Semiring) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    @property
    def is_semifield(self) -> bool:
        return self.has_division

    def neg(self, a: Element) -> Element:
        if not self.has_negation or self._neg is None:
            raise NoNegation(f"{self.name} has no additive inverses")
        return self._neg(a)

    def try_negate(self, a: Element) -> Element | None:
        """Additive inverse of ``a``, or ``None`` when the semiring has none."""
        if not self.has_negation:
            return None
        return self.neg(a)

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def inv(self, a: Element) -> Element:
        if not self.has_division or self._inv is None:
            raise NotSemifield(f"{self.name} has no multiplicative inverses")
        if self.is_zero(a):
            raise ZeroDivisionError(f"0 has no inverse in {self.name}")
        return self._inv(a)

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))

    def sum(self, values: Iterable[Element]) -> Element:
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def is_zero(self, a: Element) -> bool:
        return a == self.zero

    def contains(self, value: Any) -> bool:
        try:
            self.coerce(value)
        except (InvalidValue, TypeError, ValueError, ZeroDivisionError):
            return False
        return True

    def format(self, a: Element) -> str:
        return str(a)

    def __repr__(self):
        return f"Semiring({self.name!r})"


def _parse_fraction(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise InvalidValue(f"boolean {value!r} is not a number")
    if isinstance(value, float):
        raise InvalidValue(f"floating point value {value!r} is not exact; use 'p/q'")
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise InvalidValue("empty value")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidValue(f"not an exact rational: {value!r}") from exc
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise InvalidValue(f"not an exact rational: {value!r}") from exc


def _coerce_boolean(value: Any) -> int:
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, str):
        value = value.strip()
        if value in ("0", "1"):
            return int(value)
        raise InvalidValue(f"Boolean entries are '0' or '1', got {value!r}")
    if value in (0, 1) and not isinstance(value, float):
        return int(value)
    raise InvalidValue(f"Boolean entries are 0 or 1, got {value!r}")


def _coerce_nonneg_rational(value: Any) -> Fraction:
    q = _parse_fraction(value)
    if q < 0:
        raise InvalidValue(f"negative value {value!r} in nonneg-rational")
    return q


def _coerce_integer(value: Any) -> int:
    q = _parse_fraction(value)
    if q.denominator != 1:
        raise InvalidValue(f"non-integer value {value!r}")
    return int(q)


def _coerce_natural(value: Any) -> int:
    n = _coerce_integer(value)
    if n < 0:
        raise InvalidValue(f"negative value {value!r} in natural")
    return n


def make_boolean() -> Semiring:
    """The two-element semiring {0, 1} with ``or`` / ``and``.

    Not cancellative (1 + 1 = 1 + 0) but a semifield: 1 is its own inverse.
    """
    return Semiring(
        name="boolean",
        zero=0,
        one=1,
        add=lambda a, b: a | b,
        mul=lambda a, b: a & b,
        coerce=_coerce_boolean,
        cancellative=False,
        has_division=True,
        _inv=lambda a: 1,
    )


def make_nonneg_rational() -> Semiring:
    return Semiring(
        name="nonneg-rational",
        zero=Fraction(0),
        one=Fraction(1),
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        coerce=_coerce_nonneg_rational,
        cancellative=True,
        has_division=True,
        _inv=lambda a: 1 / a,
        completion="rational",
    )


def make_rational() -> Semiring:
    return Semiring(
        name="rational",
        zero=Fraction(0),
        one=Fraction(1),
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        coerce=_parse_fraction,
        cancellative=True,
        has_negation=True,
        has_division=True,
        _neg=lambda a: -a,
        _inv=lambda a: 1 / a,
        completion="rational",
    )


def make_integer() -> Semiring:
    return Semiring(
        name="integer",
        zero=0,
        one=1,
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        coerce=_coerce_integer,
        cancellative=True,
        has_negation=True,
        _neg=lambda a: -a,
        completion="integer",
    )


def make_natural() -> Semiring:
    return Semiring(
        name="natural",
        zero=0,
        one=1,
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        coerce=_coerce_natural,
        cancellative=True,
        completion="integer",
    )


BOOLEAN = make_boolean()
NONNEG_RATIONAL = make_nonneg_rational()
RATIONAL = make_rational()
INTEGER = make_integer()
NATURAL = make_natural()

SEMIRINGS = {
    s.name: s for s in (BOOLEAN, NONNEG_RATIONAL, RATIONAL, INTEGER, NATURAL)
}


def get_semiring(name: str | Semiring) -> Semiring:
    if isinstance(name, Semiring):
        return name
    try:
        return SEMIRINGS[name]
    except KeyError:
        known = ", ".join(sorted(SEMIRINGS))
        raise ValueError(f"unknown semiring {name!r}; known: {known}") from None


def make_ring_completion(s: Semiring) -> Semiring:
    """Ring of formal differences of a cancellative semiring.

    >>> make_ring_completion(NONNEG_RATIONAL).name
    'rational'
    """
    if not s.cancellative:
        raise NotCancellative(
            f"{s.name} is not cancellative and embeds in no ring of differences"
        )
    if s.has_negation:
        return s
    return get_semiring(s.completion)


def embed(value: Element, source: Semiring, target: Semiring) -> Element:
    """Map an element along the canonical map ``source -> target``.

    Supports the inclusions N -> Z -> Q and Q+ -> Q, and sends the Boolean
    1 to the unit of any target (used to read possibilistic tables with
    integer coefficients).
    """
    if source == target:
        return value
    if source == BOOLEAN:
        return target.one if value else target.zero
    return target.coerce(value)


# -- axiom checks ------------------------------------------------------------


class AxiomViolation(NamedTuple):
    axiom: str
    witness: tuple


def axiom_check(s: Semiring, samples: Iterable[tuple]) -> list[AxiomViolation]:
    """Check the commutative-semiring axioms on every sampled triple.

    Returns one entry per (axiom, triple) that fails; an empty list means no
    violation was observed.
    """
    z, o = s.zero, s.one
    add, mul = s.add, s.mul
    laws: list[tuple[str, Callable[[Any, Any, Any], bool]]] = [
        ("add-associative", lambda a, b, c: add(add(a, b), c) == add(a, add(b, c))),
        ("add-commutative", lambda a, b, c: add(a, b) == add(b, a)),
        ("add-identity", lambda a, b, c: add(z, a) == a and add(a, z) == a),
        ("mul-associative", lambda a, b, c: mul(mul(a, b), c) == mul(a, mul(b, c))),
        ("mul-identity", lambda a, b, c: mul(o, a) == a and mul(a, o) == a),
        ("left-distributive", lambda a, b, c: mul(a, add(b, c)) == add(mul(a, b), mul(a, c))),
        ("right-distributive", lambda a, b, c: mul(add(a, b), c) == add(mul(a, c), mul(b, c))),
        ("annihilation", lambda a, b, c: mul(a, z) == z and mul(z, a) == z),
    ]
    if s.has_negation:
        laws.append(("negation", lambda a, b, c: add(a, s.neg(a)) == z))
    if s.has_division:
        laws.append(
            ("inverse", lambda a, b, c: s.is_zero(a) or mul(a, s.inv(a)) == o)
        )
    if s.cancellative:
        laws.append(("cancellation", lambda a, b, c: add(a, c) != add(b, c) or a == b))

    violations = []
    for triple in samples:
        a, b, c = triple
        for name, law in laws:
            if not law(a, b, c):
                violations.append(AxiomViolation(name, tuple(triple)))
    return violations


def cancellation_counterexample(s: Semiring, elements: Iterable[Element]):
    """Return ``(a, b, c)`` with ``a + c == b + c`` but ``a != b``, if any."""
    pool = list(elements)
    for a, b, c in itertools.product(pool, repeat=3):
        if a != b and s.add(a, c) == s.add(b, c):
            return a, b, c
    return None


def random_element(s: Semiring, rng: random.Random, max_denominator: int = 12, bound: int = 5):
    if s == BOOLEAN:
        return rng.randint(0, 1)
    if s == INTEGER:
        return rng.randint(-bound, bound)
    if s == NATURAL:
        return rng.randint(0, bound)
    num = rng.randint(0 if not s.has_negation else -bound * max_denominator, bound * max_denominator)
    return Fraction(num, rng.randint(1, max_denominator))
