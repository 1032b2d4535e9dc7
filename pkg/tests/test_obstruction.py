import random
from fractions import Fraction

import pytest

from semicech.cochain import (
    IDENTITY,
    Cochain,
    FreeVector,
    RelativeMask,
    basis_family_cochain,
    is_cocycle,
    model_cochain,
    relative_member,
)
from semicech.errors import Disturbing, NoNegation, NotCancellative, NotSemifield, ZeroMeasureEvent
from semicech.generate import cycle_scenario, deterministic_model
from semicech.model import make_model, support_section
from semicech.obstruction import (
    cancellative_bridge_check,
    classical_obstruction,
    difference_of,
    extend_section,
    generalized_obstruction,
)
from semicech.oracles import boolean_extendable
from semicech.scenario import build_scenario
from semicech.semiring import BOOLEAN, INTEGER, NONNEG_RATIONAL, RATIONAL


def test_extension_of_diagonal_section(table1):
    s = table1.scenario
    c = extend_section(table1, "da", support_section(table1, "da", "11"))
    fam = c.family()
    assert [v.support() for v in fam] == [[s.event(ctx, "11")] for ctx in s.contexts]


def test_extension_agrees_with_base(table1, prbox, sweep):
    for m in [table1, prbox] + sweep[:40]:
        for j, e in m.sections():
            c = extend_section(m, j, support_section(m, j, e))
            assert c.family()[j] == support_section(m, j, e)
            for v in c.family():
                (t,) = v.support()
                assert all(t.restrict(x) == e.restrict(x) for x in set(t.domain) & set(e.domain) for x in [{x}])


def test_extension_single_context():
    s = build_scenario("ab", ["ab"], "01")
    m = make_model(s, BOOLEAN, {"ab": {"01": 1, "10": 1}})
    c0 = support_section(m, "ab", "01")
    assert extend_section(m, 0, c0).family() == [c0]


def test_extension_of_deterministic_model(square):
    g = square.event(square.measurements, "0110")
    m = deterministic_model(square, BOOLEAN, g)
    c = extend_section(m, "bc", support_section(m, "bc", "11"))
    assert [v.support()[0] for v in c.family()] == [g.restrict(ctx) for ctx in square.contexts]


def test_extension_refuses_disturbing_model():
    s = build_scenario("abc", ["ab", "bc"], "01")
    m = make_model(s, NONNEG_RATIONAL, {"ab": {"00": 1}, "bc": {"10": 1}})
    with pytest.raises(Disturbing):
        extend_section(m, "ab", support_section(m, "ab", "00"))
    with pytest.raises(Disturbing):
        generalized_obstruction(m, "ab", "00")


# -- classical obstruction ---------------------------------------------------


def test_table1_classically_trivial_everywhere(table1):
    for j, e in table1.sections():
        res = classical_obstruction(table1, j, e, INTEGER)
        assert res.trivial and res.check()
        assert res.witness.semiring == INTEGER


def test_classical_witness_on_diagonal(table1):
    res = classical_obstruction(table1, "da", "01")
    fam = res.witness.family()
    assert fam[1] == support_section(table1, "da", "01").recast(INTEGER)
    # the ring witness leaves the model's support somewhere
    off_support = [
        e for j, v in enumerate(fam) for e in v.support() if table1.semiring.is_zero(table1.tables[j][e])
    ]
    assert off_support


def test_classical_support_presheaf_sees_the_diagonals(table1):
    verdicts = {
        (j, e.key): classical_obstruction(table1, j, e, presheaf="support").verdict
        for j, e in table1.sections()
    }
    assert {k for k, v in verdicts.items() if v == "nontrivial"} == {(1, "01"), (1, "10")}


def test_classical_needs_ring(table1):
    with pytest.raises(NoNegation):
        classical_obstruction(table1, "ab", "00", ring=BOOLEAN)
    with pytest.raises(ZeroMeasureEvent):
        classical_obstruction(table1, "ab", "01")


def test_classical_deterministic(det):
    for j, e in det.sections():
        res = classical_obstruction(det, j, e, RATIONAL)
        assert res.trivial and res.check()
        assert res.z.is_zero()


def test_z_lies_in_relative_complex(sweep):
    for m in sweep[:60]:
        for j, e in m.sections():
            res = classical_obstruction(m, j, e)
            assert relative_member(res.z, RelativeMask(j))


def test_classical_trivial_whenever_generalized_trivial(sweep):
    for m in sweep:
        for j, e in m.sections():
            if generalized_obstruction(m, j, e).trivial:
                assert classical_obstruction(m, j, e).trivial


# -- difference cochains -----------------------------------------------------


def test_difference_of_compatible_family(square):
    g = square.events(square.measurements)[6]
    c = basis_family_cochain(square, [g.restrict(x) for x in square.contexts], NONNEG_RATIONAL)
    d = difference_of(c)
    assert d.is_trivial()
    assert all(w == IDENTITY for w in d.witnesses.values())


def test_difference_of_table1_model(table1):
    d = difference_of(model_cochain(table1))
    assert d.is_trivial() and d.check_witnesses()


def test_difference_of_disturbing_cochain(square):
    fam = [square.event(c, "00") for c in square.contexts]
    fam[2] = square.event("bc", "10")
    c = basis_family_cochain(square, fam, NONNEG_RATIONAL)
    d = difference_of(c)
    assert not d.is_trivial()
    bad = d.nontrivial_simplices()
    assert bad and all(isinstance(d.witnesses[s], list) for s in bad)
    assert d.check_witnesses()
    for s in bad:
        assert all(sum(row) == 1 for row in d.witnesses[s])


def test_difference_without_equal_mass(square):
    vecs = [FreeVector.zero(c, NONNEG_RATIONAL) for c in square.contexts]
    vecs[0] = FreeVector.basis(square.contexts[0], square.event("ab", "00"), Fraction(1, 2), NONNEG_RATIONAL)
    d = difference_of(Cochain.from_family(square, vecs, NONNEG_RATIONAL))
    assert not d.is_trivial()
    assert any(w is None for w in d.witnesses.values())
    assert d.check_witnesses()


def test_difference_needs_semifield(square):
    with pytest.raises(NotSemifield):
        difference_of(Cochain.zero(square, 0, INTEGER))


def test_difference_of_extension_is_relative(sweep, table1):
    for m in [table1] + sweep[:60]:
        for j, e in m.sections():
            d = difference_of(extend_section(m, j, support_section(m, j, e)))
            assert relative_member(d, RelativeMask(j))
            assert d.check_witnesses()


# -- generalized obstruction -------------------------------------------------


def test_table1_generalized(table1):
    verdicts = {(j, e.key): generalized_obstruction(table1, j, e).verdict for j, e in table1.sections()}
    assert verdicts.pop((1, "01")) == "nontrivial"
    assert verdicts.pop((1, "10")) == "nontrivial"
    assert set(verdicts.values()) == {"trivial"}


def test_table1_diagonal_witness_is_global_event(table1):
    res = generalized_obstruction(table1, "da", "11")
    assert res.trivial and res.check()
    g = table1.scenario.event(table1.scenario.measurements, "1111")
    assert [v.support()[0] for v in res.witness.family()] == [g.restrict(c) for c in table1.scenario.contexts]


def test_nontrivial_results_recheck(table1, prbox):
    res = generalized_obstruction(table1, "da", "01")
    assert not res.trivial and res.check() and res.certificate["exhausted"]
    res = generalized_obstruction(prbox, "ab", "00")
    assert not res.trivial and res.check()
    assert "farkas" in res.certificate
    assert not res.difference.is_trivial()


def test_deterministic_sections_trivial(square):
    for r in (BOOLEAN, NONNEG_RATIONAL):
        m = deterministic_model(square, r)
        for j, e in m.sections():
            res = generalized_obstruction(m, j, e)
            assert res.trivial and res.check()


def test_generalized_errors(table1, square):
    with pytest.raises(ZeroMeasureEvent):
        generalized_obstruction(table1, "ab", "10")
    m = make_model(square, INTEGER, {c: {"00": 1} for c in square.contexts})
    with pytest.raises(NotSemifield):
        generalized_obstruction(m, "ab", "00")


def test_rational_models_are_always_trivial(sweep):
    for m in sweep[1:40:4]:
        q = make_model(m.scenario, RATIONAL, list(m.tables))
        for j, e in q.sections():
            res = generalized_obstruction(q, j, e)
            assert res.trivial and res.check()


def _rename(m, mapping):
    s = m.scenario
    outcomes = {mapping[x]: s.outcomes[x] for x in s.measurements}
    s2 = build_scenario([mapping[x] for x in s.measurements], [[mapping[x] for x in c] for c in s.contexts], outcomes)
    tables = {}
    for ctx, tab in zip(s.contexts, m.tables):
        new_ctx = tuple(mapping[x] for x in ctx)
        tables[new_ctx] = {
            s2.event(new_ctx, {mapping[x]: o for x, o in e.as_dict().items()}): w for e, w in tab.items()
        }
    return make_model(s2, m.semiring, tables)


def test_verdicts_do_not_depend_on_context_order(sweep, table1, hardy):
    rng = random.Random(11)
    for m in [table1, hardy] + sweep[:40]:
        names = list(m.scenario.measurements)
        shuffled = names[:]
        rng.shuffle(shuffled)
        mapping = dict(zip(names, shuffled))
        m2 = _rename(m, mapping)
        for j, e in m.sections():
            ctx2 = tuple(mapping[x] for x in m.scenario.contexts[j])
            e2 = {mapping[x]: o for x, o in e.as_dict().items()}
            assert generalized_obstruction(m, j, e).verdict == generalized_obstruction(m2, ctx2, e2).verdict
            assert classical_obstruction(m, j, e).verdict == classical_obstruction(m2, ctx2, e2).verdict


def test_greatest_extension_gives_same_classical_verdict(sweep):
    for m in sweep[:40]:
        for j, e in m.sections():
            c0 = support_section(m, j, e)
            a = extend_section(m, j, c0)
            b = extend_section(m, j, c0, choice="greatest")
            assert a.family()[j] == b.family()[j]


def test_boolean_search_matches_global_enumeration(sweep):
    for m in sweep:
        if m.semiring != BOOLEAN:
            continue
        for j, e in m.sections():
            assert generalized_obstruction(m, j, e).trivial == boolean_extendable(m, j, e)


# -- cancellative bridge -----------------------------------------------------


def test_bridge_on_rational_models(prbox, pr_uniform, uniform, sweep):
    for m in [prbox, pr_uniform, uniform] + [x for x in sweep if x.semiring == NONNEG_RATIONAL][:30]:
        for j, e in m.sections():
            assert cancellative_bridge_check(m, j, e)


def test_bridge_on_compatible_family(det):
    for j, e in det.sections():
        assert cancellative_bridge_check(det, j, e)


def test_bridge_rejects_boolean(table1):
    with pytest.raises(NotCancellative):
        cancellative_bridge_check(table1, "ab", "00")
