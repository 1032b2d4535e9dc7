from fractions import Fraction

import pytest
from scipy.optimize import linprog

from semicech.analysis import (
    contextual_fraction,
    is_r_contextual,
    noncontextual_decompose,
    possibilistic_collapse,
    signed_realization,
    signed_residual,
    verify_decomposition,
)
from semicech.errors import Disturbing, ModelError, NotSemifield
from semicech.generate import HALF, cycle_scenario, deterministic_model, fully_mixed, mix, pr_box
from semicech.model import incidence_matrix, make_model
from semicech.oracles import oracle_noncontextual
from semicech.scenario import build_scenario
from semicech.semiring import BOOLEAN, INTEGER, NONNEG_RATIONAL


def test_table1_is_contextual(table1):
    v = is_r_contextual(table1)
    assert v.contextual
    assert (v.witness.context, v.witness.event.key) == (1, "01")
    assert len(v.sections) == 10


def test_deterministic_is_noncontextual(square):
    m = deterministic_model(square, BOOLEAN)
    v = is_r_contextual(m)
    assert not v.contextual
    assert v.witness == {square.event(square.measurements, "0000"): 1}


def test_prbox_is_contextual(prbox):
    v = is_r_contextual(prbox)
    assert v.contextual and all(not r.trivial for r in v.sections)


def test_decompositions(det, uniform, table1):
    g = det.scenario.event(det.scenario.measurements, "0000")
    assert noncontextual_decompose(det) == {g: 1}
    assert noncontextual_decompose(table1) is None
    b = noncontextual_decompose(uniform)
    assert b is not None and verify_decomposition(uniform, b)
    uniform_b = {g: Fraction(1, 16) for g in uniform.scenario.events(uniform.scenario.measurements)}
    assert verify_decomposition(uniform, uniform_b)


def test_boolean_decomposition_needs_exhaustive_union(hardy):
    assert noncontextual_decompose(hardy) is None
    assert noncontextual_decompose(possibilistic_collapse(fully_mixed(cycle_scenario(4)))) is not None


def test_contextual_fraction_anchors(det, prbox, square):
    cf = contextual_fraction(det)
    assert cf.value == 0 and cf.certified
    cf = contextual_fraction(prbox)
    assert cf.value == 1 and cf.certified and cf.b == {}
    cf = contextual_fraction(mix(prbox, det, HALF))
    assert cf.value == HALF and cf.certified
    assert all(r >= 0 for r in cf.residual.values())


def test_pr_uniform_mixture_sits_on_the_boundary(pr_uniform):
    # CHSH value of the mixture is exactly the classical bound
    cf = contextual_fraction(pr_uniform)
    assert cf.value == 0 and cf.certified
    assert verify_decomposition(pr_uniform, cf.b)


def test_fraction_affine_along_pr_deterministic_segment(prbox, det):
    for k in range(0, 9):
        t = Fraction(k, 8)
        assert contextual_fraction(mix(prbox, det, t)).value == t


def test_fraction_against_scipy(sweep):
    for m in [x for x in sweep if x.semiring == NONNEG_RATIONAL][:40]:
        inc = incidence_matrix(m.scenario, m.semiring)
        ref = linprog(
            [-1] * len(inc.columns),
            A_ub=[[float(a) for a in row] for row in inc.entries],
            b_ub=[float(p) for p in m.p_vector()],
            bounds=[(0, None)] * len(inc.columns),
            method="highs",
        )
        assert abs(float(contextual_fraction(m).value) - (1 + ref.fun)) < 1e-9


def test_fraction_requires_rational_model(table1):
    with pytest.raises(ModelError):
        contextual_fraction(table1)


def test_signed_realization_of_prbox(prbox):
    b = signed_realization(prbox)
    assert b is not None
    assert any(w < 0 for w in b.values())
    assert all(r == 0 for r in signed_residual(prbox, b))


def test_signed_realization_of_deterministic(det):
    g = det.scenario.event(det.scenario.measurements, "0000")
    assert signed_realization(det) == {g: 1}


def test_collapse(prbox, table1):
    c = possibilistic_collapse(prbox)
    assert c.semiring == BOOLEAN
    assert c.same_tables(pr_box("boolean"))
    assert possibilistic_collapse(table1).same_tables(table1)


def test_collapse_can_lose_contextuality(square, prbox):
    m = mix(prbox, fully_mixed(square), Fraction(3, 4))
    assert is_r_contextual(m).contextual
    assert not is_r_contextual(possibilistic_collapse(m)).contextual


def test_logical_contextuality_implies_probabilistic(sweep):
    for m in sweep:
        if m.semiring != NONNEG_RATIONAL:
            continue
        if is_r_contextual(possibilistic_collapse(m)).contextual:
            assert is_r_contextual(m).contextual


def test_errors(square):
    s = build_scenario("abc", ["ab", "bc"], "01")
    bad = make_model(s, NONNEG_RATIONAL, {"ab": {"00": 1}, "bc": {"10": 1}})
    for fn in (is_r_contextual, noncontextual_decompose, contextual_fraction, signed_realization):
        with pytest.raises(Disturbing):
            fn(bad)
    z = make_model(square, INTEGER, {c: {"00": 1} for c in square.contexts})
    with pytest.raises(NotSemifield):
        is_r_contextual(z)


def test_corollary_on_sweep(sweep):
    for m in sweep:
        contextual = is_r_contextual(m).contextual
        assert contextual == (noncontextual_decompose(m) is None)
        assert contextual == (not oracle_noncontextual(m))
        if m.semiring == NONNEG_RATIONAL:
            assert contextual == (contextual_fraction(m).value > 0)
