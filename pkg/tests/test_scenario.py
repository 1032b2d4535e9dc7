import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semicech.errors import CoverageError, EmptyOutcome, MaximalityError, NotSubset, ScenarioError
from semicech.scenario import JointEvent, agrees, build_scenario, face, glue, nerve, restrict_event


def test_square_scenario(square):
    assert square.measurements == ("a", "b", "c", "d")
    # "da" is stored sorted, so it sorts second
    assert square.contexts == (("a", "b"), ("a", "d"), ("b", "c"), ("c", "d"))
    assert square.context_index("da") == square.context_index("ad") == 1
    assert square.context_index("a,d") == 1
    assert square.outcomes["c"] == ("0", "1")


def test_single_context_scenario():
    s = build_scenario(["a"], [["a"]], {"a": ["0"]})
    assert s.contexts == (("a",),)
    assert nerve(s, 1)[1] == []


def test_invalid_scenarios():
    with pytest.raises(MaximalityError):
        build_scenario("ab", ["ab", "a"], "01")
    with pytest.raises(CoverageError):
        build_scenario("abc", ["ab"], "01")
    with pytest.raises(EmptyOutcome):
        build_scenario("ab", ["ab"], {"a": "01", "b": ""})
    with pytest.raises(EmptyOutcome):
        build_scenario("ab", ["ab"], {"a": "01"})
    with pytest.raises(ScenarioError):
        build_scenario("ab", ["ax"], "01")


def test_square_nerve(square):
    zero, one, two = nerve(square, 2)
    assert [s.members for s in zero] == [(c,) for c in square.contexts]
    pairs = {(s.members[0], s.members[1]): s.intersection for s in one}
    assert pairs == {
        (("a", "b"), ("a", "d")): ("a",),
        (("a", "b"), ("b", "c")): ("b",),
        (("a", "d"), ("c", "d")): ("d",),
        (("b", "c"), ("c", "d")): ("c",),
    }
    assert two == []


def test_shared_measurement_gives_one_two_simplex():
    s = build_scenario("abcx", ["abx", "bcx", "acx"], "01")
    two = nerve(s, 2)[2]
    assert len(two) == 1
    assert two[0].intersection == ("x",)
    # brute force over all index triples
    brute = [
        idx for idx in itertools.combinations(range(3), 3)
        if set.intersection(*(set(s.contexts[i]) for i in idx))
    ]
    assert [t.indices for t in two] == brute


def test_faces(square):
    ab_bc = next(s for s in square.simplices(1) if s.members == (("a", "b"), ("b", "c")))
    assert face(ab_bc, 0).members == (("b", "c"),)
    assert face(ab_bc, 1).members == (("a", "b"),)
    with pytest.raises(IndexError):
        face(ab_bc, 2)


def test_nerve_closed_under_faces():
    s = build_scenario("abcdx", ["abx", "bcx", "cdx", "adx"], "01")
    for q in (1, 2, 3):
        lower = set(s.simplices(q - 1))
        for sigma in s.simplices(q):
            for k in range(q + 1):
                f = face(sigma, k)
                assert f in lower
                assert set(f.intersection) >= set(sigma.intersection)


def test_restriction():
    e = JointEvent(("a", "b"), ("0", "0"))
    assert restrict_event(e, {"b"}) == JointEvent(("b",), ("0",))
    assert restrict_event(e, {"a", "b"}) == e
    with pytest.raises(NotSubset):
        restrict_event(e, {"c"})


@given(st.lists(st.sampled_from("01"), min_size=4, max_size=4), st.sets(st.sampled_from("abcd")), st.data())
def test_restriction_composes(outcomes, v, data):
    e = JointEvent(("a", "b", "c", "d"), tuple(outcomes))
    w = data.draw(st.sets(st.sampled_from(sorted(v)))) if v else set()
    assert restrict_event(restrict_event(e, v), w) == restrict_event(e, w)


def test_events_are_lexicographic(square):
    keys = [e.key for e in square.events(("a", "d"))]
    assert keys == ["00", "01", "10", "11"]
    assert square.event("ad", "01").as_dict() == {"a": "0", "d": "1"}
    with pytest.raises(ScenarioError):
        square.event("ad", "012")


def test_gluing_by_enumeration(square):
    """Pairwise-agreeing context families glue to exactly one global event."""
    families = [
        fam for fam in itertools.product(*(square.events(c) for c in square.contexts))
        if all(agrees(x, y) for x, y in itertools.combinations(fam, 2))
    ]
    glued = [glue(f) for f in families]
    assert sorted(glued) == square.events(square.measurements)
    for fam, g in zip(families, glued):
        assert all(g.restrict(e.domain) == e for e in fam)


def test_glue_rejects_disagreement():
    with pytest.raises(ScenarioError):
        glue([JointEvent(("a",), ("0",)), JointEvent(("a", "b"), ("1", "0"))])


def test_random_nerves_match_brute_force():
    rng = random.Random(3)
    for _ in range(30):
        names = "abcdef"
        ctxs = set()
        while len(ctxs) < 4:
            ctxs.add(frozenset(rng.sample(names, 3)))
        ctxs = [c for c in ctxs if not any(c < d for d in ctxs)]
        covered = sorted(set().union(*ctxs))
        s = build_scenario(covered, [sorted(c) for c in ctxs], "01")
        for q in range(3):
            brute = [
                idx for idx in itertools.combinations(range(len(s.contexts)), q + 1)
                if set.intersection(*(set(s.contexts[i]) for i in idx))
            ]
            assert [t.indices for t in s.simplices(q)] == brute
