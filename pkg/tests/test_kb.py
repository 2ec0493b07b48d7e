import math

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_query, overlap
from plancontrast.kb import (ALWAYS, TYPE, ContradictionError, Interval, KnowledgeGraph,
                             Literal, NamespaceError, NoInverseError, PropertyRegistry, Sign,
                             SnapshotError, TimedTuple, format_time, intervals_intersect,
                             parse_time)
from plancontrast.ontology import new_kb
from plancontrast.scenarios import tea_cola_kb


# -- intervals ---------------------------------------------------------------

def test_interval_examples():
    assert intervals_intersect(Interval(10, 150), Interval(0, 150))
    assert intervals_intersect(ALWAYS, Interval(3, 4))
    assert not intervals_intersect(Interval(0, 5), Interval(6, 9))


def test_touching_endpoints_intersect():
    assert intervals_intersect(Interval(0, 5), Interval(5, 9))


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(5, 1)
    with pytest.raises(ValueError):
        Interval(math.nan, 3)


def test_time_tokens_round_trip():
    assert format_time(None) == "_"
    assert format_time(math.inf) == "Inf"
    assert parse_time("_") is None
    assert parse_time("Inf") == math.inf
    assert parse_time(format_time(2.5)) == 2.5
    with pytest.raises(ValueError):
        parse_time("soon")


times = st.one_of(st.none(), st.integers(0, 50).map(float))


@st.composite
def intervals(draw):
    start = draw(times)
    lo = 0 if start is None else int(start)
    end = draw(st.one_of(st.just(math.inf), st.integers(lo, 60).map(float)))
    return Interval(start, end)


@settings(max_examples=300)
@given(intervals(), intervals())
def test_intersection_is_symmetric_and_matches_oracle(a, b):
    assert intervals_intersect(a, b) == intervals_intersect(b, a) == overlap(a, b)


@settings(max_examples=150)
@given(intervals())
def test_always_intersects_everything(a):
    assert intervals_intersect(ALWAYS, a)
    assert intervals_intersect(a, a)


@settings(max_examples=150)
@given(st.integers(0, 50), st.integers(0, 20), st.integers(1, 20), st.integers(0, 20))
def test_disjoint_finite_intervals_never_intersect(start, length, gap, length2):
    a = Interval(float(start), float(start + length))
    b = Interval(a.end + gap, a.end + gap + length2)
    assert not intervals_intersect(a, b)
    assert not intervals_intersect(b, a)


# -- assertion ---------------------------------------------------------------

def test_assert_is_idempotent_and_holds_literals():
    kb = new_kb()
    t = TimedTuple("tea cost", "hasDataValue", Literal(27))
    kb.assert_tuple(t)
    kb.assert_tuple(t)
    assert t in kb and len(kb) == 1


def test_contradiction_rejected():
    kb = KnowledgeGraph()
    kb.add("k", "isDefinedIn", "p", Interval(0, 5), Sign.NEG)
    with pytest.raises(ContradictionError):
        kb.add("k", "isDefinedIn", "p", Interval(0, 5), Sign.POS)


def test_same_triple_on_other_interval_is_not_a_contradiction():
    kb = KnowledgeGraph()
    kb.add("k", "isDefinedIn", "p", Interval(0, 5), Sign.NEG)
    kb.add("k", "isDefinedIn", "p", Interval(6, 9), Sign.POS)
    assert len(kb) == 2


def test_namespaces_are_disjoint():
    kb = new_kb()
    kb.add("tea", TYPE, "Plan")
    with pytest.raises(NamespaceError):
        kb.add("Plan", "definesTask", "t0")
    with pytest.raises(NamespaceError):
        kb.add("tea", "hasDataValue", "twenty")
    with pytest.raises(NamespaceError):
        kb.add("tea", "definesTask", Literal(3))


def test_literal_rejects_non_finite():
    with pytest.raises(ValueError):
        Literal(math.inf)
    assert str(Literal(27.0)) == "27"


# -- querying ----------------------------------------------------------------

def test_query_quality_of_tea_through_superproperty():
    kb = tea_cola_kb()
    found = kb.query("bringing tea", "hasQuality")
    assert sorted(t.object for t in found) == [
        "bringing tea cost", "bringing tea makespan", "bringing tea number of tasks"]


def test_query_empty_kb_and_locality():
    assert KnowledgeGraph().query() == []
    kb = KnowledgeGraph()
    kb.add("x", "p", "y", Interval(10, 20))
    assert kb.query(locality=Interval(0, 5)) == []
    assert len(kb.query(locality=Interval(15, 30))) == 1


def test_query_never_invents_negative_facts():
    kb = tea_cola_kb()
    assert kb.query("bringing tea", "hasCost", sign=Sign.NEG) == []
    assert kb.query("bringing tea", "isFasterPlanThan", "bringing cola") == []


def test_invert_examples():
    kb = new_kb()
    t = TimedTuple("T7-give object", "isTaskDefinedIn", "bringing cola")
    assert kb.invert(t) == TimedTuple("bringing cola", "definesTask", "T7-give object")
    sym = TimedTuple("a", "isEquivalentPlanTo", "b")
    assert kb.invert(sym) == TimedTuple("b", "isEquivalentPlanTo", "a")
    with pytest.raises(NoInverseError):
        kb.invert(TimedTuple("q", "hasDataValue", Literal(1)))


def test_inverse_query_finds_stated_direction():
    kb = new_kb()
    kb.add("bringing cola", "definesTask", "T0")
    hits = kb.query("T0", "isTaskDefinedIn", inverses=True)
    assert hits == [TimedTuple("T0", "isTaskDefinedIn", "bringing cola")]


def test_instances_of():
    kb = tea_cola_kb()
    assert {e for e, _ in kb.instances_of("Plan")} == {"bringing tea", "bringing cola"}
    assert kb.instances_of("Nothing") == []
    kb2 = new_kb()
    kb2.add("p", TYPE, "Plan", Interval(0, 50))
    assert kb2.instances_of("Plan", Interval(60, 70)) == []


def test_subclass_and_range_visibility():
    kb = tea_cola_kb()
    qualities = {e for e, _ in kb.instances_of("Quality")}
    assert "bringing tea cost" in qualities
    assert {e for e, _ in kb.instances_of("PlanCost")} <= qualities


# random small KBs over a fixed registry

REG = PropertyRegistry()
REG.add_inverse("p", "pInv")
REG.add_symmetric("near")
REG.subproperty_of.update({"p1": "p", "p2": "p1"})
ENTS = ["e0", "e1", "e2", "e3"]
PROPS = ["p", "p1", "p2", "pInv", "near", "q"]


@st.composite
def random_kb(draw):
    kb = KnowledgeGraph(REG)
    for _ in range(draw(st.integers(0, 40))):
        s, o = draw(st.sampled_from(ENTS)), draw(st.sampled_from(ENTS))
        try:
            kb.add(s, draw(st.sampled_from(PROPS)), o, draw(intervals()),
                   draw(st.sampled_from(list(Sign))))
        except ContradictionError:
            pass
    return kb


slot = lambda xs: st.one_of(st.none(), st.sampled_from(xs))


@settings(max_examples=200)
@given(random_kb(), slot(ENTS), slot(PROPS), slot(ENTS), st.one_of(st.none(), intervals()),
       st.one_of(st.none(), st.sampled_from(list(Sign))))
def test_query_matches_brute_force(kb, s, p, o, loc, sign):
    assert set(kb.query(s, p, o, loc, sign=sign)) == brute_query(list(kb), REG, s, p, o, loc, sign)


@settings(max_examples=100)
@given(random_kb())
def test_inverse_involution_and_closure(kb):
    for t in kb:
        if kb.has_inverse(t):
            inv = kb.invert(t)
            assert kb.invert(inv) == t
            assert t in kb.query(t.subject, t.property, t.object)
            view = kb.query(inv.subject, inv.property, inv.object, inverses=True)
            assert inv in view


@settings(max_examples=100)
@given(random_kb())
def test_snapshot_round_trip(kb):
    again = KnowledgeGraph(REG).load(kb.dump())
    assert again == kb
    assert list(again) == list(kb)


def test_snapshot_round_trip_with_literals():
    kb = tea_cola_kb()
    assert new_kb().load(kb.dump()) == kb


def test_snapshot_errors():
    with pytest.raises(SnapshotError):
        new_kb().load("a\tb\tc\n")
    with pytest.raises(SnapshotError):
        new_kb().load("a\tb\tc\tx\tInf\tpos\n")


def test_inverse_query_sees_subproperty_facts():
    kb = KnowledgeGraph(REG)
    kb.add("e0", "p2", "e1")
    assert kb.query("e1", "pInv", inverses=True) == [TimedTuple("e1", "pInv", "e0")]
    assert kb.query("e1", "pInv") == []
