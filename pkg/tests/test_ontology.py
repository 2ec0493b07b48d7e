from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from plancontrast.inference import compare_all_plans
from plancontrast.kb import Literal, Sign, TimedTuple
from plancontrast.ontology import (DIRECTLY_FOLLOWS, DuplicatePlanError, DisjointnessError,
                                   EmptyPlanError, QualityKind, UnknownPlanError, assert_plan,
                                   check_dominance_disjointness, new_kb, plan_qualities,
                                   plan_relations, plans, quality_relations_between)
from plancontrast.scenarios import COLA, TEA, tea_cola_kb

TEA_TASKS = [f"T{i}-task" for i in range(6)]


def test_cq1_cost_and_number_of_tasks_of_tea():
    kb = assert_plan(new_kb(), TEA, TEA_TASKS, 27, 27)
    [cost] = kb.query("bringing tea cost", "hasDataValue")
    [count] = kb.query("bringing tea number of tasks", "hasDataValue")
    assert cost.object == Literal(27) and count.object == Literal(6)


def test_single_task_plan_has_no_sequencing():
    kb = assert_plan(new_kb(), "solo", ["T0-wait"], 3, 3)
    assert kb.query(prop=DIRECTLY_FOLLOWS) == []


def test_eight_tasks_quality_value():
    kb = assert_plan(new_kb(), COLA, [f"T{i}-x" for i in range(8)], 59, 59)
    q = {p.kind: p.value for p in plan_qualities(kb, COLA)}
    assert q[QualityKind.NUMBER_OF_TASKS] == Literal(8)


def test_plan_qualities_of_tea():
    got = [(q.quality, q.kind, q.value) for q in plan_qualities(tea_cola_kb(), TEA)]
    assert got == [
        ("bringing tea cost", QualityKind.COST, Literal(27)),
        ("bringing tea makespan", QualityKind.MAKESPAN, Literal(27)),
        ("bringing tea number of tasks", QualityKind.NUMBER_OF_TASKS, Literal(6)),
    ]


def test_hand_built_plan_without_qualities():
    kb = new_kb()
    kb.add("bare", "type", "Plan")
    assert plan_qualities(kb, "bare") == []
    with pytest.raises(UnknownPlanError):
        plan_qualities(kb, "ghost")


def test_assert_plan_errors_leave_kb_untouched():
    kb = assert_plan(new_kb(), TEA, TEA_TASKS, 27, 27)
    size = len(kb)
    with pytest.raises(DuplicatePlanError):
        assert_plan(kb, TEA, TEA_TASKS, 27, 27)
    with pytest.raises(EmptyPlanError):
        assert_plan(kb, "empty", [], 0, 0)
    assert len(kb) == size


def test_quality_relations_before_and_after_inference():
    kb = tea_cola_kb()
    assert quality_relations_between(kb, TEA, COLA) == set()
    compare_all_plans(kb)
    rels = quality_relations_between(kb, TEA, COLA)
    assert len(rels) == 3
    assert TimedTuple("bringing tea cost", "hasBetterQualityValueThan", "bringing cola cost") in rels


def test_plan_relations_tea_cola():
    kb = tea_cola_kb()
    assert plan_relations(kb, TEA, COLA) == set()
    compare_all_plans(kb)
    assert plan_relations(kb, TEA, COLA) == {
        "isCheaperPlanThan", "isShorterPlanThan", "isFasterPlanThan", "isBetterPlanThan"}
    assert plan_relations(kb, COLA, TEA) == {
        "isMoreExpensivePlanThan", "isLongerPlanThan", "isSlowerPlanThan", "isWorsePlanThan"}


def test_equivalence_disjoint_with_better():
    kb = new_kb()
    kb.add("a", "type", "Plan")
    kb.add("b", "type", "Plan")
    kb.add("a", "isBetterPlanThan", "b")
    with pytest.raises(DisjointnessError):
        check_dominance_disjointness(kb, TimedTuple("b", "isEquivalentPlanTo", "a"))


labels = st.lists(st.text("abcdefgh", min_size=1, max_size=4), min_size=1, max_size=15, unique=True)


@settings(max_examples=100)
@given(labels, st.integers(0, 500), st.integers(0, 500))
def test_round_trip_and_chain(tasks, cost, makespan):
    tasks = [f"T{i}-{t}" for i, t in enumerate(tasks)]
    kb = assert_plan(new_kb(), "p", tasks, cost, makespan)
    q = {x.kind: x.value.value for x in plan_qualities(kb, "p")}
    assert q == {QualityKind.COST: cost, QualityKind.MAKESPAN: makespan,
                 QualityKind.NUMBER_OF_TASKS: len(tasks)}

    follows = kb.query(prop=DIRECTLY_FOLLOWS)
    assert len(follows) == len(tasks) - 1
    outdeg = Counter(t.subject for t in follows)
    indeg = Counter(t.object for t in follows)
    assert max(outdeg.values(), default=0) <= 1 and max(indeg.values(), default=0) <= 1
    # walking back from the last task visits every task in order
    prev = {t.subject: t.object for t in follows}
    walk = [tasks[-1]]
    while walk[-1] in prev:
        walk.append(prev[walk[-1]])
    assert walk[::-1] == tasks

    # subsumption and subclass visibility
    has_q = {t.object for t in kb.query("p", "hasQuality")}
    assert has_q == {x.quality for x in plan_qualities(kb, "p")}
    qualities = {e for e, _ in kb.instances_of("Quality")}
    assert {e for e, _ in kb.instances_of("PlanCost")} <= qualities
    assert plans(kb) == ["p"]
    assert kb.query(sign=Sign.NEG) == []
