import re

import pytest

from plancontrast.acxon import InstantiatedPair, narrate_pair, retrieve_instantiated_pairs
from plancontrast.kb import Interval, Literal, Sign, TimedTuple
from plancontrast.narrative import (Cluster, ClusterKind, LabelTable, cast, cluster,
                                    construct_narrative, group, interval_phrase, order, render,
                                    parse_label_table)
from plancontrast.ontology import new_kb
from plancontrast.scenarios import (COLA, RESTRICTED_NARRATIVE, RUNNING_EXAMPLE_NARRATIVE, TEA,
                                    running_example_kb)
from test_acxon import D_P, T


def ws(text):
    return " ".join(text.split())


@pytest.fixture
def example():
    kb = running_example_kb()
    [pair] = retrieve_instantiated_pairs(kb, [("Plan", "Plan")])
    return kb, pair


# the post-ordering listing of the walk-through, DP1..DP13
ORDERED = [
    T(TEA, "isBetterPlanThan", COLA),
    T(TEA, "isCheaperPlanThan", COLA),
    T(TEA, "definesTask", "T2-grasp object"),
    T(TEA, "definesTask", "T3-got to waypoint"),
    T(TEA, "definesTask", "T5-give object"),
    T(COLA, "definesTask", "T7-give object"),
    T(COLA, "hasCost", "cola cost"),
    T(TEA, "hasCost", "tea cost"),
    T("cola cost", "hasWorseQualityValueThan", "tea cost"),
    T("cola cost", "hasDataValue", Literal(59)),
    T("tea cost", "hasDataValue", Literal(27)),
    T("T3-go to waypoint", "directlyPrecedes", "T5-give object"),
    T("T2-grasp object", "directlyPrecedes", "T3-go to waypoint"),
]


def test_cast_reverses_defined_in_and_follows(example):
    kb, pair = example
    out = cast(kb, D_P, pair)
    assert T(COLA, "definesTask", "T7-give object") in out
    assert T("T2-grasp object", "directlyPrecedes", "T3-go to waypoint") in out
    assert T("T3-go to waypoint", "directlyFollows", "T2-grasp object") not in out
    assert T(TEA, "definesTask", "T2-grasp object") in out


def test_cast_keeps_first_pair_direction(example):
    kb, pair = example
    d = [T(COLA, "isWorsePlanThan", TEA), T(TEA, "isCheaperPlanThan", COLA)]
    assert cast(kb, d, pair) == [d[0], T(COLA, "isMoreExpensivePlanThan", TEA)]


def test_clusters_and_order_match_walkthrough(example):
    kb, pair = example
    clusters = order(cluster(cast(kb, D_P, pair), pair))
    assert [c.kind for c in clusters] == [ClusterKind.PAIR, ClusterKind.DIRECT, ClusterKind.DIRECT,
                                          ClusterKind.INDIRECT, ClusterKind.UNRELATED]
    assert [t for c in clusters for t in c.tuples] == ORDERED


def test_one_sided_property_waits_for_unrelated():
    pair = InstantiatedPair("a", "b")
    kb = new_kb()
    d = [T("a", "hasCost", "qa")]
    [c] = cluster(cast(kb, d, pair), pair)
    assert c.kind is ClusterKind.UNRELATED


def test_only_pair_level_gives_one_cluster(example):
    kb, pair = example
    d = [T(TEA, "isBetterPlanThan", COLA), T(TEA, "isCheaperPlanThan", COLA)]
    assert len(cluster(cast(kb, d, pair), pair)) == 1


def test_bigger_direct_cluster_first():
    small = Cluster(ClusterKind.DIRECT, "zz", [T("a", "zz", "x")] * 3)
    big = Cluster(ClusterKind.DIRECT, "aa", [T("a", "aa", "x")] * 4)
    tie = Cluster(ClusterKind.DIRECT, "bb", [T("a", "bb", "x")] * 3)
    assert [c.property for c in order([small, big, tie])] == ["aa", "bb", "zz"]


def test_grouping_by_object_then_predicate():
    clauses = group([T("s", "p", "o1"), T("s", "p", "o2"), T("s", "q", "o3"), T("s", "r", "o3")])
    assert [(c.props, c.objects) for c in clauses] == [(["p"], ["o1", "o2"]), (["q", "r"], ["o3"])]


def test_golden_text(example):
    kb, pair = example
    text, clusters = construct_narrative(kb, D_P, pair)
    assert ws(text) == ws(RUNNING_EXAMPLE_NARRATIVE)
    # one sentence per cluster
    assert len(re.findall(r"\.(?=\s|$)", text)) == len(clusters)


def test_restricted_golden_text(example):
    kb, pair = example
    assert ws(narrate_pair(kb, pair, 3, "Quality").text) == ws(RESTRICTED_NARRATIVE)


def test_empty_render():
    assert render([], InstantiatedPair("a", "b")) == ""


def test_interval_phrases():
    pair_iv = (Interval(0, 100),)
    assert interval_phrase(Interval(), pair_iv) == ""
    assert interval_phrase(Interval(0, 100), pair_iv) == ""
    assert interval_phrase(Interval(5, 10), pair_iv) == " from 5 to 10"
    assert interval_phrase(Interval(None, 10)) == " to 10"
    assert interval_phrase(Interval(2.5)) == " from 2.5"


def test_negative_tuples_read_as_not():
    pair = InstantiatedPair("a", "b")
    kb = new_kb()
    d = [TimedTuple("a", "isFasterPlanThan", "b", sign=Sign.NEG)]
    text, _ = construct_narrative(kb, d, pair)
    assert text == "`a' is not faster plan than `b'."
    d = [TimedTuple("a", "definesTask", "t", sign=Sign.NEG)]
    assert construct_narrative(kb, d, pair)[0] == "`a' not includes task `t'."


def test_label_table_file_and_fallback(tmp_path):
    path = tmp_path / "labels.tsv"
    path.write_text("# custom\nisCheaperPlanThan\tcosts less than\n")
    labels = LabelTable.from_file(path)
    assert labels("isCheaperPlanThan") == "costs less than"
    assert labels("definesTask") == "includes task"
    assert labels("someNewProperty") == "some new property"
    with pytest.raises(ValueError):
        parse_label_table("no tab here\n")


def test_custom_labels_change_the_text(example, tmp_path):
    kb, pair = example
    path = tmp_path / "labels.tsv"
    path.write_text("hasDataValue\tis worth\n")
    n = narrate_pair(kb, pair, 3, "Quality", LabelTable.from_file(path))
    assert "`cola cost' is worth `59'" in n.text
