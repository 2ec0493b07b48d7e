"""The drink-delivery scenario: tea versus cola.

Two knowledge bases are provided. :func:`tea_cola_kb` is what ingesting the two
planner traces produces (6 tasks / 27 / 27 against 8 tasks / 59 / 59).
:func:`running_example_kb` is the small hand-built excerpt used to walk
through narration step by step; its task labels are kept exactly as
written there, including the distinct ``T3-got to waypoint`` and
``T3-go to waypoint`` individuals.
"""

from __future__ import annotations

from .ingest import ingest_plan, parse_plan_trace
from .kb import TYPE, KnowledgeGraph, Literal, TimedTuple
from .ontology import PLAN, new_kb

TEA = "bringing tea"
COLA = "bringing cola"

TEA_TRACE = """\
; bringing tea: 6 actions, makespan 27
0.000: (find_person r) [5.000]
5.000: (goto_waypoint r wp0 microwave) [6.000]
11.000: (grasp_object r tea microwave) [3.000]
14.000: (goto_waypoint r microwave wp_person) [6.000]
20.000: (give_object r tea person) [4.000]
24.000: (release_gripper r) [3.000]
"""

COLA_TRACE = """\
; bringing cola: 8 actions, makespan 59
0.000: (find_person r) [5.000]
5.000: (goto_waypoint r wp0 kitchen) [15.000]
20.000: (open_fridge r fridge) [4.000]
24.000: (grasp_object r cola fridge) [3.000]
27.000: (close_fridge r fridge) [4.000]
31.000: (goto_waypoint r kitchen wp_person) [20.000]
51.000: (give_object r cola person) [5.000]
56.000: (release_gripper r) [3.000]
"""


def tea_cola_kb() -> KnowledgeGraph:
    """Both plans ingested from their traces, before any inference."""
    kb = new_kb()
    ingest_plan(kb, parse_plan_trace(TEA_TRACE, TEA))
    ingest_plan(kb, parse_plan_trace(COLA_TRACE, COLA))
    return kb


def _t(s, p, o) -> TimedTuple:
    return TimedTuple(s, p, o)


def running_example_kb() -> KnowledgeGraph:
    """The narration walk-through excerpt, with inference results already in."""
    kb = new_kb()
    kb.extend([
        _t(TEA, TYPE, PLAN),
        _t(COLA, TYPE, PLAN),
        _t(TEA, "isBetterPlanThan", COLA),
        _t(TEA, "definesTask", "T2-grasp object"),
        _t(TEA, "definesTask", "task 0 - find person"),
        _t(COLA, "definesTask", "task 0 - find person"),
        _t("T3-go to waypoint", "directlyPrecedes", "T5-give object"),
        _t("T7-give object", "isTaskDefinedIn", COLA),
        _t(TEA, "definesTask", "T3-got to waypoint"),
        _t(TEA, "definesTask", "T5-give object"),
        _t("T3-go to waypoint", "directlyFollows", "T2-grasp object"),
        _t(TEA, "isCheaperPlanThan", COLA),
        _t(COLA, "hasCost", "cola cost"),
        _t(TEA, "hasCost", "tea cost"),
        _t("cola cost", "hasDataValue", Literal(59)),
        _t("tea cost", "hasDataValue", Literal(27)),
        _t("cola cost", "hasWorseQualityValueThan", "tea cost"),
    ])
    return kb


RUNNING_EXAMPLE_NARRATIVE = (
    "`bringing tea' is better plan than and is cheaper plan than `bringing cola'. "
    "`bringing tea' includes task `T2-grasp object' and `T3-got to waypoint' and "
    "`T5-give object', while `bringing cola' includes task `T7-give object'. "
    "`bringing cola' has cost `cola cost', which has a higher value than `tea cost'; "
    "while `bringing tea' has cost `tea cost'. "
    "`cola cost' has value `59', while `tea cost' has value `27'. "
    "`T3-go to waypoint' directly precedes `T5-give object', and `T2-grasp object' "
    "directly precedes `T3-go to waypoint'."
)

RESTRICTED_NARRATIVE = (
    "`bringing tea' is better plan than and is cheaper plan than `bringing cola'. "
    "`bringing cola' has cost `cola cost', which has a higher value than `tea cost'; "
    "while `bringing tea' has cost `tea cost'. "
    "`cola cost' has value `59', while `tea cost' has value `27'."
)
