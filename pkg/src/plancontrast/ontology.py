"""Plan-comparison vocabulary and helpers that encode plans as tuples.

Names below are bit-exact: they appear verbatim in snapshots and, through
the display-label table, in narratives.

=============================  ===============================  =========
property                       inverse                          notes
=============================  ===============================  =========
hasQuality                     isQualityOf
hasCost                        isCostOf                         < hasQuality
hasMakespan                    isMakespanOf                     < hasQuality
hasNumberOfTasks               isNumberOfTasksOf                < hasQuality
hasBetterQualityValueThan      hasWorseQualityValueThan
hasEquivalentQualityValueThan  (symmetric)
isCheaperPlanThan              isMoreExpensivePlanThan
isFasterPlanThan               isSlowerPlanThan
isShorterPlanThan              isLongerPlanThan
isBetterPlanThan               isWorsePlanThan
isEquivalentPlanTo             (symmetric)                      disjoint with better/worse
isPlanWithSameCostAs           (symmetric)
isPlanWithSameMakespanAs       (symmetric)
isPlanWithSameNumberOfTasksAs  (symmetric)
definesTask                    isTaskDefinedIn
directlyFollows                directlyPrecedes
hasDataValue                   (data property)
=============================  ===============================  =========

Classes: Plan, Task, Quality, and PlanCost / PlanMakespan / PlanNumberOfTasks
as subclasses of Quality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .kb import (ALWAYS, TYPE, ContradictionError, Interval, KBError, KnowledgeGraph,
                 Literal, PropertyRegistry, Sign, TimedTuple)

PLAN = "Plan"
TASK = "Task"
QUALITY = "Quality"
PLAN_COST = "PlanCost"
PLAN_MAKESPAN = "PlanMakespan"
PLAN_NUMBER_OF_TASKS = "PlanNumberOfTasks"

HAS_QUALITY = "hasQuality"
IS_QUALITY_OF = "isQualityOf"
HAS_DATA_VALUE = "hasDataValue"
DEFINES_TASK = "definesTask"
IS_TASK_DEFINED_IN = "isTaskDefinedIn"
DIRECTLY_FOLLOWS = "directlyFollows"
DIRECTLY_PRECEDES = "directlyPrecedes"

HAS_BETTER_QUALITY_VALUE_THAN = "hasBetterQualityValueThan"
HAS_WORSE_QUALITY_VALUE_THAN = "hasWorseQualityValueThan"
HAS_EQUIVALENT_QUALITY_VALUE_THAN = "hasEquivalentQualityValueThan"

IS_BETTER_PLAN_THAN = "isBetterPlanThan"
IS_WORSE_PLAN_THAN = "isWorsePlanThan"
IS_EQUIVALENT_PLAN_TO = "isEquivalentPlanTo"

QUALITY_COMPARISONS = (
    HAS_BETTER_QUALITY_VALUE_THAN,
    HAS_WORSE_QUALITY_VALUE_THAN,
    HAS_EQUIVALENT_QUALITY_VALUE_THAN,
)
DOMINANCE_RELATIONS = (IS_BETTER_PLAN_THAN, IS_WORSE_PLAN_THAN, IS_EQUIVALENT_PLAN_TO)


class OntologyError(KBError):
    pass


class DuplicatePlanError(OntologyError):
    pass


class EmptyPlanError(OntologyError):
    pass


class UnknownPlanError(OntologyError):
    pass


class DisjointnessError(ContradictionError):
    pass


class QualityKind(enum.Enum):
    """The three plan qualities and the relations tied to each."""

    COST = ("cost", PLAN_COST, "hasCost", "isCostOf",
            "isCheaperPlanThan", "isMoreExpensivePlanThan", "isPlanWithSameCostAs")
    MAKESPAN = ("makespan", PLAN_MAKESPAN, "hasMakespan", "isMakespanOf",
                "isFasterPlanThan", "isSlowerPlanThan", "isPlanWithSameMakespanAs")
    NUMBER_OF_TASKS = ("number of tasks", PLAN_NUMBER_OF_TASKS, "hasNumberOfTasks",
                       "isNumberOfTasksOf", "isShorterPlanThan", "isLongerPlanThan",
                       "isPlanWithSameNumberOfTasksAs")

    def __init__(self, label, quality_class, has_relation, of_relation,
                 better_relation, worse_relation, same_relation):
        self.label = label
        self.quality_class = quality_class
        self.has_relation = has_relation
        self.of_relation = of_relation
        self.better_relation = better_relation
        self.worse_relation = worse_relation
        self.same_relation = same_relation

    def quality_name(self, plan: str) -> str:
        return f"{plan} {self.label}"


PLAN_RELATIONS = tuple(
    r for k in QualityKind for r in (k.better_relation, k.worse_relation, k.same_relation)
) + DOMINANCE_RELATIONS


def vocabulary() -> PropertyRegistry:
    """A fresh registry holding the plan-comparison vocabulary."""
    reg = PropertyRegistry()
    reg.add_inverse(HAS_QUALITY, IS_QUALITY_OF)
    reg.ranges[HAS_QUALITY] = QUALITY
    for kind in QualityKind:
        reg.add_inverse(kind.has_relation, kind.of_relation)
        reg.subproperty_of[kind.has_relation] = HAS_QUALITY
        reg.subproperty_of[kind.of_relation] = IS_QUALITY_OF
        reg.subclass_of[kind.quality_class] = QUALITY
        reg.ranges[kind.has_relation] = kind.quality_class
        reg.add_inverse(kind.better_relation, kind.worse_relation)
        reg.add_symmetric(kind.same_relation)
    reg.add_inverse(HAS_BETTER_QUALITY_VALUE_THAN, HAS_WORSE_QUALITY_VALUE_THAN)
    reg.add_symmetric(HAS_EQUIVALENT_QUALITY_VALUE_THAN)
    reg.add_inverse(IS_BETTER_PLAN_THAN, IS_WORSE_PLAN_THAN)
    reg.add_symmetric(IS_EQUIVALENT_PLAN_TO)
    reg.add_inverse(DEFINES_TASK, IS_TASK_DEFINED_IN)
    reg.ranges[DEFINES_TASK] = TASK
    reg.add_inverse(DIRECTLY_FOLLOWS, DIRECTLY_PRECEDES)
    reg.data_properties.add(HAS_DATA_VALUE)
    return reg


def new_kb() -> KnowledgeGraph:
    return KnowledgeGraph(vocabulary())


def is_plan(kb: KnowledgeGraph, name: str) -> bool:
    return bool(kb.query(name, TYPE, PLAN, sign=Sign.POS))


def plans(kb: KnowledgeGraph, locality: Interval = ALWAYS) -> list:
    """Plan names in lexicographic order."""
    return sorted({e for e, _ in kb.instances_of(PLAN, locality)})


def _require_plan(kb: KnowledgeGraph, name: str) -> None:
    if not is_plan(kb, name):
        raise UnknownPlanError(f"{name!r} is not a Plan in the knowledge base")


def assert_plan(kb: KnowledgeGraph, name: str, tasks: Sequence[str], cost: float,
                makespan: float, interval: Interval = ALWAYS) -> KnowledgeGraph:
    """Encode a plan: its type, ordered tasks and the three quality values."""
    if is_plan(kb, name):
        raise DuplicatePlanError(f"plan {name!r} already asserted")
    if not tasks:
        raise EmptyPlanError(f"plan {name!r} has no tasks")
    if len(set(tasks)) != len(tasks):
        raise OntologyError(f"plan {name!r} repeats a task label")
    if cost < 0 or makespan < 0:
        raise ValueError("cost and makespan must be non-negative")

    new = [TimedTuple(name, TYPE, PLAN, interval)]
    for task in tasks:
        new.append(TimedTuple(task, TYPE, TASK, interval))
        new.append(TimedTuple(name, DEFINES_TASK, task, interval))
    for prev, nxt in zip(tasks, tasks[1:]):
        new.append(TimedTuple(nxt, DIRECTLY_FOLLOWS, prev, interval))
        new.append(TimedTuple(prev, DIRECTLY_PRECEDES, nxt, interval))
    values = {QualityKind.COST: cost, QualityKind.MAKESPAN: makespan,
              QualityKind.NUMBER_OF_TASKS: len(tasks)}
    for kind, value in values.items():
        q = kind.quality_name(name)
        new.append(TimedTuple(q, TYPE, kind.quality_class, interval))
        new.append(TimedTuple(name, kind.has_relation, q, interval))
        new.append(TimedTuple(q, HAS_DATA_VALUE, Literal(value), interval))

    # validate on a scratch copy so a failure leaves kb untouched
    scratch = kb.copy()
    scratch.extend(new)
    return kb.extend(new)


@dataclass(frozen=True)
class PlanQuality:
    quality: str
    kind: QualityKind
    value: object


def plan_qualities(kb: KnowledgeGraph, plan: str) -> list:
    """Qualities of ``plan`` with their values, in Cost, Makespan, NumberOfTasks order."""
    _require_plan(kb, plan)
    out = []
    for kind in QualityKind:
        for t in kb.query(plan, kind.has_relation, sign=Sign.POS, inverses=True):
            values = kb.query(t.object, HAS_DATA_VALUE, sign=Sign.POS)
            value = values[0].object if values else None
            out.append(PlanQuality(t.object, kind, value))
    return out


def quality_of_kind(kb: KnowledgeGraph, plan: str, kind: QualityKind):
    found = [q for q in plan_qualities(kb, plan) if q.kind is kind]
    return found[0] if found else None


def quality_relations_between(kb: KnowledgeGraph, plan_a: str, plan_b: str) -> set:
    """Tuples relating a quality of ``plan_a`` to one of ``plan_b``.

    Tuples stored in the other direction are returned inverted so the
    subject is always ``plan_a``'s quality.
    """
    _require_plan(kb, plan_a)
    _require_plan(kb, plan_b)
    qa = {q.quality for q in plan_qualities(kb, plan_a)}
    qb = {q.quality for q in plan_qualities(kb, plan_b)}
    out = set()
    for q in qa:
        for t in kb.query(q, inverses=True):
            if t.object in qb and t.property != TYPE:
                out.add(t)
    return out


def plan_relations(kb: KnowledgeGraph, plan_a: str, plan_b: str) -> set:
    """Names of properties R with a positive ``<plan_a, R, plan_b>``, either stated
    or entailed by an inverse/symmetric declaration."""
    _require_plan(kb, plan_a)
    _require_plan(kb, plan_b)
    return {t.property for t in kb.query(plan_a, None, plan_b, sign=Sign.POS, inverses=True)}


def check_dominance_disjointness(kb: KnowledgeGraph, t: TimedTuple) -> None:
    """Refuse an equivalence that clashes with a better/worse relation (or the reverse)."""
    if t.property not in DOMINANCE_RELATIONS:
        return
    held = {r.property for r in kb.query(t.subject, None, t.object, t.interval,
                                         sign=Sign.POS, inverses=True)}
    if t.property == IS_EQUIVALENT_PLAN_TO:
        clash = held & {IS_BETTER_PLAN_THAN, IS_WORSE_PLAN_THAN}
    else:
        clash = held & {IS_EQUIVALENT_PLAN_TO}
    if clash:
        raise DisjointnessError(f"{t} clashes with {sorted(clash)}")
