"""Rules comparing plan qualities and deciding which plan is better."""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional

from .kb import ALWAYS, KBError, KnowledgeGraph, Sign, TimedTuple
from .ontology import (HAS_BETTER_QUALITY_VALUE_THAN, HAS_EQUIVALENT_QUALITY_VALUE_THAN,
                       HAS_WORSE_QUALITY_VALUE_THAN, IS_BETTER_PLAN_THAN,
                       IS_EQUIVALENT_PLAN_TO, IS_WORSE_PLAN_THAN, QUALITY_COMPARISONS,
                       QualityKind, check_dominance_disjointness, plan_qualities, plans,
                       quality_of_kind)

log = logging.getLogger(__name__)


class InferenceError(KBError):
    pass


class MissingQualityError(InferenceError):
    pass


class NonNumericValueError(InferenceError):
    pass


class NoComparedQualitiesError(InferenceError):
    pass


class Polarity(enum.Enum):
    LOWER_IS_BETTER = "lower"
    HIGHER_IS_BETTER = "higher"


class Verdict(enum.Enum):
    BETTER = "better"
    WORSE = "worse"
    EQUIVALENT = "equivalent"
    UNDECIDED = "undecided"


@dataclass
class InferenceConfig:
    """``polarity`` maps a kind to its polarity; missing kinds are lower-is-better."""

    polarity: dict = field(default_factory=dict)
    equality_tolerance: float = 0.0

    def polarity_of(self, kind: QualityKind) -> Polarity:
        return self.polarity.get(kind, Polarity.LOWER_IS_BETTER)


def _numeric_value(kb, plan, kind):
    q = quality_of_kind(kb, plan, kind)
    if q is None:
        raise MissingQualityError(f"{plan!r} has no {kind.label} quality")
    if q.value is None or not q.value.is_number:
        raise NonNumericValueError(f"{q.quality!r} has no numeric value ({q.value})")
    return q.quality, q.value.value


def compare_quality_pair(kb: KnowledgeGraph, plan_a: str, plan_b: str, kind: QualityKind,
                         polarity: Polarity = Polarity.LOWER_IS_BETTER,
                         tolerance: float = 0.0) -> KnowledgeGraph:
    """Relate the ``kind`` qualities of two plans and the plans themselves.

    Asserts one quality-level tuple (better, worse or equivalent, from
    ``plan_a``'s side) and the matching plan-level tuple.
    """
    qa, va = _numeric_value(kb, plan_a, kind)
    qb, vb = _numeric_value(kb, plan_b, kind)
    if abs(va - vb) <= tolerance:
        quality_rel, plan_rel = HAS_EQUIVALENT_QUALITY_VALUE_THAN, kind.same_relation
    else:
        a_better = va < vb if polarity is Polarity.LOWER_IS_BETTER else va > vb
        if a_better:
            quality_rel, plan_rel = HAS_BETTER_QUALITY_VALUE_THAN, kind.better_relation
        else:
            quality_rel, plan_rel = HAS_WORSE_QUALITY_VALUE_THAN, kind.worse_relation
    kb.assert_tuple(TimedTuple(qa, quality_rel, qb, ALWAYS))
    kb.assert_tuple(TimedTuple(plan_a, plan_rel, plan_b, ALWAYS))
    return kb


def shared_kinds(kb: KnowledgeGraph, plan_a: str, plan_b: str) -> list:
    ka = {q.kind for q in plan_qualities(kb, plan_a)}
    kb_ = {q.kind for q in plan_qualities(kb, plan_b)}
    for kind in QualityKind:
        if (kind in ka) != (kind in kb_):
            log.warning("%s quality present on only one of %r, %r; ignored for the verdict",
                        kind.label, plan_a, plan_b)
    return [k for k in QualityKind if k in ka and k in kb_]


def infer_plan_dominance(kb: KnowledgeGraph, plan_a: str, plan_b: str) -> Verdict:
    """Better only when every shared quality of ``plan_a`` is better; mirrored
    for worse and equivalent. Mixed outcomes assert nothing."""
    relations = []
    for kind in shared_kinds(kb, plan_a, plan_b):
        qa = quality_of_kind(kb, plan_a, kind).quality
        qb = quality_of_kind(kb, plan_b, kind).quality
        found = {t.property for t in kb.query(qa, None, qb, sign=Sign.POS, inverses=True)
                 if t.property in QUALITY_COMPARISONS}
        relations.extend(found)
    if not relations:
        raise NoComparedQualitiesError(f"no compared qualities between {plan_a!r} and {plan_b!r}")

    if all(r == HAS_BETTER_QUALITY_VALUE_THAN for r in relations):
        verdict = Verdict.BETTER
        new = [TimedTuple(plan_a, IS_BETTER_PLAN_THAN, plan_b), TimedTuple(plan_b, IS_WORSE_PLAN_THAN, plan_a)]
    elif all(r == HAS_WORSE_QUALITY_VALUE_THAN for r in relations):
        verdict = Verdict.WORSE
        new = [TimedTuple(plan_a, IS_WORSE_PLAN_THAN, plan_b), TimedTuple(plan_b, IS_BETTER_PLAN_THAN, plan_a)]
    elif all(r == HAS_EQUIVALENT_QUALITY_VALUE_THAN for r in relations):
        verdict = Verdict.EQUIVALENT
        new = [TimedTuple(plan_a, IS_EQUIVALENT_PLAN_TO, plan_b)]
    else:
        return Verdict.UNDECIDED
    for t in new:
        check_dominance_disjointness(kb, t)
    kb.extend(new)
    return verdict


@dataclass
class ComparisonRun:
    verdicts: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)


def compare_all_plans(kb: KnowledgeGraph, config: Optional[InferenceConfig] = None) -> ComparisonRun:
    """Run every rule over every unordered pair of plans.

    Pairs are taken in lexicographic order with the smaller name as
    ``plan_a``, so the result does not depend on insertion order. A failing
    pair is recorded in ``errors`` and the rest still run.
    """
    config = config or InferenceConfig()
    run = ComparisonRun()
    for a, b in itertools.combinations(plans(kb), 2):
        try:
            for kind in shared_kinds(kb, a, b):
                compare_quality_pair(kb, a, b, kind, config.polarity_of(kind),
                                     config.equality_tolerance)
            run.verdicts[(a, b)] = infer_plan_dominance(kb, a, b)
        except KBError as exc:
            run.errors[(a, b)] = exc
    return run
