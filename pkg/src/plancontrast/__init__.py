"""Plan comparison and contrastive narration over a time-indexed knowledge graph."""

from .acxon import InstantiatedPair, Narrative, acxon, narrate_pair, narrate_single
from .inference import InferenceConfig, Polarity, Verdict, compare_all_plans
from .ingest import PlanDescription, load_manifest, parse_plan_trace
from .kb import (ALWAYS, Interval, KnowledgeGraph, Literal, PropertyRegistry, Sign,
                 TimedTuple, intervals_intersect)
from .metrics import MetricReport, compare_report, dale_chall, interaction_time
from .ontology import QualityKind, assert_plan, new_kb

__all__ = [
    "ALWAYS", "Interval", "KnowledgeGraph", "Literal", "PropertyRegistry", "Sign",
    "TimedTuple", "intervals_intersect", "QualityKind", "assert_plan", "new_kb",
    "PlanDescription", "parse_plan_trace", "load_manifest",
    "InferenceConfig", "Polarity", "Verdict", "compare_all_plans",
    "InstantiatedPair", "Narrative", "acxon", "narrate_pair", "narrate_single",
    "MetricReport", "compare_report", "dale_chall", "interaction_time",
]
