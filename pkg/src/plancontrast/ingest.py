"""Temporal plan traces and plan manifests.

Trace lines follow the usual temporal-planner output::

    0.000: (find_person r) [5.000]

Blank lines and lines starting with ``;`` are ignored.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .kb import ALWAYS, Interval, KnowledgeGraph
from .ontology import EmptyPlanError, assert_plan


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ManifestError(ValueError):
    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


_FLOAT = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_LINE = re.compile(rf"^\s*({_FLOAT})\s*:\s*\(([^()]*)\)\s*\[({_FLOAT})\]\s*$")


@dataclass(frozen=True)
class TimedAction:
    start: float
    label: str
    duration: float

    def __post_init__(self):
        if not self.label.strip():
            raise ValueError("action label is empty")
        if not self.duration > 0:
            raise ValueError(f"duration must be positive, got {self.duration}")
        if self.start < 0:
            raise ValueError(f"start must be non-negative, got {self.start}")

    @property
    def end(self) -> float:
        return self.start + self.duration


@dataclass
class PlanDescription:
    name: str
    actions: list = field(default_factory=list)
    cost: float = 0.0
    makespan: float = 0.0

    @property
    def task_labels(self) -> list:
        return [f"T{i}-{a.label}" for i, a in enumerate(self.actions)]

    @property
    def number_of_tasks(self) -> int:
        return len(self.actions)


def parse_plan_trace(text: str, plan_name: str) -> PlanDescription:
    """Parse planner output into a PlanDescription.

    Cost defaults to the summed durations, makespan to the latest end time.
    Actions starting together keep their line order.
    """
    actions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        m = _LINE.match(line)
        if m is None:
            raise ParseError(f"malformed trace line {raw!r}", lineno)
        tokens = m.group(2).split()
        if not tokens:
            raise ParseError("action has no tokens", lineno)
        try:
            actions.append(TimedAction(float(m.group(1)), " ".join(tokens), float(m.group(3))))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from exc
    if not actions:
        raise EmptyPlanError(f"trace for {plan_name!r} has no actions")
    actions.sort(key=lambda a: a.start)
    return PlanDescription(
        name=plan_name,
        actions=actions,
        cost=sum(a.duration for a in actions),
        makespan=max(a.end for a in actions),
    )


def render_plan_trace(pd: PlanDescription) -> str:
    return "".join(f"{a.start!r}: ({a.label}) [{a.duration!r}]\n" for a in pd.actions)


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ManifestError(f"expected a number, got {value!r}", path)
    if value < 0:
        raise ManifestError(f"must be non-negative, got {value}", path)
    return value


def load_manifest(text: str, base_dir: Union[str, Path] = ".") -> list:
    """Read a JSON manifest::

        {"plans": [{"name": "bringing tea", "trace": "tea.plan", "cost": 27}]}

    ``trace`` paths are relative to ``base_dir``. Explicit ``cost`` and
    ``makespan`` override the trace-derived values.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("plans"), list):
        raise ManifestError("expected an object with a 'plans' list", "plans")
    base = Path(base_dir)
    out = []
    seen = set()
    for i, entry in enumerate(doc["plans"]):
        where = f"plans[{i}]"
        if not isinstance(entry, dict):
            raise ManifestError("expected an object", where)
        unknown = set(entry) - {"name", "trace", "cost", "makespan"}
        if unknown:
            raise ManifestError(f"unknown fields {sorted(unknown)}", where)
        name = entry.get("name")
        if not isinstance(name, str) or not name.strip():
            raise ManifestError("missing plan name", f"{where}.name")
        if name in seen:
            raise ManifestError(f"duplicate plan name {name!r}", f"{where}.name")
        seen.add(name)
        trace = entry.get("trace")
        if not isinstance(trace, str):
            raise ManifestError("missing trace path", f"{where}.trace")
        path = base / trace
        try:
            trace_text = path.read_text()
        except OSError as exc:
            raise ManifestError(f"cannot read {path}: {exc.strerror}", f"{where}.trace") from exc
        try:
            pd = parse_plan_trace(trace_text, name)
        except (ParseError, EmptyPlanError) as exc:
            raise ManifestError(str(exc), f"{where}.trace") from exc
        if "cost" in entry:
            pd.cost = _number(entry["cost"], f"{where}.cost")
        if "makespan" in entry:
            makespan = _number(entry["makespan"], f"{where}.makespan")
            latest = max(a.end for a in pd.actions)
            if makespan < latest:
                raise ManifestError(f"makespan {makespan} ends before the last action ({latest})",
                                    f"{where}.makespan")
            pd.makespan = makespan
        out.append(pd)
    return out


def ingest_plan(kb: KnowledgeGraph, pd: PlanDescription, interval: Interval = ALWAYS) -> KnowledgeGraph:
    return assert_plan(kb, pd.name, pd.task_labels, pd.cost, pd.makespan, interval)
