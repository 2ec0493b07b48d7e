"""Random plan pairs for desk-scale evaluation and property tests.

A pair is built from one random action sequence: the second plan copies
the first and swaps out a fraction of the actions (and may append or drop a
tail), so shared tasks keep their position and hence their task label.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .ingest import PlanDescription, TimedAction, ingest_plan
from .kb import KnowledgeGraph
from .ontology import new_kb

VERBS = ("goto_waypoint", "grasp_object", "give_object", "release_gripper", "open_door",
         "close_door", "find_person", "open_fridge", "close_fridge", "pour_drink",
         "pick_tray", "place_tray", "charge_battery", "scan_room")
PLACES = ("wp0", "wp1", "kitchen", "fridge", "microwave", "table", "shelf", "dock",
          "wp_person", "sink")
OBJECTS = ("tea", "cola", "water", "cup", "tray", "napkin")


@dataclass
class SyntheticConfig:
    min_tasks: int = 5
    max_tasks: int = 50
    min_shared: float = 0.3
    max_shared: float = 0.9
    max_duration: int = 20
    seed: Optional[int] = None


def random_action_label(rng: random.Random) -> str:
    verb = rng.choice(VERBS)
    if verb in ("goto_waypoint",):
        a, b = rng.sample(PLACES, 2)
        return f"{verb} r {a} {b}"
    if verb in ("grasp_object", "pour_drink", "give_object"):
        return f"{verb} r {rng.choice(OBJECTS)} {rng.choice(PLACES)}"
    return f"{verb} r"


def _schedule(name: str, labels: list, durations: list) -> PlanDescription:
    actions, clock = [], 0.0
    for label, d in zip(labels, durations):
        actions.append(TimedAction(clock, label, float(d)))
        clock += d
    return PlanDescription(name, actions, cost=float(sum(durations)), makespan=clock)


def random_plan_pair(rng: random.Random, config: SyntheticConfig = SyntheticConfig(),
                     names=("plan a", "plan b")) -> tuple:
    """Two sequential plans with at least ``min_shared`` of the shorter
    plan's tasks identical (same action at the same position)."""
    n_a = rng.randint(config.min_tasks, config.max_tasks)
    n_b = max(config.min_tasks, min(config.max_tasks, n_a + rng.randint(-n_a // 4, n_a // 4)))
    labels_a = [random_action_label(rng) for _ in range(n_a)]
    dur_a = [rng.randint(1, config.max_duration) for _ in range(n_a)]
    common = min(n_a, n_b)
    share = rng.uniform(config.min_shared, config.max_shared)
    keep = set(rng.sample(range(common), max(1, int(round(share * common)))))
    labels_b, dur_b = [], []
    for i in range(n_b):
        if i in keep:
            labels_b.append(labels_a[i])
            dur_b.append(dur_a[i])
        else:
            label = random_action_label(rng)
            while i < n_a and label == labels_a[i]:
                label = random_action_label(rng)
            labels_b.append(label)
            dur_b.append(rng.randint(1, config.max_duration))
    return _schedule(names[0], labels_a, dur_a), _schedule(names[1], labels_b, dur_b)


def shared_task_count(a: PlanDescription, b: PlanDescription) -> int:
    return len(set(a.task_labels) & set(b.task_labels))


def random_pair_kb(rng: random.Random, config: SyntheticConfig = SyntheticConfig()) -> KnowledgeGraph:
    kb = new_kb()
    for pd in random_plan_pair(rng, config):
        ingest_plan(kb, pd)
    return kb


def random_multi_plan_kb(rng: random.Random, n_plans: int, max_tasks: int = 20) -> tuple:
    """A KB of ``n_plans`` independent random plans plus their descriptions."""
    kb = new_kb()
    pds = []
    base = [random_action_label(rng) for _ in range(max_tasks)]
    for k in range(n_plans):
        n = rng.randint(1, max_tasks)
        labels = [base[i] if rng.random() < 0.5 else random_action_label(rng) for i in range(n)]
        durations = [rng.randint(1, 10) for _ in range(n)]
        pd = _schedule(f"plan {k}", labels, durations)
        ingest_plan(kb, pd)
        pds.append(pd)
    return kb, pds
