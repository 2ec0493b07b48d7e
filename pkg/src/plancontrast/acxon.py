"""Contrastive narration of instance pairs.

Pipeline per pair: retrieve the narrative tuples around both instances up
to a specificity level, drop the knowledge the two instances share, then
turn what is left into sentences (see :mod:`plancontrast.narrative`).

:func:`narrate_single` is the non-contrastive per-instance baseline used for
evaluation.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .kb import (ALWAYS, TYPE, Interval, KBError, KnowledgeGraph, Literal, Sign,
                 TimedTuple, intervals_intersect)
from .narrative import LabelTable, construct_narrative, render_plain

log = logging.getLogger(__name__)

LEVELS = (1, 2, 3)


class UnknownEntityError(KBError):
    pass


@dataclass(frozen=True)
class InstantiatedPair:
    a: str
    b: str
    a_interval: Interval = ALWAYS
    b_interval: Interval = ALWAYS
    classes: frozenset = frozenset()

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("a pair needs two distinct entities")

    @property
    def entities(self) -> tuple:
        return (self.a, self.b)

    def swapped(self) -> "InstantiatedPair":
        return InstantiatedPair(self.b, self.a, self.b_interval, self.a_interval, self.classes)


@dataclass
class Narrative:
    specificity: int
    text: str
    divergent_tuples: list = field(default_factory=list)
    retrieved: list = field(default_factory=list)
    clusters: list = field(default_factory=list)
    pair: Optional[InstantiatedPair] = None
    entity: Optional[str] = None

    def as_record(self) -> dict:
        return {
            "pair": list(self.pair.entities) if self.pair else None,
            "entity": self.entity,
            "specificity": self.specificity,
            "divergent_tuples": [str(t) for t in self.divergent_tuples],
            "text": self.text,
        }


def _check_level(level: int) -> None:
    if level not in LEVELS:
        raise ValueError(f"specificity must be 1, 2 or 3, got {level!r}")


def retrieve_instantiated_pairs(kb: KnowledgeGraph, class_pairs: Iterable,
                                locality: Interval = ALWAYS) -> list:
    """Every pair of distinct instances of the given class pairs that exists
    (at least partly) inside ``locality``.

    Same-class pairs are unordered and come out with the lexicographically
    smaller entity first.
    """
    seen = {}
    for ca, cb in class_pairs:
        left = kb.instances_of(ca, locality)
        right = kb.instances_of(cb, locality)
        for ea, ia in left:
            for eb, ib in right:
                if ea == eb:
                    continue
                if ca == cb and eb < ea:
                    continue
                pair = InstantiatedPair(ea, eb, ia, ib, frozenset({ca, cb}))
                seen.setdefault((ea, eb, ia, ib), pair)
    return [seen[k] for k in sorted(seen, key=lambda k: (k[0], k[1], str(k[2]), str(k[3])))]


class _Collector:
    """Ordered tuple list that refuses a tuple whose inverse is already held.

    ``levels`` records the specificity level at which each tuple came in.
    """

    def __init__(self, kb: KnowledgeGraph):
        self.kb = kb
        self.items: list = []
        self.levels: dict = {}
        self.depth = 1
        self._held: set = set()

    def __contains__(self, t) -> bool:
        return t in self._held or (self.kb.has_inverse(t) and self.kb.invert(t) in self._held)

    def add(self, t: TimedTuple) -> bool:
        if t in self:
            return False
        self.items.append(t)
        self.levels[t] = self.depth
        self._held.add(t)
        return True


def _view(kb: KnowledgeGraph, t: TimedTuple, anchors) -> Optional[tuple]:
    """``(anchor, property, other)`` reading ``t`` with an anchor as subject."""
    if t.subject in anchors:
        return t.subject, t.property, t.object
    if isinstance(t.object, str) and t.object in anchors and kb.has_inverse(t):
        return t.object, kb.registry.inverse(t.property), t.subject
    return None


def _is_individual(kb: KnowledgeGraph, term) -> bool:
    return isinstance(term, str) and term in kb.individuals


def _cross_tuples(kb, tp, left: set, right: set) -> None:
    if not left or not right:
        return
    for t in kb:
        if not isinstance(t.object, str):
            continue
        if (t.subject in left and t.object in right) or (t.subject in right and t.object in left):
            tp.add(t)


def _retrieve(kb: KnowledgeGraph, pair: InstantiatedPair, level: int,
              restrict_class: Optional[str] = None) -> _Collector:
    _check_level(level)
    ea, eb = pair.a, pair.b
    ends = {ea, eb}
    tp = _Collector(kb)

    for t in kb:
        if t.subject in ends and t.object in ends and t.subject != t.object:
            tp.add(t)
    if level == 1:
        return tp
    tp.depth = 2

    allowed = None
    if restrict_class is not None:
        allowed = defaultdict(list)
        for e, iv in kb.instances_of(restrict_class):
            allowed[e].append(iv)

    reached = {ea: defaultdict(list), eb: defaultdict(list)}
    for t in kb:
        v = _view(kb, t, ends)
        if v is None:
            continue
        e, p, o = v
        if o in ends:
            continue
        if p == TYPE and (not pair.classes or o in pair.classes):
            continue
        if allowed is not None and not any(intervals_intersect(iv, t.interval) for iv in allowed.get(o, ())):
            continue
        tp.add(t)
        if p != TYPE and _is_individual(kb, o):
            reached[e][p].append(o)
    for p in reached[ea]:
        if p in reached[eb]:
            _cross_tuples(kb, tp, set(reached[ea][p]), set(reached[eb][p]))
    if level == 2:
        return tp
    tp.depth = 3

    sides = defaultdict(set)
    for e in (ea, eb):
        for objs in reached[e].values():
            for o in objs:
                sides[o].add(e)
    deeper = {ea: defaultdict(list), eb: defaultdict(list)}
    for t in kb:
        v = _view(kb, t, sides)
        if v is None:
            continue
        o, p, ox = v
        if ox in ends:
            continue
        if not (intervals_intersect(t.interval, pair.a_interval)
                and intervals_intersect(t.interval, pair.b_interval)):
            continue
        tp.add(t)
        if p != TYPE and _is_individual(kb, ox):
            for e in sides[o]:
                deeper[e][p].append(ox)
    for p in deeper[ea]:
        if p in deeper[eb]:
            _cross_tuples(kb, tp, set(deeper[ea][p]), set(deeper[eb][p]))
    return tp


def retrieve_narrative_tuples(kb: KnowledgeGraph, pair: InstantiatedPair, level: int,
                              restrict_class: Optional[str] = None) -> list:
    """Narrative tuples T_P of ``pair`` at specificity ``level``.

    Level 1 relates the two instances. Level 2 adds what each instance is
    related to (optionally only objects of ``restrict_class``) and the
    links between objects reached through the same property. Level 3 goes
    one step further from those objects, keeping tuples whose interval meets
    both instances' intervals. Tuples keep their stored orientation.
    """
    return _retrieve(kb, pair, level, restrict_class).items


def retrieve_narrative_levels(kb: KnowledgeGraph, pair: InstantiatedPair, level: int,
                              restrict_class: Optional[str] = None) -> tuple:
    """T_P together with the level (1-3) at which each tuple was retrieved."""
    tp = _retrieve(kb, pair, level, restrict_class)
    return tp.items, dict(tp.levels)


def orient(kb: KnowledgeGraph, t: TimedTuple, ends) -> TimedTuple:
    """Read ``t`` with a pair instance as subject when it touches exactly one."""
    if t.subject not in ends and isinstance(t.object, str) and t.object in ends and kb.has_inverse(t):
        return kb.invert(t)
    return t


def branch_tags(kb: KnowledgeGraph, oriented: list, pair: InstantiatedPair) -> list:
    """For each oriented tuple, the ``(instance, property)`` branches it hangs from.

    A tuple about a pair instance hangs from ``(instance, None)``. A tuple
    anchored on an object that an instance reaches through property ``p``
    hangs from ``(instance, p)``. Anything deeper gets no tag.
    """
    ends = set(pair.entities)
    reach = defaultdict(set)
    for t in oriented:
        if t.subject in ends and isinstance(t.object, str) and t.object not in ends:
            reach[t.object].add((t.subject, t.property))
    tags = []
    for t in oriented:
        if t.subject in ends:
            tags.append({(t.subject, None)})
        elif t.subject in reach:
            tags.append(reach[t.subject])
        elif isinstance(t.object, str) and t.object in reach and kb.has_inverse(t):
            tags.append(reach[t.object])
        else:
            tags.append(set())
    return tags


def _opposite_branches(tags1: set, tags2: set) -> bool:
    return any(e1 != e2 and p1 == p2 for e1, p1 in tags1 for e2, p2 in tags2)


def structural_levels(t_p: list, pair: InstantiatedPair) -> dict:
    """Best-effort retrieval levels for a T_P that came without them: 1 for
    tuples between the instances, 2 for tuples touching one, 3 otherwise."""
    ends = set(pair.entities)
    out = {}
    for t in t_p:
        touching = (t.subject in ends) + (isinstance(t.object, str) and t.object in ends)
        out[t] = 3 - touching
    return out


def extract_divergent_tuples(kb: KnowledgeGraph, t_p: list, pair: InstantiatedPair,
                             levels: Optional[dict] = None) -> list:
    """Drop non-divergent tuple pairs and the branches under their shared objects.

    Two tuples are non-divergent when, read with the pair instance as
    subject, they have different subjects but the same property, object,
    interval and sign, were retrieved at the same level, and hang from the
    two different instances through the same property. The branch
    condition stops a plan's cost and makespan from cancelling out just
    because both equal 27; the level condition keeps deeper retrieval from
    pruning what a shallower level already showed.

    Each shared object's branch (tuples at or below its level anchored on it, in either
    direction, that do not touch the pair) goes too. Survivors keep input
    order and orientation.
    """
    ends = set(pair.entities)
    levels = levels if levels is not None else structural_levels(t_p, pair)
    oriented = [orient(kb, t, ends) for t in t_p]
    depth = [levels[t] for t in t_p]
    tags = branch_tags(kb, oriented, pair)
    groups = defaultdict(list)
    for i, t in enumerate(oriented):
        groups[(t.property, t.object, t.interval, t.sign, depth[i])].append(i)
    pruned = set()
    shared: dict = {}
    for (_, obj, _, _, lvl), idx in groups.items():
        for x, i in enumerate(idx):
            for j in idx[x + 1:]:
                if (oriented[i].subject != oriented[j].subject
                        and _opposite_branches(tags[i], tags[j])):
                    pruned.update((i, j))
                    if not (isinstance(obj, str) and obj in ends):
                        shared[obj] = min(lvl, shared.get(obj, lvl))
    for i, t in enumerate(oriented):
        if i in pruned or t.subject in ends or t.object in ends:
            continue
        anchors = [t.subject]
        if kb.has_inverse(t):
            anchors.append(t.object)
        if any(a in shared and depth[i] >= shared[a] for a in anchors):
            pruned.add(i)
    return [t for i, t in enumerate(t_p) if i not in pruned]


def narrate_pair(kb: KnowledgeGraph, pair: InstantiatedPair, level: int,
                 restrict_class: Optional[str] = None,
                 labels: Optional[LabelTable] = None) -> Narrative:
    t_p, levels = retrieve_narrative_levels(kb, pair, level, restrict_class)
    d_p = extract_divergent_tuples(kb, t_p, pair, levels)
    text, clusters = construct_narrative(kb, d_p, pair, labels)
    return Narrative(level, text, d_p, t_p, clusters, pair=pair)


def acxon(kb: KnowledgeGraph, class_pairs: Iterable, locality: Interval = ALWAYS,
          level: int = 3, restrict_class: Optional[str] = None,
          labels: Optional[LabelTable] = None, errors: Optional[dict] = None) -> list:
    """One contrastive narrative per instantiated pair.

    A pair that fails is logged and, when ``errors`` is given, recorded
    there; the other pairs are still narrated. Without ``errors`` the first
    failure is raised after every pair has been tried.
    """
    _check_level(level)
    out = []
    failures = {}
    for pair in retrieve_instantiated_pairs(kb, class_pairs, locality):
        try:
            out.append(narrate_pair(kb, pair, level, restrict_class, labels))
        except KBError as exc:
            log.warning("narration failed for %s / %s: %s", pair.a, pair.b, exc)
            failures[pair] = exc
    if errors is not None:
        errors.update(failures)
    elif failures:
        raise next(iter(failures.values()))
    return out


def retrieve_single_tuples(kb: KnowledgeGraph, entity: str, level: int,
                           locality: Interval = ALWAYS) -> list:
    """Per-instance retrieval with the same depth semantics as the pair routine."""
    _check_level(level)
    if entity not in kb.individuals:
        raise UnknownEntityError(f"{entity!r} is not in the knowledge base")
    typed = [t for t in kb.query(entity, TYPE, locality=locality)]
    own_interval = typed[0].interval if typed else ALWAYS
    tp = _Collector(kb)
    for t in typed:
        tp.add(t)
    if level == 1:
        return tp.items
    reached = []
    for t in kb:
        v = _view(kb, t, {entity})
        if v is None:
            continue
        _, p, o = v
        tp.add(t)
        if p != TYPE and _is_individual(kb, o) and o != entity:
            reached.append(o)
    if level == 2:
        return tp.items
    anchors = set(reached)
    for t in kb:
        v = _view(kb, t, anchors)
        if v is None or v[2] == entity:
            continue
        if intervals_intersect(t.interval, own_interval):
            tp.add(t)
    return tp.items


def narrate_single(kb: KnowledgeGraph, entity: str, locality: Interval = ALWAYS,
                   level: int = 3, labels: Optional[LabelTable] = None) -> Narrative:
    """Baseline: plain narrative about one instance, no pruning, no contrast."""
    tuples = retrieve_single_tuples(kb, entity, level, locality)
    text, clusters = render_plain(kb, tuples, entity, labels)
    return Narrative(level, text, list(tuples), list(tuples), clusters, entity=entity)
