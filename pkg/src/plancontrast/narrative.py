"""Turning divergent tuples into text: casting, clustering, ordering, grouping."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .kb import TYPE, Interval, KnowledgeGraph, Literal, Sign, TimedTuple


class LabelTable:
    """Property display phrases. Unknown properties are split on camelCase."""

    def __init__(self, phrases: Optional[dict] = None):
        self.phrases = dict(phrases or {})

    @classmethod
    def default(cls) -> "LabelTable":
        text = resources.files("plancontrast").joinpath("data/labels.tsv").read_text()
        return cls(parse_label_table(text))

    @classmethod
    def from_file(cls, path: Union[str, Path], base: Optional["LabelTable"] = None) -> "LabelTable":
        phrases = dict(base.phrases) if base is not None else dict(cls.default().phrases)
        phrases.update(parse_label_table(Path(path).read_text()))
        return cls(phrases)

    def __call__(self, prop: str) -> str:
        if prop in self.phrases:
            return self.phrases[prop]
        return re.sub(r"(?<=[a-z0-9])(?=[A-Z])", " ", prop).lower()


def parse_label_table(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        prop, sep, phrase = line.partition("\t")
        if not sep or not prop.strip() or not phrase.strip():
            raise ValueError(f"label table line {lineno}: expected 'property<TAB>phrase'")
        out[prop.strip()] = phrase.strip()
    return out


_DEFAULT_LABELS: Optional[LabelTable] = None


def default_labels() -> LabelTable:
    global _DEFAULT_LABELS
    if _DEFAULT_LABELS is None:
        _DEFAULT_LABELS = LabelTable.default()
    return _DEFAULT_LABELS


# -- casting -----------------------------------------------------------------

def cast(kb: KnowledgeGraph, d_p: list, pair) -> list:
    """Homogenise orientation.

    Tuples touching a pair instance are read with the instance as subject
    (tuples between the two instances follow the first one's direction).
    The rest keep their direction unless the inverse of their property is
    already used, in which case they are flipped.
    """
    ends = set(pair.entities)
    anchor = next((t.subject for t in d_p if t.subject in ends and t.object in ends), None)
    out = []
    for t in d_p:
        touches_a = t.subject in ends
        touches_o = isinstance(t.object, str) and t.object in ends
        if not (touches_a or touches_o):
            continue
        if touches_a and touches_o:
            out.append(t if t.subject == anchor else kb.invert(t))
        elif touches_a:
            out.append(t)
        else:
            out.append(kb.invert(t))
    used = {t.property for t in out}
    for t in d_p:
        if t.subject in ends or (isinstance(t.object, str) and t.object in ends):
            continue
        inv = kb.registry.inverse(t.property) if kb.has_inverse(t) else None
        if inv is not None and inv != t.property and t.property not in used and inv in used:
            t = kb.invert(t)
        out.append(t)
        used.add(t.property)
    return out


# -- clustering and ordering ------------------------------------------------------

class ClusterKind(enum.IntEnum):
    PAIR = 0
    DIRECT = 1
    INDIRECT = 2
    UNRELATED = 3


@dataclass
class Cluster:
    kind: ClusterKind
    property: str
    tuples: list
    # host entity -> side index (0 or 1); empty for pair-level and unrelated clusters
    sides: dict = field(default_factory=dict)


def _side_cluster(kind, prop, hosts, rest, used, side_of_host):
    objects = ({}, {})
    for t in hosts:
        if isinstance(t.object, str):
            objects[side_of_host[t.subject]].setdefault(t.object, None)
    left, right = set(objects[0]), set(objects[1])
    cross = []
    for t in rest:
        if id(t) in used or not isinstance(t.object, str):
            continue
        if (t.subject in left and t.object in right) or (t.subject in right and t.object in left):
            cross.append(t)
            used.add(id(t))
    sides = {t.subject: side_of_host[t.subject] for t in hosts}
    return Cluster(kind, prop, list(hosts) + cross, sides), objects


def cluster(cast_tuples: list, pair) -> list:
    """Group cast tuples into sentence-sized clusters.

    Order of creation: the pair-level cluster, one direct cluster per
    property both instances have, indirect clusters for properties hanging
    off both sides' direct objects, and unrelated clusters per property for
    whatever is left.
    """
    ea, eb = pair.a, pair.b
    ends = {ea, eb}
    clusters = []
    used: set = set()

    pair_level = [t for t in cast_tuples if t.subject in ends and t.object in ends]
    if pair_level:
        clusters.append(Cluster(ClusterKind.PAIR, pair_level[0].property, pair_level))
        used.update(id(t) for t in pair_level)

    by_prop: dict = {}
    for t in cast_tuples:
        if id(t) not in used and t.subject in ends:
            by_prop.setdefault(t.property, []).append(t)
    side_of_object: dict = {}
    for prop, hosts in by_prop.items():
        if {t.subject for t in hosts} != ends:
            continue
        used.update(id(t) for t in hosts)
        c, objects = _side_cluster(ClusterKind.DIRECT, prop, hosts, cast_tuples, used,
                                   {ea: 0, eb: 1})
        clusters.append(c)
        for side in (0, 1):
            for o in objects[side]:
                side_of_object.setdefault(o, side)

    by_prop = {}
    for t in cast_tuples:
        if id(t) not in used and t.subject in side_of_object and t.subject not in ends:
            by_prop.setdefault(t.property, []).append(t)
    for prop, hosts in by_prop.items():
        if {side_of_object[t.subject] for t in hosts} != {0, 1}:
            continue
        used.update(id(t) for t in hosts)
        c, _ = _side_cluster(ClusterKind.INDIRECT, prop, hosts, cast_tuples, used, side_of_object)
        clusters.append(c)

    leftovers: dict = {}
    for t in cast_tuples:
        if id(t) not in used:
            leftovers.setdefault(t.property, []).append(t)
    for prop, tuples in leftovers.items():
        clusters.append(Cluster(ClusterKind.UNRELATED, prop, tuples))
    return clusters


def order(clusters: list) -> list:
    """Pair-level, direct, indirect, unrelated; bigger clusters first within a
    step, ties by property name. Inside a cluster ``type`` tuples lead, then
    each side's tuples in order of first appearance, then cross links."""
    out = []
    for c in sorted(clusters, key=lambda c: (c.kind, -len(c.tuples), c.property)):
        first_seen: dict = {}
        for t in c.tuples:
            if t.subject in c.sides:
                first_seen.setdefault(c.sides[t.subject], len(first_seen))

        def rank(t):
            if t.property == TYPE:
                return 0
            if t.subject in c.sides:
                return 1 + first_seen[c.sides[t.subject]]
            return 3

        out.append(Cluster(c.kind, c.property, sorted(c.tuples, key=rank), dict(c.sides)))
    return out


# -- grouping and rendering ---------------------------------------------------------

def quote(term) -> str:
    return f"`{term}'"


def _fmt_time(t: float) -> str:
    return f"{t:g}"


def interval_phrase(interval: Interval, pair_intervals=()) -> str:
    if interval.unbounded or interval in pair_intervals:
        return ""
    parts = []
    if interval.start is not None:
        parts.append(f"from {_fmt_time(interval.start)}")
    if interval.end != math.inf:
        parts.append(f"to {_fmt_time(interval.end)}")
    return " " + " ".join(parts)


@dataclass
class Clause:
    subject: str
    props: list
    objects: list
    interval: Interval
    sign: Sign


def group(tuples: list) -> list:
    """Object grouping, then predicate grouping."""
    by_object: dict = {}
    for t in tuples:
        key = (t.subject, t.property, t.interval, t.sign)
        by_object.setdefault(key, []).append(t.object)
    by_predicate: dict = {}
    for (s, p, iv, sg), objs in by_object.items():
        key = (s, tuple(objs), iv, sg)
        by_predicate.setdefault(key, []).append(p)
    return [Clause(s, props, list(objs), iv, sg) for (s, objs, iv, sg), props in by_predicate.items()]


def _verb(labels: LabelTable, props: list, sign: Sign) -> str:
    phrases = []
    for p in props:
        phrase = labels(p)
        if sign is Sign.NEG:
            phrase = "is not " + phrase[3:] if phrase.startswith("is ") else "not " + phrase
        phrases.append(phrase)
    return " and ".join(phrases)


def _predicate(clause: Clause, labels, pair_intervals, subs=None) -> str:
    """Verb phrase plus objects; objects carrying subordinate knowledge go last."""
    verb = _verb(labels, clause.props, clause.sign)
    when = interval_phrase(clause.interval, pair_intervals)
    subs = subs or {}
    plain = [o for o in clause.objects if o not in subs]
    hosting = [o for o in clause.objects if o in subs]
    text = verb
    if plain:
        text += " " + " and ".join(quote(o) for o in plain) + when
    for i, o in enumerate(hosting):
        sub = " and ".join(_predicate(s, labels, pair_intervals) for s in subs[o])
        lead = " and also " if plain or i else " "
        text += f"{lead}{quote(o)}{'' if plain or i else when}, which {sub}"
    return text


def _render_clause(clause: Clause, labels, pair_intervals, subs=None) -> str:
    subs = {o: s for o, s in (subs or {}).items() if o in clause.objects}
    return f"{quote(clause.subject)} {_predicate(clause, labels, pair_intervals, subs)}"


def _join(clauses: list) -> str:
    return ", and ".join(clauses)


def render_cluster(c: Cluster, labels: LabelTable, pair_intervals=()) -> str:
    if not c.sides:
        return _join([_render_clause(cl, labels, pair_intervals) for cl in group(c.tuples)]) + "."
    hosts = {0: [], 1: []}
    cross = []
    for t in c.tuples:
        if t.subject in c.sides:
            hosts[c.sides[t.subject]].append(t)
        else:
            cross.append(t)
    side_objects = {side: {t.object for t in hosts[side]} for side in (0, 1)}
    subs = {0: {}, 1: {}}
    stray = []
    for t in cross:
        for side in (0, 1):
            if t.subject in side_objects[side]:
                subs[side].setdefault(t.subject, []).append(t)
                break
        else:
            stray.append(t)
    parts = []
    for side in (0, 1):
        if not hosts[side]:
            continue
        sub_clauses = {o: group(ts) for o, ts in subs[side].items()}
        text = _join([_render_clause(cl, labels, pair_intervals, sub_clauses)
                      for cl in group(hosts[side])])
        first = c.tuples.index(hosts[side][0])
        parts.append((not subs[side], first, text, bool(subs[side])))
    parts.sort(key=lambda p: (p[0], p[1]))
    sentence = parts[0][2]
    for _, _, text, _ in parts[1:]:
        sentence += ("; while " if parts[0][3] else ", while ") + text
    if stray:
        sentence += ", and " + _join([_render_clause(cl, labels, pair_intervals) for cl in group(stray)])
    return sentence + "."


def render(clusters: list, pair, labels: Optional[LabelTable] = None) -> str:
    labels = labels or default_labels()
    pair_intervals = (pair.a_interval, pair.b_interval)
    return " ".join(render_cluster(c, labels, pair_intervals) for c in clusters)


def group_and_render(clusters: list, pair, labels: Optional[LabelTable] = None) -> str:
    return render(clusters, pair, labels)


def construct_narrative(kb: KnowledgeGraph, d_p: list, pair,
                        labels: Optional[LabelTable] = None) -> tuple:
    """Cast, cluster, order and render ``d_p``. Returns ``(text, clusters)``."""
    ordered = order(cluster(cast(kb, d_p, pair), pair))
    return render(ordered, pair, labels), ordered


def render_plain(kb: KnowledgeGraph, tuples: list, entity: str,
                 labels: Optional[LabelTable] = None) -> tuple:
    """Baseline rendering: one plain sentence per property, no contrast."""
    labels = labels or default_labels()
    oriented = []
    for t in tuples:
        if t.subject != entity and isinstance(t.object, str) and t.object == entity and kb.has_inverse(t):
            t = kb.invert(t)
        oriented.append(t)
    by_prop: dict = {}
    for t in oriented:
        by_prop.setdefault(t.property, []).append(t)
    clusters = [Cluster(ClusterKind.UNRELATED, p, ts) for p, ts in by_prop.items()]
    clusters.sort(key=lambda c: c.property != TYPE)
    text = " ".join(render_cluster(c, labels) for c in clusters)
    return text, clusters
