"""Time-indexed signed triple store.

Every fact is a :class:`TimedTuple` ``<s, p, o, t_i, t_f, sign>``. The store is
open-world: a missing tuple is unknown, and falsity needs an explicit tuple
with ``Sign.NEG``.

Concurrency contract: queries may run from several threads at once, but
assertions need exclusive access. Nothing here takes locks.
"""

from __future__ import annotations

import enum
import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

TYPE = "type"


class KBError(Exception):
    """Base class for knowledge-base errors."""


class ContradictionError(KBError):
    pass


class NamespaceError(KBError):
    pass


class NoInverseError(KBError):
    pass


class SnapshotError(KBError):
    pass


class Sign(enum.Enum):
    POS = "pos"
    NEG = "neg"


@dataclass(frozen=True)
class Literal:
    """A data value (quale). Numbers must be finite."""

    value: Union[float, int, str]

    def __post_init__(self):
        if isinstance(self.value, bool):
            raise TypeError("booleans are not data values")
        if isinstance(self.value, float) and not math.isfinite(self.value):
            raise ValueError(f"non-finite data value: {self.value!r}")
        if not isinstance(self.value, (int, float, str)):
            raise TypeError(f"unsupported data value: {self.value!r}")

    @property
    def is_number(self) -> bool:
        return not isinstance(self.value, str)

    def __str__(self) -> str:
        v = self.value
        if isinstance(v, float) and v.is_integer():
            return str(int(v))
        return str(v)


Term = Union[str, Literal]


@dataclass(frozen=True)
class Interval:
    """Closed time interval in seconds.

    ``start=None`` is an undetermined start (rendered ``_``) and
    ``end=math.inf`` means the fact holds while the KB is alive (``Inf``).
    """

    start: Optional[float] = None
    end: float = math.inf

    def __post_init__(self):
        if self.start is not None:
            if not math.isfinite(self.start) or self.start < 0:
                raise ValueError(f"interval start must be finite and >= 0, got {self.start!r}")
        if math.isnan(self.end) or self.end < 0 or self.end == -math.inf:
            raise ValueError(f"interval end must be >= 0 or Inf, got {self.end!r}")
        if self.start is not None and self.start > self.end:
            raise ValueError(f"interval start {self.start} after end {self.end}")

    @property
    def unbounded(self) -> bool:
        return self.start is None and self.end == math.inf

    def intersects(self, other: "Interval") -> bool:
        return intervals_intersect(self, other)

    def __str__(self) -> str:
        return f"({format_time(self.start)}, {format_time(self.end)})"


ALWAYS = Interval()


def format_time(t: Optional[float]) -> str:
    if t is None:
        return "_"
    if t == math.inf:
        return "Inf"
    return repr(float(t))


def parse_time(token: str) -> Optional[float]:
    if token == "_":
        return None
    if token == "Inf":
        return math.inf
    return float(token)


def intervals_intersect(a: Interval, b: Interval) -> bool:
    # undetermined start acts as -inf; touching endpoints intersect
    a_start = -math.inf if a.start is None else a.start
    b_start = -math.inf if b.start is None else b.start
    return a_start <= b.end and b_start <= a.end


@dataclass(frozen=True)
class TimedTuple:
    subject: str
    property: str
    object: Term
    interval: Interval = ALWAYS
    sign: Sign = Sign.POS

    @property
    def triple(self) -> tuple:
        return (self.subject, self.property, self.object)

    def __str__(self) -> str:
        return (
            f"<{self.subject}, {self.property}, {self.object}, "
            f"{format_time(self.interval.start)}, {format_time(self.interval.end)}, "
            f"{'positive' if self.sign is Sign.POS else 'negative'}>"
        )


@dataclass
class PropertyRegistry:
    """Inverse pairs, symmetric properties and the shallow class/property
    hierarchies used for query-time expansion.

    ``ranges`` maps a property to the class every object of a positive tuple
    with that property belongs to.
    """

    inverses: dict = field(default_factory=dict)
    symmetric: set = field(default_factory=set)
    subproperty_of: dict = field(default_factory=dict)
    subclass_of: dict = field(default_factory=dict)
    ranges: dict = field(default_factory=dict)
    data_properties: set = field(default_factory=set)

    def add_inverse(self, p: str, q: str) -> None:
        for name in (p, q):
            if name in self.symmetric:
                raise ValueError(f"{name} is symmetric and is its own inverse")
        for a, b in ((p, q), (q, p)):
            known = self.inverses.get(a)
            if known is not None and known != b:
                raise ValueError(f"{a} already has inverse {known}")
        self.inverses[p] = q
        self.inverses[q] = p

    def add_symmetric(self, p: str) -> None:
        if p in self.inverses and self.inverses[p] != p:
            raise ValueError(f"{p} already has inverse {self.inverses[p]}")
        self.symmetric.add(p)
        self.inverses[p] = p

    def inverse(self, p: str) -> Optional[str]:
        return self.inverses.get(p)

    def subproperties(self, p: str) -> set:
        """``p`` plus every property declared (transitively) below it."""
        out = {p}
        changed = True
        while changed:
            changed = False
            for child, parent in self.subproperty_of.items():
                if parent in out and child not in out:
                    out.add(child)
                    changed = True
        return out

    def subclasses(self, c: str) -> set:
        out = {c}
        changed = True
        while changed:
            changed = False
            for child, parent in self.subclass_of.items():
                if parent in out and child not in out:
                    out.add(child)
                    changed = True
        return out


class KnowledgeGraph:
    """Ordered set of :class:`TimedTuple` plus a :class:`PropertyRegistry`.

    Iteration follows insertion order, which keeps narration deterministic.
    """

    def __init__(self, registry: Optional[PropertyRegistry] = None):
        self.registry = registry if registry is not None else PropertyRegistry()
        self._tuples: dict[TimedTuple, None] = {}
        self._signs: dict[tuple, Sign] = {}
        self._by_subject: dict[str, list] = defaultdict(list)
        self._by_object: dict[Term, list] = defaultdict(list)
        self._by_property: dict[str, list] = defaultdict(list)
        self.individuals: set = set()
        self.classes: set = set()
        self.properties: set = {TYPE}

    def __len__(self) -> int:
        return len(self._tuples)

    def __iter__(self) -> Iterator[TimedTuple]:
        return iter(list(self._tuples))

    def __contains__(self, t: TimedTuple) -> bool:
        return t in self._tuples

    def __eq__(self, other) -> bool:
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return set(self._tuples) == set(other._tuples)

    def copy(self) -> "KnowledgeGraph":
        kb = KnowledgeGraph(self.registry)
        for t in self._tuples:
            kb.assert_tuple(t)
        return kb

    # -- assertion -----------------------------------------------------------

    def _check_namespaces(self, t: TimedTuple) -> None:
        s, p, o = t.triple
        for name, what in ((s, "subject"), (p, "property")):
            if not isinstance(name, str) or not name:
                raise NamespaceError(f"{what} must be a non-empty name, got {name!r}")
        if s in self.classes or s in self.properties:
            raise NamespaceError(f"{s!r} is not an individual")
        if p in self.individuals or p in self.classes:
            raise NamespaceError(f"{p!r} is not a property")
        if p == TYPE:
            if not isinstance(o, str) or not o:
                raise NamespaceError("the object of a type tuple must be a class name")
            if o in self.individuals or o in self.properties:
                raise NamespaceError(f"{o!r} is not a class")
        elif isinstance(o, Literal):
            if p not in self.registry.data_properties:
                raise NamespaceError(f"{p!r} is not a data property; cannot take {o}")
        else:
            if p in self.registry.data_properties:
                raise NamespaceError(f"data property {p!r} needs a Literal object")
            if not isinstance(o, str) or not o:
                raise NamespaceError(f"object must be a non-empty name, got {o!r}")
            if o in self.classes or o in self.properties:
                raise NamespaceError(f"{o!r} is not an individual")
        if s == p or (isinstance(o, str) and (o == p or (p == TYPE and o == s))):
            raise NamespaceError(f"name reused across namespaces in {t}")

    def assert_tuple(self, t: TimedTuple) -> "KnowledgeGraph":
        """Add ``t``. Re-asserting an existing tuple is a no-op.

        Raises ContradictionError when the same triple and interval is
        already held with the opposite sign.
        """
        if t in self._tuples:
            return self
        self._check_namespaces(t)
        key = (t.subject, t.property, t.object, t.interval)
        held = self._signs.get(key)
        if held is not None and held is not t.sign:
            raise ContradictionError(f"{t} contradicts an existing {held.value} assertion")
        self._signs[key] = t.sign
        self._tuples[t] = None
        self._by_subject[t.subject].append(t)
        self._by_object[t.object].append(t)
        self._by_property[t.property].append(t)
        self.individuals.add(t.subject)
        self.properties.add(t.property)
        if t.property == TYPE:
            self.classes.add(t.object)
        elif isinstance(t.object, str):
            self.individuals.add(t.object)
        return self

    def add(self, subject: str, prop: str, obj: Term, interval: Interval = ALWAYS,
            sign: Sign = Sign.POS) -> TimedTuple:
        t = TimedTuple(subject, prop, obj, interval, sign)
        self.assert_tuple(t)
        return t

    def extend(self, tuples: Iterable[TimedTuple]) -> "KnowledgeGraph":
        for t in tuples:
            self.assert_tuple(t)
        return self

    # -- reading -------------------------------------------------------------

    def invert(self, t: TimedTuple) -> TimedTuple:
        inv = self.registry.inverse(t.property)
        if inv is None or isinstance(t.object, Literal) or t.property == TYPE:
            raise NoInverseError(f"no inverse registered for {t.property!r}")
        return TimedTuple(t.object, inv, t.subject, t.interval, t.sign)

    def has_inverse(self, t: TimedTuple) -> bool:
        return (
            t.property != TYPE
            and not isinstance(t.object, Literal)
            and self.registry.inverse(t.property) is not None
        )

    def _candidates(self, s, props, o) -> Iterable[TimedTuple]:
        if s is not None:
            return self._by_subject.get(s, ())
        if o is not None:
            return self._by_object.get(o, ())
        if props is not None:
            out = []
            for q in props:
                out.extend(self._by_property.get(q, ()))
            return out
        return self._tuples

    def query(self, subject: Optional[str] = None, prop: Optional[str] = None,
              obj: Optional[Term] = None, locality: Optional[Interval] = None, *,
              sign: Optional[Sign] = None, inverses: bool = False) -> list:
        """Tuples matching every bound slot (``None`` is a wildcard).

        A bound property also matches its sub-properties. With
        ``inverses=True`` tuples stated in the other direction are returned
        as their inverted view. An empty result means "unknown", never false.
        """
        props = self.registry.subproperties(prop) if prop is not None else None
        out: dict[TimedTuple, None] = {}

        def scan(s, ps, o, flip):
            # A flipped hit t satisfies <o, inverse(prop), s>, hence <s, prop, o>;
            # it is reported under the queried property when one was given.
            for t in self._candidates(s, ps, o):
                if s is not None and t.subject != s:
                    continue
                if o is not None and t.object != o:
                    continue
                if ps is not None and t.property not in ps:
                    continue
                if locality is not None and not intervals_intersect(t.interval, locality):
                    continue
                if sign is not None and t.sign is not sign:
                    continue
                if not flip:
                    out[t] = None
                elif prop is not None:
                    out[TimedTuple(t.object, prop, t.subject, t.interval, t.sign)] = None
                else:
                    out[self.invert(t)] = None

        scan(subject, props, obj, False)
        if inverses:
            if prop is not None:
                inv = self.registry.inverse(prop)
                inv_props = self.registry.subproperties(inv) if inv is not None else set()
            else:
                inv_props = {q for q in self.properties if self.registry.inverse(q) is not None and q != TYPE}
            if inv_props and not isinstance(subject, Literal) and not isinstance(obj, Literal):
                scan(obj, inv_props, subject, True)
        return list(out)

    def instances_of(self, cls: str, locality: Interval = ALWAYS) -> list:
        """``(individual, interval)`` pairs with positive membership in ``cls``.

        Membership comes from ``type`` tuples on ``cls`` or any subclass, and
        from the declared range of any property whose range falls under
        ``cls``. Results follow KB order and are deduplicated.
        """
        classes = self.registry.subclasses(cls)
        out: dict[tuple, None] = {}
        for t in self._by_property.get(TYPE, ()):
            if t.object in classes and t.sign is Sign.POS and intervals_intersect(t.interval, locality):
                out[(t.subject, t.interval)] = None
        range_props = set()
        for p, c in self.registry.ranges.items():
            if c in classes:
                range_props |= self.registry.subproperties(p)
        for p in range_props:
            for t in self._by_property.get(p, ()):
                if (t.sign is Sign.POS and isinstance(t.object, str)
                        and intervals_intersect(t.interval, locality)):
                    out[(t.object, t.interval)] = None
        return list(out)

    def is_instance(self, entity: str, cls: str, interval: Optional[Interval] = None) -> bool:
        loc = interval if interval is not None else ALWAYS
        return any(e == entity for e, _ in self.instances_of(cls, loc))

    # -- snapshot ------------------------------------------------------------

    def dump(self) -> str:
        """Line-oriented snapshot: ``s p o t_i t_f sign`` separated by tabs."""
        lines = []
        for t in self._tuples:
            if isinstance(t.object, Literal):
                o = json.dumps(t.object.value)
            else:
                o = t.object
            fields = [t.subject, t.property, o, format_time(t.interval.start),
                      format_time(t.interval.end), t.sign.value]
            for f in fields[:3]:
                if "\t" in f or "\n" in f:
                    raise SnapshotError(f"name {f!r} cannot be written to a snapshot")
            lines.append("\t".join(fields))
        return "".join(line + "\n" for line in lines)

    def load(self, text: str) -> "KnowledgeGraph":
        """Assert every tuple of a snapshot produced by :meth:`dump`."""
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 6:
                raise SnapshotError(f"line {lineno}: expected 6 tab-separated fields, got {len(parts)}")
            s, p, o, ti, tf, sg = parts
            try:
                obj: Term = o
                if p in self.registry.data_properties:
                    value = json.loads(o)
                    obj = Literal(value)
                interval = Interval(parse_time(ti), parse_time(tf))
                sign = Sign(sg)
            except (ValueError, TypeError) as exc:
                raise SnapshotError(f"line {lineno}: {exc}") from exc
            self.assert_tuple(TimedTuple(s, p, obj, interval, sign))
        return self
