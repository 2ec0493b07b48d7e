"""Evaluation metrics for narratives and the ACXON-versus-baseline report.

Readability uses the Dale–Chall formula::

    0.1579 * PDW + 0.0496 * ASL (+ 3.6365 when PDW > 5)

where PDW is the percentage of words missing from the familiar-word list
and ASL the average sentence length in words.
"""

from __future__ import annotations

import enum
import re
import time
from dataclasses import astuple, dataclass, fields
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional

from .acxon import Narrative, narrate_pair, narrate_single, retrieve_instantiated_pairs
from .kb import ALWAYS, Interval, KnowledgeGraph

DC_PDW_WEIGHT = 0.1579
DC_ASL_WEIGHT = 0.0496
DC_ADJUSTMENT = 3.6365
DC_THRESHOLD = 5.0


class EmptyTextError(ValueError):
    pass


class Channel(enum.Enum):
    AUDITORY = 160
    VISUAL = 400

    @property
    def words_per_minute(self) -> int:
        return self.value


# Quote marks only count when they sit at a token boundary, so the
# apostrophe in "robot's" survives while `tea cost' loses both marks.
_QUOTES = re.compile(r"(?:(?<=\s)|^)[`'\"]+|[`'\"]+(?=\s|[.,;:!?]|$)")
_SENTENCE_END = re.compile(r"[.!?]+(?=\s|$)")
_NUMERAL = re.compile(r"^[+-]?\d+(?:[.,]\d+)*$")


def tokenize(text: str) -> list:
    """Words of ``text``: whitespace runs after stripping quotes, split on hyphens.

    Runs with no letter or digit (a full stop left behind by a closing quote)
    are not words.
    """
    stripped = _QUOTES.sub(" ", text)
    words = []
    for run in stripped.split():
        words.extend(part for part in run.split("-") if any(c.isalnum() for c in part))
    return words


def word_count(text: str) -> int:
    return len(tokenize(text))


def interaction_time(text: str, channel: Channel = Channel.AUDITORY) -> float:
    """Seconds to hear (160 wpm) or read (400 wpm) ``text``."""
    return word_count(text) / channel.words_per_minute * 60.0


def count_attributes(narrative: Narrative) -> int:
    return len(narrative.divergent_tuples)


@lru_cache(maxsize=1)
def _bundled_words() -> frozenset:
    data = resources.files("plancontrast").joinpath("data/easy_words.txt").read_text()
    return parse_word_list(data)


def parse_word_list(text: str) -> frozenset:
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def load_familiar_words(path: Optional[str] = None) -> frozenset:
    """The bundled ~3000-word list, or one word per line from ``path``."""
    if path is None:
        return _bundled_words()
    with open(path, encoding="utf-8") as fh:
        return parse_word_list(fh.read())


def _normalize(word: str) -> str:
    return re.sub(r"^[^\w]+|[^\w]+$", "", word.lower())


_SUFFIXES = ("ies", "es", "s", "ed", "ing", "er", "est", "ly")


def _stems(word: str):
    """Candidate roots under the regular-inflection rule (-s, -ed, -ing, -er, ...)."""
    for suffix in _SUFFIXES:
        if len(word) > len(suffix) + 1 and word.endswith(suffix):
            root = word[: -len(suffix)]
            yield root
            yield root + "e"
            if suffix == "ies":
                yield root + "y"
            if len(root) > 2 and root[-1] == root[-2]:
                yield root[:-1]
            if suffix in ("er", "est", "ly") and root.endswith("i"):
                yield root[:-1] + "y"


def is_familiar(word: str, familiar_words) -> bool:
    """Listed words, their regular inflections, and numerals are familiar."""
    if word in familiar_words or _NUMERAL.match(word):
        return True
    return any(stem in familiar_words for stem in _stems(word))


def split_sentences(text: str) -> list:
    return [s for s in (p.strip() for p in _SENTENCE_END.split(text)) if tokenize(s)]


def dale_chall(text: str, familiar_words: Optional[Iterable] = None) -> float:
    """Dale–Chall score of ``text``.

    A word is familiar when it, or its root under a regular inflection, is
    in ``familiar_words``; numerals are always familiar.
    """
    familiar = _bundled_words() if familiar_words is None else frozenset(familiar_words)
    if not familiar:
        raise ValueError("familiar word list is empty")
    sentences = split_sentences(text)
    words = [w for w in (_normalize(t) for s in sentences for t in tokenize(s)) if w]
    if not sentences or not words:
        raise EmptyTextError("text has no words")
    difficult = sum(1 for w in words if not is_familiar(w, familiar))
    pdw = 100.0 * difficult / len(words)
    asl = len(words) / len(sentences)
    score = DC_PDW_WEIGHT * pdw + DC_ASL_WEIGHT * asl
    if pdw > DC_THRESHOLD:
        score += DC_ADJUSTMENT
    return score


@dataclass
class MetricReport:
    attribute_count: int = 0
    construction_time: float = 0.0
    interaction_auditory: float = 0.0
    interaction_visual: float = 0.0
    readability: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"{f.name} must be non-negative")

    def __add__(self, other: "MetricReport") -> "MetricReport":
        return MetricReport(*(x + y for x, y in zip(astuple(self), astuple(other))))

    def scaled(self, factor: float) -> "MetricReport":
        return MetricReport(*(x * factor for x in astuple(self)))


def measure(narratives: list, construction_time: float,
            familiar_words: Optional[frozenset] = None) -> MetricReport:
    """Metrics for narratives that together explain one pair.

    Counts and interaction times add up; readability is taken over the
    concatenated text.
    """
    text = " ".join(n.text for n in narratives if n.text)
    return MetricReport(
        attribute_count=sum(count_attributes(n) for n in narratives),
        construction_time=construction_time,
        interaction_auditory=interaction_time(text, Channel.AUDITORY),
        interaction_visual=interaction_time(text, Channel.VISUAL),
        readability=dale_chall(text, familiar_words) if word_count(text) else 0.0,
    )


ALGORITHMS = ("acxon", "baseline")


def compare_report(kb: KnowledgeGraph, class_pairs, locality: Interval = ALWAYS,
                   levels: Iterable = (1, 2, 3), familiar_words: Optional[frozenset] = None,
                   errors: Optional[dict] = None) -> dict:
    """Average metrics per ``(algorithm, level)`` over every instantiated pair.

    The baseline explains a pair by narrating each instance on its own and
    summing the two. Only narrative construction is timed. A failing cell is
    recorded in ``errors`` when given, otherwise raised.
    """
    pairs = retrieve_instantiated_pairs(kb, list(class_pairs), locality)
    grid = {}
    if not pairs:
        return grid
    for level in sorted(set(levels)):
        for algorithm in ALGORITHMS:
            total, n = MetricReport(), 0
            for pair in pairs:
                try:
                    start = time.perf_counter()
                    if algorithm == "acxon":
                        narratives = [narrate_pair(kb, pair, level)]
                    else:
                        narratives = [narrate_single(kb, e, locality, level) for e in pair.entities]
                    elapsed = time.perf_counter() - start
                    total = total + measure(narratives, elapsed, familiar_words)
                    n += 1
                except Exception as exc:
                    if errors is None:
                        raise
                    errors[(algorithm, level, pair.entities)] = exc
            if n:
                grid[(algorithm, level)] = total.scaled(1.0 / n)
    return grid


ROW_HEADER = "algorithm,level,tuples,construction_s,auditory_s,visual_s,dale_chall"


def format_rows(grid: dict) -> str:
    lines = [ROW_HEADER]
    for (algorithm, level), r in sorted(grid.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        lines.append(f"{algorithm},{level},{r.attribute_count:g},{r.construction_time:.6f},"
                     f"{r.interaction_auditory:.2f},{r.interaction_visual:.2f},{r.readability:.2f}")
    return "\n".join(lines) + "\n"


def format_table(grid: dict) -> str:
    head = ("algorithm", "level", "tuples", "construction (s)", "auditory (s)", "visual (s)",
            "Dale-Chall")
    rows = [head]
    for (algorithm, level), r in sorted(grid.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        rows.append((algorithm, str(level), f"{r.attribute_count:g}",
                     f"{r.construction_time:.4f}", f"{r.interaction_auditory:.2f}",
                     f"{r.interaction_visual:.2f}", f"{r.readability:.2f}"))
    widths = [max(len(row[i]) for row in rows) for i in range(len(head))]
    return "\n".join("  ".join(c.ljust(w) if i < 1 else c.rjust(w)
                               for i, (c, w) in enumerate(zip(row, widths))).rstrip()
                     for row in rows) + "\n"
