"""Collection interpretation: label runs of repeated device actions and share an index.

A run is a maximal sequence of adjacent entries whose normal action maps to
the same collection label (``raise_temp`` and ``steamify`` both map to
``heating_period`` in the breadmaker).  Runs of three or more are labelled,
their members take the run's first index, and duplicate injury suffixes
inside the run are dropped.  Later entries are renumbered consecutively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .planner import Entry
from .terms import format_term

__all__ = [
    "MIN_COLLECTION",
    "InterpretedPlan",
    "retained_injuries",
    "make_interpretations",
]

MIN_COLLECTION = 3
DEFAULT_TRIGGERS = {"raise_temp": "heating_period"}


@dataclass(frozen=True)
class InterpretedPlan:
    entries: tuple  # ((index, Atom), ...)
    patterns: tuple = field(default=())  # ((index, label), ...)

    def entries_str(self) -> str:
        return "[" + ",".join(f"({i},{format_term(a)})" for i, a in self.entries) + "]"

    def patterns_str(self) -> str:
        return "[" + ",".join(f"({i},{lab})" for i, lab in self.patterns) + "]"


def retained_injuries(group: Sequence[Entry]) -> list[Entry]:
    """Keep the first occurrence of each distinct injury suffix in a collection."""
    seen: list[tuple] = []
    out = []
    for e in group:
        suffix = e.actions[1:]
        if not suffix:
            out.append(e)
        elif suffix in seen:
            out.append(Entry(e.index, e.actions[:1]))
        else:
            seen.append(suffix)
            out.append(e)
    return out


def _find_run(entries: Sequence[Entry], triggers: Mapping[str, str]):
    i, n = 0, len(entries)
    while i < n:
        label = triggers.get(entries[i].action.name)
        if label is None:
            i += 1
            continue
        j = i
        while j + 1 < n and triggers.get(entries[j + 1].action.name) == label:
            j += 1
        if j - i + 1 >= MIN_COLLECTION:
            return i, j, label
        i = j + 1
    return None


def _interpret(entries: list[Entry], triggers: Mapping[str, str]):
    run = _find_run(entries, triggers)
    if run is None:
        return entries, []
    i, j, label = run
    start = entries[i].index
    group = retained_injuries([Entry(start, e.actions) for e in entries[i : j + 1]])
    after = [Entry(start + 1 + k, e.actions) for k, e in enumerate(entries[j + 1 :])]
    rest, patterns = _interpret(after, triggers)
    return entries[:i] + group + rest, [(start, label)] + patterns


def make_interpretations(
    plan: Sequence[Entry], triggers: Mapping[str, str] = DEFAULT_TRIGGERS
) -> InterpretedPlan:
    grouped, patterns = _interpret(list(plan), triggers)
    flat = tuple((e.index, a) for e in grouped for a in e.actions)
    return InterpretedPlan(flat, tuple(patterns))
