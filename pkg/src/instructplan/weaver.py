"""Find every plan prefix from which an injury is reachable and merge the suffixes in."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .domain import DomainModel
from .planner import DEFAULT_MAX_DEPTH, INJURY_GOAL, Entry, plan_injury
from .terms import S0, Atom, format_term

__all__ = ["InjuryPoint", "IndexMismatch", "injury_points", "merge_injuries"]


class IndexMismatch(ValueError):
    pass


@dataclass(frozen=True)
class InjuryPoint:
    index: int
    suffix: tuple

    def __str__(self) -> str:
        return f"({self.index},[{','.join(format_term(a) for a in self.suffix)}])"


def injury_points(
    domain: DomainModel,
    plan: Sequence[Entry],
    goal: Sequence[Atom] = INJURY_GOAL,
    max_depth: int = DEFAULT_MAX_DEPTH,
    progress: Optional[callable] = None,
) -> list[InjuryPoint]:
    """One point per prefix length I for which the injury planner succeeds.

    ``progress`` is called with each index before its search, which is how
    the trace prints its ``INDEX:`` line.
    """
    points = []
    s = S0
    for entry in plan:
        if len(entry.actions) != 1:
            raise ValueError("injury_points expects a freshly indexed plan")
        s = s.do(entry.action)
        if progress is not None:
            progress(entry.index)
        suffix = plan_injury(domain, s, goal, max_depth)
        if suffix:
            points.append(InjuryPoint(entry.index, tuple(suffix)))
    return points


def merge_injuries(plan: Sequence[Entry], points: Sequence[InjuryPoint]) -> list[Entry]:
    by_index = {}
    for p in points:
        by_index[p.index] = p
    known = {e.index for e in plan}
    for i in by_index:
        if i not in known:
            raise IndexMismatch(f"injury point {i} has no plan entry")
    return [
        Entry(e.index, e.actions + by_index[e.index].suffix) if e.index in by_index else e
        for e in plan
    ]
