"""Depth-first normal and injury planners, goal satisfaction and the loop guard.

Both planners return the first solution of chronological backtracking over
``poss`` in declaration order, so the domain file fully determines the plan.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .domain import DomainModel
from .sitcalc import poss
from .terms import S0, Atom, Situation, Var, format_term, match, substitute, unify

__all__ = [
    "Plan",
    "Entry",
    "NoPlan",
    "DepthExceeded",
    "DEFAULT_MAX_DEPTH",
    "satisfied",
    "affected_fluents",
    "loop_guard",
    "plan_normal",
    "plan_injury",
    "index_actions",
    "is_valid_plan",
    "state_signature",
    "bfs_oracle",
]

DEFAULT_MAX_DEPTH = 64
INJURY_GOAL = (Atom("burned", ()),)


class NoPlan(Exception):
    pass


class DepthExceeded(Exception):
    pass


@dataclass(frozen=True)
class Plan:
    actions: tuple
    origin: Situation = S0

    @property
    def situation(self) -> Situation:
        s = self.origin
        for a in self.actions:
            s = s.do(a)
        return s

    def __len__(self) -> int:
        return len(self.actions)


@dataclass(frozen=True)
class Entry:
    """One indexed plan position: a normal action plus any merged injury suffix."""

    index: int
    actions: tuple

    @property
    def action(self) -> Atom:
        return self.actions[0]

    def __str__(self) -> str:
        return f"({self.index},[{','.join(format_term(a) for a in self.actions)}])"


def satisfied(domain: DomainModel, goal: Iterable[Atom], situation: Situation) -> bool:
    """Each conjunct must hold under some binding; bindings are not shared."""
    ev = domain.evaluator
    return all(ev.ground_solutions(g, situation) for g in goal)


def affected_fluents(domain: DomainModel, action: Atom) -> list[Atom]:
    """Fluent patterns ``action`` affects, instantiated by matching the affects table."""
    out = []
    for ap, fp in domain.affects:
        b = match(ap, action)
        if b is not None:
            out.append(substitute(fp, b))
    return out


def loop_guard(domain: DomainModel, last: Optional[Atom], candidate: Atom) -> bool:
    """True (allow) unless ``last`` and ``candidate`` affect a common fluent."""
    if last is None:
        return True
    mine = affected_fluents(domain, last)
    if not mine:
        return True
    theirs = affected_fluents(domain, candidate)
    return not any(unify(f, g) for f in mine for g in theirs)


def _dfs(
    domain: DomainModel,
    goal: Sequence[Atom],
    start: Situation,
    allowed: Callable[[Atom], bool],
    max_depth: int,
) -> Optional[Situation]:
    def go(s: Situation, depth: int) -> Optional[Situation]:
        if satisfied(domain, goal, s):
            return s
        if depth >= max_depth:
            raise DepthExceeded(f"search exceeded {max_depth} actions at {s.nested()}")
        for a in poss(domain, s):
            if not allowed(a) or not loop_guard(domain, s.last, a):
                continue
            found = go(s.do(a), depth + 1)
            if found is not None:
                return found
        return None

    return go(start, 0)


def plan_normal(
    domain: DomainModel,
    goal: Optional[Sequence[Atom]] = None,
    start: Situation = S0,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> Plan:
    goal = domain.goal if goal is None else tuple(goal)
    end = _dfs(domain, goal, start, domain.is_normal, max_depth)
    if end is None:
        raise NoPlan(f"no plan reaches {', '.join(map(format_term, goal))}")
    return Plan(end.actions[len(start):], start)


def plan_injury(
    domain: DomainModel,
    start: Situation,
    goal: Sequence[Atom] = INJURY_GOAL,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> Optional[tuple]:
    """Injury-action suffix reaching ``goal`` from ``start``, or None."""
    if not domain.injury:
        return None
    end = _dfs(domain, tuple(goal), start, domain.is_injury, max_depth)
    if end is None:
        return None
    return end.actions[len(start):]


def index_actions(plan) -> list[Entry]:
    actions = plan.actions if isinstance(plan, Plan) else tuple(plan)
    return [Entry(i + 1, (a,)) for i, a in enumerate(actions)]


def is_valid_plan(domain: DomainModel, actions: Iterable[Atom], start: Situation = S0) -> bool:
    s = start
    for a in actions:
        if a not in poss(domain, s):
            return False
        s = s.do(a)
    return True


def state_signature(domain: DomainModel, s: Situation) -> frozenset:
    """Every ground fluent that holds in ``s``."""
    ev = domain.evaluator
    out: set = set()
    for name in domain.fluent_names():
        q = Atom(name, tuple(Var(f"_{i}") for i in range(domain.fluent_arity(name))))
        out.update(ev.ground_solutions(q, s))
    return frozenset(out)


def bfs_oracle(
    domain: DomainModel,
    goal: Optional[Sequence[Atom]] = None,
    start: Situation = S0,
    max_depth: int = 16,
    actions: str = "normal",
) -> Optional[int]:
    """Shortest plan length by breadth-first search over distinct states.

    No loop guard.  ``actions`` is ``normal``, ``injury`` or ``all``.
    """
    goal = domain.goal if goal is None else tuple(goal)
    allowed = {
        "normal": domain.is_normal,
        "injury": domain.is_injury,
        "all": lambda a: True,
    }[actions]
    if satisfied(domain, goal, start):
        return 0
    seen = {state_signature(domain, start)}
    frontier = deque([(start, 0)])
    while frontier:
        s, d = frontier.popleft()
        if d >= max_depth:
            continue
        for a in poss(domain, s):
            if not allowed(a):
                continue
            t = s.do(a)
            if satisfied(domain, goal, t):
                return d + 1
            sig = state_signature(domain, t)
            if sig in seen:
                continue
            seen.add(sig)
            frontier.append((t, d + 1))
    return None
