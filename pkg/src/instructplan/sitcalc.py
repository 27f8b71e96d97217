"""Condition language and the closed-world evaluator for ``holds`` and ``Poss``.

A fluent holds in ``S0`` iff it is listed in the initial state.  In
``do(a, s)`` it holds iff one of its successor rule's effect clauses fires
for ``a``, or it held in ``s`` and none of the rule's ``unless`` clauses
fires (persistence).  Effect clauses are tried before persistence, so
bindings come out most-recently-established first; the planners rely on
that order.

Successor rules may also carry *derived* clauses, evaluated in the current
situation and never persisted.  Transitive containment is expressed this
way.  ``base`` queries skip derived clauses; persistence always recurses
on the base relation so derived facts cannot go stale.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterator, Optional

from .terms import (
    Atom,
    Binding,
    Param,
    S0,
    Situation,
    Var,
    format_term,
    is_ground,
    match,
    resolve,
    substitute,
    term_vars,
)

if TYPE_CHECKING:
    from .domain import DomainModel

__all__ = [
    "Condition",
    "Holds",
    "NotHolds",
    "Static",
    "Compare",
    "Eq",
    "ActionIs",
    "ActionIsNot",
    "And",
    "Or",
    "Not",
    "EvaluationError",
    "UnknownFluent",
    "ArithmeticOnUnbound",
    "Evaluator",
    "holds",
    "poss",
]


class EvaluationError(Exception):
    pass


class UnknownFluent(EvaluationError):
    pass


class ArithmeticOnUnbound(EvaluationError):
    pass


class Condition:
    """Base class; concrete conditions are the frozen dataclasses below."""


@dataclass(frozen=True)
class Holds(Condition):
    fluent: Atom
    now: bool = False
    base: bool = False


@dataclass(frozen=True)
class NotHolds(Condition):
    fluent: Atom
    now: bool = False
    base: bool = False


@dataclass(frozen=True)
class Static(Condition):
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Compare(Condition):
    """``lhs op rhs + offset`` over integers.

    ``op`` ``is`` binds an unbound ``lhs`` to ``rhs + offset`` (and checks
    equality otherwise).
    """

    op: str
    lhs: object
    rhs: object
    offset: int = 0


@dataclass(frozen=True)
class Eq(Condition):
    """Symbolic equality; binds whichever side is an unbound variable."""

    lhs: object
    rhs: object


@dataclass(frozen=True)
class ActionIs(Condition):
    pattern: Atom


@dataclass(frozen=True)
class ActionIsNot(Condition):
    pattern: Atom


@dataclass(frozen=True)
class And(Condition):
    items: tuple = ()


@dataclass(frozen=True)
class Or(Condition):
    items: tuple = ()


@dataclass(frozen=True)
class Not(Condition):
    """Negation as failure over an arbitrary condition (inner vars are existential)."""

    item: Condition


_CMP = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "=": operator.eq,
    "!=": operator.ne,
}
COMPARE_OPS = tuple(_CMP) + ("is",)


@dataclass
class _Ctx:
    prior: Situation
    now: Situation
    action: Optional[Atom]


@dataclass
class Evaluator:
    """Memoising evaluator bound to one domain model.

    All memo tables are keyed on immutable inputs, so results are identical
    to an uncached evaluation.
    """

    domain: "DomainModel"
    _memo: dict = field(default_factory=dict, repr=False)
    _poss_memo: dict = field(default_factory=dict, repr=False)

    # -- fluents ---------------------------------------------------------

    def ground_solutions(self, query: Atom, situation: Situation, base: bool = False) -> tuple:
        """Distinct ground fluents matching ``query`` in ``situation``, in stream order."""
        key = (query, situation, base)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out: list[Atom] = []
        seen: set = set()
        for g in self._solve_fluent(query, situation, base):
            if g not in seen:
                seen.add(g)
                out.append(g)
        result = tuple(out)
        self._memo[key] = result
        return result

    def _solve_fluent(self, query: Atom, situation: Situation, base: bool) -> Iterator[Atom]:
        dom = self.domain
        rule = dom.successors.get(query.name)
        if rule is None and query.name not in dom.initial_names:
            raise UnknownFluent(f"no successor rule or initial entry for {query.name}")
        if rule is not None and len(rule.fluent.args) != len(query.args):
            raise UnknownFluent(f"{query.name} has arity {len(rule.fluent.args)}, got {format_term(query)}")

        if situation.is_initial:
            for f in dom.initial:
                if match(query, f) is not None:
                    yield f
        elif rule is not None:
            b0 = _seed(rule.fluent, query)
            if b0 is not None:
                ctx = _Ctx(prior=situation.parent, now=situation, action=situation.last)
                for clause in rule.effects:
                    for b in self.solve(clause, b0, ctx):
                        yield self._ground_result(rule.fluent, b, query)
                if rule.persist:
                    for g in self.ground_solutions(query, ctx.prior, base=True):
                        b = match(rule.fluent, g, b0)
                        if b is None:
                            continue
                        if not any(_first(self.solve(u, b, ctx)) for u in rule.unless):
                            yield g

        if not base and rule is not None and rule.derived:
            b0 = _seed(rule.fluent, query)
            if b0 is not None:
                ctx = _Ctx(prior=situation, now=situation, action=None)
                for clause in rule.derived:
                    for b in self.solve(clause, b0, ctx):
                        yield self._ground_result(rule.fluent, b, query)

    def _ground_result(self, pattern: Atom, b: Binding, query: Atom) -> Atom:
        g = substitute(pattern, b)
        if not is_ground(g):
            raise EvaluationError(
                f"successor clause for {format_term(query)} left {term_vars(g)} unbound"
            )
        return g

    # -- conditions ------------------------------------------------------

    def solve(self, cond: Condition, b: Binding, ctx: _Ctx) -> Iterator[Binding]:
        if isinstance(cond, Holds):
            q = substitute(cond.fluent, b)
            sit = ctx.now if cond.now else ctx.prior
            for g in self.ground_solutions(q, sit, cond.base):
                b2 = match(q, g, b)
                if b2 is not None:
                    yield b2
        elif isinstance(cond, NotHolds):
            q = substitute(cond.fluent, b)
            if not is_ground(q):
                raise EvaluationError(f"negated fluent {format_term(q)} is not ground")
            sit = ctx.now if cond.now else ctx.prior
            if not self.ground_solutions(q, sit, cond.base):
                yield b
        elif isinstance(cond, Static):
            pattern = Atom(cond.name, tuple(substitute(a, b) for a in cond.args))
            for fact in self.domain.statics.get(cond.name, ()):
                b2 = match(pattern, Atom(cond.name, fact), b)
                if b2 is not None:
                    yield b2
        elif isinstance(cond, Compare):
            yield from self._compare(cond, b)
        elif isinstance(cond, Eq):
            lhs, rhs = self._value(cond.lhs, b), self._value(cond.rhs, b)
            if isinstance(lhs, Var) and isinstance(rhs, Var):
                raise EvaluationError("equality between two unbound variables")
            if isinstance(lhs, Var):
                yield {**b, lhs.name: rhs}
            elif isinstance(rhs, Var):
                yield {**b, rhs.name: lhs}
            elif lhs == rhs:
                yield b
        elif isinstance(cond, ActionIs):
            if ctx.action is not None:
                b2 = match(substitute(cond.pattern, b), ctx.action, b)
                if b2 is not None:
                    yield b2
        elif isinstance(cond, ActionIsNot):
            if ctx.action is None or match(substitute(cond.pattern, b), ctx.action, b) is None:
                yield b
        elif isinstance(cond, And):
            yield from self._conj(cond.items, 0, b, ctx)
        elif isinstance(cond, Or):
            for item in cond.items:
                yield from self.solve(item, b, ctx)
        elif isinstance(cond, Not):
            if _first(self.solve(cond.item, b, ctx)) is None:
                yield b
        else:
            raise TypeError(f"unknown condition {cond!r}")

    def _conj(self, items: tuple, i: int, b: Binding, ctx: _Ctx) -> Iterator[Binding]:
        if i == len(items):
            yield b
            return
        for b2 in self.solve(items[i], b, ctx):
            yield from self._conj(items, i + 1, b2, ctx)

    def _value(self, t, b: Binding):
        if isinstance(t, Param):
            try:
                return self.domain.params[t.name]
            except KeyError:
                raise EvaluationError(f"unknown domain parameter {t.name}") from None
        return resolve(t, b)

    def _compare(self, cond: Compare, b: Binding) -> Iterator[Binding]:
        lhs, rhs = self._value(cond.lhs, b), self._value(cond.rhs, b)
        if not isinstance(rhs, int):
            raise ArithmeticOnUnbound(f"right operand of {cond.op} is {rhs!r}")
        rhs = rhs + cond.offset
        if cond.op == "is" and isinstance(lhs, Var):
            yield {**b, lhs.name: rhs}
            return
        if not isinstance(lhs, int):
            raise ArithmeticOnUnbound(f"left operand of {cond.op} is {lhs!r}")
        fn = operator.eq if cond.op == "is" else _CMP[cond.op]
        if fn(lhs, rhs):
            yield b

    # -- actions ---------------------------------------------------------

    def possible(self, situation: Situation) -> tuple:
        """Distinct ground actions whose precondition holds, in rule order."""
        hit = self._poss_memo.get(situation)
        if hit is not None:
            return hit
        ctx = _Ctx(prior=situation, now=situation, action=None)
        out: list[Atom] = []
        seen: set = set()
        for rule in self.domain.preconds:
            for b in self.solve(rule.full_condition, {}, ctx):
                a = substitute(rule.action, b)
                if not is_ground(a):
                    raise EvaluationError(f"precondition of {format_term(rule.action)} leaves {format_term(a)} non-ground")
                if a not in seen:
                    seen.add(a)
                    out.append(a)
        result = tuple(out)
        self._poss_memo[situation] = result
        return result

    def condition_holds(self, cond: Condition, situation: Situation, binding: Optional[Binding] = None) -> Iterator[Binding]:
        """Evaluate a free-standing condition in ``situation``."""
        ctx = _Ctx(prior=situation, now=situation, action=None)
        return self.solve(cond, dict(binding or {}), ctx)


def _seed(pattern: Atom, query: Atom) -> Optional[Binding]:
    """Bind the rule's head variables to the query's ground arguments."""
    b: Binding = {}
    for p, q in zip(pattern.args, query.args):
        if isinstance(q, Var):
            continue
        if isinstance(p, Var):
            if p.name in b and b[p.name] != q:
                return None
            b[p.name] = q
        elif p != q:
            return None
    return b


def _first(it):
    return next(iter(it), None)


def holds(domain: "DomainModel", query: Atom, situation: Situation = S0) -> list[Binding]:
    """Every binding of ``query``'s variables under which it holds, in stream order."""
    return [match(query, g) for g in domain.evaluator.ground_solutions(query, situation)]


def poss(domain: "DomainModel", situation: Situation = S0) -> list[Atom]:
    return list(domain.evaluator.possible(situation))
