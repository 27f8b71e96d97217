"""Declarative device-environment models, validation and the built-in domains."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Optional, Union

from .sitcalc import (
    ActionIs,
    ActionIsNot,
    And,
    Compare,
    Condition,
    Eq,
    Evaluator,
    Holds,
    Not,
    NotHolds,
    Or,
    Static,
)
from .terms import Atom, Param, Var, format_term, term_vars

__all__ = [
    "PrecondRule",
    "SuccessorRule",
    "Role",
    "DomainModel",
    "Diagnostic",
    "UnknownDomain",
    "ValidationError",
    "BUILTIN_DOMAINS",
    "builtin_domain",
    "validate_domain",
    "condition_atoms",
]

BUILTIN_DOMAINS = ("toaster", "breadmaker", "combined")
SLOT_ORDER = ("actor", "actee", "source", "destination")


class UnknownDomain(KeyError):
    pass


@dataclass(frozen=True)
class PrecondRule:
    action: Atom
    condition: Condition
    guard: Optional[Condition] = None  # planner-only extra conditions

    @property
    def full_condition(self) -> Condition:
        if self.guard is None:
            return self.condition
        return And((self.condition, self.guard))


@dataclass(frozen=True)
class SuccessorRule:
    """Effect clauses, then persistence guarded by ``unless`` clauses, then derived clauses."""

    fluent: Atom
    effects: tuple = ()
    persist: bool = True
    unless: tuple = ()
    derived: tuple = ()


@dataclass(frozen=True)
class Role:
    """How an SPL slot is filled.

    kind is ``arg`` (1-based argument position in ``value``), ``hearer``,
    ``const`` (fixed symbol) or ``query`` (a fluent pattern with one free
    variable, evaluated in the state right after the action).
    """

    kind: str
    value: Union[int, str, Atom, None] = None


@dataclass(frozen=True, eq=True)
class DomainModel:
    name: str
    statics: dict = field(default_factory=dict)
    initial: tuple = ()
    preconds: tuple = ()
    successors: dict = field(default_factory=dict)
    reader: tuple = ()
    device: tuple = ()
    silent: tuple = ()
    normal: tuple = ()
    injury: tuple = ()
    affects: tuple = ()
    roles: dict = field(default_factory=dict)
    polarity: dict = field(default_factory=dict)
    collections: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    lexicon: dict = field(default_factory=dict)
    goal: tuple = ()

    __hash__ = object.__hash__

    @cached_property
    def evaluator(self) -> Evaluator:
        return Evaluator(self)

    @cached_property
    def initial_names(self) -> frozenset:
        return frozenset(f.name for f in self.initial)

    @property
    def initial_fluents(self) -> tuple:
        return self.initial

    @property
    def touch_guard_temp(self) -> Optional[int]:
        return self.params.get("touch-temp")

    @property
    def indicators(self) -> tuple:
        return tuple(a[0] for a in self.statics.get("indicator", ()))

    def is_reader(self, action: Atom) -> bool:
        return action.name in self.reader

    def is_device(self, action: Atom) -> bool:
        return action.name in self.device

    def is_normal(self, action: Atom) -> bool:
        return action.name in self.normal

    def is_injury(self, action: Atom) -> bool:
        return action.name in self.injury

    def fluent_names(self) -> list[str]:
        """Every fluent name with a rule or an initial entry, rules first."""
        out = list(self.successors)
        for f in self.initial:
            if f.name not in out:
                out.append(f.name)
        return out

    def fluent_arity(self, name: str) -> int:
        rule = self.successors.get(name)
        if rule is not None:
            return len(rule.fluent.args)
        for f in self.initial:
            if f.name == name:
                return len(f.args)
        raise KeyError(name)

    @cached_property
    def _mentions(self) -> dict:
        direct: dict[str, set] = {}
        deps: dict[str, set] = {}
        for name, rule in self.successors.items():
            acts, now_deps = set(), set()
            for clause in rule.effects + rule.unless:
                for kind, a, now in condition_atoms(clause):
                    if kind == "action":
                        acts.add(a.name)
                    elif kind == "fluent" and now:
                        now_deps.add(a.name)
            for clause in rule.derived:
                for kind, a, _ in condition_atoms(clause):
                    if kind == "fluent":
                        now_deps.add(a.name)
            direct[name], deps[name] = acts, now_deps
        closed: dict[str, frozenset] = {}
        for name in direct:
            seen, stack, acts = {name}, [name], set()
            while stack:
                n = stack.pop()
                acts |= direct.get(n, set())
                for d in deps.get(n, ()):
                    if d not in seen:
                        seen.add(d)
                        stack.append(d)
            closed[name] = frozenset(acts)
        return closed

    def mentions(self, fluent_name: str) -> frozenset:
        """Action names that can change ``fluent_name`` (through now-dependencies too)."""
        return self._mentions.get(fluent_name, frozenset())


def condition_atoms(cond: Condition):
    """Yield (kind, atom, now) for every fluent/action/static reference in ``cond``."""
    if isinstance(cond, (Holds, NotHolds)):
        yield ("fluent", cond.fluent, cond.now)
    elif isinstance(cond, (ActionIs, ActionIsNot)):
        yield ("action", cond.pattern, False)
    elif isinstance(cond, Static):
        yield ("static", Atom(cond.name, cond.args), False)
    elif isinstance(cond, (And, Or)):
        for c in cond.items:
            yield from condition_atoms(c)
    elif isinstance(cond, Not):
        yield from condition_atoms(cond.item)


def _condition_terms(cond: Condition):
    for _, a, _ in condition_atoms(cond):
        yield from a.args
    stack = [cond]
    while stack:
        c = stack.pop()
        if isinstance(c, (Compare, Eq)):
            yield c.lhs
            yield c.rhs
        elif isinstance(c, (And, Or)):
            stack.extend(c.items)
        elif isinstance(c, Not):
            stack.append(c.item)


def _params_in(cond: Condition):
    return [t.name for t in _condition_terms(cond) if isinstance(t, Param)]


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.message}"


class ValidationError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


def _action_names(m: DomainModel) -> list[str]:
    names: list[str] = []

    def add(n):
        if n not in names:
            names.append(n)

    for r in m.preconds:
        add(r.action.name)
    for rule in m.successors.values():
        for clause in rule.effects + rule.unless + rule.derived:
            for kind, a, _ in condition_atoms(clause):
                if kind == "action":
                    add(a.name)
    for a, _ in m.affects:
        add(a.name)
    return names


def validate_domain(m: DomainModel) -> list[Diagnostic]:
    """All invariant violations of ``m`` in a stable order; empty means valid."""
    out: list[Diagnostic] = []
    err = lambda msg: out.append(Diagnostic("error", msg))  # noqa: E731
    warn = lambda msg: out.append(Diagnostic("warning", msg))  # noqa: E731

    housed = set(m.successors) | set(m.initial_names)
    used: list[tuple[str, str]] = []
    for r in m.preconds:
        for c in (r.condition, r.guard):
            if c is not None:
                used += [(a.name, format_term(r.action)) for k, a, _ in condition_atoms(c) if k == "fluent"]
    for name, rule in m.successors.items():
        for c in rule.effects + rule.unless + rule.derived:
            used += [(a.name, name) for k, a, _ in condition_atoms(c) if k == "fluent"]
    used += [(g.name, "goal") for g in m.goal]
    used += [(f.name, "affects") for _, f in m.affects]
    for role in (r for rs in m.roles.values() for _, r in rs):
        if role.kind == "query":
            used.append((role.value.name, "role query"))
    reported = set()
    for fname, where in used:
        if fname not in housed and fname not in reported:
            reported.add(fname)
            err(f"unhoused fluent {fname} (used in {where})")

    for name, rule in m.successors.items():
        args = rule.fluent.args
        if not all(isinstance(a, Var) for a in args) or len({a.name for a in args}) != len(args):
            err(f"successor rule for {name} must have distinct variable arguments")
        if not rule.persist and rule.unless:
            err(f"successor rule for {name} has unless clauses without persistence")

    for r in m.preconds:
        for pname in _params_in(r.full_condition):
            if pname not in m.params:
                err(f"unknown parameter {pname} in precondition of {r.action.name}")

    for label, names in (("reader", m.reader), ("device", m.device), ("normal", m.normal), ("injury", m.injury)):
        dup = sorted({n for n in names if names.count(n) > 1})
        for n in dup:
            err(f"duplicate {label} classification of {n}")
    for n in m.reader:
        if n in m.device:
            err(f"duplicate action classification of {n} (reader and device)")
    for n in m.silent:
        if n not in m.reader and n not in m.device:
            err(f"silent action {n} is not classified")

    actions = _action_names(m)
    for n in actions:
        if n not in m.reader and n not in m.device:
            err(f"unclassified action {n}")
        if n not in m.normal and n not in m.injury:
            err(f"action {n} is neither normal nor injury")
        if n in m.normal and n in m.injury:
            err(f"injury action misclassified: {n} is both normal and injury")

    harmful = {a.name for a, f in m.affects if f.name == "burned"} | {
        n for n, p in m.polarity.items() if p == "negative"
    }
    for n in actions:
        if n in harmful and n in m.normal and n not in m.injury:
            err(f"injury action misclassified: {n}")

    affected = {a.name for a, _ in m.affects}
    for n in actions:
        if n in m.reader and n not in affected:
            warn(f"action lacks affects entry: {n}")

    for n in m.reader:
        if n not in m.silent and n in actions and n not in m.roles:
            err(f"role gap: reader action {n} has no role table entry")
    for n, slots in m.roles.items():
        for slot, role in slots:
            if slot not in SLOT_ORDER:
                err(f"unknown role slot {slot} for {n}")
            if role.kind == "query" and len(term_vars(role.value)) != 1:
                err(f"role query for {n} must have exactly one variable")

    for n in list(m.collections):
        if n not in m.device:
            err(f"collection trigger {n} is not a device action")

    for sym in sorted(_symbols(m)):
        if sym not in m.lexicon:
            warn(f"missing lexeme for {sym}")
    return out


def _symbols(m: DomainModel) -> set:
    """Symbols that can appear as SPL fillers."""
    syms: set = set()
    for facts in m.statics.values():
        syms |= {a for f in facts for a in f if isinstance(a, str)}
    for f in m.initial:
        syms |= {a for a in f.args if isinstance(a, str)}
    for r in m.preconds:
        syms |= {a for a in r.action.args if isinstance(a, str)}
    syms |= {label for label in m.collections.values()}
    return syms


# -- built-ins --------------------------------------------------------------

_cache: dict[str, DomainModel] = {}


def builtin_domain(name: str) -> DomainModel:
    """Load one of the shipped domain files (cached; models are immutable)."""
    if name not in BUILTIN_DOMAINS:
        raise UnknownDomain(name)
    if name not in _cache:
        from .domainfile import load_domain

        text = resources.files("instructplan.domains").joinpath(f"{name}.dom").read_text("utf-8")
        _cache[name] = load_domain(text)
    return _cache[name]
