"""Sentence planning: choose what to mention, fill roles, and serialize SPL.

Mention rules, applied left to right over the interpreted plan:

1. device ``A1`` at ``I``, device ``A2`` at ``I+1``, reader ``A3`` right after,
   ``(I, _)`` is a collection pattern and ``A2`` caused a salient change:
   mention ``A2`` then ``A3`` and skip all three;
2. a (non-silent) reader action is mentioned on its own;
3. anything else is skipped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .domain import DomainModel, Role
from .interpret import InterpretedPlan
from .sitcalc import holds
from .terms import S0, Atom, Situation, match, term_vars

__all__ = [
    "Entity",
    "Hearer",
    "Plain",
    "SplNode",
    "RoleGap",
    "SLOTS",
    "make_spl",
    "role_fillers",
    "caused_salient_change",
    "write_spl",
    "parse_spl",
]

SLOTS = ("actor", "actee", "source", "destination", "exhaustive-duration", "tense", "speechact")


class RoleGap(KeyError):
    pass


@dataclass(frozen=True)
class Entity:
    id: int
    lexeme: str
    determiner: str = "the"


@dataclass(frozen=True)
class Hearer:
    pass


@dataclass(frozen=True)
class Plain:
    value: str


Filler = Union[Entity, Hearer, Plain]


@dataclass(frozen=True)
class SplNode:
    id: int
    process: str
    slots: tuple  # ((slot, Filler), ...)

    def slot(self, name: str) -> Optional[Filler]:
        for k, v in self.slots:
            if k == name:
                return v
        return None


def _state_through(entries: Sequence[tuple], index: int) -> Situation:
    """Situation after the first entry carrying ``index`` (all earlier actions included)."""
    s = S0
    for i, a in entries:
        s = s.do(a)
        if i == index:
            return s
    raise IndexError(f"no entry with index {index}")


def _resolve(role: Role, action: Atom, index: int, entries, domain: DomainModel):
    if role.kind == "hearer":
        return Hearer()
    if role.kind == "arg":
        return action.args[role.value - 1]
    if role.kind == "const":
        return role.value
    if role.kind == "query":
        (var,) = term_vars(role.value)
        for b in holds(domain, role.value, _state_through(entries, index)):
            return b[var]
        return None
    raise ValueError(f"unknown role kind {role.kind}")


def actor_of(action: Atom, index: int, entries, domain: DomainModel):
    for slot, role in domain.roles.get(action.name, ()):
        if slot == "actor":
            return _resolve(role, action, index, entries, domain)
    return None


def caused_salient_change(position: int, entries: Sequence[tuple], domain: DomainModel) -> bool:
    """Did the action at ``position`` newly expose an object or material, or is its actor an indicator?"""
    after = _state_through(entries, position)
    action, before = after.last, after.parent
    actor = actor_of(action, position, entries, domain)
    if isinstance(actor, str) and actor in domain.indicators:
        return True
    candidates = [f[0] for f in domain.statics.get("physical_object", ())]
    candidates += [f[0] for f in domain.statics.get("raw_material", ())]
    for x in candidates:
        q = Atom("exposed", (x,))
        if not holds(domain, q, before) and holds(domain, q, after):
            return True
    return False


def role_fillers(
    entry: tuple,
    entries: Sequence[tuple],
    patterns: Sequence[tuple],
    domain: DomainModel,
    next_id: int,
) -> tuple[tuple, int]:
    """Slot list for one mentioned action; entity ids start at ``next_id``.

    Returns the slots and the next unused id.
    """
    index, action = entry
    roles = domain.roles.get(action.name)
    if roles is None:
        raise RoleGap(f"no role table entry for {action.name}")
    table = dict(roles)
    slots = []
    device = domain.is_device(action)
    for slot in SLOTS[:4]:
        role = table.get(slot)
        if role is None:
            if slot == "actor" and not device:
                slots.append((slot, Hearer()))
            continue
        value = _resolve(role, action, index, entries, domain)
        if value is None:
            continue
        if isinstance(value, Hearer):
            slots.append((slot, value))
        else:
            slots.append((slot, Entity(next_id, str(value))))
            next_id += 1
    for i, label in patterns:
        if i == index:
            slots.append(("exhaustive-duration", Entity(next_id, label)))
            next_id += 1
            break
    slots.append(("tense", Plain("future" if device else "present")))
    if device:
        act = "assertion"
    elif domain.polarity.get(action.name) == "negative":
        act = "neg-imperative"
    else:
        act = "imperative"
    slots.append(("speechact", Plain(act)))
    return tuple(slots), next_id


def _speaks(domain: DomainModel, action: Atom) -> bool:
    return domain.is_reader(action) and action.name not in domain.silent


def make_spl(plan: InterpretedPlan, domain: DomainModel) -> list[SplNode]:
    entries = list(plan.entries)
    pattern_starts = {i for i, _ in plan.patterns}
    nodes: list[SplNode] = []
    last_id = 0

    def emit(entry):
        nonlocal last_id
        node_id = last_id + 1
        slots, nxt = role_fillers(entry, entries, plan.patterns, domain, node_id + 1)
        nodes.append(SplNode(node_id, entry[1].name, slots))
        last_id = nxt - 1

    k = 0
    while k < len(entries):
        if k + 2 < len(entries):
            (i1, a1), (i2, a2), (_, a3) = entries[k : k + 3]
            if (
                i2 == i1 + 1
                and domain.is_device(a1)
                and domain.is_device(a2)
                and _speaks(domain, a3)
                and i1 in pattern_starts
                and caused_salient_change(i2, entries, domain)
            ):
                emit(entries[k + 1])
                emit(entries[k + 2])
                k += 3
                continue
        if _speaks(domain, entries[k][1]):
            emit(entries[k])
        k += 1
    return nodes


# -- serialization ----------------------------------------------------------

_IND = " " * 8


def _write_slot(slot: str, filler: Filler, depth: int) -> str:
    pad = _IND * depth
    if isinstance(filler, Hearer):
        return f"\n{pad}:{slot} (hearer / person)"
    if isinstance(filler, Plain):
        return f"\n{pad}:{slot} {filler.value}"
    return f"\n{pad}:{slot} (ID{filler.id} / {filler.lexeme}\n{pad}{_IND}:determiner {filler.determiner})"


def write_spl(nodes: Sequence[SplNode]) -> str:
    sentences = [
        f"(ID{n.id} / {n.process}" + "".join(_write_slot(s, f, 1) for s, f in n.slots) + ")"
        for n in nodes
    ]
    return "(setq plan '(" + "\n".join(sentences) + "))\n"


_SPL_TOKEN = re.compile(r"\s*(\(|\)|/|:[\w-]+|'|[^\s()/:']+)")


def parse_spl(text: str) -> list[SplNode]:
    """Inverse of :func:`write_spl` (whitespace-insensitive)."""
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _SPL_TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"bad SPL near {text[pos:pos + 20]!r}")
        toks.append(m.group(1))
        pos = m.end()
    k = 0

    def expect(t):
        nonlocal k
        if toks[k] != t:
            raise ValueError(f"expected {t!r}, got {toks[k]!r}")
        k += 1

    def ident():
        nonlocal k
        t = toks[k]
        k += 1
        return t

    def node_id(tok: str):
        if tok == "hearer":
            return None
        if not tok.startswith("ID"):
            raise ValueError(f"bad id {tok!r}")
        return int(tok[2:])

    expect("(")
    expect("setq")
    expect("plan")
    expect("'")
    expect("(")
    nodes = []
    while toks[k] != ")":
        expect("(")
        nid = node_id(ident())
        expect("/")
        proc = ident()
        slots = []
        while toks[k] != ")":
            slot = ident()[1:]
            if toks[k] == "(":
                k += 1
                eid = node_id(ident())
                expect("/")
                lex = ident()
                if eid is None:
                    slots.append((slot, Hearer()))
                else:
                    det = "the"
                    if toks[k] == ":determiner":
                        k += 1
                        det = ident()
                    slots.append((slot, Entity(eid, lex, det)))
                expect(")")
            else:
                slots.append((slot, Plain(ident())))
        expect(")")
        nodes.append(SplNode(nid, proc, tuple(slots)))
    expect(")")
    expect(")")
    return nodes
