"""Template realizer: SPL nodes to English sentences."""

from __future__ import annotations

import string
from typing import Mapping, Sequence

from .spl import Entity, Hearer, Plain, SplNode

__all__ = ["TEMPLATES", "MissingTemplate", "MissingLexeme", "realize", "realize_plan"]

TEMPLATES = {
    "insert": "insert {actee} into {destination}",
    "remove": "take {actee} out of {source}",
    "press": "press {actee}",
    "touch": "touch {actee}",
    "pop_up": "pop up",
    "flash": "flash",
    "attach": "attach {actee} to {destination}",
    "pour": "pour {actee} into {destination}",
    "open": "open {actee}",
    "close": "close {actee}",
    "slice": "cut {actee} from {source}",
    "raise_temp": "heat {actee}",
    "steamify": "produce steam in {actee}",
}


class MissingTemplate(KeyError):
    pass


class MissingLexeme(KeyError):
    pass


def _np(filler, lexicon: Mapping[str, str]) -> str:
    if isinstance(filler, Hearer):
        return "you"
    if isinstance(filler, Plain):
        return filler.value
    try:
        surface = lexicon[filler.lexeme]
    except KeyError:
        raise MissingLexeme(filler.lexeme) from None
    return f"{filler.determiner} {surface}"


def _cap(s: str) -> str:
    return s[:1].upper() + s[1:]


def realize(node: SplNode, lexicon: Mapping[str, str], templates: Mapping[str, str] = TEMPLATES) -> str:
    try:
        template = templates[node.process]
    except KeyError:
        raise MissingTemplate(node.process) from None
    slots = dict(node.slots)
    fields = {name for _, name, _, _ in string.Formatter().parse(template) if name}
    missing = fields - slots.keys()
    if missing:
        raise ValueError(f"{node.process} node lacks {sorted(missing)}")
    vp = template.format(**{k: _np(slots[k], lexicon) for k in fields})
    if "exhaustive-duration" in slots:
        vp += " during " + _np(slots["exhaustive-duration"], lexicon)
    act = slots.get("speechact", Plain("imperative")).value
    tense = slots.get("tense", Plain("present")).value
    if act == "imperative":
        return _cap(vp) + "."
    if act == "neg-imperative":
        return "Do not " + vp + "."
    if act == "assertion":
        actor = slots.get("actor")
        subject = _cap(_np(actor, lexicon)) if actor is not None else "It"
        aux = "will " if tense == "future" else ""
        return f"{subject} {aux}{vp}."
    raise ValueError(f"unknown speech act {act}")


def realize_plan(nodes: Sequence[SplNode], lexicon: Mapping[str, str], templates: Mapping[str, str] = TEMPLATES) -> list[str]:
    out = []
    for n in nodes:
        try:
            out.append(realize(n, lexicon, templates))
        except (MissingTemplate, MissingLexeme, ValueError) as e:
            raise type(e)(f"node ID{n.id} ({n.process}): {e}") from e
    return out
