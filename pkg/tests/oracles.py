"""Independent reference implementations used as test oracles.

``ToasterSim`` re-implements the toaster axioms as explicit set updates
(no rules, no matching, no recursion over situations), so agreement with
the evaluator is meaningful.  Golden artefacts are read from tests/golden.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field, replace
from pathlib import Path

GOLDEN = Path(__file__).parent / "golden"


def golden(name: str) -> str:
    return (GOLDEN / name).read_text("utf-8")


def squash(text: str) -> str:
    """Drop all whitespace (the vendored traces carry 51-column hard wraps)."""
    return re.sub(r"\s+", "", text)


def golden_section(domain: str, label: str) -> str:
    """One labelled section of a vendored trace, whitespace removed."""
    flat = squash(golden(f"{domain}.trace"))
    labels = ["GOALSTATE:", "Insertinginjuries...", "INDEX:", "POINTS:", "WITHINJURIES:",
              "Makinginterpretations...", "INTERPRETATIONS:", "PATTERNS:", "MakingSPL...", "Done."]
    key = squash(label)
    i = flat.index(key) + len(key)
    ends = [flat.index(l, i) for l in labels if l in flat[i:] and flat.index(l, i) >= i]
    return flat[i : min(ends)] if ends else flat[i:]


def golden_sentences(domain: str) -> list[str]:
    return golden(f"{domain}.sentences").splitlines()


def normalize_quotes(s: str) -> str:
    return s.replace("``", '"').replace("''", '"')


def parse_points(section: str) -> list[tuple[int, str]]:
    """'[(3,[touch(bread_slot),get_burned]),...]' -> [(3, 'touch(bread_slot),get_burned'), ...]"""
    return [(int(i), body) for i, body in re.findall(r"\((\d+),\[(.*?)\]\)", section)]


def parse_nested(section: str) -> list[str]:
    """'do(a,do(b,s0))' -> ['b', 'a'] (first action first)."""
    out = []
    s = section
    while s.startswith("do("):
        depth, k = 0, 3
        while True:
            c = s[k]
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            elif c == "," and depth == 0:
                break
            k += 1
        out.append(s[3:k])
        s = s[k + 1 : -1]
    assert s == "s0", s
    return out[::-1]


# -- toaster reference simulator ----------------------------------------------

PHYSICAL = ("bread_slot", "on_lever")


@dataclass(frozen=True)
class ToasterState:
    contains: frozenset = frozenset()  # (container, thing)
    removed: frozenset = frozenset()  # (thing, container)
    pressed: frozenset = frozenset()
    exposed: frozenset = frozenset({"bread_slot", "bread_slice"})
    temperature: tuple = (("bread_slice", 20), ("bread_slot", 20))
    touching: frozenset = frozenset()
    burned: bool = False
    toasted: frozenset = frozenset()

    def temp(self, x):
        return dict(self.temperature).get(x)

    def fluents(self) -> set[str]:
        out = {f"contains({y},{x})" for y, x in self.contains}
        out |= {f"removed({x},{y})" for x, y in self.removed}
        out |= {f"pressed({x})" for x in self.pressed}
        out |= {f"exposed({x})" for x in self.exposed}
        out |= {f"temperature({x},{t})" for x, t in self.temperature}
        out |= {f"touching({x})" for x in self.touching}
        out |= {f"toasted({x})" for x in self.toasted}
        if self.burned:
            out.add("burned")
        return out


class ToasterSim:
    NORMAL = ("insert", "remove", "press", "raise_temp", "pop_up")
    INJURY = ("touch", "get_burned")

    def __init__(self, touch_temp: int = 20):
        self.touch_temp = touch_temp

    def poss(self, s: ToasterState) -> list[str]:
        acts = []
        if "bread_slot" in s.exposed and ("bread_slot", "bread_slice") not in s.contains:
            acts.append("insert(bread_slice,bread_slot)")
        for y, x in sorted(s.contains):
            if y == "bread_slot" and x in s.exposed:
                acts.append(f"remove({x},{y})")
        if "on_lever" not in s.pressed:
            acts.append("press(on_lever)")
        if "on_lever" in s.pressed:
            cands = ["bread_slot"] + [x for y, x in sorted(s.contains) if y == "bread_slot"]
            for x in cands:
                t = s.temp(x)
                if t is not None and t < 200:
                    acts.append(f"raise_temp({x})")
        if s.temp("bread_slot") >= 200:
            acts.append("pop_up")
        if any(s.temp(x) is not None and s.temp(x) >= 70 for x in s.touching):
            acts.append("get_burned")
        for x in PHYSICAL:
            t = s.temp(x)
            if x in s.exposed and t is not None and t > self.touch_temp:
                acts.append(f"touch({x})")
        return acts

    def apply(self, s: ToasterState, action: str) -> ToasterState:
        name, args = _split(action)
        contains, removed, pressed = set(s.contains), set(s.removed), set(s.pressed)
        temps, touching, burned = dict(s.temperature), set(s.touching), s.burned
        if name == "insert":
            contains.add((args[1], args[0]))
        if name == "remove":
            contains.discard((args[1], args[0]))
            removed.add((args[0], args[1]))
        if name == "press":
            pressed.add(args[0])
        if name == "pop_up":
            pressed.clear()
        exposed = {"bread_slot"}
        if name == "pop_up":
            exposed |= {x for y, x in s.contains if y == "bread_slot"}
        if action != "press(on_lever)":
            exposed |= s.exposed
        if name == "raise_temp" and args[0] in temps:
            temps[args[0]] += 50
        if name == "pop_up":
            temps = {x: 20 for x in temps}
        if name == "touch":
            touching.add(args[0])
        if name == "get_burned":
            burned = True
        toasted = set(s.toasted) | {x for x, t in temps.items() if t >= 200}
        return ToasterState(
            frozenset(contains), frozenset(removed), frozenset(pressed), frozenset(exposed),
            tuple(sorted(temps.items())), frozenset(touching), burned, frozenset(toasted),
        )

    @staticmethod
    def affects(action: str) -> list[tuple]:
        name, args = _split(action)
        table = {
            "insert": [("contains", args[1:2] + args[0:1])] if name == "insert" else [],
            "remove": [("removed", tuple(args)), ("contains", args[1:2] + args[0:1])] if name == "remove" else [],
            "press": [("pressed", tuple(args))] + ([("exposed", None)] if action == "press(on_lever)" else []),
            "get_burned": [("burned", ())],
            "touch": [("touching", tuple(args))],
        }
        return table.get(name, [])

    def loop(self, last, cand) -> bool:
        if last is None:
            return False
        for n1, a1 in self.affects(last):
            for n2, a2 in self.affects(cand):
                if n1 == n2 and (a1 is None or a2 is None or tuple(a1) == tuple(a2)):
                    return True
        return False

    def goal_reached(self, s: ToasterState) -> bool:
        return "bread_slice" in s.toasted and any(x == "bread_slice" for x, _ in s.removed)

    def dfs(self, s, goal, allowed, last=None, depth=0, limit=64):
        if goal(s):
            return []
        if depth >= limit:
            raise RecursionError("oracle depth bound")
        for a in self.poss(s):
            if _split(a)[0] in allowed and not self.loop(last, a):
                rest = self.dfs(self.apply(s, a), goal, allowed, a, depth + 1, limit)
                if rest is not None:
                    return [a] + rest
        return None

    def bfs(self, start, goal, allowed, max_depth=16):
        if goal(start):
            return 0
        seen, frontier = {start}, deque([(start, 0)])
        while frontier:
            s, d = frontier.popleft()
            if d >= max_depth:
                continue
            for a in self.poss(s):
                if _split(a)[0] not in allowed:
                    continue
                t = self.apply(s, a)
                if goal(t):
                    return d + 1
                if t not in seen:
                    seen.add(t)
                    frontier.append((t, d + 1))
        return None


def _split(action: str):
    m = re.fullmatch(r"(\w+)(?:\((.*)\))?", action)
    return m.group(1), tuple(m.group(2).split(",")) if m.group(2) else ()
