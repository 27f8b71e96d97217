"""Ground and pattern terms, atoms, situations and one-way matching.

Symbols are plain ``str``, integers are ``int``, and pattern variables are
:class:`Var`.  Fluents and actions share one representation, :class:`Atom`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

__all__ = [
    "Var",
    "Param",
    "Term",
    "Atom",
    "atom",
    "Situation",
    "S0",
    "Binding",
    "match",
    "unify",
    "substitute",
    "resolve",
    "is_ground",
    "term_vars",
    "format_term",
]


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return "?" + self.name


@dataclass(frozen=True)
class Param:
    """Named domain parameter, looked up in the domain at evaluation time."""

    name: str

    def __str__(self) -> str:
        return f"(param {self.name})"


Term = Union[str, int, Var, Param]
Binding = dict


@dataclass(frozen=True)
class Atom:
    """A fluent or action: a name applied to an ordered tuple of terms."""

    name: str
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self) -> str:
        return format_term(self)

    def __repr__(self) -> str:
        return f"Atom({format_term(self)})"


def atom(name: str, *args: Term) -> Atom:
    return Atom(name, args)


def format_term(t) -> str:
    """Render a term the way a Prolog ``write/1`` would."""
    if isinstance(t, Atom):
        if not t.args:
            return t.name
        return f"{t.name}({','.join(format_term(a) for a in t.args)})"
    return str(t)


def is_ground(t) -> bool:
    if isinstance(t, Atom):
        return all(is_ground(a) for a in t.args)
    return not isinstance(t, Var)


def term_vars(t) -> list[str]:
    """Variable names in ``t``, first-occurrence order, without repeats."""
    out: list[str] = []

    def walk(x):
        if isinstance(x, Atom):
            for a in x.args:
                walk(a)
        elif isinstance(x, Var) and x.name not in out:
            out.append(x.name)

    walk(t)
    return out


def resolve(t, binding: Binding):
    """Dereference a single term under ``binding`` (no recursion into atoms)."""
    if isinstance(t, Var):
        return binding.get(t.name, t)
    return t


def substitute(t, binding: Binding):
    if isinstance(t, Atom):
        if not t.args:
            return t
        return Atom(t.name, tuple(substitute(a, binding) for a in t.args))
    if isinstance(t, Var):
        return binding.get(t.name, t)
    return t


def match(pattern, ground, binding: Optional[Binding] = None) -> Optional[Binding]:
    """One-way match of ``pattern`` against a ground value.

    Returns an extended copy of ``binding`` or ``None`` on name/arity mismatch
    or a conflicting binding.  The input binding is never mutated.
    """
    out = dict(binding) if binding else {}
    if _match_into(pattern, ground, out):
        return out
    return None


def _match_into(p, g, b: dict) -> bool:
    if isinstance(p, Var):
        bound = b.get(p.name)
        if bound is None:
            b[p.name] = g
            return True
        return bound == g
    if isinstance(p, Atom):
        if not isinstance(g, Atom) or p.name != g.name or len(p.args) != len(g.args):
            return False
        return all(_match_into(pa, ga, b) for pa, ga in zip(p.args, g.args))
    return p == g and type(p) is type(g)


def unify(a, b) -> bool:
    """Whether two patterns with disjoint variable namespaces unify.

    Only used by the loop guard, where both sides are affected-fluent
    patterns instantiated from different actions.
    """
    subst: dict = {}

    def walk(t):
        while isinstance(t, tuple) and t[0] == "var" and t in subst:
            t = subst[t]
        return t

    def tag(t, side):
        if isinstance(t, Var):
            return ("var", side, t.name)
        if isinstance(t, Atom):
            return Atom(t.name, tuple(tag(x, side) for x in t.args))
        return t

    def uni(x, y) -> bool:
        x, y = walk(x), walk(y)
        if x == y and type(x) is type(y):
            return True
        if isinstance(x, tuple):
            subst[x] = y
            return True
        if isinstance(y, tuple):
            subst[y] = x
            return True
        if isinstance(x, Atom) and isinstance(y, Atom):
            return (
                x.name == y.name
                and len(x.args) == len(y.args)
                and all(uni(p, q) for p, q in zip(x.args, y.args))
            )
        return False

    return uni(tag(a, 0), tag(b, 1))


class Situation:
    """An action history rooted at the initial situation.

    Stored flat; ``do`` appends.  Hash is precomputed because situations are
    the main cache key of the evaluator.
    """

    __slots__ = ("actions", "_hash", "_parent")

    def __init__(self, actions: Iterable[Atom] = ()):
        self.actions: tuple = tuple(actions)
        self._hash = hash(self.actions)
        self._parent = None

    def do(self, action: Atom) -> "Situation":
        s = Situation(self.actions + (action,))
        s._parent = self
        return s

    @property
    def is_initial(self) -> bool:
        return not self.actions

    @property
    def last(self) -> Optional[Atom]:
        return self.actions[-1] if self.actions else None

    @property
    def parent(self) -> "Situation":
        if self._parent is None:
            if not self.actions:
                raise ValueError("the initial situation has no predecessor")
            self._parent = Situation(self.actions[:-1])
        return self._parent

    def __len__(self) -> int:
        return len(self.actions)

    def __eq__(self, other) -> bool:
        return isinstance(other, Situation) and self.actions == other.actions

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Situation({[format_term(a) for a in self.actions]})"

    def nested(self) -> str:
        """Nested ``do(a_n, ... do(a_1, s0))`` rendering."""
        out = "s0"
        for a in self.actions:
            out = f"do({format_term(a)},{out})"
        return out


S0 = Situation()
