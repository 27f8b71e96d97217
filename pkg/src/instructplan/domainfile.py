"""Reader and writer for the s-expression domain-file format.

One top-level form per declaration; declaration order is semantic and is
preserved in both directions.  Forms::

    (domain NAME)
    (static NAME ARG...)
    (init (FLUENT ARG...))
    (precond (ACTION ?X...) COND [(guard COND)])
    (successor (FLUENT ?X...) (when COND)... [(persist [unless COND...])] (derive COND)...)
    (classify reader|device|silent|normal|injury NAME...)
    (affects (ACTION ...) (FLUENT ...))
    (role ACTION SLOT (arg K)|hearer|(const SYM)|(query (FLUENT ... ?V ...)))
    (polarity ACTION negative)
    (collection ACTION LABEL)
    (guard touch-temp INT)          ; any named integer parameter
    (lexeme SYM "surface")
    (goal (FLUENT ...)...)

Conditions: ``(and C...) (or C...) (not C) (holds F) (holds-now F)
(holds-base F) (not-holds F) (not-holds-now F) (static NAME ARG...)
(cmp OP A B) (eq A B) (action P) (not-action P)``.  ``cmp`` operands may be
``(param NAME)`` and the right operand may be ``(+ TERM INT)``; ``OP`` is
one of ``< <= > >= = != is``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .domain import DomainModel, PrecondRule, Role, SuccessorRule, ValidationError, validate_domain
from .sitcalc import (
    COMPARE_OPS,
    ActionIs,
    ActionIsNot,
    And,
    Compare,
    Condition,
    Eq,
    Holds,
    Not,
    NotHolds,
    Or,
    Static,
)
from .terms import Atom, Param, Var

__all__ = ["ParseError", "load_domain", "dump_domain", "read_sexprs"]


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        super().__init__(f"{line}:{col}: {msg}" if line else msg)


@dataclass(frozen=True)
class Sym:
    text: str


@dataclass(frozen=True)
class Str:
    text: str


class SList(list):
    """A parenthesised list that remembers where it started."""

    line = 0
    col = 0


_TOKEN = re.compile(r'\s+|;[^\n]*|\(|\)|"(?:[^"\\]|\\.)*"|[^\s()";]+')


def read_sexprs(text: str) -> list:
    stack: list[SList] = [SList()]
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        tok = m.group()
        if tok == "(":
            lst = SList()
            lst.line, lst.col = line, col
            stack[-1].append(lst)
            stack.append(lst)
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", line, col)
            stack.pop()
        elif tok[0] == '"':
            stack[-1].append(Str(re.sub(r"\\(.)", r"\1", tok[1:-1])))
        elif tok[0] == ";" or tok.isspace():
            pass
        elif re.fullmatch(r"-?\d+", tok):
            stack[-1].append(int(tok))
        else:
            stack[-1].append(Sym(tok))
        nl = tok.count("\n")
        if nl:
            line += nl
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()
    if len(stack) != 1:
        raise ParseError(f"unclosed '(' opened at {stack[-1].line}:{stack[-1].col}", line, col)
    return stack[0]


# -- reading ----------------------------------------------------------------


def _where(x):
    return getattr(x, "line", 0), getattr(x, "col", 0)


def _sym(x, what="symbol") -> str:
    if not isinstance(x, Sym):
        raise ParseError(f"expected {what}, got {_show(x)}", *_where(x))
    return x.text


def _term(x):
    if isinstance(x, int):
        return x
    if isinstance(x, Sym):
        if x.text.startswith("?"):
            if len(x.text) == 1:
                raise ParseError("empty variable name")
            return Var(x.text[1:])
        return x.text
    if isinstance(x, SList) and len(x) == 2 and x[0] == Sym("param"):
        return Param(_sym(x[1]))
    raise ParseError(f"expected term, got {_show(x)}", *_where(x))


def _atom(x) -> Atom:
    if isinstance(x, Sym):
        return Atom(x.text, ())
    if isinstance(x, SList) and x:
        return Atom(_sym(x[0], "atom name"), tuple(_term(a) for a in x[1:]))
    raise ParseError(f"expected atom, got {_show(x)}", *_where(x))


def _cond(x) -> Condition:
    if not isinstance(x, SList) or not x:
        raise ParseError(f"expected condition, got {_show(x)}", *_where(x))
    head, rest = _sym(x[0], "condition keyword"), x[1:]

    def arity(n):
        if len(rest) != n:
            raise ParseError(f"{head} takes {n} argument(s)", x.line, x.col)

    if head == "and":
        return And(tuple(_cond(c) for c in rest))
    if head == "or":
        return Or(tuple(_cond(c) for c in rest))
    if head == "not":
        arity(1)
        return Not(_cond(rest[0]))
    if head in ("holds", "holds-now", "holds-base"):
        arity(1)
        return Holds(_atom(rest[0]), now=head == "holds-now", base=head == "holds-base")
    if head in ("not-holds", "not-holds-now"):
        arity(1)
        return NotHolds(_atom(rest[0]), now=head == "not-holds-now")
    if head == "static":
        if not rest:
            raise ParseError("static needs a name", x.line, x.col)
        return Static(_sym(rest[0]), tuple(_term(a) for a in rest[1:]))
    if head == "cmp":
        arity(3)
        op = _sym(rest[0])
        if op not in COMPARE_OPS:
            raise ParseError(f"unknown comparison {op}", x.line, x.col)
        rhs, offset = rest[2], 0
        if isinstance(rhs, SList) and rhs and rhs[0] == Sym("+"):
            if len(rhs) != 3 or not isinstance(rhs[2], int):
                raise ParseError("(+ TERM INT) expected", rhs.line, rhs.col)
            rhs, offset = rhs[1], rhs[2]
        return Compare(op, _term(rest[1]), _term(rhs), offset)
    if head == "eq":
        arity(2)
        return Eq(_term(rest[0]), _term(rest[1]))
    if head == "action":
        arity(1)
        return ActionIs(_atom(rest[0]))
    if head == "not-action":
        arity(1)
        return ActionIsNot(_atom(rest[0]))
    raise ParseError(f"unknown condition {head}", x.line, x.col)


def _role(x) -> Role:
    if isinstance(x, Sym) and x.text == "hearer":
        return Role("hearer")
    if isinstance(x, SList) and len(x) == 2:
        kind = _sym(x[0])
        if kind == "arg" and isinstance(x[1], int) and x[1] >= 1:
            return Role("arg", x[1])
        if kind == "const":
            return Role("const", _sym(x[1]))
        if kind == "query":
            return Role("query", _atom(x[1]))
    raise ParseError(f"bad role filler {_show(x)}", *_where(x))


def load_domain(text: str, validate: bool = True) -> DomainModel:
    """Parse a domain file; raise ParseError or ValidationError (errors only)."""
    parts = dict(
        name=None, statics={}, initial=[], preconds=[], successors={}, reader=[], device=[],
        silent=[], normal=[], injury=[], affects=[], roles={}, polarity={}, collections={},
        params={}, lexicon={}, goal=[],
    )
    for form in read_sexprs(text):
        if not isinstance(form, SList) or not form:
            raise ParseError(f"expected a declaration, got {_show(form)}", *_where(form))
        head, rest = _sym(form[0], "declaration keyword"), form[1:]
        at = (form.line, form.col)
        if head == "domain":
            parts["name"] = _sym(rest[0])
        elif head == "static":
            name = _sym(rest[0])
            parts["statics"].setdefault(name, []).append(tuple(_term(a) for a in rest[1:]))
        elif head == "init":
            for f in rest:
                parts["initial"].append(_atom(f))
        elif head == "precond":
            if len(rest) not in (2, 3):
                raise ParseError("precond takes an action, a condition and an optional guard", *at)
            guard = None
            if len(rest) == 3:
                g = rest[2]
                if not (isinstance(g, SList) and len(g) == 2 and g[0] == Sym("guard")):
                    raise ParseError("third precond element must be (guard COND)", *_where(g))
                guard = _cond(g[1])
            parts["preconds"].append(PrecondRule(_atom(rest[0]), _cond(rest[1]), guard))
        elif head == "successor":
            parts_rule = _successor(rest, at)
            if parts_rule.fluent.name in parts["successors"]:
                raise ParseError(f"second successor rule for {parts_rule.fluent.name}", *at)
            parts["successors"][parts_rule.fluent.name] = parts_rule
        elif head == "classify":
            kind = _sym(rest[0])
            if kind not in ("reader", "device", "silent", "normal", "injury"):
                raise ParseError(f"unknown classification {kind}", *at)
            parts[kind].extend(_sym(n) for n in rest[1:])
        elif head == "affects":
            if len(rest) != 2:
                raise ParseError("affects takes an action and a fluent", *at)
            parts["affects"].append((_atom(rest[0]), _atom(rest[1])))
        elif head == "role":
            if len(rest) != 3:
                raise ParseError("role takes an action, a slot and a filler", *at)
            act, slot = _sym(rest[0]), _sym(rest[1])
            parts["roles"].setdefault(act, []).append((slot, _role(rest[2])))
        elif head == "polarity":
            parts["polarity"][_sym(rest[0])] = _sym(rest[1])
        elif head == "collection":
            parts["collections"][_sym(rest[0])] = _sym(rest[1])
        elif head == "guard":
            if len(rest) != 2 or not isinstance(rest[1], int):
                raise ParseError("guard takes a name and an integer", *at)
            parts["params"][_sym(rest[0])] = rest[1]
        elif head == "lexeme":
            if len(rest) != 2 or not isinstance(rest[1], Str):
                raise ParseError('lexeme takes a symbol and a "string"', *at)
            parts["lexicon"][_sym(rest[0])] = rest[1].text
        elif head == "goal":
            parts["goal"].extend(_atom(g) for g in rest)
        else:
            raise ParseError(f"unknown declaration {head}", *at)
    if parts["name"] is None:
        raise ParseError("missing (domain NAME) declaration")
    model = DomainModel(
        name=parts["name"],
        statics={k: tuple(v) for k, v in parts["statics"].items()},
        initial=tuple(parts["initial"]),
        preconds=tuple(parts["preconds"]),
        successors=parts["successors"],
        reader=tuple(parts["reader"]),
        device=tuple(parts["device"]),
        silent=tuple(parts["silent"]),
        normal=tuple(parts["normal"]),
        injury=tuple(parts["injury"]),
        affects=tuple(parts["affects"]),
        roles={k: tuple(v) for k, v in parts["roles"].items()},
        polarity=parts["polarity"],
        collections=parts["collections"],
        params=parts["params"],
        lexicon=parts["lexicon"],
        goal=tuple(parts["goal"]),
    )
    if validate:
        errors = [d for d in validate_domain(model) if d.severity == "error"]
        if errors:
            raise ValidationError(errors)
    return model


def _successor(rest, at) -> SuccessorRule:
    if not rest:
        raise ParseError("successor needs a fluent pattern", *at)
    fluent = _atom(rest[0])
    effects, unless, derived = [], [], []
    persist = False
    for part in rest[1:]:
        if not isinstance(part, SList) or not part:
            raise ParseError(f"bad successor clause {_show(part)}", *_where(part))
        kw = _sym(part[0])
        if kw == "when":
            if len(part) != 2:
                raise ParseError("(when COND) takes one condition", part.line, part.col)
            effects.append(_cond(part[1]))
        elif kw == "persist":
            persist = True
            items = part[1:]
            if items:
                if items[0] != Sym("unless"):
                    raise ParseError("expected (persist unless COND...)", part.line, part.col)
                unless.extend(_cond(c) for c in items[1:])
        elif kw == "derive":
            if len(part) != 2:
                raise ParseError("(derive COND) takes one condition", part.line, part.col)
            derived.append(_cond(part[1]))
        else:
            raise ParseError(f"unknown successor clause {kw}", part.line, part.col)
    return SuccessorRule(fluent, tuple(effects), persist, tuple(unless), tuple(derived))


def _show(x) -> str:
    if isinstance(x, Sym):
        return x.text
    if isinstance(x, Str):
        return f'"{x.text}"'
    if isinstance(x, SList):
        return "(" + " ".join(_show(i) for i in x) + ")"
    return repr(x)


# -- writing ----------------------------------------------------------------


def _wterm(t) -> str:
    if isinstance(t, Var):
        return f"?{t.name}"
    if isinstance(t, Param):
        return f"(param {t.name})"
    return str(t)


def _watom(a: Atom) -> str:
    return "(" + " ".join([a.name] + [_wterm(x) for x in a.args]) + ")"


def _wcond(c: Condition) -> str:
    if isinstance(c, And):
        return "(and " + " ".join(_wcond(i) for i in c.items) + ")" if c.items else "(and)"
    if isinstance(c, Or):
        return "(or " + " ".join(_wcond(i) for i in c.items) + ")" if c.items else "(or)"
    if isinstance(c, Not):
        return f"(not {_wcond(c.item)})"
    if isinstance(c, Holds):
        kw = "holds-now" if c.now else "holds-base" if c.base else "holds"
        return f"({kw} {_watom(c.fluent)})"
    if isinstance(c, NotHolds):
        kw = "not-holds-now" if c.now else "not-holds"
        return f"({kw} {_watom(c.fluent)})"
    if isinstance(c, Static):
        return "(" + " ".join(["static", c.name] + [_wterm(a) for a in c.args]) + ")"
    if isinstance(c, Compare):
        rhs = _wterm(c.rhs) if not c.offset else f"(+ {_wterm(c.rhs)} {c.offset})"
        return f"(cmp {c.op} {_wterm(c.lhs)} {rhs})"
    if isinstance(c, Eq):
        return f"(eq {_wterm(c.lhs)} {_wterm(c.rhs)})"
    if isinstance(c, ActionIs):
        return f"(action {_watom(c.pattern)})"
    if isinstance(c, ActionIsNot):
        return f"(not-action {_watom(c.pattern)})"
    raise TypeError(f"cannot serialize {c!r}")


def _wrole(r: Role) -> str:
    if r.kind == "hearer":
        return "hearer"
    if r.kind == "arg":
        return f"(arg {r.value})"
    if r.kind == "const":
        return f"(const {r.value})"
    return f"(query {_watom(r.value)})"


def _wstr(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dump_domain(m: DomainModel) -> str:
    """Canonical text for ``m``; ``load_domain(dump_domain(m)) == m``."""
    out = [f"(domain {m.name})", ""]
    for name, facts in m.statics.items():
        for f in facts:
            out.append("(" + " ".join(["static", name] + [_wterm(a) for a in f]) + ")")
    out.append("")
    out += [f"(init {_watom(f)})" for f in m.initial]
    out.append("")
    for r in m.preconds:
        line = f"(precond {_watom(r.action)}\n  {_wcond(r.condition)}"
        if r.guard is not None:
            line += f"\n  (guard {_wcond(r.guard)})"
        out.append(line + ")")
    out.append("")
    for rule in m.successors.values():
        parts = [f"(successor {_watom(rule.fluent)}"]
        parts += [f"  (when {_wcond(c)})" for c in rule.effects]
        if rule.persist:
            if rule.unless:
                parts.append("  (persist unless " + " ".join(_wcond(c) for c in rule.unless) + ")")
            else:
                parts.append("  (persist)")
        parts += [f"  (derive {_wcond(c)})" for c in rule.derived]
        out.append("\n".join(parts) + ")")
    out.append("")
    for kind in ("reader", "device", "silent", "normal", "injury"):
        names = getattr(m, kind)
        if names:
            out.append(f"(classify {kind} " + " ".join(names) + ")")
    out += [f"(affects {_watom(a)} {_watom(f)})" for a, f in m.affects]
    for act, slots in m.roles.items():
        out += [f"(role {act} {slot} {_wrole(r)})" for slot, r in slots]
    out += [f"(polarity {a} {p})" for a, p in m.polarity.items()]
    out += [f"(collection {a} {lab})" for a, lab in m.collections.items()]
    out += [f"(guard {k} {v})" for k, v in m.params.items()]
    out += [f"(lexeme {k} {_wstr(v)})" for k, v in m.lexicon.items()]
    if m.goal:
        out.append("(goal " + " ".join(_watom(g) for g in m.goal) + ")")
    return "\n".join(out) + "\n"
