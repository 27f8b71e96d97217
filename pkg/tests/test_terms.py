from hypothesis import given, strategies as st

from instructplan.terms import S0, Atom, Situation, Var, atom, format_term, is_ground, match, substitute, unify

X, Y = Var("X"), Var("Y")


def test_match_binds_pattern_vars():
    assert match(atom("contains", Y, X), atom("contains", "bread_slot", "bread_slice"), {}) == {
        "Y": "bread_slot",
        "X": "bread_slice",
    }


def test_match_identity():
    assert match(atom("press", "on_lever"), atom("press", "on_lever"), {}) == {}


def test_match_conflict_fails():
    assert match(atom("insert", X, X), atom("insert", "a", "b"), {}) is None


def test_match_name_or_arity_mismatch_fails():
    assert match(atom("press", X), atom("pop_up"), {}) is None
    assert match(atom("press", X), atom("touch", "a"), {}) is None


def test_match_extends_input_binding():
    assert match(atom("p", X, Y), atom("p", "a", "b"), {"X": "a"}) == {"X": "a", "Y": "b"}
    assert match(atom("p", X), atom("p", "b"), {"X": "a"}) is None


def test_unify_separate_namespaces():
    assert unify(atom("contains", "bread_slot", X), atom("contains", Y, "bread_slice"))
    assert unify(atom("p", X, X), atom("p", X, "a"))
    assert not unify(atom("p", "a"), atom("p", "b"))
    assert not unify(atom("p", X), atom("q", X))


def test_situation_history():
    a, b = atom("a"), atom("b")
    s = S0.do(a).do(b)
    assert len(s) == 2 and s.last == b and s.parent == S0.do(a)
    assert s.nested() == "do(b,do(a,s0))"
    assert S0.is_initial and S0.last is None
    assert Situation((a, b)) == s and hash(Situation((a, b))) == hash(s)


def test_format_and_ground():
    assert format_term(atom("temperature", "bread_slot", 70)) == "temperature(bread_slot,70)"
    assert format_term(atom("pop_up")) == "pop_up"
    assert is_ground(atom("p", "a")) and not is_ground(atom("p", X))


names = st.sampled_from(["a", "b", "c"])


@given(st.lists(names, min_size=1, max_size=4))
def test_match_substitute_roundtrip(args):
    ground = Atom("f", tuple(args))
    pattern = Atom("f", tuple(Var(f"V{i}") for i in range(len(args))))
    b = match(pattern, ground, {})
    assert b is not None and substitute(pattern, b) == ground
