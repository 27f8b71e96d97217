import pytest

from instructplan.domain import builtin_domain
from instructplan.planner import Entry, bfs_oracle, index_actions, plan_normal
from instructplan.sitcalc import holds
from instructplan.terms import S0, atom
from instructplan.weaver import IndexMismatch, InjuryPoint, injury_points, merge_injuries

from oracles import golden_section, parse_points

BURN = (atom("touch", "bread_slot"), atom("get_burned"))


def _indexed(d):
    return index_actions(plan_normal(d))


def test_toaster_points(toaster):
    pts = injury_points(toaster, _indexed(toaster))
    assert [p.index for p in pts] == list(range(3, 11))
    assert all(p.suffix == BURN for p in pts)


@pytest.mark.parametrize("name", ["toaster", "breadmaker", "combined"])
def test_points_match_golden(name):
    d = builtin_domain(name)
    pts = injury_points(d, _indexed(d))
    want = parse_points(golden_section(name, "POINTS:"))
    assert [(p.index, ",".join(map(str, p.suffix))) for p in pts] == want


def test_breadmaker_point_objects(breadmaker):
    pts = injury_points(breadmaker, _indexed(breadmaker))
    by = {p.index: p.suffix[0].args[0] for p in pts}
    assert all(by[i] == "main_body" for i in range(10, 15))
    assert all(by[i] == "steam_vent" for i in range(15, 23))


@pytest.mark.parametrize("name", ["toaster", "breadmaker"])
def test_soundness_and_completeness(name):
    d = builtin_domain(name)
    plan = _indexed(d)
    pts = {p.index: p for p in injury_points(d, plan)}
    s = S0
    for e in plan:
        s = s.do(e.action)
        if e.index in pts:
            t = s
            for a in pts[e.index].suffix:
                t = t.do(a)
            assert holds(d, atom("burned"), t)
        else:
            assert bfs_oracle(d, [atom("burned")], start=s, max_depth=4, actions="injury") is None


def test_no_injury_actions_no_points():
    from instructplan.domainfile import load_domain

    from test_domain import TINY

    d = load_domain(TINY)
    assert injury_points(d, index_actions(plan_normal(d))) == []


def test_merge(toaster):
    plan = _indexed(toaster)
    merged = merge_injuries(plan, injury_points(toaster, plan))
    assert merge_injuries(plan, []) == plan
    for e in merged:
        assert len(e.actions) == (3 if 3 <= e.index <= 10 else 1)
    assert [(e.index, e.action) for e in merged] == [(e.index, e.action) for e in plan]


def test_merge_index_mismatch(toaster):
    plan = _indexed(toaster)
    with pytest.raises(IndexMismatch):
        merge_injuries(plan, [InjuryPoint(99, BURN)])


def test_combined_merge(combined):
    plan = _indexed(combined)
    merged = merge_injuries(plan, injury_points(combined, plan))
    suffixed = [e.index for e in merged if len(e.actions) > 1]
    assert suffixed == list(range(10, 18)) + list(range(26, 33))
