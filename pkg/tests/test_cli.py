import io

import pytest

from instructplan.cli import RunConfig, main, run
from instructplan.domain import builtin_domain
from instructplan.domainfile import dump_domain
from instructplan.spl import parse_spl

from oracles import golden, golden_section, golden_sentences, squash


def call(**kw):
    out, err = io.StringIO(), io.StringIO()
    code = run(RunConfig(**kw), out, err)
    return code, out.getvalue(), err.getvalue()


def test_text_stage():
    code, out, _ = call(domain="toaster")
    assert code == 0 and out.splitlines() == golden_sentences("toaster")


@pytest.mark.parametrize("name", ["toaster", "breadmaker", "combined"])
def test_trace_matches_golden(name):
    code, out, _ = call(domain=name, stage="trace")
    assert code == 0
    assert squash(out) == squash(golden(f"{name}.trace"))


def test_combined_patterns_line():
    _, out, _ = call(domain="combined", stage="trace")
    assert "PATTERNS: [(9,heating_period),(17,heating_period)]" in out


def test_spl_out_file(tmp_path):
    target = tmp_path / "toast.spl"
    code, out, _ = call(domain="toaster", stage="spl", spl_out=str(target))
    assert code == 0 and out == ""
    assert target.read_text() == golden("toaster.spl")


def test_stages_compose(tmp_path):
    spl = tmp_path / "plan.spl"
    code, out, _ = call(domain="breadmaker", stage="text", spl_out=str(spl))
    assert code == 0
    from instructplan.pipeline import run_pipeline

    r = run_pipeline(builtin_domain("breadmaker"))
    assert parse_spl(spl.read_text()) == r.nodes
    assert out.splitlines() == r.sentences


@pytest.mark.parametrize("stage", ["plan", "points", "merged", "interpret"])
def test_intermediate_stages(stage):
    code, out, _ = call(domain="toaster", stage=stage)
    assert code == 0 and out
    if stage == "points":
        assert squash(out) == "POINTS:" + golden_section("toaster", "POINTS:")


def test_domain_file(tmp_path):
    f = tmp_path / "t.dom"
    f.write_text(dump_domain(builtin_domain("toaster")))
    code, out, _ = call(domain_file=str(f))
    assert code == 0 and out.splitlines() == golden_sentences("toaster")


def test_exit_codes(tmp_path):
    assert call()[0] == 2
    assert call(domain="kettle")[0] == 2
    assert call(domain_file=str(tmp_path / "missing.dom"))[0] == 3
    bad = tmp_path / "bad.dom"
    bad.write_text("(domain x")
    assert call(domain_file=str(bad))[0] == 2
    code, _, err = call(domain="toaster", max_depth=4)
    assert code == 1 and "planning failed" in err
    assert call(domain="toaster", out=str(tmp_path / "no" / "dir.txt"))[0] == 3


def test_main_argv(tmp_path, capsys):
    assert main(["--domain", "toaster", "--stage", "plan"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "insert(bread_slice,bread_slot)"
    out = tmp_path / "o.txt"
    assert main(["--domain", "combined", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 20
