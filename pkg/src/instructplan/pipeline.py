"""End-to-end pipeline and the run-transcript trace format."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .domain import DomainModel
from .interpret import InterpretedPlan, make_interpretations
from .planner import DEFAULT_MAX_DEPTH, Entry, Plan, index_actions, plan_normal
from .realize import realize_plan
from .spl import SplNode, make_spl, write_spl
from .weaver import InjuryPoint, injury_points, merge_injuries

__all__ = ["STAGES", "PipelineResult", "run_pipeline", "format_trace", "format_entries"]

STAGES = ("plan", "points", "merged", "interpret", "spl", "text", "trace")


@dataclass
class PipelineResult:
    domain: DomainModel
    plan: Optional[Plan] = None
    indexed: list = field(default_factory=list)
    points: list = field(default_factory=list)
    merged: list = field(default_factory=list)
    interpreted: Optional[InterpretedPlan] = None
    nodes: list = field(default_factory=list)
    spl_text: Optional[str] = None
    sentences: list = field(default_factory=list)
    log: list = field(default_factory=list)  # transcript lines, in order


def format_entries(items) -> str:
    return "[" + ",".join(str(x) for x in items) + "]"


def run_pipeline(domain: DomainModel, until: str = "text", max_depth: int = DEFAULT_MAX_DEPTH) -> PipelineResult:
    """Run every stage up to and including ``until`` (``trace`` runs them all)."""
    if until not in STAGES:
        raise ValueError(f"unknown stage {until}")
    stop = STAGES.index(until)
    r = PipelineResult(domain)
    r.plan = plan_normal(domain, max_depth=max_depth)
    r.log.append("GOAL STATE: " + r.plan.situation.nested())
    r.indexed = index_actions(r.plan)
    if stop < STAGES.index("points"):
        return r
    r.log.append("Inserting injuries...")
    seen: list[str] = []
    r.points = injury_points(domain, r.indexed, max_depth=max_depth, progress=lambda i: seen.append(f"[{i}]"))
    r.log.append("INDEX: " + " ".join(seen))
    r.log.append("POINTS: " + format_entries(r.points))
    r.merged = merge_injuries(r.indexed, r.points)
    r.log.append("WITH INJURIES: " + format_entries(r.merged))
    if stop < STAGES.index("interpret"):
        return r
    r.log.append("Making interpretations...")
    r.interpreted = make_interpretations(r.merged, domain.collections)
    r.log.append("INTERPRETATIONS: " + r.interpreted.entries_str())
    r.log.append("PATTERNS: " + r.interpreted.patterns_str())
    if stop < STAGES.index("spl"):
        return r
    r.log.append("Making SPL...")
    r.nodes = make_spl(r.interpreted, domain)
    r.spl_text = write_spl(r.nodes)
    r.log.append("Done.")
    if stop < STAGES.index("text"):
        return r
    r.sentences = realize_plan(r.nodes, domain.lexicon)
    return r


def format_trace(r: PipelineResult) -> str:
    return "\n".join(r.log) + "\n"
