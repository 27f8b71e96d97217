"""Situation-calculus planning and instruction generation with injury warnings."""

from .domain import DomainModel, builtin_domain, validate_domain
from .domainfile import dump_domain, load_domain
from .interpret import InterpretedPlan, make_interpretations
from .pipeline import run_pipeline
from .planner import bfs_oracle, index_actions, loop_guard, plan_injury, plan_normal, satisfied
from .realize import realize, realize_plan
from .sitcalc import holds, poss
from .spl import make_spl, parse_spl, write_spl
from .terms import S0, Atom, Situation, Var, atom, match
from .weaver import injury_points, merge_injuries

__version__ = "0.1.0"

__all__ = [
    "Atom", "Var", "Situation", "S0", "atom", "match",
    "holds", "poss",
    "DomainModel", "builtin_domain", "validate_domain", "load_domain", "dump_domain",
    "plan_normal", "plan_injury", "satisfied", "loop_guard", "index_actions", "bfs_oracle",
    "injury_points", "merge_injuries",
    "InterpretedPlan", "make_interpretations",
    "make_spl", "write_spl", "parse_spl",
    "realize", "realize_plan",
    "run_pipeline",
]
