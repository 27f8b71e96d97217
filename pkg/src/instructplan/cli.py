"""Command-line front end.

Exit codes: 0 success, 1 planning failure, 2 domain parse/validation
failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .domain import BUILTIN_DOMAINS, UnknownDomain, ValidationError, builtin_domain
from .domainfile import ParseError, load_domain
from .pipeline import STAGES, format_entries, format_trace, run_pipeline
from .planner import DEFAULT_MAX_DEPTH, DepthExceeded, NoPlan
from .terms import format_term

EXIT_OK, EXIT_PLAN, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3


@dataclass
class RunConfig:
    domain: Optional[str] = None
    domain_file: Optional[str] = None
    stage: str = "text"
    out: Optional[str] = None
    spl_out: Optional[str] = None
    max_depth: int = DEFAULT_MAX_DEPTH


def _stage_text(stage: str, r) -> str:
    if stage == "plan":
        return "".join(format_term(a) + "\n" for a in r.plan.actions)
    if stage == "points":
        return "POINTS: " + format_entries(r.points) + "\n"
    if stage == "merged":
        return "WITH INJURIES: " + format_entries(r.merged) + "\n"
    if stage == "interpret":
        return f"INTERPRETATIONS: {r.interpreted.entries_str()}\nPATTERNS: {r.interpreted.patterns_str()}\n"
    if stage == "spl":
        return r.spl_text
    if stage == "text":
        return "".join(s + "\n" for s in r.sentences)
    return format_trace(r)


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if (cfg.domain is None) == (cfg.domain_file is None):
        print("error: give exactly one of --domain or --domain-file", file=stderr)
        return EXIT_DOMAIN
    try:
        if cfg.domain_file is not None:
            model = load_domain(Path(cfg.domain_file).read_text("utf-8"))
        else:
            model = builtin_domain(cfg.domain)
    except OSError as e:
        print(f"error: cannot read domain file: {e}", file=stderr)
        return EXIT_IO
    except (ParseError, ValidationError, UnknownDomain) as e:
        print(f"error: invalid domain: {e}", file=stderr)
        return EXIT_DOMAIN
    until = "text" if cfg.stage == "trace" else cfg.stage
    try:
        r = run_pipeline(model, until=until, max_depth=cfg.max_depth)
    except (NoPlan, DepthExceeded) as e:
        print(f"error: planning failed: {e}", file=stderr)
        return EXIT_PLAN
    text = _stage_text(cfg.stage, r)
    try:
        if cfg.spl_out is not None:
            if r.spl_text is None:
                print("error: --spl-out needs a stage at or after spl", file=stderr)
                return EXIT_DOMAIN
            Path(cfg.spl_out).write_text(r.spl_text, "utf-8")
        if cfg.out is not None:
            Path(cfg.out).write_text(text, "utf-8")
        elif not (cfg.stage == "spl" and cfg.spl_out is not None):
            stdout.write(text)
    except OSError as e:
        print(f"error: cannot write output: {e}", file=stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="instructplan", description="Plan device operation and generate instructions with warnings.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--domain", choices=BUILTIN_DOMAINS, help="built-in domain")
    src.add_argument("--domain-file", metavar="PATH", help="domain file to load")
    p.add_argument("--stage", choices=STAGES, default="text", help="stop after this stage (default: text)")
    p.add_argument("--out", metavar="PATH", help="write stage output here instead of stdout")
    p.add_argument("--spl-out", metavar="PATH", help="also write the SPL file here")
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH, help="planner depth bound")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.domain, args.domain_file, args.stage, args.out, args.spl_out, args.max_depth)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
