#!/usr/bin/env python3
"""Run every built-in domain and compare against the vendored goldens.

Usage: python3 scripts/run_domains.py [--write DIR]
"""

import argparse
import re
import sys
import time
from pathlib import Path

from instructplan.domain import BUILTIN_DOMAINS, builtin_domain
from instructplan.pipeline import format_trace, run_pipeline

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def squash(s: str) -> str:
    return re.sub(r"\s+", "", s)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--write", type=Path, help="also write trace/spl/text files here")
    args = ap.parse_args()
    bad = 0
    for name in BUILTIN_DOMAINS:
        t0 = time.perf_counter()
        r = run_pipeline(builtin_domain(name))
        dt = time.perf_counter() - t0
        trace = format_trace(r)
        checks = {"trace": squash(trace) == squash((GOLDEN / f"{name}.trace").read_text())}
        spl = GOLDEN / f"{name}.spl"
        if spl.exists():
            checks["spl"] = r.spl_text == spl.read_text()
        want = (GOLDEN / f"{name}.sentences").read_text().replace("``", '"').replace("''", '"').splitlines()
        diff = sum(a != b for a, b in zip(r.sentences, want)) + abs(len(r.sentences) - len(want))
        status = " ".join(f"{k}={'ok' if v else 'DIFF'}" for k, v in checks.items())
        print(f"{name:<11} {len(r.plan):>3} actions  {len(r.sentences):>3} sentences  {status}  sentence diffs={diff}  {dt:.2f}s")
        bad += not all(checks.values())
        if args.write:
            args.write.mkdir(parents=True, exist_ok=True)
            (args.write / f"{name}.trace").write_text(trace)
            (args.write / f"{name}.spl").write_text(r.spl_text)
            (args.write / f"{name}.txt").write_text("".join(s + "\n" for s in r.sentences))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
