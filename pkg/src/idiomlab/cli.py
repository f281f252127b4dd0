"""Command line: analyze, catalog, selftest.

Exit codes: 0 clean, 1 VIOLATED audit entries, 2 input errors, 3 resource caps.
Errors are written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

from . import limits
from .catalog import catalog_get, catalog_names, parse_instance, serialize_instance
from .errors import IdiomLabError, ParseError


def resolve_target(target: str) -> dict:
    if os.path.exists(target):
        return parse_instance(target)
    if target.endswith(".json"):
        raise ParseError(f"cannot read {target}: no such file")
    return catalog_get(target)


def _work(job: Tuple[str, str, Optional[int], Optional[str]]):
    """Runs in a worker process; returns (report or None, error dict or None, exit code)."""
    from .report import build_report, export_dot
    from .audit import theorem_audit
    from .catalog import build_instance
    from .theory import ModuleAnalysis

    target, audit, max_size, dot_dir = job
    limits.set_analysis_size(max_size)
    try:
        spec = resolve_target(target)
        if max_size is None and "max_size" in spec.get("options", {}):
            limits.set_analysis_size(spec["options"]["max_size"])
        _, M = build_instance(spec)
        an = ModuleAnalysis(M)
        rep = theorem_audit(an, recurse=(audit == "all"))
        report = build_report(spec, an, rep)
        if dot_dir:
            sub = os.path.join(dot_dir, _safe(report["instance"]))
            os.makedirs(sub, exist_ok=True)
            for fname, text in export_dot(an).items():
                with open(os.path.join(sub, fname), "w", encoding="utf-8") as fh:
                    fh.write(text)
        return report, None, (1 if rep.violations() else 0)
    except IdiomLabError as exc:
        err = exc.to_dict()
        err["target"] = target
        return None, err, exc.code


def _safe(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_+." else "_" for c in name)


def cmd_analyze(args) -> int:
    from .report import dumps

    jobs = [(t, args.audit, args.max_size, args.dot) for t in args.targets]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_work, jobs))
    else:
        results = [_work(j) for j in jobs]
    reports = [r for r, _, _ in results if r is not None]
    code = 0
    for _, err, c in results:
        if err is not None:
            sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        code = max(code, c)
    if reports:
        payload = reports[0] if len(args.targets) == 1 else reports
        text = dumps(payload) if isinstance(payload, dict) else \
            json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    # resource errors dominate violations, input errors dominate both
    errs = [c for _, e, c in results if e is not None]
    if errs:
        return 2 if 2 in errs else max(errs)
    return code


def cmd_catalog(args) -> int:
    if args.action == "list":
        for n in catalog_names(include_quotients=args.quotients):
            print(n)
        return 0
    if not args.name:
        raise ParseError("catalog get needs a name")
    print(serialize_instance(catalog_get(args.name)))
    return 0


def cmd_selftest(args) -> int:
    from . import selftest

    return 0 if selftest.run(jobs=args.jobs) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="idiomlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyse instances (file or catalog name)")
    a.add_argument("targets", nargs="+")
    a.add_argument("--audit", choices=("all", "basic"), default="all")
    a.add_argument("--dot", metavar="DIR")
    a.add_argument("--json", metavar="FILE")
    a.add_argument("--max-size", type=int, default=None)
    a.add_argument("--jobs", type=int, default=1)
    a.set_defaults(fn=cmd_analyze)

    c = sub.add_parser("catalog", help="list or print built-in instances")
    c.add_argument("action", choices=("list", "get"))
    c.add_argument("name", nargs="?")
    c.add_argument("--quotients", action="store_true", help="include quotient entries")
    c.set_defaults(fn=cmd_catalog)

    s = sub.add_parser("selftest", help="run the acceptance criteria")
    s.add_argument("--jobs", type=int, default=8)
    s.set_defaults(fn=cmd_selftest)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except IdiomLabError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
