"""Command-line driver: ``exholo {build|classify|verify|export-cross}``.

Exit codes: 0 when everything passes, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from . import holo, quadric, symdec
from .report import Certificate, Check, VerificationReport, jsonable, toolchain

SUITE_NAMES = ("thm-1-2", "lemma-1-3", "rem-1-4", "cor-1-5", "cor-1-6", "thm-1-7", "prop-2-1", "thm-2-2")


def _suite_thm12(opts: dict) -> list[Callable[[], Certificate]]:
    out = [lambda: symdec.classification_certificate(opts.get("max_p_dim", 32), opts.get("max_k", 4),
                                                     opts.get("max_n", 8))]
    out += [(lambda n=n: symdec.model_certificate(n)) for n in symdec.MODEL_INDICES]
    return out


def _suite_cor16(opts: dict) -> list[Callable[[], Certificate]]:
    out = [holo.holonomy_rep_checks, holo.g2_checks, holo.complement_checks, holo.cross_checks]
    if opts.get("explore"):
        def explore():
            c = Certificate("diagonal candidate (exploratory)")
            c.data["diagonal candidate"] = holo.diagonal_candidate()
            c.require("computed", True)
            return c
        out.append(explore)
    return out


SUITES: dict[str, Callable[[dict], list[Callable[[], Certificate]]]] = {
    "thm-1-2": _suite_thm12,
    "lemma-1-3": lambda o: [holo.triality_checks],
    "rem-1-4": lambda o: [holo.rem14_check],
    "cor-1-5": lambda o: [holo.cor15_chain],
    "cor-1-6": _suite_cor16,
    "thm-1-7": lambda o: [holo.thm17_check],
    "prop-2-1": lambda o: [lambda c=c: quadric.prop21_check(c) for c in ("i", "ii", "iii")],
    "thm-2-2": lambda o: [quadric.thm22_check],
}


def _run_one(name: str, opts: dict) -> tuple[list[Check], dict]:
    checks: list[Check] = []
    data: dict = {}
    for job in SUITES[name](opts):
        cert = Certificate(name)
        try:
            cert = job()
        except Exception as exc:  # reported, never swallowed silently
            cert.error(getattr(job, "__name__", "certificate"), exc)
        for c in cert.checks:
            checks.append(Check(f"{name}: {cert.check}: {c.name}", c.status, c.expected, c.actual, c.details))
        for k, v in cert.data.items():
            data[f"{name}: {cert.check}: {k}"] = jsonable(v)
    return checks, data


def run_suite(name: str, jobs: int = 1, **opts) -> VerificationReport:
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    names = list(SUITE_NAMES) if name == "all" else [name]
    start = time.perf_counter()
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(names))) as pool:
            results = list(pool.map(_run_one, names, [opts] * len(names)))
    else:
        results = [_run_one(n, opts) for n in names]
    checks: list[Check] = []
    data: dict = {}
    for c, d in results:
        checks.extend(c)
        data.update(d)
    elapsed = int((time.perf_counter() - start) * 1000)
    return VerificationReport(name, checks, toolchain(), elapsed, data)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


def cmd_build(args) -> int:
    try:
        mi = symdec.MultiIndex.parse(args.multi_index)
    except ValueError as exc:
        print(f"exholo build: invalid multi-index {args.multi_index!r}: {exc} "
              "(a simple decomposition requires n_1 + ... + n_k even)", file=sys.stderr)
        return 2
    sol = symdec.bianchi_solution_space(mi)
    if sol.dim == 0:
        print(f"{mi}: no bracket satisfies the Jacobi identity (Bianchi solution space is zero)")
        if args.json:
            _write(args.json, _dumps({"multi_index": list(mi.parts), "solution_dim": 0, "label": None}))
        return 1
    sd = symdec.decomposition(mi, sol.basis[0])
    label = symdec.identify(sd.algebra)
    out = {"multi_index": list(mi.parts), "solution_dim": sol.dim, "coefficients": list(sd.coefficients),
           "p_dim": mi.p_dim, "label": label, "algebra": sd.algebra.to_json()}
    if args.json:
        _write(args.json, _dumps(out))
    print(f"{mi}: dim {sd.algebra.dim}, label {label}")
    return 0


def cmd_classify(args) -> int:
    bounds = (args.max_p_dim, args.max_k, args.max_n)
    if min(bounds) < 1:
        print("exholo classify: bounds must be positive", file=sys.stderr)
        return 2
    found = symdec.classify(*bounds, jobs=args.jobs)
    _write(args.json, _dumps([e.to_json() for e in found]))
    if args.json:
        print(" ".join(str(e.multi_index) for e in found))
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, jobs=args.jobs, max_p_dim=args.max_p_dim, max_k=args.max_k,
                       max_n=args.max_n, explore=args.explore_diagonal)
    if args.json:
        _write(args.json, report.dumps())
    if args.md:
        _write(args.md, report.markdown())
    if not args.json and not args.md:
        _write(None, report.dumps())
    else:
        bad = [c for c in report.checks if c.status != "pass"]
        print(f"{report.suite}: {len(report.checks) - len(bad)}/{len(report.checks)} checks passed "
              f"in {report.elapsed_ms} ms")
        for c in bad:
            print(f"  {c.status.upper()}: {c.name}")
    return 0 if report.passed else 1


def cmd_export_cross(args) -> int:
    cert = holo.cross_checks()
    _write(args.json, _dumps(holo.cayley_cross().to_json()))
    return 0 if cert.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exholo", description="Exact certificates for simple symmetric "
                                     "decompositions, g2 and the Cayley cross product.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bounds=False):
        p.add_argument("--json", metavar="PATH", help="write canonical JSON here ('-' for stdout)")
        p.add_argument("--jobs", type=int, default=min(4, os.cpu_count() or 1), metavar="N")
        if bounds:
            p.add_argument("--max-p-dim", type=int, default=32, metavar="D")
            p.add_argument("--max-k", type=int, default=4, metavar="K")
            p.add_argument("--max-n", type=int, default=8, metavar="N")

    p = sub.add_parser("build", help="build the model for a multi-index such as 3.1")
    p.add_argument("multi_index")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("classify", help="search multi-indices for a nonzero Bianchi solution space")
    common(p, bounds=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITE_NAMES + ("all",))
    p.add_argument("--md", metavar="PATH", help="write a markdown report")
    p.add_argument("--explore-diagonal", action="store_true",
                   help="also report whether the diagonal candidate subspace is closed (informational)")
    common(p, bounds=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-cross", help="export the cross product tensor")
    common(p)
    p.set_defaults(func=cmd_export_cross)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("exholo: --jobs must be positive", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
