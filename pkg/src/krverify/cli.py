"""Command-line driver: verify, decompose, norm, selftest."""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
import tempfile

from . import selftest as selftest_mod
from .kleber import UnsupportedError, closed_form_decompose, kleber_decompose
from .qlaurent import Laurent
from .uqcalc import CaseContext, UndecidedVanishingError, VectorExpr, normalize, norm_sq, parse_word
from .verify import CASES, DEFAULT_SMAX, case_for, run_case

ENV_WORKERS = "KRVERIFY_WORKERS"


def _load_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {line!r}")
            key, _, value = line.partition("=")
            out[key.strip().lower()] = value.strip()
    return out


def _selected_cases(args) -> list[str]:
    if args.case:
        for cid in args.case:
            if cid not in CASES:
                raise ValueError(f"unknown case {cid}; known: {sorted(CASES)}")
        return list(args.case)
    if args.family:
        out = []
        for spec in CASES.values():
            if spec.family.lower() != args.family.lower():
                continue
            if args.node is not None and args.node not in (spec.node, spec.table_node):
                continue
            out.append(spec.case_id)
        if not out:
            raise ValueError(f"no case matches family={args.family} node={args.node}")
        return out
    return list(DEFAULT_SMAX)


def _run_one(job) -> dict:
    case_id, s, slack = job
    return run_case(case_id, s, serre_slack=slack)


def cmd_verify(args) -> int:
    cfg = _load_config_file(args.config) if args.config else {}
    workers = args.workers
    if workers is None and "workers" in cfg:
        workers = int(cfg["workers"])
    if workers is None:
        workers = int(os.environ.get(ENV_WORKERS, "1"))
    if workers < 1:
        raise ValueError("worker count must be >= 1")
    smax_override = args.smax if args.smax is not None else (int(cfg["smax"]) if "smax" in cfg else None)
    slack = args.serre_slack if args.serre_slack is not None else int(cfg.get("serre_slack", 4))
    fmt = args.format or cfg.get("format", "json")
    out_path = args.out or cfg.get("out")

    case_ids = _selected_cases(args)
    jobs = []
    for cid in case_ids:
        smax = smax_override if smax_override is not None else DEFAULT_SMAX[cid]
        if smax < 1:
            raise ValueError("smax must be >= 1")
        for s in range(1, smax + 1):
            jobs.append((cid, s, slack))

    if workers == 1:
        reports = [_run_one(job) for job in jobs]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_one, jobs))

    all_pass = all(rep["all_pass"] for rep in reports)
    payload = {"cases": reports, "all_pass": all_pass}
    text = _format_report(payload, fmt)
    if out_path:
        _atomic_write(out_path, text)
    else:
        sys.stdout.write(text)
    return 0 if all_pass else 1


def _format_report(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for rep in payload["cases"]:
        head = f"{rep['case']} (family {rep['family']}, node {rep['node']}"
        if "table_node" in rep:
            head += f", table node {rep['table_node']}"
        head += f", s={rep['s']}): " + ("PASS" if rep["all_pass"] else "FAIL")
        lines.append(head)
        for cond in rep["conditions"]:
            where = f"k={cond['k']}" + (f" k'={cond['kp']}" if cond["kp"] is not None else "")
            node = f" i={cond['i']}" if cond["i"] is not None else ""
            status = "ok" if cond["pass"] else "FAIL"
            lines.append(
                f"  ({cond['kind']}) {where}{node}: {status}  value = {cond['value']}  required in {cond['required']}"
            )
        for row in rep["crosscheck"]:
            if not row["match"]:
                lines.append(f"  crosscheck diff {row['label']}: engine {row['engine']} vs paper {row['paper']}")
        for note in rep["notes"]:
            lines.append(f"  note: {note}")
    lines.append("ALL PASS" if payload["all_pass"] else "FAILURES PRESENT")
    return "\n".join(lines) + "\n"


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".krverify-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_decompose(args) -> int:
    spec = case_for(args.family, args.node) if args.node is not None else None
    family = spec.family if spec else args.family
    node = spec.node if spec else args.node
    if node is None:
        raise ValueError("--node is required")
    if args.oracle == "kleber":
        dec = kleber_decompose(family, node, args.s)
    else:
        dec = closed_form_decompose(family, node, args.s)
    text = json.dumps(dec.as_json(), indent=2, sort_keys=True) + "\n"
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_norm(args) -> int:
    spec = case_for(args.family, args.node)
    ctx = CaseContext(spec.family, spec.node, args.s)
    word = parse_word(args.word)
    v = normalize(ctx, VectorExpr.from_word(word))
    sys.stdout.write(f"normalized: {v.text()}\n")
    try:
        value = norm_sq(ctx, v)
        sys.stdout.write(f"norm^2: {value.text()}\n")
    except UndecidedVanishingError as exc:
        sys.stdout.write(f"norm^2: undecided ({exc})\n")
        return 1
    return 0


def cmd_selftest(_args) -> int:
    ok = selftest_mod.run(sys.stdout)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krverify",
        description="Exact verification of the prepolarization conditions for the supported modules",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run condition checks and emit a report")
    p.add_argument("--family", help="family, e.g. e6_1")
    p.add_argument("--node", type=int, help="node from the summary table")
    p.add_argument("--case", action="append", help="explicit case id (repeatable)")
    p.add_argument("--smax", type=int, help="override maximum s for every selected case")
    p.add_argument("--serre-slack", type=int, dest="serre_slack", help="degree slack for the vanishing search")
    p.add_argument("--workers", type=int, help=f"worker processes (also {ENV_WORKERS})")
    p.add_argument("--out", help="report path (written atomically)")
    p.add_argument("--format", choices=("json", "text"), help="report format (default json)")
    p.add_argument("--config", help="key=value configuration file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="emit a classical decomposition as JSON")
    p.add_argument("--family", required=True)
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--oracle", choices=("closed", "kleber"), default="closed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("norm", help="normalize a word and print its squared norm")
    p.add_argument("--family", required=True)
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--word", required=True, help="e.g. 'E0^2 E2^2' or 'F3'")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("selftest", help="run the arithmetic and root-data invariant suites")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # family strings accept either case
    if getattr(args, "family", None):
        args.family = args.family.upper().replace("-", "_")
        # accept e.g. E6_1 or e6_1
    try:
        return args.func(args)
    except (ValueError, UnsupportedError) as exc:
        parser.exit(2, f"error: {exc}\n")


if __name__ == "__main__":
    raise SystemExit(main())
