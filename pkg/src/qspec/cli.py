"""Command-line front end: ``qspec spectrum | search | verify``.

Exit codes: 0 success (or no mates), 2 usage error, 3 mates found,
4 numeric or verification failure.
"""
from __future__ import annotations

import argparse
import csv
import inspect
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import suites
from .closed_form import matching_spectrum
from .errors import DomainError, NumericError, QSpecError, VerificationError
from .exact import char_poly, exact_multiplicity
from .familyspec import format_family, parse_family
from .graph6 import parse_graph6, read_graph6_file
from .graph_core import ApexFamily, Multigraph, q_matrix, realize
from .numeric import COMPARE_TOL, DEFAULT_TOL, q_spectrum
from .search import SCHEMA, MAX_ENUM_N, enumerate_all, family_scan, find_mates

EXIT_OK, EXIT_USAGE, EXIT_MATES, EXIT_NUMERIC = 0, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    tol: float = COMPARE_TOL
    eigen_tol: float = DEFAULT_TOL
    fmt: str = "text"
    threads: int = 1
    corpus: Optional[str] = None
    seed: int = suites.DEFAULT_SEED
    out: Optional[str] = None

    def __post_init__(self):
        if not self.tol > 0 or not self.eigen_tol > 0:
            raise UsageError("tolerances must be positive")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")


def _config(args) -> RunConfig:
    return RunConfig(tol=args.tol, eigen_tol=args.eigen_tol, fmt=args.format,
                     threads=getattr(args, "threads", 1),
                     corpus=getattr(args, "graph6_file", None),
                     seed=getattr(args, "seed", suites.DEFAULT_SEED), out=args.out)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[dict], columns: Optional[list[str]] = None) -> str:
    buf = io.StringIO()
    if not rows and not columns:
        return ""
    columns = columns or list(rows[0])
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _input_graph(args) -> tuple[str, Multigraph, Optional[ApexFamily]]:
    if args.family is not None:
        fam = parse_family(args.family)
        return format_family(fam) or "K1", realize(fam, multigraph=fam.has_digons), fam
    g6 = args.graph6 if args.graph6 is not None else getattr(args, "target", None)
    if g6 is None:
        raise UsageError("give --family or --graph6")
    return g6, parse_graph6(g6), None


def _multiplicity_table(values, tol: float) -> list[dict]:
    """Group descending eigenvalues into ``(eigenvalue, multiplicity)`` runs."""
    table: list[dict] = []
    for v in values:
        if table and abs(table[-1]["eigenvalue"] - v) <= tol:
            table[-1]["multiplicity"] += 1
        else:
            table.append({"eigenvalue": float(v), "multiplicity": 1})
    return table


def cmd_spectrum(args) -> int:
    cfg = _config(args)
    label, g, fam = _input_graph(args)
    rows = None
    source = "numeric"
    if fam is not None:
        try:
            rows = matching_spectrum(fam).annotated()
            source = "closed-form"
        except DomainError:
            rows = None
    if rows is None:
        vals = q_spectrum(g, cfg.eigen_tol).values
        rows = [(float(v), "numeric") for v in vals]
    values = np.array([v for v, _ in rows])
    trace = int(np.trace(q_matrix(g)))
    trace_err = abs(float(values.sum()) - trace)
    mult = {}
    for lam in args.exact_mult or []:
        mult[str(lam)] = exact_multiplicity(q_matrix(g), lam)

    report = {
        "schema": SCHEMA,
        "input": label,
        "n": g.n,
        "m": g.m,
        "source": source,
        "eigenvalues": [{"value": v, "origin": o} for v, o in rows],
        "table": _multiplicity_table(values, cfg.tol),
        "trace": {"expected": trace, "sum": float(values.sum()), "abs_err": trace_err,
                  "ok": trace_err <= cfg.tol * max(1, g.n)},
        "exact_multiplicity": mult,
    }
    if args.exact_poly:
        report["char_poly"] = char_poly(q_matrix(g)).as_strings()

    if cfg.fmt == "json":
        text = json.dumps(report, indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = _csv(report["table"], ["eigenvalue", "multiplicity"])
    else:
        lines = [f"graph {label}: n={g.n}, m={g.m}, {source} spectrum"]
        lines += [f"  {v: .12f}  {o}" for v, o in rows]
        tr = report["trace"]
        lines.append(f"trace check: sum={tr['sum']:.12g} expected={trace} "
                     f"err={trace_err:.3g} {'ok' if tr['ok'] else 'FAIL'}")
        lines += [f"exact multiplicity of {k}: {v}" for k, v in mult.items()]
        if args.exact_poly:
            lines.append("char poly: " + " ".join(report["char_poly"]))
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return EXIT_OK if report["trace"]["ok"] else EXIT_NUMERIC


def cmd_search(args) -> int:
    cfg = _config(args)
    sources = [args.builtin is not None, args.graph6_file is not None, args.family_scan]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --builtin, --graph6-file, --family-scan")
    if args.family_scan:
        if args.family is None:
            raise UsageError("--family-scan needs --family")
        report = family_scan(parse_family(args.family))
    else:
        label, target, fam = _input_graph(args)
        if not target.is_simple():
            raise UsageError("search targets must be simple graphs")
        if args.builtin is not None:
            if not 1 <= args.builtin <= MAX_ENUM_N:
                raise UsageError(f"--builtin takes 1..{MAX_ENUM_N}; use --graph6-file beyond")
            corpus, name = enumerate_all(args.builtin), f"builtin n={args.builtin}"
        else:
            try:
                with open(args.graph6_file, encoding="utf-8") as fh:
                    lines = list(read_graph6_file(fh))
            except OSError as exc:
                raise UsageError(f"cannot read corpus: {exc}") from exc
            corpus, name = lines, args.graph6_file
        report = find_mates(target, corpus, corpus_name=name, prefilter=not args.no_prefilter,
                            cross_check=args.cross_check, tol=cfg.tol, threads=cfg.threads,
                            target_name=label)

    data = report.to_dict()
    if cfg.fmt == "json":
        text = json.dumps(data, indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = _csv([{"target": data["target"], "mate": m} for m in data["mates"]],
                    ["target", "mate"])
    else:
        lines = [f"target {data['target']} ({data['corpus']})",
                 f"scanned {data['scanned']}, skipped {data['skipped']}, "
                 f"fingerprints {data['fingerprints']}, {data['elapsed_ms']:.0f} ms",
                 f"mates: {len(data['mates'])}"]
        lines += [f"  {m}" for m in data["mates"]]
        if data["prefilter_disagreements"]:
            lines.append(f"pre-filter disagreements: {len(data['prefilter_disagreements'])}")
        if data["note"]:
            lines.append(f"note: {data['note']}")
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    if report.prefilter_disagreements:
        return EXIT_NUMERIC
    return EXIT_MATES if report.mates else EXIT_OK


def _suite_kwargs(fn, args, cfg: RunConfig) -> dict:
    params = inspect.signature(fn).parameters
    kw = {}
    if args.trials is not None:
        if "trials" not in params:
            raise UsageError("suite does not take --trials")
        kw["trials"] = args.trials
    if args.max_n is not None:
        key = "max_l" if "max_l" in params else "max_n"
        if key not in params:
            raise UsageError("suite does not take --max-n")
        kw[key] = args.max_n
    if "seed" in params:
        kw["seed"] = cfg.seed
    if args.tol_set and "tol" in params:
        kw["tol"] = cfg.tol
    return kw


def cmd_verify(args) -> int:
    cfg = _config(args)
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        fn = suites.SUITES[name]
        kw = _suite_kwargs(fn, args, cfg) if args.suite != "all" else (
            {"seed": cfg.seed} if "seed" in inspect.signature(fn).parameters else {})
        results.append(fn(**kw))

    if cfg.fmt == "json":
        text = json.dumps({"schema": SCHEMA, "seed": cfg.seed, "suites": [
            {"suite": r.name, "passed": r.passed, "cases": r.cases, "failures": r.failures,
             "stats": r.stats, "elapsed_s": round(r.elapsed_s, 3), "rows": r.rows}
            for r in results]}, indent=2, default=float) + "\n"
    elif cfg.fmt == "csv":
        rows = [dict(suite=r.name, **row) for r in results for row in r.rows]
        if not rows:
            rows = [{"suite": r.name, "passed": r.passed, "cases": r.cases,
                     "failures": len(r.failures), **r.stats} for r in results]
        cols = list(dict.fromkeys(k for row in rows for k in row))
        text = _csv(rows, cols)
    else:
        lines = []
        for r in results:
            lines.append(r.summary())
            lines += [f"  {f}" for f in r.failures[:20]]
            if len(r.failures) > 20:
                lines.append(f"  ... {len(r.failures) - 20} more")
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC


class _TolAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.tol_set = True


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=COMPARE_TOL, action=_TolAction,
                        help="comparison tolerance (default %(default)g)")
    common.add_argument("--eigen-tol", type=float, default=DEFAULT_TOL,
                        help="eigensolver tolerance (default %(default)g)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("--family", help='apex family, e.g. "C3+C4+K2*2"')
    graph_in.add_argument("--graph6", help="graph in graph6 encoding")

    p = argparse.ArgumentParser(prog="qspec",
                                description="Signless Laplacian spectra and cospectral searches.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common, graph_in], help="print a Q-spectrum")
    sp.add_argument("--exact-mult", type=int, action="append", metavar="LAMBDA",
                    help="exact multiplicity of an integer eigenvalue (repeatable)")
    sp.add_argument("--exact-poly", action="store_true", help="also print the characteristic polynomial")
    sp.set_defaults(func=cmd_spectrum)

    se = sub.add_parser("search", parents=[common, graph_in], help="look for cospectral mates")
    se.add_argument("--target", help="target graph6 (alias of --graph6)")
    se.add_argument("--builtin", type=int, metavar="N", help="all graphs on N <= 7 vertices")
    se.add_argument("--graph6-file", help="corpus file, one graph6 per line")
    se.add_argument("--family-scan", action="store_true",
                    help="scan the apex-family candidates of the target family")
    se.add_argument("--threads", type=int, default=1)
    se.add_argument("--no-prefilter", action="store_true",
                    help="compute the exact polynomial for every corpus graph")
    se.add_argument("--cross-check", action="store_true",
                    help="run both tests on every graph and report disagreements")
    se.set_defaults(func=cmd_search)

    ve = sub.add_parser("verify", parents=[common], help="run a seeded property suite")
    ve.add_argument("suite", choices=sorted(suites.SUITES) + ["all"])
    ve.add_argument("--trials", type=int)
    ve.add_argument("--max-n", type=int)
    ve.add_argument("--seed", type=int, default=suites.DEFAULT_SEED)
    ve.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "tol_set"):
        args.tol_set = False
    if getattr(args, "target", None) is not None and args.graph6 is None:
        args.graph6 = args.target
    if getattr(args, "family", None) is not None and getattr(args, "graph6", None) is not None:
        parser.error("give only one of --family and --graph6")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, VerificationError) as exc:
        print(f"qspec: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except QSpecError as exc:
        print(f"qspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
