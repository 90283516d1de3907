"""Command-line front end.

Every subcommand reads newline-delimited graph6 (a file argument or stdin)
except ``bounds-table`` and ``gallai-verify``, which generate their own
inputs.  Results go to stdout (or ``--output``) as JSON Lines or TSV.

Exit status: 0 on success, 1 when a checked inequality fails (a
counterexample to a theorem), 2 on usage errors or unparseable input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from datetime import datetime, timezone

from . import __version__, graph6
from .bounds import (
    bounds_table,
    check_conjecture,
    check_average_degree_bound,
    format_tsv,
    k2_component_census,
    verify_proof_chain,
)
from .choosability import CHOOSABILITY_LIMIT, PAINTABILITY_LIMIT, is_choosable, is_paintable
from .criticality import Kind, annotate_line, certify
from .errors import CapacityError
from .graph import Graph
from .structure import (
    beta,
    check_gallai_structure,
    check_kernel_magic,
    check_gallai_tree_bound,
    enumerate_gallai_trees,
    mic,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def parse_k_spec(spec: str) -> list[int]:
    """``"4..10,15,20"`` -> ``[4, 5, ..., 10, 15, 20]``."""
    out: list[int] = []
    try:
        for part in spec.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k list {spec!r}; use e.g. 4..10,15,20") from None
    if not out:
        raise argparse.ArgumentTypeError("empty k list")
    return out


def ordered_map(fn, items, threads: int):
    """``map`` that keeps input order; uses worker processes when threads > 1."""
    if threads <= 1:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(fn, items, chunksize=1)


# -- per-graph jobs (top level so worker processes can pickle them) ---------

def _base(lineno: int, text: str) -> dict:
    return {"index": lineno, "graph6": text}


def _certified(g: Graph, k: int, assume: bool, limit: int | None) -> tuple[bool, dict]:
    if assume:
        return True, {"certified": "assumed"}
    report = certify(g, Kind.LIST, k, limit)
    return report.verdict, {"certified": report.verdict}


def job_choosable(job) -> dict:
    lineno, text, g, f, limit = job
    rec = _base(lineno, text) | {"f": f}
    verdict = is_choosable(g, f, limit)
    rec["choosable"] = verdict.choosable
    if verdict.witness is not None:
        rec["witness"] = verdict.witness.to_json()
    return rec


def job_paintable(job) -> dict:
    lineno, text, g, f, limit = job
    return _base(lineno, text) | {"f": f, "paintable": is_paintable(g, f, limit)}


def job_mic(job) -> dict:
    lineno, text, g = job
    w = mic(g)
    return _base(lineno, text) | {"mic": w.value, "independent_set": sorted(w.independent_set)}


def job_kernel_magic(job) -> dict:
    lineno, text, g, k, assume, limit = job
    rec = _base(lineno, text) | {"k": k}
    ok, info = _certified(g, k, assume, limit)
    rec.update(info)
    if not ok:
        return rec
    gallai_ok, offending = check_gallai_structure(g, k)
    rec.update(
        checks=[check_kernel_magic(g, k).to_dict()],
        beta=beta(g, k),
        mic=mic(g).value,
        gallai_structure_ok=gallai_ok,
    )
    if offending is not None:
        rec["offending_component"] = sorted(offending)
    return rec


def _is_kk(g: Graph, k: int) -> bool:
    return g.n == k and g.is_complete()


def job_proof_chain(job) -> dict:
    lineno, text, g, k, assume, limit = job
    rec = _base(lineno, text) | {"k": k}
    ok, info = _certified(g, k, assume, limit)
    rec.update(info)
    if not ok:
        return rec
    if _is_kk(g, k):
        rec["excluded"] = "complete graph K_k"
        return rec
    rec["report"] = verify_proof_chain(g, k).to_dict()
    return rec


def job_conjecture(job) -> dict:
    lineno, text, g, k, assume, limit = job
    rec = _base(lineno, text) | {"k": k}
    ok, info = _certified(g, k, assume, limit)
    rec.update(info)
    if not ok:
        return rec
    if _is_kk(g, k):
        rec["excluded"] = "complete graph K_k"
        return rec
    census = k2_component_census(g, k)
    rec.update(
        k2_count=census.count,
        k2_locations=[list(p) for p in census.locations],
        components=list(census.components),
        checks=[check_average_degree_bound(g, k).to_dict(), check_conjecture(g, k).to_dict()],
    )
    return rec


def _record_failed(rec: dict) -> bool:
    checks = rec.get("checks") or rec.get("report", {}).get("checks") or []
    return any(not c["holds"] for c in checks) or rec.get("gallai_structure_ok") is False


# -- plumbing -----------------------------------------------------------------

@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def append_run_record(path: str, record: dict) -> None:
    """Append one JSON line with a single write, so concurrent runs never interleave."""
    line = (json.dumps(record, sort_keys=True) + "\n").encode("utf-8")
    fd = os.open(path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
    try:
        os.write(fd, line)
        os.fsync(fd)
    finally:
        os.close(fd)


class Run:
    """Collects what a run record needs while a subcommand executes."""

    def __init__(self, argv: list[str], args: argparse.Namespace):
        self.argv = argv
        self.config = {k: v for k, v in vars(args).items() if k not in ("func",)}
        self.started = time.time()
        self.input_digest: str | None = None
        self.results: list[dict] = []
        self.summary: dict = {}

    def finish(self, path: str | None, status: int) -> None:
        if not path:
            return
        append_run_record(
            path,
            {
                "tool": "listcrit",
                "version": __version__,
                "argv": self.argv,
                "config": self.config,
                "input_sha256": self.input_digest,
                "results": self.results,
                "summary": self.summary,
                "exit_status": status,
                "started_at": datetime.fromtimestamp(self.started, timezone.utc).isoformat(),
                "wall_time_s": round(time.time() - self.started, 3),
            },
        )


def _stream_command(args, run: Run, make_job, worker) -> int:
    """Decode the input, run ``worker`` on each graph, write JSONL."""
    try:
        text = _read_input(args.input)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    run.input_digest = hashlib.sha256(text.encode("ascii", "replace")).hexdigest()

    parse_errors = 0
    violations = 0
    counts = {"graphs": 0, "skipped": 0}
    jobs = []
    slots: list[dict | None] = []
    for lineno, line, parsed in graph6.read_lines(text.splitlines()):
        if isinstance(parsed, Exception):
            parse_errors += 1
            slots.append({"index": lineno, "graph6": line, "error": str(parsed)})
        else:
            slots.append(None)
            jobs.append(make_job(lineno, line, parsed))

    results = ordered_map(worker, jobs, args.threads)
    with _output(args.output) as out:
        for slot in slots:
            rec = next(results) if slot is None else slot
            if "error" not in rec:
                counts["graphs"] += 1
            if rec.get("skipped"):
                counts["skipped"] += 1
            if _record_failed(rec):
                violations += 1
            run.results.append(rec)
            out.write(json.dumps(rec) + "\n")
    counts.update(parse_errors=parse_errors, violations=violations)
    run.summary = counts
    if violations:
        print(f"{violations} graph(s) violate a checked inequality", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_USAGE if parse_errors else EXIT_OK


class _Guarded:
    """Turn a capacity error inside a job into a skipped record (picklable)."""

    def __init__(self, worker):
        self.worker = worker

    def __call__(self, job):
        try:
            return self.worker(job)
        except CapacityError as exc:
            return _base(job[0], job[1]) | {"skipped": "capacity", "detail": str(exc)}


# -- subcommands --------------------------------------------------------------

def cmd_bounds_table(args, run: Run) -> int:
    rows = bounds_table(args.k)
    run.results = rows
    with _output(args.output) as out:
        out.write(format_tsv(rows))
    return EXIT_OK


def cmd_choosable(args, run: Run) -> int:
    limit = args.limit or CHOOSABILITY_LIMIT
    return _stream_command(args, run, lambda i, t, g: (i, t, g, args.f, limit), _Guarded(job_choosable))


def cmd_paintable(args, run: Run) -> int:
    limit = args.limit or PAINTABILITY_LIMIT
    return _stream_command(args, run, lambda i, t, g: (i, t, g, args.f, limit), _Guarded(job_paintable))


def cmd_mic(args, run: Run) -> int:
    return _stream_command(args, run, lambda i, t, g: (i, t, g), _Guarded(job_mic))


def _critical_job(job) -> dict:
    lineno, text, g, kind, k, limit = job
    return annotate_line(lineno, text, g, kind, k, limit)


def cmd_critical(args, run: Run) -> int:
    return _stream_command(args, run, lambda i, t, g: (i, t, g, args.kind, args.k, args.limit), _critical_job)


def cmd_filter(args, run: Run) -> int:
    try:
        text = _read_input(args.input)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    run.input_digest = hashlib.sha256(text.encode("ascii", "replace")).hexdigest()
    decoded = list(graph6.read_lines(text.splitlines()))
    jobs = [(i, t, g, args.kind, args.k, args.limit) for i, t, g in decoded]
    passed = errors = skipped = 0
    with _output(args.output) as out:
        for rec in ordered_map(_critical_job, jobs, args.threads):
            run.results.append(rec)
            if "error" in rec:
                errors += 1
                print(f"line {rec['index']}: {rec['error']}", file=sys.stderr)
            elif rec.get("skipped"):
                skipped += 1
                print(f"line {rec['index']}: skipped ({rec['detail']})", file=sys.stderr)
            elif rec["verdict"]:
                passed += 1
                out.write(rec["graph6"] + "\n")
    run.summary = {"graphs": len(jobs) - errors, "passed": passed, "skipped": skipped, "parse_errors": errors}
    return EXIT_USAGE if errors else EXIT_OK


def _certify_job_factory(args):
    return lambda i, t, g: (i, t, g, args.k, args.assume_critical, args.limit)


def cmd_kernel_magic(args, run: Run) -> int:
    return _stream_command(args, run, _certify_job_factory(args), _Guarded(job_kernel_magic))


def cmd_proof_chain(args, run: Run) -> int:
    status = _stream_command(args, run, _certify_job_factory(args), _Guarded(job_proof_chain))
    reports = [r for r in run.results if "report" in r]
    diverging = sum(1 for r in reports if r["report"]["beta_readings_diverge"])
    advisory = sum(1 for r in reports if any(not c["holds"] for c in r["report"]["advisory_checks"]))
    run.summary.update(verified=len(reports), beta_readings_diverge=diverging, advisory_failures=advisory)
    print(
        f"proof chain: {len(reports)} certified incomplete graph(s), "
        f"{run.summary.get('violations', 0)} with a failing check, "
        f"{advisory} with a failing advisory check",
        file=sys.stderr,
    )
    return status


def cmd_conjecture_census(args, run: Run) -> int:
    status = _stream_command(args, run, _certify_job_factory(args), _Guarded(job_conjecture))
    dist: dict[int, int] = {}
    below = 0
    for r in run.results:
        if "k2_count" in r:
            dist[r["k2_count"]] = dist.get(r["k2_count"], 0) + 1
            below += not r["checks"][1]["holds"]
    run.summary.update(k2_distribution={str(k): v for k, v in sorted(dist.items())}, below_conjecture=below)
    print(f"K2 exception counts: {dict(sorted(dist.items()))}; below conjectured bound: {below}", file=sys.stderr)
    return status


def cmd_gallai_verify(args, run: Run) -> int:
    ks = args.k if args.k else list(range(4, args.kmax + 1))
    total_violations = 0
    with _output(args.output) as out:
        for k in ks:
            checked = violations = 0
            tight: list[str] = []
            bad: list[str] = []
            for t in enumerate_gallai_trees(args.nmax, k - 1):
                if t.n == k and t.is_complete():
                    continue
                check = check_gallai_tree_bound(t, k)
                checked += 1
                if not check.holds:
                    violations += 1
                    bad.append(graph6.encode(t))
                elif check.tight:
                    tight.append(graph6.encode(t))
            total_violations += violations
            summary = {"k": k, "nmax": args.nmax, "checked": checked, "violations": violations, "tight": tight}
            if bad:
                summary["counterexamples"] = bad
            run.results.append(summary)
            print(f"k={k} nmax={args.nmax}: checked {checked} trees, {violations} violations, {len(tight)} tight")
            if args.output:
                out.write(json.dumps(summary) + "\n")
    run.summary = {"violations": total_violations}
    return EXIT_VIOLATION if total_violations else EXIT_OK


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="listcrit", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"listcrit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, stream=True):
        p.add_argument("-o", "--output", help="write results here instead of stdout")
        p.add_argument("--log", help="append a JSON run record to this file")
        p.add_argument("--threads", type=int, default=1, help="worker processes for per-graph work")
        if stream:
            p.add_argument("input", nargs="?", default="-", help="graph6 file, one graph per line (default stdin)")

    p = sub.add_parser("bounds-table", help="closed-form bounds as TSV")
    p.add_argument("--k", type=parse_k_spec, default=parse_k_spec("4..10,15,20"))
    common(p, stream=False)
    p.set_defaults(func=cmd_bounds_table)

    for name, func, default_f, what in (
        ("choosable", cmd_choosable, 2, "f-choosability"),
        ("paintable", cmd_paintable, 2, "f-paintability"),
    ):
        p = sub.add_parser(name, help=f"decide {what} for each graph")
        p.add_argument("--f", type=int, default=default_f, help="constant list size")
        p.add_argument("--limit", type=int, help="vertex capacity of the solver")
        common(p)
        p.set_defaults(func=func)

    for name, func, help_text in (
        ("critical", cmd_critical, "annotate each graph with a criticality report (JSONL)"),
        ("filter", cmd_filter, "print only the graphs that are critical"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--kind", choices=[k.value for k in Kind], default="list")
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--limit", type=int, help="vertex capacity of the decider")
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("gallai-verify", help="exhaustive Gallai-tree inequality sweep")
    p.add_argument("--k", type=parse_k_spec, help="k values, e.g. 4..6")
    p.add_argument("--kmax", type=int, default=6, help="sweep k = 4..kmax when --k is absent")
    p.add_argument("--nmax", type=int, default=8, help="largest tree order (at most 12)")
    common(p, stream=False)
    p.set_defaults(func=cmd_gallai_verify)

    p = sub.add_parser("mic", help="maximum independent cover number of each graph")
    common(p)
    p.set_defaults(func=cmd_mic)

    for name, func, help_text in (
        ("kernel-magic", cmd_kernel_magic, "kernel inequality, beta and Gallai structure on critical graphs"),
        ("proof-chain", cmd_proof_chain, "every step of the average-degree argument on critical graphs"),
        ("conjecture-census", cmd_conjecture_census, "K2 exceptions and the conjectured bound"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--k", type=int, default=4)
        p.add_argument(
            "--assume-critical",
            action="store_true",
            help="trust the input to be k-list-critical instead of certifying each graph",
        )
        p.add_argument("--limit", type=int, help="vertex capacity of the certifier")
        common(p)
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "nmax", 1) > 12:
        print("error: --nmax is limited to 12", file=sys.stderr)
        return EXIT_USAGE
    run = Run(argv, args)
    status = args.func(args, run)
    run.finish(args.log, status)
    return status


if __name__ == "__main__":
    sys.exit(main())
