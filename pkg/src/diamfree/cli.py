"""Command line front end: gen, solve, canon, verify, johnson-verify.

Every report is JSON with the library version, the semantic run config and
an input hash.  Reports are stored under a content-hash key in the cache
directory (``DIAMFREE_CACHE_DIR``, default ``~/.cache/diamfree``) and reused
unless ``--force`` is given.  Thread count and wall time never enter a
report, so output is byte-identical across runs and thread counts.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__, canon, johnson
from .diamgraph import lattice_graph
from .families import Family
from .lattice import CapacityError, Signature, format_trits, generate, parse_trits
from .solver import (EnumerationLimitError, SolverTimeout, enumerate_maximum, independence_number)
from .solver.bnb import DEFAULT_ENUM_LIMIT, DEFAULT_TIME_LIMIT
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_CAPACITY, EXIT_TIMEOUT = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    signature: list[int] | None = None
    threshold_sq: int | None = None
    threads: int = os.cpu_count() or 1
    time_limit: float = DEFAULT_TIME_LIMIT
    enum_limit: int = DEFAULT_ENUM_LIMIT
    format: str = "json"
    out: str | None = None
    slow: bool = False
    force: bool = False
    extra: dict | None = None

    def semantic(self) -> dict:
        """The part of the config that can change a report's content."""
        d = asdict(self)
        for key in ("threads", "format", "out", "force"):
            d.pop(key)
        return d


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def cache_dir() -> Path:
    return Path(os.environ.get("DIAMFREE_CACHE_DIR") or Path.home() / ".cache" / "diamfree")


def report_key(cfg: RunConfig, input_hash: str) -> str:
    return sha256(_dumps({"version": __version__, "config": cfg.semantic(), "input": input_hash}))


def envelope(cfg: RunConfig, input_hash: str, result: dict, status: str = "ok") -> dict:
    return {"version": __version__, "config": cfg.semantic(), "input_sha256": input_hash,
            "status": status, "result": result}


# --- output ---------------------------------------------------------------

def _rows(report: dict) -> list[dict]:
    res = report["result"]
    if "checks" in res:
        return [{"name": c["name"], "expected": _dumps(c["expected"]), "observed": _dumps(c["observed"]),
                 "passed": c["passed"]} for c in res["checks"]]
    if "variants" in res:
        return [{"variant": v["variant"], "size": v["size"], "distance_set": _dumps(v["distance_set"]),
                 "maximal": v["maximal"], "violations": len(v["violations"])} for v in res["variants"]]
    return [{k: (_dumps(v) if isinstance(v, (list, dict)) else v) for k, v in sorted(res.items())
             if k not in ("families", "classes")}]


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=1) + "\n"
    rows = _rows(report)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = [f"# diamfree {report['version']} {report['config']['command']} status={report['status']}"]
    for row in rows:
        lines.append("  ".join(f"{k}={v}" for k, v in row.items()))
    return "\n".join(lines) + "\n"


def emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cached_run(cfg: RunConfig, input_hash: str, compute) -> tuple[dict, int]:
    """Return (report, exit code), reusing a stored report unless forced."""
    path = cache_dir() / f"{report_key(cfg, input_hash)}.json"
    if path.exists() and not cfg.force:
        report = json.loads(path.read_text())
        return report, report.get("exit_code", EXIT_OK)
    result, status, code = compute()
    report = envelope(cfg, input_hash, result, status)
    report["exit_code"] = code
    if code != EXIT_TIMEOUT:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(_dumps(report))
        tmp.replace(path)
    return report, code


# --- commands -------------------------------------------------------------

def cmd_gen(cfg: RunConfig) -> int:
    try:
        points = generate(Signature(*cfg.signature), limit=cfg.enum_limit)
    except CapacityError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    emit("".join(str(x) + "\n" for x in points), cfg.out)
    return EXIT_OK


def _solve(cfg: RunConfig):
    sig = Signature(*cfg.signature)
    g = lattice_graph(sig, cfg.threshold_sq)
    opts = cfg.extra or {}
    try:
        if opts.get("enumerate") or opts.get("classify"):
            res = enumerate_maximum(g, method=opts.get("method", "auto"), enum_limit=cfg.enum_limit,
                                    time_limit=cfg.time_limit, threads=cfg.threads)
        else:
            res = independence_number(g, method=opts.get("method", "auto"), time_limit=cfg.time_limit,
                                      threads=cfg.threads)
    except SolverTimeout as e:
        return {"signature": sig.as_list(), "threshold_sq": g.threshold_sq, "lower": e.lower,
                "upper": e.upper}, "timeout", EXIT_TIMEOUT
    except EnumerationLimitError as e:
        return {"signature": sig.as_list(), "threshold_sq": g.threshold_sq, "error": str(e)}, "limit", EXIT_FAIL
    out = res.to_dict(include_families=bool(opts.get("families")))
    out.pop("node_count", None)
    if opts.get("classify"):
        classes = canon.classify(res.enumerated)
        out["class_count"] = len(classes)
        out["classes"] = [{"size": c.size, "representative": [str(x) for x in c.representative],
                           "stabilizer": c.form.automorphisms} for c in classes]
    return out, "ok", EXIT_OK


def cmd_solve(cfg: RunConfig) -> int:
    report, code = cached_run(cfg, sha256(_dumps(cfg.signature)), lambda: _solve(cfg))
    emit(render(report, cfg.format), cfg.out)
    return code


def load_family(path: str) -> Family:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return Family.loads(text)
    rows = [parse_trits(line.strip()) for line in text.splitlines() if line.strip()]
    return Family.of(Path(path).stem, rows)


def cmd_canon(cfg: RunConfig) -> int:
    path = cfg.extra["file"]
    fam = load_family(path)

    def compute():
        form = canon.canonical_form(fam)
        return {"name": fam.name, "size": len(fam), "stabilizer": form.automorphisms,
                **form.certificate()}, "ok", EXIT_OK

    report, code = cached_run(cfg, sha256(fam.dumps()), compute)
    emit(render(report, cfg.format), cfg.out)
    return code


def parse_k_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def _verify(cfg: RunConfig):
    opts = cfg.extra or {}
    ks = parse_k_range(opts.get("k", "1..5"))
    try:
        rep = run_suite(opts["suite"], ks=ks, slow=cfg.slow, time_limit=cfg.time_limit, threads=cfg.threads)
    except SolverTimeout as e:
        return {"suite": opts["suite"], "error": str(e)}, "timeout", EXIT_TIMEOUT
    return rep.to_dict(), "ok" if rep.passed else "failed", EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(cfg: RunConfig) -> int:
    report, code = cached_run(cfg, sha256(_dumps(cfg.extra)), lambda: _verify(cfg))
    emit(render(report, cfg.format), cfg.out)
    return code


def _johnson(cfg: RunConfig):
    variants = [johnson.verify_258(v).to_dict() for v in "XYZ"]
    ok = all(v["size"] == 258 and v["maximal"] and not v["violations"] for v in variants)
    return {"variants": variants}, "ok" if ok else "failed", EXIT_OK if ok else EXIT_FAIL


def cmd_johnson(cfg: RunConfig) -> int:
    report, code = cached_run(cfg, sha256("J(9,4)"), lambda: _johnson(cfg))
    emit(render(report, cfg.format), cfg.out)
    return code


# --- argument parsing -----------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
    p.add_argument("--enum-limit", type=int, default=DEFAULT_ENUM_LIMIT)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--slow", action="store_true")
    p.add_argument("--force", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diamfree", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"diamfree {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="list the points of L_mkl as trit strings")
    p.add_argument("m", type=int)
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    _common(p)

    p = sub.add_parser("solve", help="independence number of a diameter graph")
    for name in ("m", "k", "l"):
        p.add_argument(name, type=int)
    p.add_argument("--threshold", type=int, default=None, help="squared-distance threshold (default: diameter)")
    p.add_argument("--method", choices=("auto", "bnb", "lift"), default="auto")
    p.add_argument("--enumerate", action="store_true", help="list every maximum independent set")
    p.add_argument("--classify", action="store_true", help="group maximum sets into isomorphism classes")
    p.add_argument("--families", action="store_true", help="include the enumerated sets in the report")
    _common(p)

    p = sub.add_parser("canon", help="canonical form and certificate of a family file")
    p.add_argument("file")
    _common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--k", default="1..5", help="k or lo..hi for main-theorem")
    _common(p)

    p = sub.add_parser("johnson-verify", help="check the three 258-point sets")
    _common(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    sig = [args.m, args.k, args.l] if hasattr(args, "m") else None
    extra = None
    if args.command == "solve":
        extra = {"method": args.method, "enumerate": args.enumerate, "classify": args.classify,
                 "families": args.families}
    elif args.command == "canon":
        extra = {"file": args.file}
    elif args.command == "verify":
        extra = {"suite": args.suite, "k": args.k}
    return RunConfig(args.command, sig, getattr(args, "threshold", None), args.threads, args.time_limit,
                     args.enum_limit, args.format, args.out, args.slow, args.force, extra)


COMMANDS = {"gen": cmd_gen, "solve": cmd_solve, "canon": cmd_canon, "verify": cmd_verify,
            "johnson-verify": cmd_johnson}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        return COMMANDS[cfg.command](cfg)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
