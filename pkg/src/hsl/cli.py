"""Command-line front end: ``hsl check|report-all|dump|list|tables``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .suites import FAIL, PASS, SINGULAR, SKIP, SUITES, run_suite

DEFAULT_LIMITS = {"m": 8, "k": 3, "l": 4}
EXIT_OK, EXIT_FAIL, EXIT_RANGE = 0, 1, 3


class RangeError(ValueError):
    pass


def parse_range(text: str) -> List[int]:
    """'5' -> [5]; '2..4' -> [2, 3, 4]; an inverted range is empty."""
    text = str(text).strip()
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


@dataclass
class CheckRequest:
    suite: str
    m: List[int]
    k: List[int]
    l: List[int]
    fmt: str = "json"
    seed: int = 0
    allow_large: bool = False
    timing: bool = False
    labels: Dict[str, str] = field(default_factory=dict)

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise KeyError(f"unknown suite {self.suite!r}; known: {', '.join(sorted(SUITES))}")
        limits = dict(DEFAULT_LIMITS)
        if self.allow_large:
            limits = {key: None for key in limits}
        env = os.environ.get("HSL_MAX_DIM")
        if env:
            limits["m"] = int(env)
        for key in ("m", "k", "l"):
            vals = getattr(self, key)
            if any(v < 0 for v in vals):
                raise RangeError(f"{key} must be nonnegative")
            cap = limits[key]
            if cap is not None and any(v > cap for v in vals):
                hint = "HSL_MAX_DIM" if key == "m" and env else "--allow-large"
                raise RangeError(f"{key} = {max(vals)} exceeds the supported bound {cap} (see {hint})")

    def points(self) -> List[Tuple[int, int, int]]:
        uses = SUITES[self.suite].uses
        ms = self.m if "m" in uses else self.m[:1]
        ks = self.k if "k" in uses else self.k[:1]
        ls = self.l if "l" in uses else self.l[:1]
        return sorted(set(product(ms, ks, ls)))


def _point_params(suite: str, m: int, k: int, l: int) -> dict:
    uses = SUITES[suite].uses
    return {key: val for key, val in (("m", m), ("k", k), ("l", l)) if key in uses}


def run(request: CheckRequest) -> Tuple[int, dict]:
    """Run one suite over the request grid; (exit status, report)."""
    request.validate()
    t0 = time.perf_counter()
    checks = []
    for m, k, l in request.points():
        params = _point_params(request.suite, m, k, l)
        for c in run_suite(request.suite, m, k, l, request.seed):
            checks.append(dict(c, params=params))
    report = {
        "suite": request.suite,
        "params": dict(request.labels, seed=request.seed),
        "checks": checks,
    }
    if request.timing:
        report["runtime_ms"] = round((time.perf_counter() - t0) * 1000)
    status = EXIT_FAIL if any(c["status"] == FAIL for c in checks) else EXIT_OK
    return status, report


# caps applied inside report-all so the default grid stays at desk scale
REPORT_CAPS = {"rs": {"k": 1, "l": 2}, "inversion": {"m": 5, "l": 1}}


def report_all(mmax: int, kmax: int, lmax: int, seed: int = 0, timing: bool = False,
               mmin: int = 4) -> Tuple[int, dict]:
    t0 = time.perf_counter()
    checks = []
    grid = list(product(range(mmin, mmax + 1), range(0, kmax + 1), range(0, lmax + 1)))
    for name in sorted(SUITES):
        suite = SUITES[name]
        caps = REPORT_CAPS.get(name, {})
        seen = set()
        for m, k, l in grid:
            key = (m if "m" in suite.uses else None, k if "k" in suite.uses else None,
                   l if "l" in suite.uses else None)
            if key in seen:
                continue
            seen.add(key)
            if any({"m": m, "k": k, "l": l}[d] > cap for d, cap in caps.items()):
                continue
            if not suite.valid(m, k, l):
                continue
            for c in run_suite(name, m, k, l, seed):
                checks.append(dict(c, suite=name, params=_point_params(name, m, k, l)))
    counts = {s: sum(1 for c in checks if c["status"] == s) for s in (PASS, FAIL, SINGULAR, SKIP)}
    report = {"suite": "all", "params": {"mmax": mmax, "kmax": kmax, "lmax": lmax, "seed": seed},
              "checks": checks, "summary": counts}
    if timing:
        report["runtime_ms"] = round((time.perf_counter() - t0) * 1000)
    return (EXIT_FAIL if counts[FAIL] else EXIT_OK), report


# ----------------------------------------------------------------------------- rendering

def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    rows = []
    for c in report["checks"]:
        p = c.get("params", {})
        rows.append([c.get("suite", report["suite"]), p.get("m", ""), p.get("k", ""), p.get("l", ""),
                     c["name"], c["status"], c.get("witness", "")])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "m", "k", "l", "check", "status", "witness"])
        w.writerows(rows)
        return buf.getvalue()
    lines = []
    for suite, m, k, l, name, status, witness in rows:
        where = " ".join(f"{n}={v}" for n, v in (("m", m), ("k", k), ("l", l)) if v != "")
        line = f"[{status}] {suite} {where}: {name}"
        if witness:
            line += f"  ({witness})"
        lines.append(line)
    if "summary" in report:
        lines.append(" ".join(f"{k}={v}" for k, v in report["summary"].items()))
    if "runtime_ms" in report:
        lines.append(f"runtime {report['runtime_ms']} ms")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------- dump / list / tables

def dump_basis(space: str, m: int, k: int, l: int) -> List[str]:
    from .harmonic import BasisSpec, basis
    return [p.to_text() for p in basis(BasisSpec(space, m, k, l))]


def dump_operator(name: str, m: int, k: int, i: int, j: int) -> List[str]:
    from .diffop import build_named
    return [build_named(name, m, k, i, j).coefficient_text()]


def dump_identity(name: str) -> List[str]:
    from .opalgebra import verify_module_identity
    r = verify_module_identity(name)
    return [json.dumps(dict(r.as_dict()), sort_keys=True)]


def listing() -> Dict[str, List[str]]:
    from .diffop import OPERATOR_NAMES
    from .harmonic import TAGS
    from .opalgebra import identity_names
    return {
        "suites": [f"{n}: {SUITES[n].description}" for n in sorted(SUITES)],
        "identities": identity_names(),
        "operators": list(OPERATOR_NAMES),
        "spaces": list(TAGS),
    }


def write_tables(out: Path, mmax: int = 6, kmax: int = 2, lmax: int = 3) -> List[Path]:
    """CSV golden tables of dimensions, block sizes, determinants and constants."""
    from .harmonic import BasisSpec, basis, dim_harmonic, reproducing_kernel
    from .kernelcheck import (decomposition_check, ellipticity_check, formula_dimension,
                              kernel_dimension)
    from .radial import c_constant, label5_constant

    out.mkdir(parents=True, exist_ok=True)
    written = []

    def table(name, header, rows):
        path = out / name
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
        written.append(path)

    ms = range(5, mmax + 1)
    table("kernel_dimensions.csv", ["m", "k", "l", "nullity", "formula"],
          [(m, k, l, kernel_dimension(m, k, l), formula_dimension(m, k, l))
           for m in ms for k in range(kmax + 1) for l in range(lmax + 1)])
    rows = []
    for m in ms:
        for k in range(kmax + 1):
            rows.append(("Hk", m, k, "", dim_harmonic(m, k)))
            for l in range(k + 1):
                rows.append(("Hkl", m, k, l, len(basis(BasisSpec("Hkl", m, k, l)))))
    table("space_dimensions.csv", ["space", "m", "k", "l", "dim"], rows)
    rows = []
    for m in ms:
        for k in range(kmax + 1):
            for l in range(k, lmax + 1):
                for emb in ("exact", "twistor"):
                    rep = decomposition_check(m, k, l, emb)
                    for b in rep.blocks:
                        rows.append((m, k, l, emb, b.i, b.j, b.size, b.image_rank))
    table("decomposition_blocks.csv", ["m", "k", "l", "embedding", "i", "j", "size", "image_rank"], rows)
    table("ellipticity_e1.csv", ["m", "k", "determinant"],
          [(m, k, str(ellipticity_check(m, k).determinant)) for m in range(4, mmax + 1)
           for k in range(1, kmax + 2)])
    table("constants.csv", ["m", "k", "label5", "c_k"],
          [(m, k, str(label5_constant(m, k)), str(c_constant(m, k))) for m in ms for k in range(kmax + 1)])
    table("reproducing_ratios.csv", ["m", "k", "ratio"],
          [(m, k, str(reproducing_kernel(m, k).ratio)) for m in ms for k in range(1, kmax + 2)])
    return written


# ----------------------------------------------------------------------------- argparse

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hsl", description="exact verification of the higher spin Laplace operator")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run one verification suite")
    c.add_argument("suite")
    c.add_argument("--m", default="5", help="value or range a..b")
    c.add_argument("--k", default="1")
    c.add_argument("--l", default="2")
    c.add_argument("--format", choices=("json", "csv", "text"), default="json")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--allow-large", action="store_true")
    c.add_argument("--timing", action="store_true", help="include runtime_ms (breaks byte-identity)")

    r = sub.add_parser("report-all", help="run every suite over a grid")
    r.add_argument("--mmax", type=int, default=6)
    r.add_argument("--kmax", type=int, default=2)
    r.add_argument("--lmax", type=int, default=3)
    r.add_argument("--format", choices=("json", "csv", "text"), default="json")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--timing", action="store_true")

    d = sub.add_parser("dump", help="print a basis, an operator or an identity report")
    d.add_argument("what", choices=("basis", "operator", "identity"))
    d.add_argument("--space", default="Hk")
    d.add_argument("--name", default="D")
    d.add_argument("--m", type=int, default=5)
    d.add_argument("--k", type=int, default=1)
    d.add_argument("--l", type=int, default=0)
    d.add_argument("--i", type=int, default=1)
    d.add_argument("--j", type=int, default=2)
    d.add_argument("--format", choices=("json", "text"), default="text")

    sub.add_parser("list", help="list suites, identities, operators and spaces")

    t = sub.add_parser("tables", help="write CSV golden tables")
    t.add_argument("--out", type=Path, default=Path("tables"))
    t.add_argument("--mmax", type=int, default=6)
    t.add_argument("--kmax", type=int, default=2)
    t.add_argument("--lmax", type=int, default=3)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "check":
            req = CheckRequest(args.suite, parse_range(args.m), parse_range(args.k), parse_range(args.l),
                               args.format, args.seed, args.allow_large, args.timing,
                               {"m": args.m, "k": args.k, "l": args.l})
            status, report = run(req)
            out.write(render(report, args.format))
            return status
        if args.command == "report-all":
            status, report = report_all(args.mmax, args.kmax, args.lmax, args.seed, args.timing)
            out.write(render(report, args.format))
            return status
        if args.command == "dump":
            if args.what == "basis":
                lines = dump_basis(args.space, args.m, args.k, args.l)
            elif args.what == "operator":
                lines = dump_operator(args.name, args.m, args.k, args.i, args.j)
            else:
                lines = dump_identity(args.name)
            if args.format == "json":
                out.write(json.dumps(lines, indent=2) + "\n")
            else:
                out.write("\n".join(lines) + "\n")
            return EXIT_OK
        if args.command == "list":
            for section, items in listing().items():
                out.write(f"{section}:\n")
                for it in items:
                    out.write(f"  {it}\n")
            return EXIT_OK
        if args.command == "tables":
            for path in write_tables(args.out, args.mmax, args.kmax, args.lmax):
                out.write(f"{path}\n")
            return EXIT_OK
    except RangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
