"""Command-line interface: ``python -m schreier_dimers <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import mpmath

from . import graphs, kasteleyn, oracle, recursions, stats
from .algebra import MultiPoly, evaluate
from .errors import BudgetExceededError, CapExceededError, DimerError

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

METHODS = ("closed", "system", "kasteleyn", "oracle", "thm37")
DEFAULT_METHOD = {"grigorchuk": "closed", "basilica": "closed", "hanoi": "system", "gasket": "system"}
#: rational point used when a symbolic comparison exceeds the exact cap
SAMPLE_WEIGHTS = {"a": Fraction(2), "b": Fraction(3), "c": Fraction(5), "d": Fraction(7)}


class UsageError(Exception):
    pass


def parse_weights(text: Optional[str]) -> Optional[Dict[str, Fraction]]:
    """``"a=2,b=3/2"`` -> {"a": 2, "b": 3/2}; unspecified labels are left out."""
    if not text:
        return None
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"weight {part!r} is not of the form label=value")
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in "abcd" or len(k) != 1:
            raise UsageError(f"unknown label {k!r}")
        try:
            val = Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"weight {v!r} is not a rational number") from None
        if val <= 0:
            raise UsageError(f"weight {k}={v} must be positive")
        out[k] = val
    return out


def _full_weights(w: Optional[Dict[str, Fraction]]) -> Dict[str, Fraction]:
    full = {x: Fraction(1) for x in "abcd"}
    full.update(w or {})
    return full


def _render(value, decimal: Optional[int]) -> str:
    if isinstance(value, MultiPoly):
        return str(value)
    if decimal is not None:
        with mpmath.workdps(decimal + 10):
            return mpmath.nstr(mpmath.mpf(value.numerator) / value.denominator, decimal)
    return str(value)


def _build_graph(args) -> graphs.LabeledGraph:
    return graphs.build(args.family, args.n, args.labeling)


# ---------------------------------------------------------------------------
# partition


def compute_partition(family: str, n: int, method: str, weights: Optional[Dict[str, Fraction]],
                      labeling: str = "schreier", exact_cap: int = kasteleyn.DEFAULT_EXACT_CAP,
                      budget: Optional[int] = None):
    if method == "closed":
        if family == "grigorchuk":
            p = recursions.grig_closed(n)
        elif family == "basilica":
            p = recursions.basilica_closed(n)
        elif family == "gasket":
            p = recursions.gasket_closed(n, labeling)
        elif family == "hanoi":
            w = _full_weights(weights)
            if weights is None or not (w["a"] == w["b"] == w["c"]):
                raise UsageError("the Hanoi closed form needs weights with a = b = c")
            return recursions.hanoi_uniform_closed(n, w["a"])
        else:
            raise UsageError(f"unknown family {family!r}")
        return p if weights is None else evaluate(p, _full_weights(weights))
    if method == "system":
        if family == "hanoi":
            return recursions.hanoi_system(n, _full_weights(weights) if weights else None).total
        if family == "gasket":
            return recursions.gasket_system(n, labeling, _full_weights(weights) if weights else None).total
        raise UsageError("method 'system' applies to hanoi and gasket")
    if method == "kasteleyn":
        if family == "gasket":
            raise UsageError("no oriented matrix is provided for gasket graphs")
        return kasteleyn.partition_kasteleyn(
            family, n, _full_weights(weights) if weights else None, cap=exact_cap)
    if method == "oracle":
        g = graphs.build(family, n, labeling)
        p = oracle.oracle_partition(g, budget=budget)
        return p if weights is None else evaluate(p, _full_weights(weights))
    if method == "thm37":
        if family != "hanoi":
            raise UsageError("method 'thm37' applies to hanoi only")
        if weights is None:
            raise UsageError("method 'thm37' needs --weights")
        w = _full_weights(weights)
        return kasteleyn.theorem37_eval(n, w["a"], w["b"], w["c"])
    raise UsageError(f"unknown method {method!r}")


def cmd_partition(args) -> (int, str):
    method = args.method or DEFAULT_METHOD[args.family]
    weights = parse_weights(args.weights)
    value = compute_partition(args.family, args.n, method, weights, args.labeling or "schreier",
                              args.exact_cap, args.oracle_budget)
    text = _render(value, args.decimal)
    if args.format == "json":
        return EXIT_OK, json.dumps({"family": args.family, "n": args.n, "method": method,
                                    "weights": {k: str(v) for k, v in (weights or {}).items()},
                                    "value": text}, sort_keys=True) + "\n"
    return EXIT_OK, text + "\n"


# ---------------------------------------------------------------------------
# verify


def _check(name: str, ok: bool, detail: str) -> dict:
    return {"name": name, "passed": bool(ok), "detail": detail}


def run_verify(family: str, n: int, labeling: str = "schreier",
               exact_cap: int = kasteleyn.DEFAULT_EXACT_CAP, budget: Optional[int] = None) -> List[dict]:
    checks = []
    g = graphs.build(family, n, labeling)
    if family in ("grigorchuk", "basilica", "hanoi"):
        m = kasteleyn.oriented_matrix(family, n)
        rep = kasteleyn.verify_good_orientation(m, g)
        checks.append(_check("orientation", rep.passed, f"{len(rep.face_counts)} faces"))
        orc = oracle.oracle_partition(g, budget=budget)
        size = m.size
        if size <= exact_cap:
            pf = kasteleyn.partition_kasteleyn(family, n, cap=exact_cap)
            checks.append(_check("pfaffian==oracle", pf == orc, str(pf)))
        else:
            pf = kasteleyn.partition_kasteleyn(family, n, SAMPLE_WEIGHTS)
            val = evaluate(orc, SAMPLE_WEIGHTS)
            checks.append(_check("pfaffian==oracle", pf == val, f"{pf} at a=2,b=3,c=5,d=7"))
        if family == "hanoi":
            sysv = recursions.hanoi_system(n).total
            checks.append(_check("system==oracle", sysv == orc, f"{len(sysv)} terms"))
            if n >= 3:
                t37 = kasteleyn.theorem37_eval(n, 2, 3, 5)
                sv = evaluate(sysv, SAMPLE_WEIGHTS)
                checks.append(_check("thm37==system", t37 == sv, f"{t37} at a=2,b=3,c=5"))
        else:
            closed = recursions.grig_closed(n) if family == "grigorchuk" else recursions.basilica_closed(n)
            if closed != orc:
                checks.append(_check("closed==oracle", False, str(closed)))
    elif family == "gasket":
        vec = recursions.gasket_system(n, labeling)
        closed = recursions.gasket_closed(n, labeling)
        checks.append(_check("system==closed", vec.total == closed, f"{len(closed)} terms"))
        cp = oracle.class_partition(g, budget=budget)
        ok = set(cp) <= set(vec.components) and all(cp.get(k) == v for k, v in vec.components.items())
        checks.append(_check("types==oracle", ok, ",".join(sorted(vec.components))))
        if labeling == "schreier":
            h = graphs.contract_to_gasket(graphs.build_hanoi(n))
            checks.append(_check("contraction==builder", h.structure_key() == g.structure_key(),
                                 f"{len(g.vertices)} vertices"))
    else:
        raise UsageError(f"unknown family {family!r}")
    return checks


def cmd_verify(args) -> (int, str):
    checks = run_verify(args.family, args.n, args.labeling or "schreier", args.exact_cap, args.oracle_budget)
    failed = [c for c in checks if not c["passed"]]
    if args.format == "json":
        text = json.dumps({"family": args.family, "n": args.n, "checks": checks}, sort_keys=True) + "\n"
    else:
        text = "; ".join(f"{c['name']}: {'PASS' if c['passed'] else 'FAIL'} ({c['detail']})"
                         for c in checks) + "\n"
        if failed:
            text += "failed: " + ", ".join(c["name"] for c in failed) + "\n"
    return (EXIT_VERIFY_FAILED if failed else EXIT_OK), text


# ---------------------------------------------------------------------------
# limits


def emit_plot_data(family: str, weights: Optional[Dict[str, Fraction]], n_max: int,
                   labeling: str = "schreier", digits: int = 20) -> str:
    """CSV of (n, log Phi_n, |V_n|, epsilon_n) with the closed-form limit as a footer row."""
    w = _full_weights(weights)
    seq = recursions.limit_sequence(family, w, n_max, labeling)
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["n", "log_phi", "vertices", "epsilon"])
    with mpmath.workdps(recursions.LOG_DPS):
        for n, eps in zip(seq.levels, seq.epsilon):
            nv = recursions.vertex_count(family, n)
            out.writerow([n, mpmath.nstr(eps * nv, digits), nv, mpmath.nstr(eps, digits)])
    try:
        lim = recursions.thermo_limit(family, w, labeling)
        out.writerow(["limit", str(lim), "", mpmath.nstr(lim.value, digits)])
    except DimerError:
        pass
    return buf.getvalue()


def cmd_limits(args) -> (int, str):
    weights = parse_weights(args.weights)
    labeling = args.labeling or "schreier"
    n_max = args.n_max or args.n
    if args.format == "csv":
        return EXIT_OK, emit_plot_data(args.family, weights, n_max, labeling, args.decimal or 20)
    w = _full_weights(weights)
    seq = recursions.limit_sequence(args.family, w, n_max, labeling)
    digits = args.decimal or 20
    lines = [f"{'n':>3}  epsilon_n"]
    for n, eps in zip(seq.levels, seq.epsilon):
        lines.append(f"{n:>3}  {mpmath.nstr(eps, digits)}")
    lines.append(f"decreasing: {'yes' if seq.decreasing else 'no'}")
    try:
        lim = recursions.thermo_limit(args.family, w, labeling)
        lines.append(f"limit: {lim} = {mpmath.nstr(lim.value, digits)}")
    except DimerError as exc:
        lines.append(f"limit: not available ({exc})")
    if args.format == "json":
        payload = {"family": args.family, "levels": list(seq.levels),
                   "epsilon": [mpmath.nstr(e, digits) for e in seq.epsilon],
                   "decreasing": seq.decreasing}
        return EXIT_OK, json.dumps(payload, sort_keys=True) + "\n"
    return EXIT_OK, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# stats, build, covers


def cmd_stats(args) -> (int, str):
    sources = tuple(s.strip() for s in (args.sources or "polynomial").split(","))
    rows = stats.stats_rows(args.family, args.n, args.label, args.labeling or "schreier",
                            args.type, sources)
    if args.format == "json":
        keys = stats.STATS_HEADER
        return EXIT_OK, json.dumps([dict(zip(keys, r)) for r in rows], sort_keys=True) + "\n"
    if args.format == "text":
        return EXIT_OK, "\n".join(f"{r[7]}: mean={r[5]} variance={r[6]}" for r in rows) + "\n"
    return EXIT_OK, stats.stats_csv(rows)


def cmd_build(args) -> (int, str):
    g = _build_graph(args)
    if args.format == "text":
        census = ", ".join(f"{k}-gon x{v}" for k, v in sorted(g.face_census().items()))
        text = (f"{g.family} level {g.level}: {len(g.vertices)} vertices, {len(g.edges)} edges, "
                f"{len(g.loops)} loops; faces: {census or 'none'}\n")
        return EXIT_OK, text
    return EXIT_OK, g.to_json(indent=None) + "\n"


def cmd_covers(args) -> (int, str):
    g = _build_graph(args)
    covers = oracle.enumerate_covers(g, budget=args.oracle_budget)
    if args.format == "text":
        return EXIT_OK, f"{len(covers)} covers\n"
    return EXIT_OK, oracle.covers_to_jsonl(g, covers)


COMMANDS = {
    "build": cmd_build,
    "partition": cmd_partition,
    "verify": cmd_verify,
    "limits": cmd_limits,
    "stats": cmd_stats,
    "covers": cmd_covers,
}

DEFAULT_FORMAT = {"build": "json", "partition": "text", "verify": "text", "limits": "text",
                  "stats": "csv", "covers": "json"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schreier-dimers",
                                     description="Dimer partition functions on self-similar Schreier graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--family", required=True, choices=graphs.FAMILIES)
        p.add_argument("--labeling", choices=graphs.GASKET_LABELINGS, default=None)
        p.add_argument("--n", type=int, required=True, help="level of the graph")
        p.add_argument("--format", choices=("json", "csv", "text"), default=None)
        p.add_argument("--output", default=None, help="write to this file instead of stdout")
        p.add_argument("--exact-cap", type=int,
                       default=int(os.environ.get("SCHREIER_DIMERS_EXACT_CAP", kasteleyn.DEFAULT_EXACT_CAP)))
        p.add_argument("--oracle-budget", type=int, default=oracle.default_budget())
        p.add_argument("--weights", default=None, help="e.g. a=2,b=3/2,c=1")
        p.add_argument("--decimal", type=int, default=None,
                       help="render numbers as decimals with this many digits")
        if name == "partition":
            p.add_argument("--method", choices=METHODS, default=None)
        if name == "limits":
            p.add_argument("--n-max", type=int, default=None)
        if name == "stats":
            p.add_argument("--label", choices=("a", "b", "c"), default="c")
            p.add_argument("--type", default=None, help="restrict to one cover type")
            p.add_argument("--sources", default="polynomial",
                           help="comma list of polynomial, oracle, closed")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = DEFAULT_FORMAT[args.command]
    if args.labeling is not None and args.family != "gasket":
        print("error: --labeling applies to gasket graphs only", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, text = COMMANDS[args.command](args)
    except (BudgetExceededError, CapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, DimerError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
