"""Command-line interface.

Vertex labels on the command line and in files are 1-based.  File
arguments are looked up relative to the working directory, then in the
fixtures directory (``$QUIVHOM_FIXTURES`` or the packaged ``fixtures/``).

Exit codes: 0 success, 1 a check came out red, 2 parse error,
3 invariant violation, 4 oracle violation, 5 construction error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .algebra import Algebra
from .bundle import CertificateBundle
from .cotorsion.completeness import theorem44_precover, theorem44_preenvelope_psi
from .cotorsion.line import LineWindow, line_window_precover
from .cotorsion.oracle import builtin_pair
from .errors import (
    ConstructionError,
    InvariantViolation,
    OracleViolation,
    ParseError,
    QuivhomError,
)
from .ext import DEFAULT_BUDGET, ext1_bruteforce, ext1_dim
from .io import dumps, load, module_to_json, algebra_to_json, rep_to_json
from .modules import Module
from .quiver import Quiver
from .rep_ext import rep_ext1_bruteforce, rep_ext1_dim
from .reps import Representation, c_functor, cofree_at, evaluate, free_at, k_functor, stalk
from .suite import CASES, SuiteConfig, format_report, run_suite

EXIT_RED, EXIT_PARSE, EXIT_INVARIANT, EXIT_ORACLE, EXIT_CONSTRUCTION = 1, 2, 3, 4, 5


def _load_kind(name: str, *kinds: str):
    loaded = load(name)
    if loaded.kind not in kinds:
        raise ParseError(f"{name}: expected {' or '.join(kinds)}, found {loaded.kind}")
    return loaded.obj


def _vertex(q: Quiver, label: int) -> int:
    if not 1 <= label <= q.vertex_count:
        raise InvariantViolation(f"vertex {label} outside 1..{q.vertex_count}")
    return label - 1


def _strata_text(q: Quiver) -> str:
    parts = [" ".join(str(v + 1) for v in sorted(s)) for s in q.stratification.strata]
    return "[" + "|".join(parts) + "]"


def _write(out_dir: str, filename: str, text: str) -> Path:
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    target = path / filename
    target.write_text(text, encoding="utf-8")
    return target


# --- subcommands -------------------------------------------------------------------


def cmd_rooted(args) -> int:
    q = _load_kind(args.quiver, "quiver")
    side = "left-rooted" if q.is_left_rooted() else "not left-rooted"
    print(f"{side}, strata {_strata_text(q)}")
    if args.right:
        op = q.opposite()
        side = "right-rooted" if op.is_left_rooted() else "not right-rooted"
        print(f"{side}, strata {_strata_text(op)}")
    return 0


def cmd_functor(args) -> int:
    name = args.name
    if name in ("ev", "c", "k"):
        x = _load_kind(args.rep, "rep")
        i = _vertex(x.quiver, args.vertex)
        m = {"ev": evaluate, "c": c_functor, "k": k_functor}[name](x, i)
        print(f"{name}_{args.vertex}: dim {m.dim}")
        if args.out:
            target = _write(args.out, f"{name}{args.vertex}.module",
                            dumps(module_to_json(m, algebra_to_json(m.algebra))))
            print(f"wrote {target}")
        return 0
    q = _load_kind(args.quiver, "quiver")
    c = _load_kind(args.module, "module")
    i = _vertex(q, args.vertex)
    x = {"s": stalk, "f": free_at, "g": cofree_at}[name](q, i, c)
    dims = " ".join(str(d) for d in x.dims())
    print(f"{name}_{args.vertex}({c.name or 'C'}): dims [{dims}]")
    if args.out:
        print(f"wrote {_write(args.out, f'{name}{args.vertex}.rep', dumps(rep_to_json(x)))}")
    return 0


def cmd_ext1(args) -> int:
    x = _load_kind(args.first, "module", "rep")
    y = _load_kind(args.second, "module", "rep")
    if isinstance(x, Module) != isinstance(y, Module):
        raise InvariantViolation("Ext1 needs two modules or two representations")
    if isinstance(x, Module):
        d = ext1_dim(x, y)
        brute = (lambda: ext1_bruteforce(x, y, args.budget))
    else:
        d = rep_ext1_dim(x, y)
        brute = (lambda: rep_ext1_bruteforce(x, y, args.budget))
    print(f"dim Ext1 = {d}")
    if args.bruteforce:
        b = brute()
        print(f"brute force = {b}")
        if b != d:
            print("MISMATCH")
            return EXIT_RED
    return 0


def _report(construction, bundle: CertificateBundle, args) -> int:
    for c in construction.checks:
        mark = "ok" if c.passed else "FAIL"
        detail = f" ({c.detail})" if c.detail and not c.passed else ""
        print(f"  [{mark}] {c.name}{detail}")
    dims = construction.ses.dims()
    print(f"{construction.kind}: " + " -> ".join(str(list(d)) for d in dims))
    print("green" if bundle.green else "red")
    if args.out:
        stem = Path(args.rep).name.rsplit(".", 1)[0]
        print(f"wrote {_write(args.out, f'{stem}.{args.command}.bundle', bundle.dumps())}")
    return 0 if bundle.green else EXIT_RED


def _pair_and_rep(args):
    x = _load_kind(args.rep, "rep")
    return builtin_pair(args.pair, x.algebra), x


def cmd_precover(args) -> int:
    oracle, x = _pair_and_rep(args)
    c = theorem44_precover(oracle, x, np.random.default_rng(args.seed), args.samples)
    return _report(c, CertificateBundle.from_construction(c, args.pair, x, args.seed, args.samples), args)


def cmd_preenvelope(args) -> int:
    oracle, x = _pair_and_rep(args)
    c = theorem44_preenvelope_psi(oracle, x, np.random.default_rng(args.seed), args.samples)
    return _report(c, CertificateBundle.from_construction(c, args.pair, x, args.seed, args.samples), args)


def cmd_line_window(args) -> int:
    oracle, x = _pair_and_rep(args)
    w = LineWindow(args.lo, args.hi)
    c = line_window_precover(oracle, w, x, np.random.default_rng(args.seed), args.samples)
    for note in c.notes:
        print(f"  {note}")
    bundle = CertificateBundle.from_construction(c, args.pair, x, args.seed, args.samples, (w.lo, w.hi))
    return _report(c, bundle, args)


def cmd_verify(args) -> int:
    bundle = _load_kind(args.bundle, "bundle")
    checks = bundle.verify()
    for c in checks:
        mark = "ok" if c.passed else "FAIL"
        print(f"  [{mark}] {c.name}")
    good = all(c.passed for c in checks)
    print(f"{bundle.construction} ({bundle.pair}): {'verified' if good else 'REJECTED'}")
    return 0 if good else EXIT_RED


def cmd_suite(args) -> int:
    cfg = SuiteConfig(args.seed, args.budget, args.samples)
    results = run_suite(cfg, args.case or None)
    report = format_report(cfg, results)
    sys.stdout.write(report)
    if args.out:
        _write(args.out, f"suite-seed{args.seed}.txt", report)
    return 0 if all(r.green for r in results) else EXIT_RED


def cmd_validate(args) -> int:
    loaded = load(args.file)
    obj = loaded.obj
    if isinstance(obj, Quiver):
        desc = f"{obj.vertex_count} vertices, {obj.arrow_count} arrows"
    elif isinstance(obj, Algebra):
        desc = f"dim {obj.dim} over F_{obj.p}"
    elif isinstance(obj, Module):
        desc = f"dim {obj.dim} over {obj.algebra.name or 'its algebra'}"
    elif isinstance(obj, Representation):
        desc = "dims [" + " ".join(str(d) for d in obj.dims()) + "]"
    else:
        desc = f"{obj.construction}, {'green' if obj.green else 'red'}"
    print(f"ok: {loaded.kind}, {desc}")
    return 0


# --- argument parsing -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quivhom", description="Cotorsion pairs in quiver representations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True, out=True):
        if seed:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--samples", type=int, default=10, help="Ext probes per construction")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="brute-force enumeration cap")
        if out:
            p.add_argument("--out", metavar="DIR", help="directory for result files")

    p = sub.add_parser("rooted", help="left-rootedness and vertex strata")
    p.add_argument("quiver")
    p.add_argument("--right", action="store_true", help="also report right-rootedness")
    p.set_defaults(func=cmd_rooted)

    p = sub.add_parser("functor", help="apply ev, s, f, g, c or k at a vertex")
    p.add_argument("name", choices=["ev", "s", "f", "g", "c", "k"])
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--rep")
    p.add_argument("--quiver")
    p.add_argument("--module")
    common(p, seed=False)
    p.set_defaults(func=cmd_functor)

    p = sub.add_parser("ext1", help="dimension of Ext1 between modules or representations")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--bruteforce", action="store_true")
    common(p, seed=False, out=False)
    p.set_defaults(func=cmd_ext1)

    for name, func, help_text in (
        ("precover", cmd_precover, "special Phi(A)-precover of a representation"),
        ("preenvelope", cmd_preenvelope, "special Psi(B)-preenvelope of a representation"),
        ("line-window", cmd_line_window, "staged precover on a finite window of the line"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--rep", required=True)
        p.add_argument("--pair", choices=["proj-all", "all-inj"], default="proj-all")
        if name == "line-window":
            p.add_argument("--lo", type=int, required=True)
            p.add_argument("--hi", type=int, required=True)
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="re-check a certificate bundle")
    p.add_argument("bundle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", help="seeded property battery")
    p.add_argument("--case", action="append", choices=sorted(CASES))
    common(p)
    p.set_defaults(func=cmd_suite, samples=4)

    p = sub.add_parser("validate", help="parse and check any input file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "functor":
        needs = ["rep"] if args.name in ("ev", "c", "k") else ["quiver", "module"]
        missing = [n for n in needs if getattr(args, n) is None]
        if missing:
            print(f"quivhom: functor {args.name} needs --{' --'.join(missing)}", file=sys.stderr)
            return EXIT_PARSE
    try:
        return args.func(args)
    except ParseError as exc:
        code, exc_ = EXIT_PARSE, exc
    except OracleViolation as exc:
        code, exc_ = EXIT_ORACLE, exc
    except InvariantViolation as exc:
        code, exc_ = EXIT_INVARIANT, exc
    except ConstructionError as exc:
        code, exc_ = EXIT_CONSTRUCTION, exc
    except QuivhomError as exc:
        code, exc_ = EXIT_CONSTRUCTION, exc
    print(f"quivhom: {type(exc_).__name__}: {exc_}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
