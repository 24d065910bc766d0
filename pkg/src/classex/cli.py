"""Command-line front end.

Exit codes: 0 success, 2 a bound was violated (or a verify check failed),
3 a resource budget was exceeded, 64 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import bounds
from .charcrit import TableError, eval_criterion, parse_table
from .classalg import BudgetExceeded, ExponentReport
from .classes import classes_csv
from .enumeration import CODE_VERSION, DEFAULT_BYTE_BUDGET, DEFAULT_LIMIT, EnumerationError, LimitExceeded
from .groups import GroupError
from .pipeline import DATA, analyze, select
from .witness import WitnessBudgetExceeded, verify_witness, witness_tuple

EXIT_OK, EXIT_VIOLATION, EXIT_BUDGET, EXIT_INPUT = 0, 2, 3, 64


class BadInput(Exception):
    pass


class Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is reserved for bound violations
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def config_hash(args: argparse.Namespace) -> str:
    skip = {"func", "threads", "cache"}
    doc = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    doc["code_version"] = CODE_VERSION
    return hashlib.sha256(json.dumps(doc, sort_keys=True, default=str).encode()).hexdigest()[:16]


def _positive(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _add_group(p):
    g = p.add_argument_group("group selector (exactly one)")
    g.add_argument("--family", choices=["GL", "SL", "SU", "Sp", "PGL", "PSL", "PSU", "PSp"])
    g.add_argument("--n", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--alternating", type=int, metavar="N")
    g.add_argument("--symmetric", type=int, metavar="N")
    g.add_argument("--name", help="builtin name, e.g. A5, M11, PSL_3(3)")
    g.add_argument("--genfile", help="JSON generator file")


def _add_run(p):
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--limit", type=_positive, default=DEFAULT_LIMIT, help="max group order")
    p.add_argument("--memory", type=_positive, default=DEFAULT_BYTE_BUDGET, help="byte budget")
    p.add_argument("--cache", default=None, help="cache directory (default $CLASSEX_CACHE)")
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")


def _spec(args):
    genfile = args.genfile
    if genfile is not None and not Path(genfile).exists() and (DATA / genfile).exists():
        genfile = DATA / genfile
    return select(args.family, args.n, args.q, args.alternating, args.symmetric, args.name, genfile)


def _analysis(args, with_tensor=True):
    return analyze(_spec(args), threads=args.threads, limit=args.limit, byte_budget=args.memory,
                   cache_dir=args.cache, with_tensor=with_tensor)


def _text_report(rep: ExponentReport, verdicts) -> str:
    lines = [f"group {rep.group}  order {rep.order}  classes {len(rep.classes)}",
             f"{'id':>4} {'size':>10} {'ord':>5} {'real':>5} {'semi':>5} {'e':>3} {'cn':>4}"]
    for r in rep.classes:
        lines.append(f"{r.id:>4} {r.size:>10} {r.order:>5} {str(r.real)[0]:>5} {str(r.semirational)[0]:>5} "
                     f"{r.e:>3} {'-' if r.cn is None else r.cn:>4}")
    lines.append(f"e(G) = {rep.e_G}")
    lines.append(f"cn(G) = {'undefined' if rep.cn_G is None else rep.cn_G}")
    for v in verdicts:
        if v.scope == "group":
            lines.append(f"bounds: {v.lower} <= e <= {v.upper}  {v.sources}  {'ok' if v.ok else 'VIOLATED'}")
    bad = [v for v in verdicts if not v.ok]
    lines.append(f"bound verdicts: {len(verdicts)} checked, {len(bad)} violated")
    return "\n".join(lines)


def cmd_exponent(args) -> int:
    a = _analysis(args)
    rep = a.report()
    vs = bounds.verdict(rep, a.spec.family)
    rep.verdicts = [dict(scope=v.scope, lower=v.lower, upper=v.upper, computed=v.computed,
                         sources=v.sources, caveats=v.caveats, ok=v.ok) for v in vs]
    if args.format == "json":
        doc = json.loads(rep.to_json())
        doc["config_hash"] = config_hash(args)
        print(json.dumps(doc, indent=1))
    elif args.format == "csv":
        print(f"# {rep.group} order={rep.order} e_G={rep.e_G} cn_G={rep.cn_G} config={config_hash(args)}")
        sys.stdout.write(rep.to_csv())
    else:
        print(_text_report(rep, vs))
        print(f"config {config_hash(args)}")
    return EXIT_OK if all(v.ok for v in vs) else EXIT_VIOLATION


def cmd_classes(args) -> int:
    a = _analysis(args, with_tensor=False)
    cd = a.cd
    if args.format == "json":
        doc = {"group": a.spec.name, "order": a.table.order, "config_hash": config_hash(args),
               "classes": [{"id": c, "size": int(cd.sizes[c]), "order": int(cd.order_of_rep[c]),
                            "rep": int(cd.reps[c]), "inverse": int(cd.inverse_of[c])}
                           for c in range(cd.n_classes)]}
        print(json.dumps(doc, indent=1))
    else:
        sys.stdout.write(classes_csv(cd))
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.family is None or args.n is None or args.q is None:
        raise BadInput("bounds needs --family, --n and --q")
    fam = bounds.simple_family(args.family, args.n, args.q)
    if fam is None:
        raise BadInput(f"{args.family}_{args.n}({args.q}) is not covered by the bound tables")
    doc = {"group": f"{args.family}_{args.n}({args.q})", "table_family": fam, "lower": 1,
           "lower_source": None, "config_hash": config_hash(args)}
    if fam == "PSL":
        doc.update(lower=bounds.psl_lower_bound(args.n, args.q), lower_source="psl-lower")
    elif fam == "PSU":
        doc.update(lower=bounds.psu_lower_bound(args.n, args.q), lower_source="psu-lower")
    try:
        tb = bounds.table_upper_bound(fam, args.n, args.q)
    except bounds.NoMatchingRow as exc:
        raise BadInput(str(exc)) from None
    doc.update(upper=tb.bound, upper_source=tb.source, matched=tb.matched, caveats=tb.caveats)
    if args.format == "json":
        print(json.dumps(doc, indent=1))
    else:
        print(f"{doc['group']}: lower {doc['lower']} [{doc['lower_source'] or 'trivial'}], "
              f"upper {tb.bound} [{tb.source}]")
        for src, b in tb.matched:
            print(f"  row {src}: {b}")
        for c in tb.caveats:
            print(f"  caveat: {c}")
    return EXIT_OK if doc["lower"] <= tb.bound else EXIT_VIOLATION


def cmd_witness(args) -> int:
    a = _analysis(args)
    if args.cls is None:
        ids = range(a.cd.n_classes)
    else:
        if not 0 <= args.cls < a.cd.n_classes:
            raise BadInput(f"class id must be in [0, {a.cd.n_classes})")
        ids = [args.cls]
    out = []
    for c in ids:
        w = witness_tuple(a.table, a.cd, a.ct, c)
        doc = w.to_json(a.table)
        doc["reverified"] = verify_witness(a.table, a.cd, w)
        out.append(doc)
    ok = all(d["verified"] and d["reverified"] for d in out)
    if args.format == "json":
        print(json.dumps({"group": a.spec.name, "config_hash": config_hash(args), "witnesses": out}, indent=1))
    else:
        for d in out:
            print(f"class {d['class']}: k = {d['k']}  conjugators {d['conjugators']}  "
                  f"{'verified' if d['verified'] and d['reverified'] else 'FAILED'}")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_chartab(args) -> int:
    path = Path(args.file)
    if not path.exists() and (DATA / args.file).exists():
        path = DATA / args.file
    tab = parse_table(path)
    if not 0 <= args.cls < tab.n_classes:
        raise BadInput(f"column must be in [0, {tab.n_classes})")
    ks = [args.k] if args.k else list(range(1, 6))
    rows = []
    for k in ks:
        r = eval_criterion(tab, args.cls, k)
        rows.append({"k": k, "status": r.status, "nonzero": r.nonzero, "count": r.predicted_count,
                     "rounding_error": r.rounding_error,
                     "sum": [r.value.real, r.value.imag]})
    if args.format == "json":
        print(json.dumps({"table": tab.group, "column": args.cls, "name": tab.names[args.cls],
                          "config_hash": config_hash(args), "results": rows}, indent=1))
    else:
        print(f"{tab.group} column {args.cls} ({tab.names[args.cls]})")
        for r in rows:
            verdict = {True: "1 in C^k", False: "1 not in C^k", None: "inconclusive"}[r["nonzero"]]
            print(f"  k={r['k']}: {verdict}  count {r['count']}  rounding {r['rounding_error']:.1e}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import verify
    tags = args.tag or None
    unknown = set(tags or []) - set(verify.REGISTRY)
    if unknown:
        raise BadInput(f"unknown tags {sorted(unknown)}; known: {sorted(verify.REGISTRY)}")
    results = verify.run(tags)
    for r in results:
        print(r.line(), flush=True)
    failed = sum(not r.ok for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = Parser(prog="classex", description="Generalized exponents of conjugacy classes in finite groups.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("exponent", help="e(C), e(G) and covering numbers with bound verdicts")
    _add_group(p)
    _add_run(p)
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("classes", help="conjugacy classes")
    _add_group(p)
    _add_run(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("bounds", help="lower and upper bounds from the tables")
    p.add_argument("--family", choices=["GL", "SL", "SU", "Sp", "PGL", "PSL", "PSU", "PSp"])
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("witness", help="explicit conjugate tuples with product 1")
    _add_group(p)
    _add_run(p)
    p.add_argument("--class", dest="cls", type=int)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("chartab", help="character criterion on a table file")
    p.add_argument("--file", required=True)
    p.add_argument("--class", dest="cls", type=int, required=True, help="table column")
    p.add_argument("--k", type=_positive)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_chartab)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--tag", action="append", help="restrict to a tag (repeatable)")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LimitExceeded, BudgetExceeded, WitnessBudgetExceeded, MemoryError) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (BadInput, GroupError, TableError, EnumerationError, FileNotFoundError,
            json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
