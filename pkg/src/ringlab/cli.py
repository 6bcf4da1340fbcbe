"""Command line front end.

Exit codes: 0 success, 1 refuted verdict (or a search hit with --fail-on-hit),
2 usage error, 3 parse or elaboration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dsl import (
    ElaborationError,
    ParseError,
    elaborate,
    elaborate_module,
    format_canonical,
    format_elem,
    is_symbolic,
    parse_gens,
    parse_modexpr,
    parse_ring_expr,
    resolve_gens,
)
from .ideals import FLAG_NAMES, CapacityError, all_ideals
from .modules import SUBMODULE_FLAGS, generate_submodule, module_flags
from .ring import ring_flags
from .verdict import REFUTED

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _kv_table(pairs):
    width = max((len(k) for k, _ in pairs), default=0)
    return "".join(f"{k.ljust(width)}  {_show(v)}\n" for k, v in pairs)


def _show(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return ", ".join(_show(x) for x in v)
    return str(v)


def _names(R, mask_members):
    return [R.names[a] for a in mask_members]


def _wit_names(R, w, M=None):
    if w is None:
        return None
    if M is not None:
        if isinstance(w[1], str):
            return [R.names[w[0]], w[1]]
        return [R.names[w[0]], M.names[w[1]]]
    return [R.names[a] for a in w]


def _ring(text):
    ast = parse_ring_expr(text)
    return ast, elaborate(ast)


# ring / construct ----------------------------------------------------------------

def cmd_ring_info(args, out):
    from .bits import members

    ast, R = _ring(args.ring)
    if is_symbolic(ast):
        info = {"ring": format_canonical(ast), "tier": "symbolic", "kind": R.kind}
    else:
        fl = ring_flags(R)
        info = {
            "ring": format_canonical(ast),
            "tier": "finite",
            "order": R.order,
            "characteristic": R.characteristic,
            "units": _names(R, members(R.units_mask)),
            "zero_divisors": _names(R, members(R.zd_mask)),
            "nilradical": _names(R, members(R.nil_mask)),
            "ideals": len(all_ideals(R)),
            "uz": fl.is_uz,
            "reduced": fl.is_reduced,
            "domain": fl.is_domain,
            "field": fl.is_field,
            "boolean": fl.is_boolean,
        }
    out.write(_dump(info) if args.format == "json" else _kv_table(list(info.items())))
    return EXIT_OK


def cmd_construct(args, out):
    ast, R = _ring(args.expr)
    if is_symbolic(ast):
        raise ElaborationError("construct needs a finite ring expression")
    if args.show == "flags":
        return cmd_ring_info(argparse.Namespace(ring=args.expr, format=args.format), out)
    if args.format == "json":
        out.write(_dump({"ring": format_canonical(ast), "elements": list(R.names),
                         "add": R.add.tolist(), "mul": R.mul.tolist()}))
        return EXIT_OK
    for sym, table in (("+", R.add), ("*", R.mul)):
        w = max(len(n) for n in R.names)
        out.write(" ".join([sym.rjust(w), "|"] + [n.rjust(w) for n in R.names]) + "\n")
        out.write("-" * ((w + 1) * (R.order + 2)) + "\n")
        for a in R.elements:
            out.write(" ".join([R.names[a].rjust(w), "|"] + [R.names[b].rjust(w) for b in table[a]]) + "\n")
        out.write("\n")
    return EXIT_OK


# ideals ---------------------------------------------------------------------------

def _finite_ideal_record(R, I):
    fl = I.flags
    rec = {"ideal": I.describe(), "size": I.size}
    rec["flags"] = {name: bool(fl.get(name)) for name in FLAG_NAMES}
    rec["witnesses"] = {k: _wit_names(R, v) for k, v in sorted(fl.witnesses.items())}
    return rec


def _sym_ideal_record(R, gens):
    from .symbolic.rings import decide_ideal, format_sym_elem, sym_ideal

    I = sym_ideal(R, [_elem_value(g) for g in gens])
    rec = {"ideal": I.describe(), "flags": {}, "witnesses": {}}
    if not I.is_proper:
        rec["flags"]["proper"] = False
        return rec
    rec["flags"]["proper"] = True
    names = ("semi_r",) if R.kind == "idz" else ("semi_r", "semiprime", "r", "prime")
    if R.kind == "poly":
        names = ("semi_r", "semiprime", "prime")
    for name in names:
        v = decide_ideal(I, name)
        rec["flags"][name] = v.status
        if v.status == REFUTED:
            w = v.witness
            parts = w if isinstance(w, tuple) and name in ("r", "prime") else (w,)
            rec["witnesses"][name] = [format_sym_elem(R, p) if R.kind == "poly" else format_elem(p) for p in parts]
    return rec


def _elem_value(e):
    return tuple(_elem_value(x) for x in e) if isinstance(e, tuple) else e


def _flags_table(rec):
    pairs = [(k, rec[k]) for k in ("ring", "module", "ideal", "submodule") if k in rec]
    for k, v in rec["flags"].items():
        w = rec["witnesses"].get(k)
        pairs.append((k, f"{_show(v)}" + (f"  witness ({', '.join(w)})" if w else "")))
    return _kv_table(pairs)


def cmd_ideal_classify(args, out):
    ast, R = _ring(args.ring)
    gens = parse_gens(args.gens)
    if is_symbolic(ast):
        rec = _sym_ideal_record(R, gens)
    else:
        rec = _finite_ideal_record(R, resolve_gens(R, gens))
    rec = {"ring": format_canonical(ast), **rec}
    out.write(_dump(rec) if args.format == "json" else _flags_table(rec))
    return EXIT_OK


def cmd_ideal_list(args, out):
    from .harness import parse_flag_expr

    ast, R = _ring(args.ring)
    if is_symbolic(ast):
        raise ElaborationError("ideal list needs a finite ring")
    pred = parse_flag_expr(args.filter, FLAG_NAMES) if args.filter else (lambda f: True)
    recs = [_finite_ideal_record(R, I) for I in all_ideals(R) if pred(I.flags)]
    if args.format == "json":
        out.write(_dump({"ring": format_canonical(ast), "ideals": recs}))
        return EXIT_OK
    short = ("proper", "prime", "semiprime", "r", "n", "semi_n", "semi_r")
    head = ["ideal"] + list(short)
    rows = [head] + [[r["ideal"]] + ["y" if r["flags"][k] else "." for k in short] for r in recs]
    widths = [max(len(row[i]) for row in rows) for i in range(len(head))]
    for row in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")
    return EXIT_OK


# modules --------------------------------------------------------------------------

def cmd_module_classify(args, out):
    ast, R = _ring(args.ring)
    mexpr = parse_modexpr(args.module)
    gens = parse_gens(args.gens)
    if is_symbolic(ast):
        from .symbolic.zmodules import sym_classify_submodule, sym_submodule, zmodule_from_modexpr

        M = zmodule_from_modexpr(mexpr)
        N = sym_submodule(M, [_elem_value(g) for g in gens])
        cls = sym_classify_submodule(N)
        rec = {"ring": format_canonical(ast), "module": args.module, "submodule": N.describe(),
               "flags": dict(cls.flags),
               "witnesses": {k: [str(v[0]), M.format(v[1]) if isinstance(v[1], tuple) else str(v[1])]
                             for k, v in sorted(cls.witnesses.items())}}
    else:
        M = elaborate_module(R, mexpr)
        N = generate_submodule(M, [M.element(format_elem(g)) for g in gens])
        fl = N.flags
        mf = module_flags(M)
        rec = {"ring": format_canonical(ast), "module": args.module, "submodule": N.describe(),
               "module_flags": {"faithful": mf.is_faithful, "multiplication": mf.is_multiplication,
                                "torsion": mf.is_torsion, "torsion_free": mf.is_torsion_free},
               "flags": {name: bool(fl.get(name)) for name in SUBMODULE_FLAGS},
               "witnesses": {k: _wit_names(R, v, M) for k, v in sorted(fl.witnesses.items())}}
    out.write(_dump(rec) if args.format == "json" else _flags_table(rec))
    return EXIT_OK


# verify / search / fixtures ----------------------------------------------------------

def cmd_verify(args, out):
    from .corpus import default_corpus, read_corpus_file
    from .harness import check_ids, report_json, report_table, run_suite

    spec = read_corpus_file(args.corpus) if args.corpus else default_corpus()
    ids = None
    if args.suite != "all":
        ids = [s.strip() for s in args.suite.split(",") if s.strip()]
        unknown = [i for i in ids if i not in check_ids()]
        if unknown:
            raise UsageError(f"unknown check ids: {', '.join(unknown)}")
    report = run_suite(spec, ids)
    text = report_json(report, args.timing) if args.format == "json" else report_table(report, args.timing)
    out.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report_json(report, args.timing))
    if args.plot:
        from .plotting import plot_report

        plot_report(report, args.plot)
    return EXIT_OK if report.ok else EXIT_REFUTED


def cmd_search(args, out):
    from .corpus import default_corpus
    from .harness import search_counterexamples

    hits = search_counterexamples(args.property, default_corpus(), max_order=args.max_order, kind=args.kind)
    if args.format == "json":
        out.write(_dump({"property": args.property, "hits": [{"carrier": h.carrier, "object": h.obj} for h in hits]}))
    else:
        for h in hits:
            out.write(f"{h.carrier}: {h.obj}\n")
        out.write(f"{len(hits)} hit(s)\n")
    return EXIT_REFUTED if hits and args.fail_on_hit else EXIT_OK


def cmd_fixtures(args, out):
    from .fixtures import format_witness, get_fixture, load_registry, run_fixture

    if args.action == "list":
        recs = [{"id": r.id, "scope": r.scope, "claims": len(r.claims), "anchor": r.anchor} for r in load_registry()]
        if args.format == "json":
            out.write(_dump(recs))
        else:
            w = max(len(r["id"]) for r in recs)
            for r in recs:
                out.write(f"{r['id'].ljust(w)}  {r['scope'].ljust(5)}  {r['anchor']}\n")
        return EXIT_OK
    if args.all == bool(args.id):
        raise UsageError("fixtures run takes exactly one of --id ID or --all")
    try:
        records = list(load_registry()) if args.all else [get_fixture(args.id)]
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    results, ok = [], True
    for rec in records:
        res = run_fixture(rec)
        ok &= res.ok
        for r in res.results:
            results.append({"fixture": rec.id, "claim": r.claim.describe(), "expected": r.claim.expected,
                            "status": r.verdict.status,
                            "witness": None if r.verdict.witness is None else format_witness(r.claim, r.verdict.witness),
                            "ring": r.claim.ring, "match": r.matches})
        if not rec.claims:
            results.append({"fixture": rec.id, "claim": "(out of scope, no claims)", "expected": None,
                            "status": None, "witness": None, "ring": None, "match": True})
    if args.format == "json":
        out.write(_dump(results))
    else:
        for r in results:
            mark = "ok  " if r["match"] else "FAIL"
            wit = f"  witness {r['witness']} in {r['ring']}" if r["witness"] else ""
            out.write(f"{mark}  {r['fixture']}: {r['claim']} -> {r['status'] or '-'}{wit}\n")
    return EXIT_OK if ok else EXIT_REFUTED


# parser ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("table", "json"), default="table")
    p = _Parser(prog="ringlab", description="finite rings, semi r-ideals and semi r-submodules")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ring = sub.add_parser("ring").add_subparsers(dest="action", required=True, parser_class=_Parser)
    info = ring.add_parser("info", parents=[fmt])
    info.add_argument("--ring", required=True)
    info.set_defaults(fn=cmd_ring_info)

    ideal = sub.add_parser("ideal").add_subparsers(dest="action", required=True, parser_class=_Parser)
    cl = ideal.add_parser("classify", parents=[fmt])
    cl.add_argument("--ring", required=True)
    cl.add_argument("--gens", required=True)
    cl.set_defaults(fn=cmd_ideal_classify)
    ls = ideal.add_parser("list", parents=[fmt])
    ls.add_argument("--ring", required=True)
    ls.add_argument("--filter")
    ls.set_defaults(fn=cmd_ideal_list)

    module = sub.add_parser("module").add_subparsers(dest="action", required=True, parser_class=_Parser)
    mc = module.add_parser("classify", parents=[fmt])
    mc.add_argument("--ring", required=True)
    mc.add_argument("--module", required=True)
    mc.add_argument("--gens", required=True)
    mc.set_defaults(fn=cmd_module_classify)

    con = sub.add_parser("construct", parents=[fmt])
    con.add_argument("--expr", required=True)
    con.add_argument("--show", choices=("table", "flags"), default="table")
    con.set_defaults(fn=cmd_construct)

    ver = sub.add_parser("verify", parents=[fmt])
    ver.add_argument("--suite", default="all", help="'all' or a comma list of check ids")
    ver.add_argument("--corpus", help="file with one ring expression per line")
    ver.add_argument("--report", help="also write the JSON report here")
    ver.add_argument("--plot", help="write a bar chart of instances and hypothesis hits (PNG)")
    ver.add_argument("--timing", action="store_true", help="include wall-clock millis (breaks byte determinism)")
    ver.set_defaults(fn=cmd_verify)

    se = sub.add_parser("search", parents=[fmt])
    se.add_argument("--property", required=True)
    se.add_argument("--max-order", type=int)
    se.add_argument("--kind", choices=("ideal", "submodule"))
    se.add_argument("--fail-on-hit", action="store_true")
    se.set_defaults(fn=cmd_search)

    fx = sub.add_parser("fixtures", parents=[fmt])
    fx.add_argument("action", choices=("list", "run"))
    fx.add_argument("--id")
    fx.add_argument("--all", action="store_true")
    fx.set_defaults(fn=cmd_fixtures)
    return p


def main(argv=None, out=None, err=None):
    from .harness import FlagExprError
    from .symbolic.rings import SymbolicError

    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.fn(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"parse error {exc}\n")
        return EXIT_PARSE
    except (ElaborationError, CapacityError, SymbolicError, FlagExprError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
