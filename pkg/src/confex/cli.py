"""Command-line entry point: ``confex <subcommand> ...``.

Exit codes: 0 success, 2 usage or format error, 3 pattern not contained
(``check``), 4 search stopped by a node or time cap.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys

from . import amat, __version__
from .classify import classify_family
from .constructions import (Partition, augment_to_simple, collapse_partition,
                            construct_identity_lb, construct_pair_family_lb,
                            construct_single_pair_avoider)
from .containment import Mode, contains
from .decomposition import build_tree, chain
from .extraction import Strategy, extract_configuration, extract_submatrix
from .matrix import AlphMatrix, code_to_column, column_code
from .patterns import PatternSyntaxError, build_family, parse_patterns, realize
from .ramsey import bound_main, ramsey_upper, u_value, v_value
from .search import forb_exact, forbmax_exact

EXIT_OK, EXIT_USAGE, EXIT_ABSENT, EXIT_INCOMPLETE = 0, 2, 3, 4
_STATUS = {EXIT_OK: "ok", EXIT_ABSENT: "not_contained", EXIT_INCOMPLETE: "incomplete"}

log = logging.getLogger("confex")


class UsageError(Exception):
    pass


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("CONFEX_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"CONFEX_THREADS must be an integer, got {env!r}")
    return 1


def _load(path: str) -> AlphMatrix:
    try:
        return amat.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")


def _family(exprs, r, base_dir="."):
    if not exprs:
        raise UsageError("at least one --forbid pattern is required")
    return build_family(exprs, r, base_dir)


def _show(M: AlphMatrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in M.to_rows()) if M.rows else ""


def _canonical(M: AlphMatrix) -> AlphMatrix:
    return AlphMatrix(M.alphabet, M.rows,
                      tuple(sorted(M.columns, key=lambda c: column_code(c, M.alphabet))))


# subcommands; each returns (exit code, json payload)

def cmd_gen(args):
    if args.pattern:
        specs = parse_patterns(args.pattern, ".")
        mats = [realize(s) for s in specs]
        for k, (spec, M) in enumerate(zip(specs, mats)):
            if k:
                print()
            print(f"# {spec.label()}")
            print(_show(M))
        if args.out:
            if len(mats) != 1:
                raise UsageError("--out needs a single pattern")
            amat.dump(mats[0], args.out, specs[0].label())
        return EXIT_OK, {"patterns": [{"label": s.label(), "rows": M.to_rows()}
                                      for s, M in zip(specs, mats)]}
    if args.random:
        m, n = args.random
        rng = random.Random(args.seed)
        r = args.r
        if args.simple:
            if n > r ** m:
                raise UsageError(f"only {r ** m} distinct columns exist on {m} rows")
            codes = sorted(rng.sample(range(r ** m), n))
            cols = tuple(code_to_column(c, m, r) for c in codes)
        else:
            cols = tuple(tuple(rng.randrange(r) for _ in range(m)) for _ in range(n))
        M = AlphMatrix(r, m, cols)
        print(amat.dumps(M), end="")
        if args.out:
            amat.dump(M, args.out, f"random seed={args.seed}")
        return EXIT_OK, {"seed": args.seed, "rows": M.to_rows(), "alphabet": r}
    raise UsageError("gen needs --pattern or --random")


def cmd_check(args):
    A = _load(args.matrix)
    mode = Mode.parse(args.mode)
    specs = [s for e in args.forbid for s in parse_patterns(e, ".")]
    if not specs:
        raise UsageError("at least one --forbid pattern is required")
    results = []
    code = EXIT_ABSENT
    for spec in specs:
        w = contains(realize(spec), A, mode)
        entry = {"pattern": spec.to_json(), "label": spec.label(), "mode": mode.value,
                 "contained": w is not None}
        if w is not None:
            entry.update(rows=list(w.rows), cols=list(w.cols))
            code = EXIT_OK
            print(f"{spec.label()}: contained rows={list(w.rows)} cols={list(w.cols)}")
        else:
            print(f"{spec.label()}: not contained")
        results.append(entry)
    return code, {"results": results}


def cmd_forb(args):
    fam = _family(args.forbid, args.r)
    kw = dict(max_nodes=args.max_nodes, timeout=args.timeout,
              row_symmetry=args.row_symmetry, threads=_threads(args))
    if args.max:
        rep = forbmax_exact(args.m, args.r, fam, args.s, **kw)
    else:
        rep = forb_exact(args.m, args.r, fam, args.s, **kw)
    print(rep.value)
    if args.verbose:
        print(f"# nodes={rep.nodes_explored} complete={rep.complete} "
              f"elapsed={rep.elapsed:.3f}s", file=sys.stderr)
        print(_show(rep.witness), file=sys.stderr)
    return (EXIT_OK if rep.complete else EXIT_INCOMPLETE), rep.to_json()


def cmd_decompose(args):
    A = _load(args.matrix)
    if args.tree:
        tree = build_tree(A, args.s, args.node_budget)

        def walk(node, indent):
            tag = "root" if node.pivot is None else f"pivot {node.pivot}"
            print(f"{'  ' * indent}{tag}: {node.matrix.rows}x{node.matrix.ncols} bound {node.s}")
            for ch in node.children:
                walk(ch, indent + 1)

        walk(tree.root, 0)
        print(f"depth {tree.depth}, max branching {tree.max_branching}, "
              f"{tree.node_count} nodes{' (partial)' if tree.partial else ''}")
        return EXIT_OK, tree.to_json()
    steps = chain(A, args.s)
    print("pivot  |G|            |C|  |A1|")
    out = []
    for cs in steps:
        st = cs.step
        print(f"{cs.pivot:5d}  {str(list(st.g_sizes)):13s}  {st.C.ncols:3d}  {st.A1.ncols:4d}")
        out.append({"pivot": cs.pivot, "g_sizes": list(st.g_sizes),
                    "C": st.C.ncols, "A1": st.A1.ncols,
                    "C_matrix": _canonical(st.C).to_rows()})
    return EXIT_OK, {"s": args.s, "steps": out}


def cmd_extract(args):
    A = _load(args.matrix)
    mode = Mode.parse(args.mode)
    if mode is Mode.SUBMATRIX:
        res = extract_submatrix(A, args.ell)
    else:
        res = extract_configuration(A, args.ell, Strategy.parse(args.strategy), mode,
                                    branching_budget=args.branching_budget)
    if res.found:
        print(f"{res.spec().label()} rows={list(res.witness.rows)} "
              f"cols={list(res.witness.cols)} ({res.witness.mode.value}, {res.strategy.value})")
    else:
        print("absent")
    for line in res.diagnostics:
        print(f"# {line}")
    return EXIT_OK, res.to_json()


def cmd_classify(args):
    fam = _family(args.forbid, args.r)
    g = classify_family(fam, d_extra=args.d_extra)
    print(g.verdict.value.upper())
    if g.certificate is not None:
        c = g.certificate
        print(f"certificate: {c.kind.name.lower()} structure on pair {c.pair}, "
              f"avoids every member at m={sorted(c.checked)}: {all(c.checked.values())}")
    else:
        for (i, j), cov in sorted(g.coverage.items()):
            print(f"({i},{j}) identity<-{list(cov['identity'])} "
                  f"triangular<-{list(cov['triangular'])}")
    return EXIT_OK, g.to_json()


def cmd_ramsey(args):
    if args.u:
        val = u_value(*args.u)
        print(val)
        return EXIT_OK, {"u": str(val), "ell": args.u[0], "r": args.u[1]}
    if args.v:
        val = v_value(*args.v)
        print(val)
        return EXIT_OK, {"v": str(val), "ell": args.v[0], "r": args.v[1], "t": args.v[2]}
    if args.bound_main:
        rep = bound_main(*args.bound_main)
        for k, v in rep.__dict__.items():
            if v is not None:
                print(f"{k}: {v}")
        return EXIT_OK, rep.to_json()
    if not args.ks:
        raise UsageError("ramsey needs clique sizes or one of --u/--v/--bound-main")
    val = ramsey_upper(*args.ks)
    print(val)
    return EXIT_OK, {"ks": args.ks, "bound": str(val)}


def cmd_construct(args):
    if args.kind == "single-pair":
        M = construct_single_pair_avoider(args.m, args.t, args.a, args.b, args.e)
    elif args.kind == "pair-family":
        M = construct_pair_family_lb(args.m, args.r, args.t)
    else:
        M = construct_identity_lb(args.m, args.r, args.t)
    if args.augment:
        M = augment_to_simple(M, args.t)
    print(amat.dumps(M), end="")
    if args.out:
        amat.dump(M, args.out, f"{args.kind} m={args.m} r={args.r} t={args.t}")
    return EXIT_OK, {"kind": args.kind, "rows": M.rows, "cols": M.ncols,
                     "alphabet": M.alphabet, "matrix": M.to_rows()}


def cmd_collapse(args):
    A = _load(args.matrix)
    try:
        pi = Partition.parse(args.partition)
    except ValueError as exc:
        raise UsageError(f"bad partition: {exc}")
    B = collapse_partition(A, pi)
    print(amat.dumps(B), end="")
    if args.out:
        amat.dump(B, args.out)
    return EXIT_OK, {"rows": B.rows, "cols": B.ncols, "alphabet": B.alphabet,
                     "matrix": B.to_rows()}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write a JSON report ('-' for stdout)")
    common.add_argument("--threads", type=int, help="worker cap (default: $CONFEX_THREADS or 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized utilities")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="confex", description="Forbidden configurations in r-matrices.")
    p.add_argument("--version", action="version", version=f"confex {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="realize a pattern or a random matrix")
    g.add_argument("--pattern")
    g.add_argument("--random", nargs=2, type=int, metavar=("ROWS", "COLS"))
    g.add_argument("-r", "--r", type=int, default=2)
    g.add_argument("--simple", action="store_true", help="random columns without repeats")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", parents=[common], help="containment test")
    c.add_argument("--forbid", action="append", default=[])
    c.add_argument("--matrix", required=True)
    c.add_argument("--mode", default="configuration")
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("forb", parents=[common], help="exact extremal value")
    f.add_argument("-m", type=int, required=True)
    f.add_argument("-r", type=int, default=2)
    f.add_argument("-s", type=int, default=1)
    f.add_argument("--forbid", action="append", default=[])
    f.add_argument("--max-nodes", type=int)
    f.add_argument("--timeout", type=float)
    f.add_argument("--row-symmetry", action="store_true")
    f.add_argument("--max", action="store_true", help="forbmax over m' <= m")
    f.set_defaults(func=cmd_forb)

    d = sub.add_parser("decompose", parents=[common], help="pivot decomposition")
    d.add_argument("matrix")
    d.add_argument("-s", type=int, default=1)
    d.add_argument("--tree", action="store_true")
    d.add_argument("--node-budget", type=int, default=10_000)
    d.set_defaults(func=cmd_decompose)

    e = sub.add_parser("extract", parents=[common], help="extract an I/T witness")
    e.add_argument("matrix")
    e.add_argument("--ell", type=int, default=2)
    e.add_argument("--mode", default="configuration")
    e.add_argument("--strategy", default="direct")
    e.add_argument("--branching-budget", type=int, default=8)
    e.set_defaults(func=cmd_extract)

    k = sub.add_parser("classify", parents=[common], help="constant or linear growth")
    k.add_argument("-r", "--r", type=int)
    k.add_argument("--forbid", action="append", default=[])
    k.add_argument("--d-extra", type=int, default=0)
    k.set_defaults(func=cmd_classify)

    rm = sub.add_parser("ramsey", parents=[common], help="Ramsey bound calculators")
    rm.add_argument("ks", nargs="*", type=int)
    rm.add_argument("--u", nargs=2, type=int, metavar=("ELL", "R"))
    rm.add_argument("--v", nargs=3, type=int, metavar=("ELL", "R", "T"))
    rm.add_argument("--bound-main", nargs=2, type=int, metavar=("ELL", "R"))
    rm.set_defaults(func=cmd_ramsey)

    cs = sub.add_parser("construct", parents=[common], help="lower-bound constructions")
    cs.add_argument("--kind", required=True, choices=["pair-family", "identity-lb", "single-pair"])
    cs.add_argument("--m", type=int, required=True)
    cs.add_argument("--r", type=int, default=2)
    cs.add_argument("--t", type=int, default=2)
    cs.add_argument("--a", type=int, default=0)
    cs.add_argument("--b", type=int, default=1)
    cs.add_argument("--e", type=int)
    cs.add_argument("--augment", action="store_true", help="append rows to make it simple")
    cs.add_argument("--out")
    cs.set_defaults(func=cmd_construct)

    cl = sub.add_parser("collapse", parents=[common], help="merge symbols by a partition")
    cl.add_argument("matrix")
    cl.add_argument("--partition", required=True)
    cl.add_argument("--out")
    cl.set_defaults(func=cmd_collapse)
    return p


def _write_json(dest, command, code, payload):
    report = {"command": command, "status": _STATUS.get(code, "error"), "exit_code": code,
              "result": payload}
    text = json.dumps(report, indent=2, sort_keys=True)
    if dest == "-":
        print(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"confex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        code, payload = args.func(args)
    except (UsageError, PatternSyntaxError, amat.FormatError) as exc:
        print(f"confex: error: {exc}", file=sys.stderr)
        code, payload = EXIT_USAGE, {"error": str(exc)}
    except ValueError as exc:
        print(f"confex: error: {exc}", file=sys.stderr)
        code, payload = EXIT_USAGE, {"error": str(exc)}
    if args.json:
        _write_json(args.json, args.command, code, payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
