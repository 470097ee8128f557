"""Command-line entry point.

Output is JSON on stdout unless ``--format csv`` is given; diagnostics and
timings go to stderr.  Exit status: 0 success, 1 input error, 2 resource
guard refusal, 3 a verifier found a counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from . import codes, editops, experiments, extremal, graph, lcsscs, limits, word
from ._parallel import default_workers
from .errors import InputError, ResourceGuardError, VerificationError
from .word import Word

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _word_arg(text: str) -> Word:
    try:
        return Word(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _range_arg(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep or not lo.strip().isdigit() or not hi.strip().isdigit():
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    return range(int(lo), int(hi) + 1)


def _positions_arg(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad position list {text!r}") from exc


# -- output helpers ---------------------------------------------------------

class Result:
    """What a command produced: a JSON document and optionally a table."""

    def __init__(self, doc: Any, table: list[dict] | None = None, status: int = EXIT_OK,
                 file_text: str | None = None) -> None:
        self.doc = doc
        self.table = table
        self.status = status
        self.file_text = file_text


def _emit(res: Result, args: argparse.Namespace) -> None:
    fmt = getattr(args, "format", None) or "json"
    out = getattr(args, "out", None)
    if out and res.file_text is not None:
        Path(out).write_text(res.file_text)
    elif out and res.table is not None:
        Path(out).write_text(experiments.rows_to_csv(res.table))
    if fmt == "csv":
        if res.table is None:
            raise InputError("this command has no tabular output; use --format json")
        sys.stdout.write(experiments.rows_to_csv(res.table))
    else:
        sys.stdout.write(json.dumps(res.doc, indent=2) + "\n")


# -- command implementations -------------------------------------------------

def _cmd_word(args) -> Result:
    if args.action == "subword":
        return Result({"word": word.subword(args.u, args.positions).text})
    if args.action == "subinterval":
        return Result({"word": word.subinterval(args.u, args.x, args.y).text})
    if args.action == "nonrepeating":
        return Result({"u": args.u.text, "lambda": args.lam,
                       "nonrepeating": word.is_lambda_nonrepeating(args.u, args.lam)})
    if args.action == "prefix":
        return Result({"word": word.periodic_prefix(args.u, args.m).text})
    count = word.count_lambda_repeating(args.n, args.lam)
    return Result({"n": args.n, "lambda": args.lam, "repeating": count,
                   "union_bound": word.repeating_union_bound(args.n, args.lam)})


def _script(text: str, base: Word) -> editops.EditScript:
    return editops.EditScript.parse(text, len(base))


def _cmd_script(args, workers: int) -> Result:
    a = args.action
    if a == "apply":
        return Result({"word": editops.apply(args.u, _script(args.script, args.u)).text})
    if a == "derive":
        s = editops.script_from_pair(args.u, args.v)
        return Result({"script": editops.format_script(s), "ops": len(s),
                       "deletions": s.deletions, "insertions": s.insertions})
    if a == "compose":
        s1 = _script(args.s1, args.u)
        mid = editops.apply(args.u, s1)
        s2 = _script(args.s2, mid)
        s3 = editops.compose(args.u, s1, s2)
        return Result({"script": editops.format_script(s3), "ops": len(s3),
                       "word": editops.apply(args.u, s3).text})
    if a == "isolated":
        s = editops.EditScript.parse(args.script, args.n)
        return Result({"isolated": sorted(editops.isolated_positions(s, args.lam))})
    report = editops.verify_isolation_lemma(args.n, args.k, args.lam, args.trials,
                                            args.seed, workers)
    _timing(report.runtime_ms)
    return Result(report.to_dict(), status=EXIT_COUNTEREXAMPLE if report.count else EXIT_OK)


def _cmd_optimal(args, kind: str) -> Result:
    fn = {"lcs": lcsscs.lcs_set, "scs": lcsscs.scs_set, "mcs": lcsscs.mcs_set}[kind]
    res = fn(args.u, args.v)
    return Result(res.to_dict(), [{"string": w.text} for w in res.strings])


def _cmd_mult(args) -> Result:
    u, v = args.u, args.v
    doc = {"u": u.text, "v": v.text, "lcs_len": lcsscs.lcs_len(u, v),
           "scs_len": lcsscs.scs_len(u, v), "m_lcs": lcsscs.lcs_set(u, v).count,
           "m_scs": lcsscs.scs_set(u, v).count}
    if len(u) == len(v):
        doc["distance"] = lcsscs.deletion_distance(u, v)
    return Result(doc)


def _cmd_phi(args) -> Result:
    if args.invert is not None:
        w = lcsscs.phi_invert(args.u, args.v, args.invert)
        return Result({"y": args.invert.text, "w": w.text})
    if args.w is None:
        table = [{"w": w.text, "phi": lcsscs.phi(args.u, args.v, w).text}
                 for w in lcsscs.lcs_set(args.u, args.v).strings]
        return Result({"u": args.u.text, "v": args.v.text, "map": table}, table)
    return Result({"w": args.w.text, "phi": lcsscs.phi(args.u, args.v, args.w).text})


def _cmd_extremal(args) -> Result:
    if args.action == "ell":
        return Result({"a": args.a, "b": args.b, "ell": extremal.ell(args.a, args.b)})
    if args.action == "m":
        return Result({"a": args.a, "b": args.b, "m": extremal.m_closed(args.a, args.b)})
    if args.action == "verify":
        report = extremal.verify_extremal(args.c_max)
        _timing(report.runtime_ms)
        return Result(report.to_dict(), report.details["rows"],
                      EXIT_COUNTEREXAMPLE if report.count else EXIT_OK)
    report = extremal.verify_closed_forms(args.a_max, args.b_max)
    _timing(report.runtime_ms)
    cols = ("a", "b", "ell_closed", "ell_bruteforce", "m_closed", "m_bruteforce", "match")
    table = [{c: r[c] for c in cols} for r in report.details["rows"]]
    # mismatches outside the middle regime are the documented boundary set
    claimed = [r for r in report.details["rows"] if not r["match"] and r["regime"] == "middle"]
    return Result(report.to_dict(), table, EXIT_COUNTEREXAMPLE if claimed else EXIT_OK)


def _cmd_graph(args, workers: int) -> Result:
    if args.action == "stats":
        started = time.perf_counter()
        stats = graph.graph_stats(graph.DeletionGraph(args.n, args.k), workers)
        _timing(int((time.perf_counter() - started) * 1000))
        return Result(stats.to_dict(), [stats.to_dict()])
    if args.action == "neighbors":
        g = graph.DeletionGraph(len(args.u), args.k)
        nb = sorted(graph.neighborhood(g, args.u))
        return Result({"u": args.u.text, "k": args.k, "degree": len(nb),
                       "neighbors": [w.text for w in nb]})
    if args.action == "adjacent":
        g = graph.DeletionGraph(len(args.u), args.k)
        return Result({"adjacent": graph.adjacent(g, args.u, args.v)})
    ns = args.n_range if args.n_range is not None else [args.n]
    if ns == [None]:
        raise InputError("graph triples needs --n or --n-range")
    rows = []
    for n in ns:
        count = graph.good_triple_census(n, args.a, args.b, args.c)
        row = {"n": n, "a": args.a, "b": args.b, "c": args.c, "count": count}
        if n >= 2:
            row["reference"] = graph.good_triple_reference(n, args.a, args.b, args.c)
            row["reference_alt"] = graph.good_triple_reference(
                n, args.a, args.b, args.c, log_exponent=args.a + args.b - args.c)
        rows.append(row)
    return Result(rows[0] if len(rows) == 1 else rows, rows)


def _code_doc(code: codes.Code) -> dict:
    return {"n": code.n, "k": code.k, "size": len(code), "construction": code.construction,
            "valid": codes.is_valid_code(code), "words": [w.text for w in code.words]}


def _cmd_code(args, workers: int) -> Result:
    if args.action in ("vt", "greedy"):
        if args.action == "vt":
            code = codes.vt_code(args.n, args.residue)
        elif args.exact:
            code = codes.exact_max_code(args.n, args.k)
        else:
            code = codes.greedy_code(args.n, args.k, args.order)
        doc = _code_doc(code)
        return Result(doc, [{"word": w} for w in doc["words"]], file_text=codes.format_code(code))
    if args.action == "check":
        code = codes.read_code(args.file)
        valid = codes.is_valid_code(code)
        doc = {"n": code.n, "k": code.k, "size": len(code), "valid": valid}
        return Result(doc, status=EXIT_OK if valid else EXIT_COUNTEREXAMPLE)
    report = codes.unique_scs_census(args.n, args.k, workers)
    _timing(report.runtime_ms)
    return Result(report.to_dict())


def _cmd_experiment(args, workers: int) -> Result:
    abc = (args.a, args.b, args.c) if args.a is not None else None
    out = getattr(args, "out", None)
    rows = experiments.experiment_trends(args.kind, args.n_range, args.k, out, abc, workers)
    records = [r.as_record() for r in rows]
    if out:
        return Result({"kind": args.kind, "out": str(out), "rows": len(records)})
    return Result(records, records)


def _timing(ms: int) -> None:
    print(f"runtime_ms={ms}", file=sys.stderr)


# -- parser ------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS,
                   help="output format on stdout (default json)")
    g.add_argument("--out", type=Path, default=argparse.SUPPRESS,
                   help="also write the table (or code file) to PATH")
    g.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                   help="worker processes for censuses (default: DELCODE_THREADS or CPU count)")
    g.add_argument("--config", type=Path, default=argparse.SUPPRESS,
                   help="key=value file presetting guards and defaults")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="delcode", parents=[common],
                     description="Exact combinatorics of binary words under deletions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name, help_text, schema):
        return parent.add_parser(name, parents=[common], help=help_text,
                                 epilog=f"JSON output: {schema}")

    def pair(p):
        p.add_argument("--u", type=_word_arg, required=True)
        p.add_argument("--v", type=_word_arg, required=True)

    # word
    wp = sub.add_parser("word", help="word predicates and constructors")
    ws = wp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(ws, "subword", "u_S for a position set", '{"word"}')
    p.add_argument("--u", type=_word_arg, required=True)
    p.add_argument("--positions", type=_positions_arg, required=True, help="e.g. 1,4")
    p = leaf(ws, "subinterval", "u_x ... u_y", '{"word"}')
    p.add_argument("--u", type=_word_arg, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p = leaf(ws, "nonrepeating", "is u lambda-nonrepeating", '{"u", "lambda", "nonrepeating"}')
    p.add_argument("--u", type=_word_arg, required=True)
    p.add_argument("--lam", type=int, required=True)
    p = leaf(ws, "prefix", "u^<m>", '{"word"}')
    p.add_argument("--u", type=_word_arg, required=True)
    p.add_argument("--m", type=int, required=True)
    p = leaf(ws, "count-repeating", "count lambda-repeating words of length n",
             '{"n", "lambda", "repeating", "union_bound"}')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lam", type=int, required=True)

    # script
    sp = sub.add_parser("script", help="edit scripts (ops like D@7,I0@4,I1@0)")
    ss = sp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(ss, "apply", "apply a script to u", '{"word"}')
    p.add_argument("--u", type=_word_arg, required=True)
    p.add_argument("--script", required=True)
    p = leaf(ss, "derive", "canonical minimal script from u to v",
             '{"script", "ops", "deletions", "insertions"}')
    pair(p)
    p = leaf(ss, "compose", "combine two scripts into one on u", '{"script", "ops", "word"}')
    p.add_argument("--u", type=_word_arg, required=True)
    p.add_argument("--s1", required=True)
    p.add_argument("--s2", required=True, help="script on the word produced by --s1")
    p = leaf(ss, "isolated", "lambda-isolated positions of a script", '{"isolated"}')
    p.add_argument("--n", type=int, required=True, help="base word length")
    p.add_argument("--script", required=True)
    p.add_argument("--lam", type=int, required=True)
    p = leaf(ss, "verify-isolation", "sampled check that isolated edits force distance > k",
             '{"parameters", "count", "reference_value", "sampled", "tested", "counterexamples"}')
    for flag in ("--n", "--k", "--lam", "--trials"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    # optimal sets
    for name, what in (("lcs", "all distinct LCS's"), ("scs", "all distinct SCS's"),
                       ("mcs", "all minimal common supersequences")):
        p = leaf(sub, name, what, '{"kind", "opt_length", "count", "strings"}')
        pair(p)
    p = leaf(sub, "mult", "LCS/SCS lengths and multiplicities",
             '{"u", "v", "lcs_len", "scs_len", "m_lcs", "m_scs", "distance"?}')
    pair(p)
    p = leaf(sub, "phi", "the LCS -> SCS injection (all LCS's when --w is omitted)",
             '{"w", "phi"} | {"y", "w"} | {"u", "v", "map"}')
    pair(p)
    p.add_argument("--w", type=_word_arg)
    p.add_argument("--invert", type=_word_arg, metavar="Y")

    # extremal
    ep = sub.add_parser("extremal", help="closed forms for ((10)^<a>, (0110)^<b>)")
    es = ep.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("ell", "m"):
        p = leaf(es, name, f"closed-form {name}(a, b)", '{"a", "b", "%s"}' % name)
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
    p = leaf(es, "verify", "check the extremal family for c = 1..c_max",
             '{"parameters", "count" (failures), "rows": [{"c", "distance", "m_lcs", "m_scs", ...}]}')
    p.add_argument("--c-max", type=int, required=True)
    p = leaf(es, "grid", "closed forms vs brute force on a grid (CSV table)",
             '{"parameters", "count" (mismatches), "rows", "mismatch_cells"}')
    p.add_argument("--a-max", type=int, default=20)
    p.add_argument("--b-max", type=int, default=20)

    # graph
    gp = sub.add_parser("graph", help="the k-deletion graph")
    gs = gp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(gs, "stats", "N, max degree, triangles, independence lower bound",
             '{"n", "k", "N", "max_degree", "triangles", "bollobas_bound"}')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = leaf(gs, "triples", "ordered triples with bounded pairwise distances",
             '{"n", "a", "b", "c", "count", "reference", "reference_alt"} (a list for --n-range)')
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", type=_range_arg)
    for flag in ("--a", "--b", "--c"):
        p.add_argument(flag, type=int, required=True)
    p = leaf(gs, "neighbors", "neighborhood of u", '{"u", "k", "degree", "neighbors"}')
    p.add_argument("--u", type=_word_arg, required=True)
    p.add_argument("--k", type=int, required=True)
    p = leaf(gs, "adjacent", "adjacency test", '{"adjacent"}')
    pair(p)
    p.add_argument("--k", type=int, required=True)

    # codes
    cp = sub.add_parser("code", help="k-deletion codes")
    cs = cp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    code_schema = '{"n", "k", "size", "construction", "valid", "words"}'
    p = leaf(cs, "vt", "Varshamov-Tenengolts code", code_schema)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--residue", type=int, default=0)
    p = leaf(cs, "greedy", "greedy maximal code", code_schema)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--order", default="lex", help="lex (default), gray or random:SEED")
    p.add_argument("--exact", action="store_true", help="exact maximum code (n <= 6)")
    p = leaf(cs, "check", "validate a code file", '{"n", "k", "size", "valid"}')
    p.add_argument("file", type=Path)
    p = leaf(cs, "unique-scs", "pairs at distance k with more than one SCS",
             '{"parameters", "count", "reference_value"}')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    # experiments
    p = leaf(sub, "experiment", "trend tables (CSV) against reference curves",
             "list of {n, k, ..., measured, reference, ratio}")
    p.add_argument("kind", choices=experiments.KINDS)
    p.add_argument("--n-range", type=_range_arg, required=True, help="e.g. 8..13")
    p.add_argument("--k", type=int, default=1)
    for flag in ("--a", "--b", "--c"):
        p.add_argument(flag, type=int)
    return parser


def load_config(path: Path) -> dict[str, str]:
    values = {}
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InputError(f"bad config line {line!r}")
        values[key.strip()] = value.strip()
    return values


def _dispatch(args: argparse.Namespace) -> Result:
    workers = getattr(args, "threads", None)
    config = load_config(args.config) if getattr(args, "config", None) else {}
    if workers is None and "threads" in config:
        workers = int(config.pop("threads"))
    config.pop("threads", None)
    limits.configure(**{k: int(v) for k, v in config.items()})
    workers = default_workers() if workers is None else workers
    if workers < 1:
        raise InputError("--threads must be at least 1")
    cmd = args.command
    if cmd == "word":
        return _cmd_word(args)
    if cmd == "script":
        return _cmd_script(args, workers)
    if cmd in ("lcs", "scs", "mcs"):
        return _cmd_optimal(args, cmd)
    if cmd == "mult":
        return _cmd_mult(args)
    if cmd == "phi":
        return _cmd_phi(args)
    if cmd == "extremal":
        return _cmd_extremal(args)
    if cmd == "graph":
        return _cmd_graph(args, workers)
    if cmd == "code":
        return _cmd_code(args, workers)
    return _cmd_experiment(args, workers)


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    saved = dict(vars(limits.LIMITS))
    try:
        res = _dispatch(args)
        if args.command == "experiment" and not hasattr(args, "format"):
            args.format = "json" if getattr(args, "out", None) else "csv"
        _emit(res, args)
        return res.status
    except InputError as exc:
        print(f"delcode: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceGuardError as exc:
        print(f"delcode: refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except VerificationError as exc:
        print(f"delcode: counterexample: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    finally:
        limits.configure(**saved)


def main() -> None:
    sys.exit(run_command())
