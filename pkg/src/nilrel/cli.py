"""Command-line front end.  Every command prints a JSON report on stdout and
a one-line summary on stderr.

Exit codes: 0 when a verdict was computed (whatever it is), 2 on usage or
input errors, 3 when an internal consistency check fails.
"""

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .asabtb import ReconstructionError, equiv_asabtb, normal_form, reconstruct_term_asabtb
from .families import KINDS, alternating_chain, build_family_scheme, check_theorem_conditions, family_word
from .identities import counterexample, is_island, is_isoterm, minimal_A, satisfies
from .impossibility import (PatternSystem, SolveStats, chain_cycle_system, crown_system, exists_realizing_word,
                            maelstrom_system, remove_edge)
from .mak import OrderError, equiv_mak, reconstruct_term_mak
from .monoid import build_M_Ak, index_period, load_monoid
from .reproduce import SUITE, reproduce
from .schemes import Scheme, comes_from_term, induced_choices, induced_operation, verify_scheme
from .words import as_word, format_word, parse_word

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "nilrel report",
    "type": "object",
    "required": ["command", "verdict", "details", "bounded", "stats"],
    "properties": {
        "command": {"type": "array", "items": {"type": "string"}},
        "name": {"type": "string"},
        "verdict": {},
        "details": {"type": "object"},
        "bounded": {"type": "object"},
        "stats": {
            "type": "object",
            "required": ["elapsed_s", "threads"],
            "properties": {"elapsed_s": {"type": "number"}, "threads": {"type": "integer", "minimum": 1}},
        },
        "reports": {"type": "array", "items": {"$ref": "#"}},
    },
}


class UsageError(Exception):
    pass


def _json_default(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj, key=str)
    return str(obj)


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _monoid(args):
    try:
        return load_monoid(args.monoid)
    except (ValueError, OSError) as exc:
        raise UsageError(f"bad monoid {args.monoid!r}: {exc}") from exc


def _scheme(path):
    try:
        return Scheme.from_json(_read_json(path))
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad scheme file {path}: {exc}") from exc


def _theta_json(M, theta):
    if theta is None:
        return None
    return {format_word((x,)): M.format_element(a) for x, a in theta.items()}


def _word_list(text):
    return [as_word(w) for w in text.split(",")]


# commands: each returns (verdict, details, bounded, stats)

def cmd_dump_monoid(args):
    M = _monoid(args)
    A = minimal_A(M)
    details = M.to_json()
    details["index_period"] = list(index_period(M))
    details["minimal_A"] = list(A) if A else None
    return len(M), details, {}, {}


def cmd_check_identity(args):
    M = _monoid(args)
    u, v = as_word(args.lhs), as_word(args.rhs)
    k = len(set(u) | set(v))
    if M.zero is None and args.max_assignments and len(M) ** k > args.max_assignments:
        return None, {"lhs": format_word(u), "rhs": format_word(v)}, \
            {"max_assignments": args.max_assignments, "needed": len(M) ** k}, {}
    theta = counterexample(M, u, v)
    return theta is None, {"lhs": format_word(u), "rhs": format_word(v),
                           "counterexample": _theta_json(M, theta)}, {}, {}


def cmd_isoterm(args):
    M = _monoid(args)
    v = is_isoterm(M, as_word(args.word))
    return v.verdict, {"word": args.word, "witness": _words_or_none(v.witness)}, \
        {"bounded_only": v.bounded_only}, v.stats


def cmd_island(args):
    M = _monoid(args)
    v = is_island(M, _word_list(args.words))
    return v.verdict, {"words": args.words, "witness": _words_or_none(v.witness)}, \
        {"bounded_only": v.bounded_only}, v.stats


def _words_or_none(w):
    if w is None:
        return None
    if isinstance(w, tuple) and all(not isinstance(x, tuple) for x in w):
        return format_word(w)
    return str(w)


def cmd_min_alpha(args):
    M = _monoid(args)
    A = minimal_A(M, args.max_alpha, args.max_beta)
    return (list(A) if A else None), {"monoid": M.description}, \
        {"max_alpha": args.max_alpha, "max_beta": args.max_beta}, {}


def cmd_gen_word(args):
    w = family_word(args.family, args.n, args.p, args.q)
    return format_word(w), {"family": args.family, "n": args.n, "p": args.p, "q": args.q,
                            "length": len(w)}, {}, {}


def cmd_build_scheme(args):
    F = build_family_scheme(args.family, args.n, args.p, args.q)
    data = F.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(data, indent=1))
    return data, {"written": args.out}, {}, {}


def cmd_verify_scheme(args):
    M = _monoid(args)
    rep = verify_scheme(M, _scheme(args.scheme))
    return rep["dependency_ok"] and rep["consistency_ok"], rep, {}, {}


def cmd_comes_from_term(args):
    M = _monoid(args)
    F = _scheme(args.scheme)
    res = comes_from_term(M, F, slack=args.slack, max_nodes=args.max_nodes)
    truncated = bool(res["stats"].get("truncated"))
    details = {"word": _words_or_none(res["word"])}
    if "certificate" in res:
        details["certificate"] = res["certificate"]["text"]
        details["certificate_refuted"] = res["certificate"]["refuted"]
    bounded = {"slack": args.slack, "max_nodes": args.max_nodes, "truncated": truncated}
    verdict = res["found"] if res["found"] or not truncated else None
    return verdict, details, bounded, res["stats"]


def cmd_induced_op(args):
    M = _monoid(args)
    F = _scheme(args.scheme)
    try:
        a = [M.index(parse_word(s) if M.graded else s) for s in args.tuple.split(",")]
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad tuple {args.tuple!r}: {exc}") from exc
    value = induced_operation(F, M, a)
    choices = {f"{i},{j}": M.format_element(b) for (i, j), b in induced_choices(F, M, a).items()}
    return M.format_element(value), {"choices": choices, "well_defined": len(set(choices.values())) == 1}, {}, {}


def _system(args):
    if args.system:
        try:
            return PatternSystem.from_json(_read_json(args.system))
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad system file: {exc}") from exc
    builders = {"chain": chain_cycle_system, "maelstrom": maelstrom_system, "crown": crown_system}
    if not args.builtin:
        raise UsageError("give --system FILE or --builtin KIND")
    return builders[args.builtin](args.n, args.p, args.q)


def cmd_pattern_solve(args):
    sys_ = _system(args)
    if args.remove_edge:
        x, y = (int(s) for s in args.remove_edge.split(","))
        if (x, y) not in sys_.edge_pattern:
            raise UsageError(f"({x},{y}) is not an edge")
        sys_ = remove_edge(sys_, (x, y))
    if args.profile:
        profile = [int(s) for s in args.profile.split(",")]
        if len(profile) == 1:
            profile = profile[0]
        elif len(profile) != sys_.n:
            raise UsageError(f"profile needs 1 or {sys_.n} entries")
    elif args.builtin:
        profile = args.p + args.q
    else:
        raise UsageError("--profile is required with --system")
    st = SolveStats()
    w = exists_realizing_word(sys_, profile, stats=st, max_nodes=args.max_nodes)
    verdict = format_word(w) if w else (None if st.truncated else "no word")
    return verdict, {"system": sys_.to_json()}, {"max_nodes": args.max_nodes, "truncated": st.truncated}, \
        {"nodes": st.nodes, "dead_states": st.dead_states}


def cmd_mak_equiv(args):
    return equiv_mak(args.u, args.v, args.kappa), {"kappa": args.kappa}, {}, {}


def cmd_mak_reconstruct(args):
    F = _scheme(args.scheme)
    M = build_M_Ak(args.alphabet, args.kappa)
    try:
        w = reconstruct_term_mak(F, args.kappa, M)
    except OrderError as exc:
        triple = [f"{p}x{x}" for x, p in exc.triple] if exc.triple else None
        return False, {"error": str(exc), "triple": triple}, {}, {}
    return True, {"word": format_word(w)}, {}, {}


def cmd_asabtb_nf(args):
    return format_word(normal_form(as_word(args.word))), {"word": args.word}, {}, {}


def cmd_asabtb_equiv(args):
    return equiv_asabtb(args.u, args.v, method=args.method), {"method": args.method}, {}, {}


def cmd_asabtb_reconstruct(args):
    F = _scheme(args.scheme)
    try:
        w = reconstruct_term_asabtb(F)
    except ReconstructionError as exc:
        return False, {"error": str(exc), "pair": list(exc.pair) if exc.pair else None}, {}, {}
    return True, {"word": format_word(w)}, {}, {}


def cmd_check_conditions(args):
    M = _monoid(args)
    rep = check_theorem_conditions(args.family, M, args.p, args.q)
    for c in ("iii", "iv"):
        if c in rep:
            rep[c]["witness"] = _words_or_none(rep[c]["witness"])
            if "word" in rep[c]:
                rep[c]["word"] = format_word(rep[c]["word"])
            if "words" in rep[c]:
                rep[c]["words"] = [format_word(w) for w in rep[c]["words"]]
    return rep["ok"], rep, {"condition_i_sizes": rep["i"]["sizes"]}, {}


def cmd_alternating_chain(args):
    rows = alternating_chain(args.kappa_max, args.n)
    for r in rows:
        r["A_word"] = _words_or_none(r["A_word"])
    ok = all(r["chain_limited"] and r["B_scheme_ok"] and not r["B_comes_from_term"]
             and r["A_scheme_ok"] and r["A_comes_from_term"] for r in rows)
    return ok, {"rows": rows}, {"kappa_max": args.kappa_max}, {}


def cmd_schema(args):
    return True, {"schema": REPORT_SCHEMA}, {}, {}


COMMANDS = {}


def _parser():
    p = argparse.ArgumentParser(prog="nilrel", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--threads", type=int, default=None, help="worker cap (also NILREL_THREADS)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        COMMANDS[name] = fn
        return sp

    def monoid_arg(sp):
        sp.add_argument("--monoid", required=True, help="description file, or inline like 'M:abab,aabb'")

    def family_args(sp, need_n=True):
        sp.add_argument("--family", choices=KINDS, required=True)
        if need_n:
            sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p", type=int, default=1)
        sp.add_argument("--q", type=int, default=1)

    sp = add("dump-monoid", cmd_dump_monoid, "print a monoid's table")
    monoid_arg(sp)
    sp = add("check-identity", cmd_check_identity, "decide u = v")
    monoid_arg(sp)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp.add_argument("--max-assignments", type=int, default=None)
    sp = add("isoterm", cmd_isoterm, "is the word an isoterm")
    monoid_arg(sp)
    sp.add_argument("--word", required=True)
    sp = add("island", cmd_island, "is the word set an island")
    monoid_arg(sp)
    sp.add_argument("--words", required=True, help="comma separated")
    sp = add("min-alpha", cmd_min_alpha, "least (alpha, beta) for the A laws")
    monoid_arg(sp)
    sp.add_argument("--max-alpha", type=int, default=8)
    sp.add_argument("--max-beta", type=int, default=8)
    sp = add("gen-word", cmd_gen_word, "chain, maelstrom or crown word")
    family_args(sp)
    sp = add("build-scheme", cmd_build_scheme, "scheme from a word family")
    family_args(sp)
    sp.add_argument("--out", default=None)
    sp = add("verify-scheme", cmd_verify_scheme, "dependency and consistency")
    monoid_arg(sp)
    sp.add_argument("--scheme", required=True)
    sp = add("comes-from-term", cmd_comes_from_term, "search for a term the scheme comes from")
    monoid_arg(sp)
    sp.add_argument("--scheme", required=True)
    sp.add_argument("--slack", type=int, default=None)
    sp.add_argument("--max-nodes", type=int, default=None)
    sp = add("induced-op", cmd_induced_op, "value of the scheme's operation at a tuple")
    monoid_arg(sp)
    sp.add_argument("--scheme", required=True)
    sp.add_argument("--tuple", required=True, help="comma separated element labels")
    sp = add("pattern-solve", cmd_pattern_solve, "find a word realising a pattern system")
    sp.add_argument("--system", default=None)
    sp.add_argument("--builtin", choices=KINDS, default=None)
    sp.add_argument("--n", type=int, default=5)
    sp.add_argument("--p", type=int, default=1)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--profile", default=None, help="one count, or one per letter")
    sp.add_argument("--remove-edge", default=None, help="x,y")
    sp.add_argument("--max-nodes", type=int, default=None)
    sp = add("mak-equiv", cmd_mak_equiv, "decide u = v over M(A_kappa)")
    sp.add_argument("--kappa", type=int, required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp = add("mak-reconstruct", cmd_mak_reconstruct, "term for a scheme over M(A_kappa)")
    sp.add_argument("--kappa", type=int, required=True)
    sp.add_argument("--scheme", required=True)
    sp.add_argument("--alphabet", default="ab")
    sp = add("asabtb-nf", cmd_asabtb_nf, "normal form over M(asabtb)")
    sp.add_argument("--word", required=True)
    sp = add("asabtb-equiv", cmd_asabtb_equiv, "decide u = v over M(asabtb)")
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--method", choices=("nf", "support", "both"), default="both")
    sp = add("asabtb-reconstruct", cmd_asabtb_reconstruct, "term for a scheme over M(asabtb)")
    sp.add_argument("--scheme", required=True)
    sp = add("check-conditions", cmd_check_conditions, "hypotheses for a word family")
    family_args(sp, need_n=False)
    monoid_arg(sp)
    sp = add("alternating-chain", cmd_alternating_chain, "M(B_k) / M(A_k) alternation")
    sp.add_argument("--kappa-max", type=int, default=2)
    sp.add_argument("--n", type=int, default=5)
    sp = add("reproduce", None, "run a named example, or all of them")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--list", action="store_true")
    add("schema", cmd_schema, "print the report JSON schema")
    return p


def _threads(args):
    if args.threads is not None:
        n = args.threads
    else:
        env = os.environ.get("NILREL_THREADS")
        try:
            n = int(env) if env else 1
        except ValueError as exc:
            raise UsageError(f"NILREL_THREADS must be an integer, got {env!r}") from exc
    if n < 1:
        raise UsageError("thread count must be positive")
    return n


def _run_reproduce(args, argv, threads):
    if args.list:
        return {"command": argv, "verdict": list(SUITE), "details": {}, "bounded": {},
                "stats": {"elapsed_s": 0.0, "threads": threads}}
    if args.all == bool(args.name):
        raise UsageError("give an example name or --all")
    names = list(SUITE) if args.all else [args.name]
    if args.name and args.name not in SUITE:
        raise UsageError(f"unknown example {args.name!r}; try --list")
    reports = []
    t0 = time.perf_counter()
    for name in names:
        r = reproduce(name)
        r["command"] = ["reproduce", name]
        r["stats"]["threads"] = threads
        reports.append(r)
    if len(reports) == 1:
        report = reports[0]
        report["command"] = argv
        return report
    return {"command": argv, "verdict": {r["name"]: r["verdict"] for r in reports}, "details": {},
            "bounded": {}, "stats": {"elapsed_s": round(time.perf_counter() - t0, 3), "threads": threads},
            "reports": reports}


def _summary(report):
    v = report["verdict"]
    text = json.dumps(v, default=_json_default)
    if len(text) > 160:
        text = text[:157] + "..."
    return f"{' '.join(report['command'][:2])}: {text}"


def run(argv=None):
    """Run one command; returns ``(exit code, report or None)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    try:
        threads = _threads(args)
        if args.command == "reproduce":
            report = _run_reproduce(args, argv, threads)
        else:
            t0 = time.perf_counter()
            verdict, details, bounded, stats = COMMANDS[args.command](args)
            stats = dict(stats)
            stats["elapsed_s"] = round(time.perf_counter() - t0, 3)
            stats["threads"] = threads
            report = {"command": argv, "verdict": verdict, "details": details, "bounded": bounded,
                      "stats": stats}
    except (UsageError, ValueError) as exc:
        print(f"nilrel: error: {exc}", file=sys.stderr)
        return 2, None
    except (RuntimeError, AssertionError) as exc:
        print(f"nilrel: internal check failed: {exc}", file=sys.stderr)
        return 3, None
    report = json.loads(json.dumps(report, default=_json_default))
    print(json.dumps(report, indent=1))
    print(_summary(report), file=sys.stderr)
    return 0, report


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
