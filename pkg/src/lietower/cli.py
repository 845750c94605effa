"""Command-line front end: ``lietower <group> <command> ...``.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import free_lie as fl
from . import grasper as gr
from . import hilton_milnor as hm
from . import robinson as rb
from . import trees as tr
from .errors import LieTowerError
from .homology import homology
from .partitions import build_nerve, build_poset, partition_complex_chains
from .perms import Permutation
from .verify import MODULE_CHECKS, run_checks


@dataclass
class CommandResult:
    status: int
    payload: Any = None
    text: str | None = None

    def render(self, as_json: bool) -> str:
        if as_json or self.text is None:
            return json.dumps(self.payload, separators=(",", ":"), ensure_ascii=False)
        return self.text


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


# ----------------------------------------------------------------------------
# helpers

def _perm(text: str, n: int) -> Permutation:
    return Permutation.parse(text, n)


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _group(args) -> gr.FiniteGroupTable:
    if args.group_file:
        with open(args.group_file, encoding="utf-8") as fh:
            return gr.FiniteGroupTable.from_json(fh.read())
    if getattr(args, "cyclic", None):
        return gr.FiniteGroupTable.cyclic(args.cyclic)
    return gr.FiniteGroupTable.trivial()


def _words(words) -> list[str]:
    return [fl.format_word(w) for w in words]


def _lie(text: str, D: int) -> fl.LieElement:
    return fl.LieElement.parse(text, grading=D)


def _matrix_text(rows) -> str:
    rows = [[str(x) for x in r] for r in rows]
    width = max((len(x) for r in rows for x in r), default=1)
    return "\n".join(" ".join(x.rjust(width) for x in r) for r in rows)


def _word_text(w) -> str:
    return "".join(map(str, w))


# ----------------------------------------------------------------------------
# lie

def cmd_lie_basis(args):
    words = _words(fl.lie_basis(args.n))
    return CommandResult(0, words, "\n".join(words))


def cmd_lie_reduce(args):
    e = fl.reduce(_lie(args.expr, args.grading))
    return CommandResult(0, {"element": str(e), "grading": e.grading}, str(e))


def cmd_lie_act(args):
    e = _lie(args.expr, args.grading)
    out = fl.act(_perm(args.perm, e.degree), e)
    return CommandResult(0, {"element": str(out)}, str(out))


def cmd_lie_matrix(args):
    m = fl.action_matrix(args.n, args.grading, _perm(args.perm, args.n)).tolist()
    payload = {"rows": len(m), "cols": len(m), "entries": [[str(x) for x in r] for r in m]}
    return CommandResult(0, payload, _matrix_text(m))


def cmd_lie_character(args):
    sigma = _perm(args.perm, args.n)
    chi = fl.character(args.n, args.grading, sigma)
    return CommandResult(0, {"n": args.n, "D": args.grading, "perm": str(sigma), "character": chi}, str(chi))


def cmd_lie_graft(args):
    e = fl.graft(_lie(args.e1, args.grading), _lie(args.e2, args.grading))
    return CommandResult(0, {"element": str(e)}, str(e))


# ----------------------------------------------------------------------------
# pc

def cmd_pc_poset(args):
    parts = [str(p) for p in build_poset(args.n)]
    return CommandResult(0, {"n": args.n, "count": len(parts), "partitions": parts},
                         "\n".join(parts) if parts else "(empty poset)")


def cmd_pc_nerve(args):
    nerve = build_nerve(args.n)
    counts = nerve.counts()
    payload: dict = {"n": args.n, "dimension": nerve.dim, "counts": counts,
                     "euler_characteristic": nerve.euler_characteristic()}
    lines = [f"dim {k}: {c} simplices" for k, c in enumerate(counts)]
    lines.append(f"euler characteristic {payload['euler_characteristic']}")
    if args.dim is not None:
        chains = [str(c) for c in nerve.chains(args.dim)]
        payload["simplices"] = chains
        lines += chains
    return CommandResult(0, payload, "\n".join(lines))


def cmd_pc_homology(args):
    h = homology(partition_complex_chains(args.n), backend=args.backend)
    if args.all:
        return CommandResult(0, h.to_json_obj(), str(h))
    k = args.n - 3
    return CommandResult(0, {"degree": k, "rank": h.rank(k), "torsion": h.torsion(k)}, str(h))


def cmd_pc_robinson(args):
    n = args.n
    words = fl.lie_basis(n)
    cocycles = [str(rb.robinson_cocycle(Permutation(fl.letters(w)[:-1]), n)) for w in words]
    R = rb.robinson_map(n)
    payload = {"n": n, "cocycles": cocycles, "targets": _words(words), "map": R.to_json_obj()}
    text = "\n".join(f"{c}  ->  {fl.format_word(w)} ⊗ sgn" for c, w in zip(cocycles, words))
    return CommandResult(0, payload, text)


def cmd_pc_equivariance(args):
    report = rb.verify_equivariance(args.n)
    return CommandResult(0 if report.passed else 1, report.to_json_obj(), str(report))


# ----------------------------------------------------------------------------
# tree

def cmd_tree_tmatrix(args):
    T = tr.t_matrix(tr.WeightedTree.parse(args.tree))
    return CommandResult(0, T.to_json_obj(), str(T))


def cmd_tree_ungraft(args):
    t = tr.WeightedTree.parse(args.tree)
    res = tr.ungraft(t, _ints(args.s1), _ints(args.s2))
    if isinstance(res, tr.Basepoint):
        return CommandResult(0, res.to_json_obj(), "basepoint")
    return CommandResult(0, res.to_json_obj(), f"T0 = {res.T0}\nt1 = {res.left}\nt2 = {res.right}")


def cmd_tree_graft(args):
    t = tr.graft_trees(Fraction(args.t0), tr.WeightedTree.parse(args.t1), tr.WeightedTree.parse(args.t2))
    return CommandResult(0, t.to_json_obj(), str(t) + ("  [basepoint]" if t.is_basepoint else ""))


def cmd_tree_caterpillar(args):
    if args.theta:
        theta = [Fraction(x) for x in args.theta.split(",")]
    else:
        rng = random.Random(args.seed)
        theta = tr.random_theta(args.n - 1 if args.n else len(args.perm.split(",")), rng)
    n = len(theta) + 1
    t = tr.caterpillar(_perm(args.perm, n - 1), theta)
    payload = t.to_json_obj()
    payload["theta"] = [str(x) for x in theta]
    if not t.is_basepoint:
        payload["t_matrix"] = tr.t_matrix(t).to_json_obj()
    return CommandResult(0, payload, str(t) + ("  [basepoint]" if t.is_basepoint else ""))


# ----------------------------------------------------------------------------
# hm

def cmd_hm_lyndon(args):
    words = hm.lyndon_words(args.n, args.max_len)
    return CommandResult(0, [list(w) for w in words], "\n".join(_word_text(w) for w in words))


def cmd_hm_basic(args):
    words = hm.basic_words_all_letters(args.n, args.max_len)
    return CommandResult(0, [list(w) for w in words], "\n".join(_word_text(w) for w in words))


def _profile(args, group_order=1) -> hm.RankProfile:
    ranks = tuple(_ints(args.ranks)) if args.ranks else (1,) * args.n
    return hm.RankProfile(args.n, args.c, ranks, group_order)


def _rank_text(res) -> str:
    return f"degree {res[0]}, rank {res[1]}"


def cmd_hm_rank(args):
    res = hm.tofib_first_rank(_profile(args))
    return CommandResult(0, hm.rank_json(res), _rank_text(res))


def cmd_hm_rank_group(args):
    if args.group_order is not None:
        g = hm.INFINITE if args.group_order.lower() in ("inf", "infinite") else int(args.group_order)
    else:
        g = _group(args).order
    res = hm.tofib_first_rank_with_group(_profile(args, g))
    return CommandResult(0, hm.rank_json(res), _rank_text(res))


def cmd_hm_jconn(args):
    k = hm.connectivity_of_J(args.n, args.c)
    return CommandResult(0, {"n": args.n, "c": args.c, "connectivity": k}, str(k))


# ----------------------------------------------------------------------------
# grasper

def _decorated(text: str, args, G) -> gr.DecoratedLieElement:
    return gr.DecoratedLieElement.parse(text, G, grading=args.grading)


def cmd_grasper_reduce(args):
    G = _group(args)
    e = gr.decorated_reduce(_decorated(args.expr, args, G))
    return CommandResult(0, {"element": str(e)}, str(e))


def cmd_grasper_bracket(args):
    G = _group(args)
    e = gr.grasper_bracket(_decorated(args.e1, args, G), _decorated(args.e2, args, G))
    return CommandResult(0, {"element": str(e)}, str(e))


def cmd_grasper_act(args):
    G = _group(args)
    e = _decorated(args.expr, args, G)
    out = gr.decorated_act(_perm(args.perm, e.degree), e)
    return CommandResult(0, {"element": str(out)}, str(out))


def cmd_grasper_rank(args):
    g = args.group_order if args.group_order is not None else _group(args).order
    r = gr.decorated_rank(args.n, args.grading, g)
    return CommandResult(0, {"n": args.n, "D": args.grading, "group_order": g, "rank": r}, str(r))


# ----------------------------------------------------------------------------
# verify

def _verify(numbers, args):
    results = run_checks(numbers, seed=args.seed, max_n=args.max_n)
    ok = all(r.passed for r in results)
    return CommandResult(0 if ok else 1, [r.to_json_obj() for r in results], "\n".join(r.line() for r in results))


def cmd_verify_all(args):
    return _verify(None, args)


def cmd_verify_module(args):
    if args.name not in MODULE_CHECKS:
        raise UsageError(f"unknown module {args.name!r}; choose from {', '.join(MODULE_CHECKS)}")
    return _verify(MODULE_CHECKS[args.name], args)


# ----------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    common.add_argument("--max-n", type=int, default=None, help="cap on n for verification runs")
    common.add_argument("--group-file", default=None, help='group table JSON {"order":g,"table":[[...]]}')

    parser = _Parser(prog="lietower", description="Exact free Lie / partition complex toolkit.")
    top = parser.add_subparsers(dest="group", parser_class=_Parser)

    def sub(group, name, fn: Callable, help_text: str):
        p = group.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    def graded(p):
        p.add_argument("-D", "--grading", type=int, default=0, help="letter degree D")
        return p

    lie = top.add_parser("lie", help="free Lie ring").add_subparsers(dest="cmd", parser_class=_Parser)
    sub(lie, "basis", cmd_lie_basis, "right-normed basis of Lie(n)").add_argument("n", type=int)
    graded(sub(lie, "reduce", cmd_lie_reduce, "reduce to the right-normed basis")).add_argument("expr")
    p = graded(sub(lie, "act", cmd_lie_act, "act by a permutation"))
    p.add_argument("perm", help='one-line "2,1,3" or cycles "(1 2)"')
    p.add_argument("expr")
    p = graded(sub(lie, "matrix", cmd_lie_matrix, "action matrix in the basis"))
    p.add_argument("n", type=int)
    p.add_argument("perm")
    p = graded(sub(lie, "character", cmd_lie_character, "trace of the action"))
    p.add_argument("n", type=int)
    p.add_argument("perm")
    p = graded(sub(lie, "graft", cmd_lie_graft, "reduced bracket on disjoint labels"))
    p.add_argument("e1")
    p.add_argument("e2")

    pc = top.add_parser("pc", help="partition complexes").add_subparsers(dest="cmd", parser_class=_Parser)
    sub(pc, "poset", cmd_pc_poset, "proper partitions of {1..n}").add_argument("n", type=int)
    p = sub(pc, "nerve", cmd_pc_nerve, "simplex counts of the nerve")
    p.add_argument("n", type=int)
    p.add_argument("--dim", type=int, default=None, help="also list the simplices of this dimension")
    p = sub(pc, "homology", cmd_pc_homology, "reduced integer homology")
    p.add_argument("n", type=int)
    p.add_argument("--all", action="store_true", help="every degree, not just n-3")
    p.add_argument("--backend", choices=["numba", "python"], default=None)
    sub(pc, "robinson", cmd_pc_robinson, "Robinson cocycles and map").add_argument("n", type=int)
    sub(pc, "equivariance", cmd_pc_equivariance, "check Σ_n-equivariance").add_argument("n", type=int)

    tree = top.add_parser("tree", help="weighted trees").add_subparsers(dest="cmd", parser_class=_Parser)
    sub(tree, "tmatrix", cmd_tree_tmatrix, "T-matrix of a tree").add_argument("tree")
    p = sub(tree, "ungraft", cmd_tree_ungraft, "split at the root")
    p.add_argument("tree")
    p.add_argument("--s1", required=True, help="comma-separated labels")
    p.add_argument("--s2", required=True, help="comma-separated labels")
    p = sub(tree, "graft", cmd_tree_graft, "graft two trees at height T0")
    p.add_argument("t0")
    p.add_argument("t1")
    p.add_argument("t2")
    p = sub(tree, "caterpillar", cmd_tree_caterpillar, "caterpillar tree of w_σ")
    p.add_argument("perm", help="σ ∈ Σ_{n-1}, one-line")
    p.add_argument("--theta", default=None, help="comma-separated nondecreasing rationals")
    p.add_argument("--n", type=int, default=None, help="arity when θ is drawn at random")

    hmp = top.add_parser("hm", help="Hilton-Milnor words and ranks").add_subparsers(dest="cmd", parser_class=_Parser)
    for name, fn in (("lyndon", cmd_hm_lyndon), ("basic", cmd_hm_basic)):
        p = sub(hmp, name, fn, f"{name} words")
        p.add_argument("n", type=int)
        p.add_argument("max_len", type=int)
    for name, fn in (("rank", cmd_hm_rank), ("rank-group", cmd_hm_rank_group)):
        p = sub(hmp, name, fn, "first nonvanishing degree and rank")
        p.add_argument("n", type=int)
        p.add_argument("c", type=int)
        p.add_argument("--ranks", default=None, help="comma-separated leaf ranks (default all 1)")
        if name == "rank-group":
            p.add_argument("--group-order", default=None, help="integer or 'infinite'")
            p.add_argument("--cyclic", type=int, default=None)
    p = sub(hmp, "jconn", cmd_hm_jconn, "connectivity (n+1)(c+1)")
    p.add_argument("n", type=int)
    p.add_argument("c", type=int)

    gp = top.add_parser("grasper", help="decorated Lie elements").add_subparsers(dest="cmd", parser_class=_Parser)

    def grouped(p):
        p.add_argument("--cyclic", type=int, default=None, help="use the cyclic group of this order")
        return graded(p)

    grouped(sub(gp, "reduce", cmd_grasper_reduce, "reduce a decorated element")).add_argument("expr")
    p = grouped(sub(gp, "bracket", cmd_grasper_bracket, "grasper bracket"))
    p.add_argument("e1")
    p.add_argument("e2")
    p = grouped(sub(gp, "act", cmd_grasper_act, "permute decorated leaves"))
    p.add_argument("perm")
    p.add_argument("expr")
    p = grouped(sub(gp, "rank", cmd_grasper_rank, "free rank (n-1)!·g^n"))
    p.add_argument("n", type=int)
    p.add_argument("--group-order", type=int, default=None)

    vp = top.add_parser("verify", help="acceptance checks").add_subparsers(dest="cmd", parser_class=_Parser)
    sub(vp, "all", cmd_verify_all, "run every criterion")
    sub(vp, "module", cmd_verify_module, "criteria of one module").add_argument("name")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[CommandResult, bool]:
    """Parse and execute; returns the result and whether JSON was requested."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError(parser.format_usage())
    except UsageError as exc:
        return CommandResult(2, {"error": str(exc).strip()}, str(exc).rstrip()), False
    try:
        return args.func(args), args.json
    except UsageError as exc:
        return CommandResult(2, {"error": str(exc)}, str(exc)), args.json
    except (LieTowerError, ValueError, OSError) as exc:
        return CommandResult(1, {"error": f"{type(exc).__name__}: {exc}"}, f"error: {exc}"), args.json


def main(argv: Sequence[str] | None = None) -> int:
    result, as_json = run(argv)
    failed = isinstance(result.payload, dict) and "error" in result.payload
    stream = sys.stderr if failed else sys.stdout
    print(result.render(as_json), file=stream)
    return result.status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
