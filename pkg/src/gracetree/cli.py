"""Command-line interface.

Exit status: 0 when the requested property holds / the command succeeded,
1 on a domain failure (property violated, precondition unmet, cap
exceeded), 2 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from pathlib import Path
from typing import Optional

from . import search
from .dot import to_dot
from .equivalence import lift_to_spike, project_to_contree
from .labelling import (
    Labelling,
    LabellingError,
    VerificationError,
    format_labelling,
    is_graceful,
    is_strongly_graceful,
    parse_labelling,
)
from .lobster import PreconditionError, theorem4_label
from .tree import (
    Matching,
    Tree,
    TreeError,
    contract_matching,
    end_edge_perfect_matching,
    format_matching,
    format_tree,
    is_k_distant,
    parse_matching,
    parse_tree,
    perfect_matching,
    spike,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class DomainError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _read_tree(path: str) -> Tree:
    try:
        return parse_tree(_read(path))
    except TreeError as exc:
        raise InputError(f"{path}: {exc}") from None


def _read_labelling(path: str) -> Labelling:
    try:
        return parse_labelling(_read(path))
    except LabellingError as exc:
        raise InputError(f"{path}: {exc}") from None


def _read_matching(path: str) -> Matching:
    try:
        return parse_matching(_read(path))
    except TreeError as exc:
        raise InputError(f"{path}: {exc}") from None


class _Ctx:
    def __init__(self, args):
        self.quiet = getattr(args, "quiet", False)
        self.out = Path(getattr(args, "out", None) or ".")
        self.max_n = getattr(args, "max_n", None)

    def say(self, text: str = "") -> None:
        if not self.quiet:
            print(text)

    def write(self, name: str, text: str) -> Path:
        self.out.mkdir(parents=True, exist_ok=True)
        p = self.out / name
        p.write_text(text)
        return p


def _check_size(t: Tree, f: Labelling) -> None:
    if f.n != t.n:
        raise InputError(f"labelling has {f.n} entries but tree has {t.n} vertices")


# --------------------------------------------------------------------------
# verify

def cmd_verify(args, ctx: _Ctx) -> int:
    t = _read_tree(args.tree)
    f = _read_labelling(args.labelling)
    _check_size(t, f)
    m: Optional[Matching] = _read_matching(args.matching) if args.matching else None
    if args.strong and m is None:
        m = perfect_matching(t)
        if m is None:
            ctx.say("verdict: NOT strongly graceful (tree has no perfect matching)")
            return EXIT_FAIL
    if m is not None:
        try:
            m.check_in(t)
        except TreeError as exc:
            raise InputError(str(exc)) from None
    labels = Counter()
    for u, v in t.edges:
        d = abs(f[u] - f[v])
        labels[d] += 1
        ctx.say(f"edge {u} {v}: {f[u]} {f[v]} -> {d}")
    ok = is_graceful(t, f)
    for d in sorted(labels):
        if labels[d] > 1:
            ctx.say(f"duplicate edge label {d} on {labels[d]} edges")
    missing = [d for d in range(1, t.n) if d not in labels]
    if missing:
        ctx.say(f"missing edge labels: {' '.join(map(str, missing))}")
    if m is not None:
        for u, v in m:
            s = f[u] + f[v]
            flag = "" if s == t.n - 1 else f"  (expected {t.n - 1})"
            ctx.say(f"matched {u} {v}: sum {s}{flag}")
    if args.strong:
        if not m.is_perfect(t):
            ctx.say("verdict: NOT strongly graceful (matching is not perfect)")
            return EXIT_FAIL
        ok = is_strongly_graceful(t, m, f)
        ctx.say(f"verdict: {'strongly graceful' if ok else 'NOT strongly graceful'}")
    else:
        ctx.say(f"verdict: {'graceful' if ok else 'NOT graceful'}")
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# label

def _classify_failure(t: Tree) -> str:
    if t.n % 2:
        return "odd number of vertices"
    if end_edge_perfect_matching(t) is None:
        return "no end-edge perfect matching"
    if not is_k_distant(t, 2):
        return "not a lobster (not 2-distant)"
    return "outside the lobster family"


def cmd_label(args, ctx: _Ctx) -> int:
    t = _read_tree(args.tree)
    try:
        quad = theorem4_label(t)
    except PreconditionError as exc:
        msg, why = str(exc), _classify_failure(t)
        raise DomainError(msg if why in msg else f"{msg} [{why}]") from None
    names = ("f", "f1", "f2", "f3")
    for name, lab in zip(names, quad.members()):
        ctx.write(f"{name}.txt", format_labelling(lab))
    anchors = "".join(f"{k} {v}\n" for k, v in zip(("v0", "v1", "v2", "u2"), quad.anchors))
    ctx.write("anchors.txt", anchors)
    ctx.write("matching.txt", format_matching(end_edge_perfect_matching(t)))
    ctx.say(f"spine: {' '.join(map(str, quad.spine.vertices))}")
    for name, lab, (k, v) in zip(names, quad.members(), zip(("v0", "v1", "v2", "u2"), quad.anchors)):
        ctx.say(f"{name}: {' '.join(map(str, lab.values))}   zero on {k}={v}")
    ctx.say(f"wrote {', '.join(n + '.txt' for n in names)}, anchors.txt, matching.txt to {ctx.out}")
    return EXIT_OK


# --------------------------------------------------------------------------
# transform

def cmd_transform(args, ctx: _Ctx) -> int:
    t = _read_tree(args.tree)
    op = args.op
    if op == "spike":
        big, m, partner = spike(t)
        ctx.write("tree.txt", format_tree(big))
        ctx.write("matching.txt", format_matching(m))
        ctx.write("map.txt", "".join(f"{v} {partner[v]}\n" for v in range(t.n)))
    elif op == "contract":
        m = _need(args.matching, "--matching", _read_matching)
        try:
            small, vmap = contract_matching(t, m)
        except TreeError as exc:
            raise DomainError(str(exc)) from None
        ctx.write("tree.txt", format_tree(small))
        ctx.write("map.txt", "".join(f"{v} {vmap[v]}\n" for v in range(t.n)))
    elif op == "lift":
        f = _need(args.labelling, "--labelling", _read_labelling)
        _check_size(t, f)
        try:
            big, m, g = lift_to_spike(t, f)
        except LabellingError as exc:
            raise DomainError(str(exc)) from None
        ctx.write("tree.txt", format_tree(big))
        ctx.write("matching.txt", format_matching(m))
        ctx.write("labelling.txt", format_labelling(g))
    elif op == "project":
        m = _need(args.matching, "--matching", _read_matching)
        f = _need(args.labelling, "--labelling", _read_labelling)
        _check_size(t, f)
        try:
            small, h = project_to_contree(t, m, f)
        except (LabellingError, TreeError) as exc:
            raise DomainError(str(exc)) from None
        ctx.write("tree.txt", format_tree(small))
        ctx.write("labelling.txt", format_labelling(h))
    ctx.say(f"{op}: wrote results to {ctx.out}")
    return EXIT_OK


def _need(path, flag, reader):
    if not path:
        raise InputError(f"this transform needs {flag}")
    return reader(path)


# --------------------------------------------------------------------------
# search

def cmd_search(args, ctx: _Ctx) -> int:
    kind, n = args.kind, args.n
    cap = ctx.max_n
    try:
        if kind == "enumerate":
            run = (search.enumerate_report, n, args.family, cap)
        elif kind == "hunt-perms":
            tree = _read_tree(args.tree) if args.tree else None
            scope = "tree" if tree is not None else "family"
            run = (search.hunt_generalized_perms, n, scope, args.family or "any-pm", tree, args.structured, True, args.workers, cap)
        elif kind == "explore-case2b":
            run = (search.explore_case2b, n, 4, args.workers, cap)
        else:
            run = (search.verify_lemma2_part1, n, args.workers, cap)
        fn, *rest = run
        rep = search.timed(fn, *rest) if args.timing else fn(*rest)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    stem = kind.replace("-", "_") + f"_{n}"
    ctx.write(stem + ".txt", rep.to_text())
    ctx.write(stem + ".json", rep.to_json())
    if args.figures:
        from .plotting import plot_report

        ctx.out.mkdir(parents=True, exist_ok=True)
        plot_report(rep, ctx.out / (stem + ".png"))
    ctx.say(rep.to_text().rstrip())
    return EXIT_OK


# --------------------------------------------------------------------------
# export-dot

def cmd_export_dot(args, ctx: _Ctx) -> int:
    t = _read_tree(args.tree)
    f = _read_labelling(args.labelling) if args.labelling else None
    if f is not None:
        _check_size(t, f)
    m = _read_matching(args.matching) if args.matching else None
    try:
        doc = to_dot(t, f, m)
    except TreeError as exc:
        raise InputError(str(exc)) from None
    if getattr(args, "out", None):
        ctx.write("tree.dot", doc)
    sys.stdout.write(doc)
    return EXIT_OK


# --------------------------------------------------------------------------

def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--quiet", action="store_true", help="only report via exit status and files", **d)
    parser.add_argument("--out", metavar="DIR", help="directory for written files (default: .)", **d)
    parser.add_argument("--max-n", type=int, metavar="CAP", help="override the size cap of search commands", **d)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gracetree", description="Graceful and strongly graceful tree labellings.")
    _globals(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check a labelling")
    s.add_argument("tree")
    s.add_argument("labelling")
    s.add_argument("--matching")
    s.add_argument("--strong", action="store_true", help="check strong gracefulness")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("label", parents=[common], help="strong labellings of a lobster with end-edge matching")
    s.add_argument("tree")
    s.set_defaults(func=cmd_label)

    s = sub.add_parser("transform", parents=[common], help="spike / contract / lift / project")
    s.add_argument("op", choices=("spike", "contract", "lift", "project"))
    s.add_argument("tree")
    s.add_argument("--matching")
    s.add_argument("--labelling")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("search", parents=[common], help="exhaustive sweeps")
    s.add_argument("kind", choices=("enumerate", "hunt-perms", "explore-case2b", "verify-lemma2"))
    s.add_argument("n", type=int, help="size (maximum size for the sweeps)")
    s.add_argument("--family", choices=search.FAMILIES)
    s.add_argument("--tree", help="hunt-perms: restrict to this tree")
    s.add_argument("--structured", action="store_true", help="hunt-perms: heuristic candidate filter")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--figures", action="store_true", help="also render a PNG summary")
    s.add_argument("--timing", action="store_true", help="record wall time (reports stop being byte-stable)")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("export-dot", parents=[common], help="Graphviz rendering")
    s.add_argument("tree")
    s.add_argument("--labelling")
    s.add_argument("--matching")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING, format="%(levelname)s: %(message)s")
    ctx = _Ctx(args)
    try:
        return args.func(args, ctx)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, PreconditionError, VerificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
