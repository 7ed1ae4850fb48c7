"""Exhaustive desk-scale searches.

Free-tree enumeration, complete graceful / strongly graceful labelling
search, the hunt for generalised strong permutations, and the sweeps that
probe the open cases around lobsters. Every sweep returns a SearchReport
whose text and JSON renderings are byte-deterministic: instances are
processed in canonical order and merged in that order whatever the worker
count.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterator, Optional, Sequence

import networkx as nx

from .labelling import (
    LabelPermutation,
    Labelling,
    anchor_layout,
    apply_perm,
    extract_anchor_path,
    format_labelling,
    is_generalized_strong_perm,
    is_graceful,
    is_strongly_graceful,
    klein_group,
    parse_labelling,
)
from .tree import (
    Matching,
    Spine,
    Tree,
    canonical_form,
    diameter,
    end_edge_perfect_matching,
    is_k_distant,
    longest_paths,
    cover_radius,
    make_spine,
    perfect_matching,
    validate_spine,
)

# all caps are configuration; callers may pass their own
CAPS = {
    "free_trees": 18,
    "graceful": 14,
    "strong": 16,
    "perm_scan": 14,  # complete pair-reduced permutation hunt
    "case2b": 16,
    "lemma2": 14,
}

FAMILIES = ("any-pm", "end-edge-pm", "lobster-end-edge-pm", "three-distant-end-edge-pm")


class CapExceeded(ValueError):
    pass


def _cap(name: str, n: int, cap: Optional[int]) -> None:
    limit = CAPS[name] if cap is None else cap
    if n > limit:
        raise CapExceeded(f"{name}: n={n} exceeds the cap of {limit}")


def _pmap(fn: Callable, items: Sequence, workers: int) -> list:
    """Order-preserving map, optionally over a process pool."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=1))


# --------------------------------------------------------------------------
# enumeration

def tree_from_levels(levels: Sequence[int]) -> Tree:
    """Tree from a rooted level sequence (preorder depths, root at depth 0)."""
    edges = []
    stack: list[int] = []
    for v, d in enumerate(levels):
        del stack[d:]
        if stack:
            edges.append((stack[-1], v))
        stack.append(v)
    return Tree(len(levels), tuple(edges))


def enumerate_free_trees(n: int, cap: Optional[int] = None) -> list[Tree]:
    """One tree per isomorphism class, ordered by canonical form.

    Each representative is rebuilt from its canonical level sequence, so
    vertex 0 is a center and ids follow the canonical preorder.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    _cap("free_trees", n, cap)
    return list(_free_trees(n))


@lru_cache(maxsize=None)
def _free_trees(n: int) -> tuple[Tree, ...]:
    if n == 1:
        return (Tree(1, ()),)
    forms = {canonical_form(Tree(n, tuple(g.edges()))) for g in nx.nonisomorphic_trees(n)}
    return tuple(tree_from_levels([int(x) for x in cf.split(b",")]) for cf in sorted(forms))


def enumerate_family(n: int, family: str, cap: Optional[int] = None) -> list[tuple[Tree, Matching]]:
    """Free trees on ``n`` vertices in ``family`` with their (unique) perfect matching."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if n % 2:
        return []
    out = []
    for t in enumerate_free_trees(n, cap):
        if family == "any-pm":
            m = perfect_matching(t)
        else:
            m = end_edge_perfect_matching(t)
            if m is not None and family == "lobster-end-edge-pm" and not is_k_distant(t, 2):
                m = None
            if m is not None and family == "three-distant-end-edge-pm" and not is_k_distant(t, 3):
                m = None
        if m is not None:
            out.append((t, m))
    return out


# --------------------------------------------------------------------------
# labelling search

def _labelling_search(t: Tree, partner: Optional[Sequence[int]]) -> list[tuple[int, ...]]:
    """Every graceful labelling (strong when ``partner`` is given).

    Edge labels are realised from the largest down. For the largest label
    not yet present, branch on which edge carries it and which pair of
    vertex labels it joins; each labelling is therefore produced once.
    """
    n = t.n
    if n == 1:
        return [(0,)]
    adj = t.adj
    edges = t.edges
    lab = [-1] * n
    at = [-1] * n  # label -> vertex
    used_e = [False] * n
    out: list[tuple[int, ...]] = []

    def put(v: int, b: int, trail: list) -> bool:
        # label v with b; record undo info in trail; False on conflict
        if lab[v] == b:
            return True
        if lab[v] >= 0 or at[b] >= 0:
            return False
        lab[v] = b
        at[b] = v
        trail.append(("v", v))
        for w in adj[v]:
            if lab[w] >= 0:
                d = abs(b - lab[w])
                if used_e[d]:
                    return False
                used_e[d] = True
                trail.append(("e", d))
        if partner is not None:
            return put(partner[v], n - 1 - b, trail)
        return True

    def undo(trail: list) -> None:
        for kind, x in reversed(trail):
            if kind == "v":
                at[lab[x]] = -1
                lab[x] = -1
            else:
                used_e[x] = False

    def rec(L: int) -> None:
        while L >= 1 and used_e[L]:
            L -= 1
        if L == 0:
            out.append(tuple(lab))
            return
        for a in range(0, n - L):
            b = a + L
            va, vb = at[a], at[b]
            if va >= 0 and vb >= 0:
                continue
            if va >= 0 or vb >= 0:
                anchor, free = (va, b) if va >= 0 else (vb, a)
                for w in adj[anchor]:
                    if lab[w] < 0:
                        trail: list = []
                        if put(w, free, trail):
                            rec(L - 1)
                        undo(trail)
                continue
            for u, v in edges:
                if lab[u] >= 0 or lab[v] >= 0:
                    continue
                for x, y in ((u, v), (v, u)):
                    trail = []
                    if put(x, a, trail) and put(y, b, trail):
                        rec(L - 1)
                    undo(trail)

    rec(n - 1)
    return out


def _orbit_min(vals: tuple[int, ...], perms: Sequence[LabelPermutation]) -> tuple[int, ...]:
    return min(tuple(g.mapping[b] for b in vals) for g in perms)


def brute_force_labellings(
    t: Tree,
    mode: str = "graceful",
    m: Optional[Matching] = None,
    dedup_mod_group: bool = False,
    cap: Optional[int] = None,
) -> list[Labelling]:
    """All graceful (``mode="graceful"``) or strongly graceful (``mode="strong"``) labellings.

    Sorted by value tuple. With ``dedup_mod_group`` only the smallest member
    of each orbit under {e, r} (graceful) or {e, r, g1, g2} (strong) is kept.
    """
    if mode == "graceful":
        _cap("graceful", t.n, cap)
        partner = None
    elif mode == "strong":
        _cap("strong", t.n, cap)
        if m is None or not m.is_perfect(t):
            raise ValueError("strong mode needs a perfect matching of the tree")
        partner = [m.partner[v] for v in range(t.n)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    found = sorted(_labelling_search(t, partner))
    if dedup_mod_group:
        if mode == "strong":
            group = list(klein_group(t.n).values())
        else:
            group = [LabelPermutation(tuple(range(t.n))), LabelPermutation(tuple(range(t.n - 1, -1, -1)))]
        found = [vals for vals in found if _orbit_min(vals, group) == vals]
    return [Labelling(v) for v in found]


# --------------------------------------------------------------------------
# reports

@dataclass
class SearchReport:
    kind: str
    params: dict[str, Any]
    instances: list[dict[str, Any]] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    heuristic: bool = False
    timing: Optional[float] = None  # only set on request; breaks byte-determinism

    def to_dict(self) -> dict[str, Any]:
        d = {
            "kind": self.kind,
            "params": self.params,
            "heuristic": self.heuristic,
            "summary": self.summary,
            "instances": self.instances,
        }
        if self.timing is not None:
            d["timing_seconds"] = round(self.timing, 3)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SearchReport":
        d = json.loads(text)
        return cls(d["kind"], d["params"], d["instances"], d["summary"], d["heuristic"], d.get("timing_seconds"))

    def to_text(self) -> str:
        lines = [f"# {self.kind}"]
        lines += [f"{k}: {_short(v)}" for k, v in sorted(self.params.items())]
        if self.heuristic:
            lines.append("NOTE: candidate set restricted heuristically; not exhaustive")
        lines.append("")
        for i, inst in enumerate(self.instances):
            head = f"[{i}] n={inst.get('n')} form={inst.get('form', '-')}"
            rest = " ".join(f"{k}={_short(inst[k])}" for k in sorted(inst) if k not in _BULKY and k not in ("n", "form"))
            lines.append(f"{head} {rest}".rstrip())
        lines.append("")
        lines += [f"{k}: {_short(v)}" for k, v in sorted(self.summary.items())]
        if self.timing is not None:
            lines.append(f"time: {self.timing:.3f}s")
        return "\n".join(lines) + "\n"

    def witnesses(self) -> Iterator[tuple[dict, Labelling]]:
        for inst in self.instances:
            for w in inst.get("witnesses", []):
                yield inst, parse_labelling(w)

    def revalidate(self) -> None:
        """Re-check every witness labelling against the checkers; raise AssertionError on failure."""
        for inst, f in self.witnesses():
            t = Tree(inst["n"], tuple(tuple(e) for e in inst["edges"]))
            if inst.get("matching") is not None:
                m = Matching.of(tuple(p) for p in inst["matching"])
                ok = is_strongly_graceful(t, m, f)
            else:
                ok = is_graceful(t, f)
            if not ok:
                raise AssertionError(f"witness {f.values} fails on instance {inst.get('form')}")


_BULKY = {"edges", "matching", "witnesses", "perms", "spine", "zero_vertices", "layouts"}


def _short(v: Any) -> str:
    if isinstance(v, (list, tuple)) and len(v) > 12:
        return f"[{len(v)} items]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_short(x)}" for k, x in sorted(v.items())) + "}"
    return str(v)


def _record(t: Tree, m: Optional[Matching]) -> dict[str, Any]:
    rec = {"n": t.n, "form": canonical_form(t).decode(), "edges": [list(e) for e in t.edges]}
    if m is not None:
        rec["matching"] = [list(p) for p in m]
    return rec


def enumerate_report(n: int, family: Optional[str] = None, cap: Optional[int] = None) -> SearchReport:
    if family is None:
        items = [(t, None) for t in enumerate_free_trees(n, cap)]
    else:
        items = enumerate_family(n, family, cap)
    rep = SearchReport("enumerate", {"n": n, "family": family or "all"})
    rep.instances = [_record(t, m) for t, m in items]
    rep.summary = {"count": len(items)}
    return rep


# --------------------------------------------------------------------------
# generalised permutation hunt

class _PermHunt:
    """Backtracking over permutations that map complementary pairs to complementary pairs.

    In any strong labelling every pair {b, n-1-b} is a matched pair, so a
    generalised strong permutation must send complementary pairs to
    complementary pairs; the search is therefore complete. The matched
    edges then keep distinct odd labels automatically and only the
    unmatched edges (label pairs of equal parity) need checking: their
    images must be distinct even labels.
    """

    def __init__(self, n: int, pools: Sequence[Sequence[tuple[int, int]]], structured: bool = False):
        self.n = n
        self.half = n // 2
        self.structured = structured
        # constraint (pool index, a, b) becomes checkable once both pair indices are assigned
        self.by_step: list[list[tuple[int, int, int]]] = [[] for _ in range(self.half)]
        for k, pairs in enumerate(pools):
            for a, b in pairs:
                step = max(min(a, n - 1 - a), min(b, n - 1 - b))
                self.by_step[step].append((k, a, b))
        self.used = [set() for _ in pools]
        self.g = [-1] * n
        self.taken = [False] * self.half
        self.found: list[tuple[int, ...]] = []

    def _consistent(self, step: int, trail: list) -> bool:
        g = self.g
        for k, a, b in self.by_step[step]:
            d = abs(g[a] - g[b])
            if d % 2 or d in self.used[k]:
                return False
            self.used[k].add(d)
            trail.append((k, d))
        return True

    def _structured_allows(self, step: int, j: int, c: int) -> bool:
        # involution with uniform parity behaviour (all labels keep parity, or all flip)
        if j < step:
            if self.g[c] != step:
                return False
        elif self.taken[step]:
            return False
        if step > 0 and (c % 2 != step % 2) != (self.g[0] % 2 == 1):
            return False
        return True

    def run(self) -> list[tuple[int, ...]]:
        self._rec(0)
        return sorted(self.found)

    def _rec(self, step: int) -> None:
        n, g = self.n, self.g
        if step == self.half:
            self.found.append(tuple(g))
            return
        lo, hi = step, n - 1 - step
        for j in range(self.half):
            if self.taken[j]:
                continue
            for c in (j, n - 1 - j):
                if self.structured and not self._structured_allows(step, j, c):
                    continue
                g[lo], g[hi] = c, n - 1 - c
                self.taken[j] = True
                trail: list = []
                if self._consistent(step, trail):
                    self._rec(step + 1)
                for k, d in trail:
                    self.used[k].discard(d)
                self.taken[j] = False
                g[lo] = g[hi] = -1


def _unmatched_label_pairs(t: Tree, m: Matching, f: Labelling) -> list[tuple[int, int]]:
    return [(f[u], f[v]) for u, v in t.edges if (u, v) not in m]


def generalized_strong_perms(
    n: int,
    instances: Sequence[tuple[Tree, Matching, Sequence[Labelling]]],
    structured: bool = False,
) -> list[LabelPermutation]:
    """Permutations sending every listed strong labelling of every instance to a strong labelling."""
    pools = [_unmatched_label_pairs(t, m, f) for t, m, fs in instances for f in fs]
    found = _PermHunt(n, pools, structured).run()
    perms = [LabelPermutation(p) for p in found]
    if structured:
        # closure under the Klein group keeps the answer valid and widens it
        group = list(klein_group(n).values())
        pool = {p.mapping for p in perms}
        for p in perms:
            for k in group:
                pool.add(tuple(k.mapping[x] for x in p.mapping))
        perms = [LabelPermutation(p) for p in sorted(pool)]
        perms = [p for p in perms if all(is_generalized_strong_perm(t, m, p, fs) for t, m, fs in instances)]
    return perms


def _strong_instance(item: tuple[Tree, Matching]) -> tuple[Tree, Matching, list[Labelling]]:
    t, m = item
    return t, m, brute_force_labellings(t, "strong", m)


def _perm_names(n: int) -> dict[tuple[int, ...], str]:
    return {g.mapping: name for name, g in klein_group(n).items()}


def hunt_generalized_perms(
    n: int,
    scope: str = "family",
    family: str = "any-pm",
    tree: Optional[Tree] = None,
    structured: bool = False,
    per_instance: bool = True,
    workers: int = 1,
    cap: Optional[int] = None,
) -> SearchReport:
    """Search for generalised strong permutations beyond {e, r, g1, g2}.

    ``scope="family"`` intersects over every member of ``family`` on ``n``
    vertices; ``scope="tree"`` uses ``tree`` alone. Above the ``perm_scan``
    cap only ``structured=True`` (involutions with uniform parity behaviour,
    closed under the Klein group) is allowed, and the report says so.
    """
    if n % 2 or n < 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    limit = CAPS["perm_scan"] if cap is None else cap
    if n > limit and not structured:
        raise CapExceeded(f"perm hunt: n={n} exceeds the exhaustive cap of {limit}; use the structured filter")
    if scope == "family":
        items = enumerate_family(n, family)
    elif scope == "tree":
        if tree is None:
            raise ValueError("tree scope needs a tree")
        m = perfect_matching(tree)
        if m is None:
            raise ValueError("tree has no perfect matching")
        items = [(tree, m)]
    else:
        raise ValueError(f"unknown scope {scope!r}")
    instances = [x for x in _pmap(_strong_instance, items, workers) if x[2]]
    names = _perm_names(n)
    rep = SearchReport(
        "hunt-perms",
        {"n": n, "scope": scope, "family": family if scope == "family" else "single", "structured": structured},
        heuristic=structured,
    )
    for t, m, fs in instances:
        rec = _record(t, m)
        rec["strong_labellings"] = len(fs)
        if per_instance:
            own = generalized_strong_perms(n, [(t, m, fs)], structured)
            rec["perm_count"] = len(own)
            rec["perms"] = [str(p) for p in own]
        rep.instances.append(rec)
    common = generalized_strong_perms(n, instances, structured) if instances else []
    extras = [p for p in common if p.mapping not in names]
    rep.summary = {
        "instances": len(instances),
        "vacuous_instances": len(items) - len(instances),
        "generalized_perms": [names.get(p.mapping, str(p)) for p in common],
        "count": len(common),
        "extra_count": len(extras),
        "extras": [str(p) for p in extras],
        "contains_klein_group": set(names) <= {p.mapping for p in common},
    }
    return rep


# --------------------------------------------------------------------------
# three-distant case analysis

def classify_theorem5_case(t: Tree, spine: Spine) -> str:
    """Which branch of the induction the tree falls into: base, case1, case2a or case2b.

    Strip ``v0, v1``; case1 when ``v2`` keeps degree >= 3, otherwise case2a
    when ``u2, v2, v3, ...`` is still a longest path of the stripped tree and
    case2b when it is not.
    """
    m = end_edge_perfect_matching(t)
    if m is None or t.n < 4 or t.n % 2:
        raise ValueError("needs an even tree whose end edges form a perfect matching")
    validate_spine(t, spine)
    if spine.k > 3:
        raise ValueError(f"spine radius must be <= 3, got {spine.k}")
    if t.n == 4:
        return "base"
    v0, v1, v2 = spine.vertices[:3]
    if t.degree(v0) != 1 or t.degree(v1) != 2:
        raise ValueError("spine does not start with a leaf followed by a degree-2 vertex")
    if t.degree(v2) - 1 >= 3:
        return "case1"
    # u2, v2, ..., vp: one vertex shorter than the spine
    stripped_edges = len(spine) - 2
    small, _ = t.induced(v for v in range(t.n) if v not in (v0, v1))
    return "case2a" if stripped_edges == diameter(small) else "case2b"


def _zero_vertices(fs: Sequence[Labelling]) -> set[int]:
    return {f.vertex_of[0] for f in fs}


def _case_instance(item: tuple[Tree, Matching]) -> dict[str, Any]:
    t, m = item
    rec = _record(t, m)
    spine = make_spine(t, 3)
    if spine is None:
        rec["case"] = "no-spine"
        return rec
    rec["spine"] = list(spine.vertices)
    rec["case"] = classify_theorem5_case(t, spine)
    fs = brute_force_labellings(t, "strong", m)
    rec["strong_labellings"] = len(fs)
    zeros = _zero_vertices(fs)
    rec["zero_vertices"] = sorted(zeros)

    def quad_ok(vs: Sequence[int]) -> bool:
        return {vs[0], vs[1], vs[2], m.partner[vs[2]]} <= zeros

    def orbit_quad(vs: Sequence[int]) -> bool:
        # one f whose Klein orbit supplies all four zeros
        for f in fs:
            if f[vs[0]] == 0 and f[vs[1]] == t.n - 1 and f[vs[2]] == 1 and f[m.partner[vs[2]]] == t.n - 2:
                return True
        return False

    vs = spine.vertices
    rec["quad"] = quad_ok(vs)
    rec["orbit_quad"] = orbit_quad(vs)
    covering = [p for p in longest_paths(t) if cover_radius(t, p) <= 3]
    oriented = [p for q in covering for p in (q, q[::-1])]
    rec["quad_all_spines"] = all(quad_ok(p) for p in oriented)
    if not fs:
        rec["verdict"] = "no-strong-labelling"
    elif not rec["quad"]:
        rec["verdict"] = "quad-missing"
    else:
        rec["verdict"] = "quad-present"
        f = next(f for f in fs if f[vs[0]] == 0)
        rec["witnesses"] = [format_labelling(f)]
    return rec


def explore_case2b(
    n_max: int,
    n_min: int = 4,
    workers: int = 1,
    cap: Optional[int] = None,
) -> SearchReport:
    """Classify every 3-distant end-edge-matched tree and test the four anchored zeros by brute force."""
    _cap("case2b", n_max, cap)
    items = [x for n in range(max(4, n_min), n_max + 1, 2) for x in enumerate_family(n, "three-distant-end-edge-pm")]
    rep = SearchReport("explore-case2b", {"n_min": max(4, n_min), "n_max": n_max})
    rep.instances = _pmap(_case_instance, items, workers)
    by_case: dict[str, int] = {}
    for rec in rep.instances:
        by_case[rec["case"]] = by_case.get(rec["case"], 0) + 1
    case2b = [r for r in rep.instances if r["case"] == "case2b"]
    rep.summary = {
        "instances": len(rep.instances),
        "by_case": by_case,
        "case2b_instances": len(case2b),
        "case2b_quad_present": sum(1 for r in case2b if r.get("quad")),
        "case2b_orbit_quad_present": sum(1 for r in case2b if r.get("orbit_quad")),
        "quad_missing": [r["form"] for r in rep.instances if r.get("verdict") == "quad-missing"],
        "no_strong_labelling": [r["form"] for r in rep.instances if r.get("verdict") == "no-strong-labelling"],
    }
    return rep


# --------------------------------------------------------------------------
# anchored-path sweep

def _lemma2_instance(item: tuple[Tree, Matching]) -> dict[str, Any]:
    t, m = item
    rec = _record(t, m)
    fs = brute_force_labellings(t, "strong", m)
    counts = {"path": 0, "zero-adjacent": 0}
    r = klein_group(t.n)["r"]
    paired = True
    first_alt = None
    for f in fs:
        layout = anchor_layout(t, m, f)
        counts[layout] += 1
        has_path = extract_anchor_path(t, m, f) is not None
        if has_path != (layout == "path"):
            raise AssertionError(f"anchor extraction disagrees with layout on {f.values}")
        if layout == "zero-adjacent":
            if first_alt is None:
                first_alt = f
            paired &= extract_anchor_path(t, m, apply_perm(r, f)) is not None
    rec["strong_labellings"] = len(fs)
    rec["layouts"] = counts
    rec["holds"] = counts["zero-adjacent"] == 0
    rec["alternatives_are_complements"] = paired
    rec["witnesses"] = [format_labelling(first_alt)] if first_alt is not None else []
    return rec


def verify_lemma2_part1(n_max: int, workers: int = 1, cap: Optional[int] = None) -> SearchReport:
    """Over all matched trees up to ``n_max``, where does the edge labelled ``n-2`` sit?"""
    _cap("lemma2", n_max, cap)
    items = [x for n in range(4, n_max + 1, 2) for x in enumerate_family(n, "any-pm")]
    rep = SearchReport("verify-lemma2", {"n_max": n_max})
    rep.instances = _pmap(_lemma2_instance, items, workers)
    total_path = sum(r["layouts"]["path"] for r in rep.instances)
    total_alt = sum(r["layouts"]["zero-adjacent"] for r in rep.instances)
    rep.summary = {
        "instances": len(rep.instances),
        "labellings": total_path + total_alt,
        "path_layout": total_path,
        "zero_adjacent_layout": total_alt,
        "holds_everywhere": total_alt == 0,
        "every_alternative_is_complement_of_path": all(r["alternatives_are_complements"] for r in rep.instances),
    }
    return rep


def timed(fn: Callable[..., SearchReport], *args, **kwargs) -> SearchReport:
    t0 = time.perf_counter()
    rep = fn(*args, **kwargs)
    rep.timing = time.perf_counter() - t0
    return rep
