"""Inductive strong labeller for lobsters whose end edges form a perfect matching.

Peel the two spine vertices ``v0, v1`` off, label the smaller lobster with a
zero on ``v2``, shift every label up by one and put ``0`` and ``n-1`` on the
peeled pair. The Klein group ``{e, r, g1, g2}`` then moves the zero onto
``v1``, ``v2`` and ``u2`` (the leaf matched to ``v2``).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

from .labelling import (
    Labelling,
    VerificationError,
    apply_perm,
    is_strongly_graceful,
    klein_group,
)
from .tree import (
    Matching,
    Spine,
    Tree,
    TreeError,
    end_edge_perfect_matching,
    format_tree,
    is_k_distant,
    make_spine,
    validate_spine,
)

log = logging.getLogger(__name__)


class PreconditionError(ValueError):
    """Input is outside the family the construction handles."""


@dataclass(frozen=True)
class StrongQuad:
    f: Labelling
    f1: Labelling
    f2: Labelling
    f3: Labelling
    anchors: tuple[int, int, int, int]  # v0, v1, v2, u2
    spine: Spine

    def members(self) -> tuple[Labelling, Labelling, Labelling, Labelling]:
        return (self.f, self.f1, self.f2, self.f3)

    def verify(self, t: Tree, m: Matching) -> None:
        v0, v1, v2, u2 = self.anchors
        if (v2, u2) not in m:
            raise VerificationError(f"anchor pair ({v2}, {u2}) is not matched")
        for name, lab, zero in zip(("f", "f1", "f2", "f3"), self.members(), self.anchors):
            if not is_strongly_graceful(t, m, lab):
                raise VerificationError(f"{name} = {lab.values} is not strongly graceful")
            if lab[zero] != 0:
                raise VerificationError(f"{name} puts {lab[zero]} on anchor {zero}, expected 0")


class StripStep(NamedTuple):
    tree: Tree
    matching: Matching
    spine: Spine
    case: int  # 1: v2 carries extra 2-paths, 2: v2 has degree 2 after stripping
    vmap: dict[int, int]  # old id -> id in the stripped tree


def check_lemma3(t: Tree, spine: Spine, m: Matching) -> dict[int, int]:
    """Check the spine/matching structure and return ``i -> u_i`` for interior spine vertices.

    ``u_i`` is the off-spine leaf matched to ``spine[i]`` for ``2 <= i <= p-2``.
    """
    vs = spine.vertices
    p = len(vs) - 1
    if p < 3:
        raise PreconditionError(f"spine {vs} is too short")
    if t.degree(vs[0]) != 1 or (vs[0], vs[1]) not in m:
        raise PreconditionError(f"spine start {vs[0]} is not a leaf matched to {vs[1]}")
    if t.degree(vs[1]) != 2:
        raise PreconditionError(f"second spine vertex {vs[1]} has degree {t.degree(vs[1])}, expected 2")
    if (vs[p - 1], vs[p]) not in m:
        raise PreconditionError(f"last spine edge ({vs[p - 1]}, {vs[p]}) is not matched")
    for a, b in zip(vs[1:p - 1], vs[2:p]):
        if (a, b) in m:
            raise PreconditionError(f"interior spine edge ({a}, {b}) is matched")
    on_spine = set(vs)
    partners = {}
    for i in range(2, p - 1):
        u = m.partner.get(vs[i])
        if u is None or u in on_spine or t.degree(u) != 1:
            raise PreconditionError(f"spine vertex {vs[i]} is not matched to an off-spine leaf")
        partners[i] = u
    return partners


def strip_step(t: Tree, spine: Spine, m: Matching) -> StripStep:
    """Delete ``v0, v1`` and pick the spine of what is left."""
    partners = check_lemma3(t, spine, m)
    vs = spine.vertices
    v0, v1, v2, v3 = vs[:4]
    u2 = partners[2]
    extra = [w for w in t.adj[v2] if w not in (v1, v3, u2)]
    if extra:
        x = min(extra)
        y = m.partner[x]
        if t.degree(x) != 2 or t.degree(y) != 1:
            raise TreeError(f"branch at {x} off spine vertex {v2} is not a 2-path")
        case, new_path = 1, (y, x) + vs[2:]
    else:
        case, new_path = 2, (u2,) + vs[2:]
    small, vmap = t.induced(v for v in range(t.n) if v not in (v0, v1))
    small_m = Matching.of((vmap[a], vmap[b]) for a, b in m.pairs if a not in (v0, v1))
    small_spine = Spine(tuple(vmap[v] for v in new_path), spine.k)
    validate_spine(small, small_spine)
    return StripStep(small, small_m, small_spine, case, vmap)


def _finish(t: Tree, m: Matching, spine: Spine, f: Labelling) -> StrongQuad:
    g = klein_group(t.n)
    v0, v1, v2 = spine.vertices[:3]
    quad = StrongQuad(
        f,
        apply_perm(g["r"], f),
        apply_perm(g["g1"], f),
        apply_perm(g["g2"], f),
        (v0, v1, v2, m.partner[v2]),
        spine,
    )
    try:
        quad.verify(t, m)
    except VerificationError as exc:
        raise VerificationError(f"{exc}\nsubtree:\n{format_tree(t)}spine: {spine.vertices}") from None
    return quad


def _label(t: Tree, m: Matching, spine: Spine) -> StrongQuad:
    vs = spine.vertices
    if t.n == 4:
        if len(vs) != 4:
            raise PreconditionError("a 4-vertex member of the family must be a path")
        vals = [0] * 4
        for v, b in zip(vs, (0, 3, 1, 2)):
            vals[v] = b
        return _finish(t, m, spine, Labelling(tuple(vals)))

    step = strip_step(t, spine, m)
    sub = _label(step.tree, step.matching, step.spine)
    # the member with its zero on v2: index 2 of the new spine in case 1, index 1 in case 2
    h = sub.f2 if step.case == 1 else sub.f1
    v0, v1 = vs[0], vs[1]
    if h[step.vmap[vs[2]]] != 0:
        raise VerificationError(f"recursive labelling does not put 0 on {vs[2]}")
    vals = [0] * t.n
    for old, new in step.vmap.items():
        vals[old] = h[new] + 1
    vals[v0] = 0
    vals[v1] = t.n - 1
    return _finish(t, m, spine, Labelling(tuple(vals)))


def family_matching(t: Tree) -> Matching:
    """End-edge perfect matching of a lobster, or PreconditionError naming what fails."""
    if t.n < 4 or t.n % 2:
        raise PreconditionError(f"needs an even number of vertices >= 4, got {t.n}")
    m = end_edge_perfect_matching(t)
    if m is None:
        raise PreconditionError("no end-edge perfect matching")
    if not is_k_distant(t, 2):
        raise PreconditionError("tree is not a lobster (not 2-distant)")
    return m


def theorem4_label(t: Tree) -> StrongQuad:
    """Four strong labellings with zeros on ``v0``, ``v1``, ``v2`` and ``u2``.

    The spine is the tie-break longest path covering within distance 2; if
    the construction fails in that orientation it is retried reversed.
    """
    m = family_matching(t)
    spine = make_spine(t, 2)
    if spine is None:
        raise PreconditionError("no longest path covers the tree within distance 2")
    failures = []
    for attempt in (spine, spine.reversed()):
        try:
            return _label(t, m, attempt)
        except (VerificationError, TreeError) as exc:
            log.warning("construction failed for spine %s: %s", attempt.vertices, exc)
            failures.append(str(exc))
    raise VerificationError("construction failed in both orientations:\n" + "\n".join(failures))


def recursion_trace(t: Tree) -> list[tuple[int, int]]:
    """``(n, case)`` for each strip step of the construction, outermost first."""
    m = family_matching(t)
    spine = make_spine(t, 2)
    if spine is None:
        raise PreconditionError("no longest path covers the tree within distance 2")
    out = []
    while t.n > 4:
        step = strip_step(t, spine, m)
        out.append((t.n, step.case))
        t, m, spine = step.tree, step.matching, step.spine
    return out
