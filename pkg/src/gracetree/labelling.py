"""Vertex labellings, label permutations, and the strong-graceful permutation group.

A labelling is a bijection from vertices to ``0..n-1``; a label permutation
acts on the label values, so ``apply_perm(g, f)`` is the labelling
``v -> g(f(v))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .tree import Matching, Tree, TreeError, _content_lines, _parse_int


class LabellingError(ValueError):
    pass


@dataclass(frozen=True)
class Labelling:
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        if sorted(vals) != list(range(len(vals))):
            raise LabellingError(f"not a bijection onto 0..{len(vals) - 1}: {vals}")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def __iter__(self):
        return iter(self.values)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """Inverse map: label -> vertex."""
        inv = [0] * len(self.values)
        for v, b in enumerate(self.values):
            inv[b] = v
        return tuple(inv)


@dataclass(frozen=True)
class LabelPermutation:
    mapping: tuple[int, ...]

    def __post_init__(self):
        m = tuple(self.mapping)
        if sorted(m) != list(range(len(m))):
            raise LabellingError(f"not a permutation of 0..{len(m) - 1}: {m}")
        object.__setattr__(self, "mapping", m)

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, b: int) -> int:
        return self.mapping[b]

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its minimum, sorted by minimum; fixed points included."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            b = self.mapping[start]
            while b != start:
                cyc.append(b)
                seen[b] = True
                b = self.mapping[b]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "LabelPermutation":
        mapping = list(range(n))
        for cyc in cycles:
            for i, b in enumerate(cyc):
                mapping[b] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(mapping))

    @classmethod
    def parse(cls, n: int, text: str) -> "LabelPermutation":
        """Inverse of ``str``: ``"(0 1)(2 3)"``."""
        body = text.strip()
        if body and not (body.startswith("(") and body.endswith(")")):
            raise LabellingError(f"bad cycle notation: {text!r}")
        chunks = [c for c in body[1:-1].split(")(")] if body else []
        cycles = [tuple(int(x) for x in c.split()) for c in chunks if c.strip()]
        return cls.from_cycles(n, cycles)


# --------------------------------------------------------------------------
# file format

def parse_labelling(text: str) -> Labelling:
    """``L`` header, then one ``vertex label`` line per vertex."""
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise LabellingError("empty labelling document") from None
    if header != "L":
        raise LabellingError(f"line {lineno}: labelling file must start with 'L'")
    got = {}
    for lineno, line in lines:
        toks = line.split()
        if len(toks) != 2:
            raise LabellingError(f"line {lineno}: expected 'vertex label', got {line!r}")
        try:
            v, b = _parse_int(toks[0], lineno), _parse_int(toks[1], lineno)
        except TreeError as exc:
            raise LabellingError(str(exc)) from None
        if v in got:
            raise LabellingError(f"line {lineno}: vertex {v} labelled twice")
        got[v] = b
    n = len(got)
    if sorted(got) != list(range(n)):
        raise LabellingError("labelled vertices are not exactly 0..n-1")
    return Labelling(tuple(got[v] for v in range(n)))


def format_labelling(f: Labelling) -> str:
    return "".join(["L\n"] + [f"{v} {b}\n" for v, b in enumerate(f.values)])


# --------------------------------------------------------------------------
# checkers

def edge_label(f: Labelling, u: int, v: int) -> int:
    n = len(f)
    if not (0 <= u < n and 0 <= v < n):
        raise LabellingError(f"vertex out of range: ({u}, {v}) for n={n}")
    return abs(f[u] - f[v])


def edge_labels(t: Tree, f: Labelling) -> list[int]:
    """Induced labels in ``t.edges`` order."""
    vals = f.values
    return [abs(vals[u] - vals[v]) for u, v in t.edges]


def _check_sizes(t: Tree, f: Labelling) -> None:
    if t.n != f.n:
        raise LabellingError(f"labelling has {f.n} entries but tree has {t.n} vertices")


def is_graceful(t: Tree, f: Labelling) -> bool:
    _check_sizes(t, f)
    return sorted(edge_labels(t, f)) == list(range(1, t.n))


def _require_perfect(t: Tree, m: Matching) -> None:
    if not m.is_perfect(t):
        raise LabellingError("matching is not a perfect matching of the tree")


def is_strongly_graceful(t: Tree, m: Matching, f: Labelling) -> bool:
    _require_perfect(t, m)
    if not is_graceful(t, f):
        return False
    top = t.n - 1
    return all(f[u] + f[v] == top for u, v in m.pairs)


# --------------------------------------------------------------------------
# permutations

def perm_identity(n: int) -> LabelPermutation:
    return LabelPermutation(tuple(range(n)))


def perm_r(n: int) -> LabelPermutation:
    """The complement ``b -> n-1-b``."""
    return LabelPermutation(tuple(n - 1 - b for b in range(n)))


def _need_even(n: int) -> None:
    if n < 2 or n % 2:
        raise LabellingError(f"needs an even size >= 2, got {n}")


def perm_g1(n: int) -> LabelPermutation:
    """Swap ``2i <-> 2i+1``."""
    _need_even(n)
    return LabelPermutation(tuple(b + 1 if b % 2 == 0 else b - 1 for b in range(n)))


def perm_g2(n: int) -> LabelPermutation:
    """Even ``b -> n-2-b``, odd ``b -> n-b``; equal to ``r`` composed with ``g1``."""
    _need_even(n)
    return LabelPermutation(tuple(n - 2 - b if b % 2 == 0 else n - b for b in range(n)))


def klein_group(n: int) -> dict[str, LabelPermutation]:
    return {"e": perm_identity(n), "r": perm_r(n), "g1": perm_g1(n), "g2": perm_g2(n)}


def compose(a: LabelPermutation, b: LabelPermutation) -> LabelPermutation:
    """``x -> a(b(x))``."""
    if a.n != b.n:
        raise LabellingError(f"size mismatch: {a.n} vs {b.n}")
    am = a.mapping
    return LabelPermutation(tuple(am[x] for x in b.mapping))


def apply_perm(g: LabelPermutation, f: Labelling) -> Labelling:
    if g.n != f.n:
        raise LabellingError(f"size mismatch: permutation on {g.n}, labelling on {f.n}")
    gm = g.mapping
    return Labelling(tuple(gm[b] for b in f.values))


def is_graceful_perm(t: Tree, f: Labelling, g: LabelPermutation) -> bool:
    if not is_graceful(t, f):
        raise LabellingError("reference labelling is not graceful")
    return is_graceful(t, apply_perm(g, f))


def is_generalized_strong_perm(
    t: Tree, m: Matching, g: LabelPermutation, all_f: Sequence[Labelling]
) -> bool:
    """Does ``g`` send every labelling in ``all_f`` (all strong labellings of ``t``) to a strong one?"""
    if not all_f:
        raise LabellingError("no strongly graceful labellings supplied; the question is vacuous")
    return all(is_strongly_graceful(t, m, apply_perm(g, f)) for f in all_f)


# --------------------------------------------------------------------------
# anchored path around label 0

class AnchorPath(NamedTuple):
    v0: int
    v1: int
    v2: int
    v3: int


class AnchorError(ValueError):
    pass


def anchor_layout(t: Tree, m: Matching, f: Labelling) -> str:
    """Which way the edge labelled ``n-2`` sits next to the 0/(n-1) pair.

    ``"path"`` when labels ``n-1`` and ``1`` are adjacent (the anchored path
    ``0, n-1, 1, n-2`` exists); ``"zero-adjacent"`` when labels ``0`` and
    ``n-2`` are adjacent instead.
    """
    n = t.n
    at = f.vertex_of
    if t.has_edge(at[n - 1], at[1]):
        return "path"
    if t.has_edge(at[0], at[n - 2]):
        return "zero-adjacent"
    raise AnchorError("no edge carries label n-2; labelling is not graceful")


def extract_anchor_path(t: Tree, m: Matching, f: Labelling) -> Optional[AnchorPath]:
    """Vertices labelled ``0, n-1, 1, n-2`` when they form a path with both end pairs matched.

    Returns None when the label-(n-2) edge joins labels 0 and n-2 instead;
    ``anchor_layout`` names which case occurred.
    """
    if t.n < 4:
        raise AnchorError(f"anchor path needs at least 4 vertices, got {t.n}")
    if not is_strongly_graceful(t, m, f):
        raise AnchorError("labelling is not strongly graceful")
    n = t.n
    at = f.vertex_of
    path = AnchorPath(at[0], at[n - 1], at[1], at[n - 2])
    if (
        t.has_edge(path.v0, path.v1)
        and t.has_edge(path.v1, path.v2)
        and t.has_edge(path.v2, path.v3)
        and (path.v0, path.v1) in m
        and (path.v2, path.v3) in m
    ):
        return path
    return None


class VerificationError(RuntimeError):
    """A construction produced something the checkers reject."""


class AnchoredQuad(NamedTuple):
    f: Labelling
    f1: Labelling
    f2: Labelling
    f3: Labelling
    path: AnchorPath


def anchored_quad_from(f: Labelling, t: Tree, m: Matching) -> AnchoredQuad:
    """``(f, r[f], g1[f], g2[f])`` with zeros at ``v0, v1, v2, v3`` of the anchor path."""
    path = extract_anchor_path(t, m, f)
    if path is None:
        raise AnchorError(
            "label 0 is adjacent to label n-2; the anchored path 0, n-1, 1, n-2 does not exist"
        )
    g = klein_group(t.n)
    f1, f2, f3 = (apply_perm(g[k], f) for k in ("r", "g1", "g2"))
    for name, lab, anchor in (("f", f, path.v0), ("f1", f1, path.v1), ("f2", f2, path.v2), ("f3", f3, path.v3)):
        if not is_strongly_graceful(t, m, lab):
            raise VerificationError(f"{name} = {lab.values} is not strongly graceful")
        if lab[anchor] != 0:
            raise VerificationError(f"{name} does not place 0 on vertex {anchor}")
    return AnchoredQuad(f, f1, f2, f3, path)
