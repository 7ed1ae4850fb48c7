"""Trees, matchings and spines.

Vertices are always the integers ``0..n-1``. Every structural transform that
adds or drops vertices returns a vertex map so labellings can be carried
across.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional

Edge = tuple[int, int]


class TreeError(ValueError):
    """Input does not describe a valid tree (or matching of one)."""


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Tree:
    n: int
    edges: tuple[Edge, ...]
    adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 1:
            raise TreeError(f"vertex count must be a positive integer, got {n!r}")
        seen = set()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise TreeError(f"vertex id out of range in edge ({u}, {v}) for n={n}")
            if u == v:
                raise TreeError(f"self-loop at vertex {u}")
            e = _norm(u, v)
            if e in seen:
                raise TreeError(f"duplicate edge {e}")
            seen.add(e)
            nbrs[u].append(v)
            nbrs[v].append(u)
        if len(seen) != n - 1:
            raise TreeError(f"a tree on {n} vertices needs {n - 1} edges, got {len(seen)}")
        # n-1 edges + connected => acyclic
        reached = _bfs_order(nbrs, 0)
        if len(reached) != n:
            raise TreeError("graph is disconnected")
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in nbrs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Tree":
        return cls(n, tuple(edges))

    @classmethod
    def path(cls, n: int) -> "Tree":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def star(cls, n: int) -> "Tree":
        """Star with center 0 and leaves ``1..n-1``."""
        return cls(n, tuple((0, i) for i in range(1, n)))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adj[v]) == 1]

    def relabel(self, perm: list[int] | tuple[int, ...]) -> "Tree":
        """Isomorphic copy with vertex ``v`` renamed to ``perm[v]``."""
        return Tree(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def induced(self, keep: Iterable[int]) -> tuple["Tree", dict[int, int]]:
        """Subtree induced on ``keep``, renumbered in increasing id order.

        Returns the new tree and the old-id -> new-id map.
        """
        kept = sorted(set(keep))
        index = {v: i for i, v in enumerate(kept)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Tree(len(kept), tuple(edges)), index


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[Edge]

    def __post_init__(self):
        pairs = frozenset(_norm(u, v) for u, v in self.pairs)
        covered: set[int] = set()
        for u, v in pairs:
            if u == v:
                raise TreeError(f"matching pair ({u}, {v}) is a loop")
            if u in covered or v in covered:
                raise TreeError(f"matching pairs are not vertex-disjoint at ({u}, {v})")
            covered.update((u, v))
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def of(cls, pairs: Iterable[Edge]) -> "Matching":
        return cls(frozenset(pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.pairs))

    def __contains__(self, e) -> bool:
        return _norm(*e) in self.pairs

    @cached_property
    def partner(self) -> dict[int, int]:
        out = {}
        for u, v in self.pairs:
            out[u] = v
            out[v] = u
        return out

    def check_in(self, t: Tree) -> None:
        for e in self.pairs:
            if e not in t.edge_set:
                raise TreeError(f"matching pair {e} is not an edge of the tree")

    def is_perfect(self, t: Tree) -> bool:
        return all(e in t.edge_set for e in self.pairs) and 2 * len(self.pairs) == t.n


@dataclass(frozen=True)
class Spine:
    vertices: tuple[int, ...]
    k: int

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def reversed(self) -> "Spine":
        return Spine(self.vertices[::-1], self.k)


# --------------------------------------------------------------------------
# text formats

def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise TreeError(f"line {lineno}: expected an integer, got {tok!r}") from None


def _parse_pairs(lines) -> list[Edge]:
    pairs = []
    for lineno, line in lines:
        toks = line.split()
        if len(toks) != 2:
            raise TreeError(f"line {lineno}: expected 'u v', got {line!r}")
        pairs.append((_parse_int(toks[0], lineno), _parse_int(toks[1], lineno)))
    return pairs


def parse_tree(text: str) -> Tree:
    """Parse the edge-list format: ``n`` on the first line, then ``u v`` per edge."""
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise TreeError("empty tree document") from None
    toks = header.split()
    if len(toks) != 1:
        raise TreeError(f"line {lineno}: expected the vertex count, got {header!r}")
    n = _parse_int(toks[0], lineno)
    return Tree(n, tuple(_parse_pairs(lines)))


def format_tree(t: Tree) -> str:
    return "".join([f"{t.n}\n"] + [f"{u} {v}\n" for u, v in t.edges])


def parse_matching(text: str) -> Matching:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
        if header != "M":
            raise TreeError(f"line {lineno}: matching file must start with 'M'")
        lineno, count = next(lines)
    except StopIteration:
        raise TreeError("truncated matching document") from None
    count_val = _parse_int(count, lineno)
    pairs = _parse_pairs(lines)
    if len(pairs) != count_val:
        raise TreeError(f"matching header says {count_val} pairs, found {len(pairs)}")
    return Matching.of(pairs)


def format_matching(m: Matching) -> str:
    return "".join(["M\n", f"{len(m)}\n"] + [f"{u} {v}\n" for u, v in m])


# --------------------------------------------------------------------------
# structure

def _bfs_order(nbrs, root: int) -> list[int]:
    seen = {root}
    order = [root]
    q = deque([root])
    while q:
        u = q.popleft()
        for w in nbrs[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                q.append(w)
    return order


def distances_from(t: Tree, sources: Iterable[int]) -> list[int]:
    """Multi-source BFS distances."""
    dist = [-1] * t.n
    q = deque()
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            q.append(s)
    while q:
        u = q.popleft()
        for w in t.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def tree_path(t: Tree, a: int, b: int) -> list[int]:
    """The unique path from ``a`` to ``b``."""
    parent = [-1] * t.n
    parent[a] = a
    q = deque([a])
    while q:
        u = q.popleft()
        if u == b:
            break
        for w in t.adj[u]:
            if parent[w] < 0:
                parent[w] = u
                q.append(w)
    out = [b]
    while out[-1] != a:
        out.append(parent[out[-1]])
    return out[::-1]


def end_edges(t: Tree) -> set[Edge]:
    """Edges with at least one degree-1 endpoint."""
    return {e for e in t.edges if t.degree(e[0]) == 1 or t.degree(e[1]) == 1}


def end_edge_perfect_matching(t: Tree) -> Optional[Matching]:
    """The end-edge set as a Matching when it is a perfect matching, else None."""
    ee = end_edges(t)
    if 2 * len(ee) != t.n:
        return None
    covered = set()
    for u, v in ee:
        if u in covered or v in covered:
            return None
        covered.update((u, v))
    return Matching(frozenset(ee))


def perfect_matching(t: Tree) -> Optional[Matching]:
    """The unique perfect matching of ``t``, or None.

    Greedy from the leaves inward: a leaf can only be matched to its neighbour.
    """
    if t.n % 2:
        return None
    deg = [t.degree(v) for v in range(t.n)]
    alive = [True] * t.n
    stack = [v for v in range(t.n) if deg[v] == 1]
    pairs = []
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        mate = next((w for w in t.adj[v] if alive[w]), None)
        if mate is None:
            return None
        alive[v] = alive[mate] = False
        pairs.append((v, mate))
        for w in t.adj[mate]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 0:
                    return None
                if deg[w] == 1:
                    stack.append(w)
    if len(pairs) * 2 != t.n:
        return None
    return Matching.of(pairs)


def diameter(t: Tree) -> int:
    if t.n == 1:
        return 0
    d0 = distances_from(t, [0])
    a = max(range(t.n), key=d0.__getitem__)
    return max(distances_from(t, [a]))


def _orient(path: list[int]) -> tuple[int, ...]:
    return tuple(path if path[0] <= path[-1] else path[::-1])


def longest_paths(t: Tree) -> list[tuple[int, ...]]:
    """All maximum-length paths, each oriented low-end first, in lexicographic order."""
    if t.n == 1:
        return [(0,)]
    d = diameter(t)
    leaves = t.leaves()
    out = []
    for a in leaves:
        dist = distances_from(t, [a])
        for b in leaves:
            if a < b and dist[b] == d:
                out.append(_orient(tree_path(t, a, b)))
    out.sort()
    return out


def longest_path(t: Tree) -> list[int]:
    """A maximum-length path; ties broken by the lexicographically smallest oriented sequence."""
    return list(longest_paths(t)[0])


def cover_radius(t: Tree, path: Iterable[int]) -> int:
    return max(distances_from(t, path))


def make_spine(t: Tree, k: int) -> Optional[Spine]:
    """First longest path (tie-break order) covering every vertex within ``k``; None if none does."""
    for p in longest_paths(t):
        if cover_radius(t, p) <= k:
            return Spine(p, k)
    return None


def is_k_distant(t: Tree, k: int) -> bool:
    """Is there a path within distance ``k`` of every vertex?

    Prunes all vertices of degree <= 1 ``k`` times; the tree qualifies iff
    what is left is a path (possibly empty).
    """
    alive = set(range(t.n))
    deg = {v: t.degree(v) for v in alive}
    for _ in range(k):
        if not alive:
            break
        leaves = [v for v in alive if deg[v] <= 1]
        for v in leaves:
            alive.discard(v)
        for v in leaves:
            for w in t.adj[v]:
                if w in alive:
                    deg[w] -= 1
    return all(deg[v] <= 2 for v in alive)


def spike(t: Tree) -> tuple[Tree, Matching, dict[int, int]]:
    """Attach a pendant partner ``n+v`` to every vertex ``v``.

    Returns the spike tree, the matching of new edges, and the partner map
    (original vertex -> its new pendant vertex). Original ids are unchanged.
    """
    n = t.n
    new_edges = tuple((v, n + v) for v in range(n))
    big = Tree(2 * n, t.edges + new_edges)
    return big, Matching.of(new_edges), {v: n + v for v in range(n)}


def contract_matching(t: Tree, m: Matching) -> tuple[Tree, dict[int, int]]:
    """Contract every pair of a perfect matching.

    Pairs are numbered by their smaller endpoint, so contracting ``spike(t)``
    returns ``t`` with identical ids. The map sends each vertex of ``t`` to
    its contracted vertex.
    """
    m.check_in(t)
    if not m.is_perfect(t):
        raise TreeError("matching is not perfect")
    vmap = {}
    for i, (u, v) in enumerate(sorted(m.pairs)):
        vmap[u] = vmap[v] = i
    edges = {_norm(vmap[u], vmap[v]) for u, v in t.edges if vmap[u] != vmap[v]}
    return Tree(len(m), tuple(edges)), vmap


def centers(t: Tree) -> list[int]:
    """One or two central vertices, by repeated leaf stripping."""
    if t.n <= 2:
        return list(range(t.n))
    deg = [t.degree(v) for v in range(t.n)]
    layer = [v for v in range(t.n) if deg[v] == 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_levels(t: Tree, root: int) -> list[int]:
    # canonical level sequence: children ordered by descending subtree sequence
    order = _bfs_order(t.adj, root)
    parent = {root: -1}
    for u in order:
        for w in t.adj[u]:
            if w not in parent:
                parent[w] = u
    seqs: dict[int, list[int]] = {}
    for u in reversed(order):
        kids = sorted((seqs.pop(w) for w in t.adj[u] if parent.get(w) == u and w != parent[u]), reverse=True)
        s = [0]
        for k in kids:
            s.extend(x + 1 for x in k)
        seqs[u] = s
    return seqs[root]


def canonical_form(t: Tree) -> bytes:
    """Isomorphism-invariant encoding: canonical level sequence rooted at the center.

    For bicentral trees the larger of the two rooted sequences is used.
    """
    best = max(_rooted_levels(t, c) for c in centers(t))
    return ",".join(map(str, best)).encode()


def validate_spine(t: Tree, spine: Spine) -> None:
    """Raise TreeError unless ``spine`` is a longest path of ``t`` covering within ``spine.k``."""
    vs = spine.vertices
    if len(set(vs)) != len(vs) or any(not (0 <= v < t.n) for v in vs):
        raise TreeError(f"spine {vs} is not a list of distinct vertices")
    for a, b in zip(vs, vs[1:]):
        if not t.has_edge(a, b):
            raise TreeError(f"spine {vs} is not a path: ({a}, {b}) is not an edge")
    if len(vs) - 1 != diameter(t):
        raise TreeError(f"spine {vs} has length {len(vs) - 1}, diameter is {diameter(t)}")
    if cover_radius(t, vs) > spine.k:
        raise TreeError(f"spine {vs} does not cover the tree within distance {spine.k}")
