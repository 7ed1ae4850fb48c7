import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import trees
from gracetree.search import enumerate_free_trees
from gracetree.tree import (
    Matching,
    Spine,
    Tree,
    TreeError,
    canonical_form,
    contract_matching,
    cover_radius,
    diameter,
    end_edge_perfect_matching,
    end_edges,
    format_matching,
    format_tree,
    is_k_distant,
    longest_path,
    longest_paths,
    make_spine,
    parse_matching,
    parse_tree,
    perfect_matching,
    spike,
    validate_spine,
)
from oracles import (
    all_simple_paths,
    is_k_distant_exhaustive,
    leaf_to_leaf_paths,
    prufer_decode,
    prufer_sequences,
    shuffled,
)

STAR4 = Tree.star(4)


# ---------------------------------------------------------------- parsing

def test_parse_k2():
    assert parse_tree("2\n0 1") == Tree(2, ((0, 1),))


def test_parse_path_with_comments_and_crlf():
    t = parse_tree("# a path\r\n4\r\n0 1\r\n1 2  # middle\r\n\r\n2 3\r\n")
    assert t == Tree.path(4)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("4\n0 1\n2 3", "edges"),
        ("4\n0 1\n2 3\n0 1", "duplicate"),
        ("3\n0 0\n1 2", "self-loop"),
        ("3\n0 1\n1 5", "out of range"),
        ("3\n0 1", "needs 2 edges"),
        ("3\n0 1 2\n1 2", "expected 'u v'"),
        ("x\n0 1", "integer"),
        ("", "empty"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(TreeError, match=fragment):
        parse_tree(text)


def test_disconnected_rejected():
    # right edge count but a cycle plus an isolated vertex
    with pytest.raises(TreeError, match="disconnected"):
        Tree(4, ((0, 1), (1, 2), (0, 2)))


def test_matching_roundtrip():
    m = Matching.of([(1, 0), (2, 3)])
    assert parse_matching(format_matching(m)) == m
    assert format_matching(m) == "M\n2\n0 1\n2 3\n"


def test_matching_count_mismatch():
    with pytest.raises(TreeError, match="says 3"):
        parse_matching("M\n3\n0 1\n")


def test_matching_not_disjoint():
    with pytest.raises(TreeError, match="disjoint"):
        Matching.of([(0, 1), (1, 2)])


@given(trees(1, 15))
def test_tree_format_roundtrip(t):
    assert parse_tree(format_tree(t)) == t


# ---------------------------------------------------------------- end edges and matchings

def test_end_edges_path():
    assert end_edges(Tree.path(4)) == {(0, 1), (2, 3)}


def test_end_edges_star():
    assert end_edges(STAR4) == {(0, 1), (0, 2), (0, 3)}


def test_end_edges_of_spiked_k2():
    big, m, _ = spike(Tree.path(2))
    assert end_edges(big) == set(m.pairs) == {(0, 2), (1, 3)}


def test_end_edge_pm_cases():
    assert end_edge_perfect_matching(Tree.path(4)) == Matching.of([(0, 1), (2, 3)])
    assert end_edge_perfect_matching(Tree.path(6)) is None
    assert end_edge_perfect_matching(STAR4) is None


@given(trees(1, 12))
def test_perfect_matching_matches_brute_force(t):
    found = perfect_matching(t)
    brute = [
        c
        for c in itertools.combinations(t.edges, t.n // 2)
        if t.n % 2 == 0 and len({v for e in c for v in e}) == t.n
    ]
    assert len(brute) <= 1  # trees have at most one perfect matching
    if brute:
        assert found == Matching.of(brute[0])
    else:
        assert found is None


# ---------------------------------------------------------------- paths and spines

def test_longest_path_examples():
    assert longest_path(Tree.path(2)) == [0, 1]
    lp = longest_path(STAR4)
    assert len(lp) == 3 and lp[1] == 0
    assert lp == [1, 0, 2]  # tie-break: smallest oriented sequence


def test_longest_path_spike_of_p3():
    big, _, _ = spike(Tree.path(3))
    best = max(len(p) for p in all_simple_paths(big))
    lp = longest_path(big)
    assert len(lp) == best == 5
    assert big.degree(lp[0]) == big.degree(lp[-1]) == 1
    assert lp[1:4] == [0, 1, 2]


@given(trees(1, 14))
def test_longest_path_properties(t):
    lp = longest_path(t)
    assert len(lp) - 1 == diameter(t)
    assert len(lp) == max(len(p) for p in all_simple_paths(t))
    if t.n > 1:
        assert t.degree(lp[0]) == 1 and t.degree(lp[-1]) == 1
    # tie-break is the minimum over every oriented maximum path
    oriented = [p if p[0] <= p[-1] else p[::-1] for p in all_simple_paths(t) if len(p) == len(lp)]
    assert tuple(lp) == min(oriented)


def test_diameter_examples():
    assert diameter(Tree(1, ())) == 0
    assert diameter(Tree.path(4)) == 3
    assert diameter(Tree.star(5)) == 2


def test_make_spine_examples():
    assert make_spine(Tree.path(4), 0) == Spine((0, 1, 2, 3), 0)
    sp = make_spine(STAR4, 1)
    assert len(sp) == 3 and sp.k == 1
    assert make_spine(STAR4, 0) is None


def test_k_distant_examples():
    assert is_k_distant(Tree.path(7), 0)
    assert is_k_distant(STAR4, 1)
    assert not is_k_distant(STAR4, 0)


def test_validate_spine_rejects_short_path():
    with pytest.raises(TreeError, match="diameter"):
        validate_spine(Tree.path(5), Spine((0, 1, 2), 3))


@pytest.mark.slow
def test_pruning_matches_exhaustive_definition():
    # every tree up to 12 vertices, k = 0..3
    for n in range(1, 13):
        for t in enumerate_free_trees(n):
            for k in range(4):
                assert is_k_distant(t, k) == is_k_distant_exhaustive(t, k), (n, t.edges, k)


@pytest.mark.slow
def test_spine_presence_implies_k_distant():
    absent = []
    for n in range(1, 13):
        for t in enumerate_free_trees(n):
            for k in range(4):
                sp = make_spine(t, k)
                if sp is not None:
                    validate_spine(t, sp)
                    assert is_k_distant(t, k)
                elif is_k_distant(t, k):
                    absent.append((n, k))
    # no k-distant tree this small lacks a covering longest path
    assert absent == []


@pytest.mark.slow
def test_every_longest_path_covers_k_distant_trees():
    for n in range(1, 15):
        for t in enumerate_free_trees(n):
            for k in range(1, 4):
                if is_k_distant(t, k):
                    assert all(cover_radius(t, p) <= k for p in longest_paths(t))


def test_every_longest_path_of_a_small_lobster_with_end_matching_covers():
    # open question: can a lobster with end-edge matching have a non-covering longest path?
    for n in range(4, 15, 2):
        for t in enumerate_free_trees(n):
            if end_edge_perfect_matching(t) is None or not is_k_distant(t, 2):
                continue
            for p in longest_paths(t):
                validate_spine(t, Spine(p, 2))


def test_caterpillar_has_spine_k1():
    rng = random.Random(7)
    for _ in range(50):
        m = rng.randint(1, 15)
        s = rng.randint(1, m)
        edges = [(i, i + 1) for i in range(s - 1)] + [(rng.randrange(s), v) for v in range(s, m)]
        t = Tree(m, tuple(edges))
        assert make_spine(t, 1) is not None
        assert is_k_distant_exhaustive(t, 1)


def test_spike_of_lobster_is_3_distant():
    spider = Tree(7, ((0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)))
    big, _, _ = spike(spider)
    assert is_k_distant(big, 3) and is_k_distant_exhaustive(big, 3)
    assert not is_k_distant(big, 2)


# ---------------------------------------------------------------- spike / contract

def test_spike_k1():
    big, m, partner = spike(Tree(1, ()))
    assert big == Tree(2, ((0, 1),)) and m == Matching.of([(0, 1)]) and partner == {0: 1}


def test_spike_k2_is_p4():
    big, m, _ = spike(Tree.path(2))
    assert canonical_form(big) == canonical_form(Tree.path(4))
    assert end_edge_perfect_matching(big) == m


def test_spike_p3():
    big, m, _ = spike(Tree.path(3))
    assert big.n == 6 and len(m) == 3
    assert set(m.pairs) == end_edges(big)


def test_contract_examples():
    assert contract_matching(Tree.path(2), Matching.of([(0, 1)]))[0] == Tree(1, ())
    small, vmap = contract_matching(Tree.path(4), Matching.of([(0, 1), (2, 3)]))
    assert small == Tree.path(2) and vmap == {0: 0, 1: 0, 2: 1, 3: 1}


def test_contract_rejects_bad_matchings():
    with pytest.raises(TreeError, match="not perfect"):
        contract_matching(Tree.path(6), Matching.of([(0, 1), (2, 3)]))
    with pytest.raises(TreeError, match="not an edge"):
        contract_matching(Tree.path(4), Matching.of([(0, 2), (1, 3)]))


@pytest.mark.parametrize("t", [Tree(1, ()), Tree.path(2), Tree.path(3), Tree.path(4), Tree.star(4)])
def test_contract_inverts_spike_small(t):
    big, m, _ = spike(t)
    small, _ = contract_matching(big, m)
    assert nx.is_isomorphic(nx.Graph(small.edges) if small.n > 1 else nx.empty_graph(1),
                            nx.Graph(t.edges) if t.n > 1 else nx.empty_graph(1))
    assert canonical_form(small) == canonical_form(t)


def test_spike_contract_identity_all_small_trees():
    for n in range(1, 11):
        for t in enumerate_free_trees(n):
            big, m, _ = spike(t)
            assert canonical_form(contract_matching(big, m)[0]) == canonical_form(t)
            if n >= 2:
                assert set(m.pairs) == end_edges(big)
                assert end_edge_perfect_matching(big) == m


# ---------------------------------------------------------------- canonical form

def test_canonical_form_relabel_invariant():
    base = canonical_form(Tree.path(4))
    for perm in itertools.permutations(range(4)):
        assert canonical_form(Tree.path(4).relabel(perm)) == base
    assert base != canonical_form(STAR4)


def test_canonical_form_six_vertex_prufer():
    # all 6^4 codes, grouped by an independent isomorphism test
    reps: list[nx.Graph] = []
    forms = set()
    for seq in prufer_sequences(6):
        t = prufer_decode(seq, 6)
        forms.add(canonical_form(t))
        g = nx.Graph(t.edges)
        if not any(nx.is_isomorphic(g, r) for r in reps):
            reps.append(g)
    assert len(reps) == 6
    assert len(forms) == 6


@settings(max_examples=60)
@given(trees(2, 12), st.randoms(use_true_random=False))
def test_canonical_form_iff_isomorphic(t, rnd):
    u = shuffled(t, rnd)
    assert canonical_form(u) == canonical_form(t)
    other = prufer_decode([rnd.randrange(t.n) for _ in range(t.n - 2)], t.n)
    same = nx.is_isomorphic(nx.Graph(t.edges), nx.Graph(other.edges))
    assert (canonical_form(other) == canonical_form(t)) == same


def test_leaf_to_leaf_oracle_sanity():
    assert sorted(leaf_to_leaf_paths(STAR4)) == [(1, 0, 2), (1, 0, 3), (2, 0, 3)]
