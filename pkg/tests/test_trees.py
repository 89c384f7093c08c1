from itertools import chain, combinations

import pytest

from treeramsey.trees import (FiniteTree, enumerate_strong_subtrees,
                              enumerate_strong_subtrees_with_leaves,
                              full_binary_tree, is_strong_subtree,
                              nodes_from_text, nodes_to_text)


def brute_strong_subtrees(t, n):
    """Oracle: filter all node subsets by the witness validator."""
    nodes = t.sorted_nodes
    found = []
    for size in range(1, len(nodes) + 1):
        for sub in combinations(nodes, size):
            w = is_strong_subtree(sub, t)
            if w is not None and w.subtree.height == n:
                found.append(frozenset(sub))
    return set(found)


def test_tree_structure_basics():
    t = full_binary_tree(3)
    assert t.root == ""
    assert t.height == 3
    assert t.level(1) == ("0", "1")
    assert t.branching("") == 2
    assert set(t.leaves) == {"00", "01", "10", "11"}
    # level is relative to the set, not the word length
    s = FiniteTree(["01", "0101", "0110"])
    assert s.level_of("01") == 0
    assert s.level_of("0101") == 1
    assert s.height == 2


def test_tree_rejects_bad_sets():
    with pytest.raises(ValueError):
        FiniteTree([])
    with pytest.raises(ValueError):
        FiniteTree(["0", "1"])  # no root
    with pytest.raises(ValueError):
        FiniteTree(["01", "0100", "0101"])  # not meet-closed


def test_figure_one_strong_subtrees():
    t = full_binary_tree(5)
    assert is_strong_subtree({"01", "0101", "0110"}, t) is not None
    assert is_strong_subtree({"01", "0100", "0101"}, t) is None
    assert is_strong_subtree({"01", "0101", "011"}, t) is None


def test_is_strong_subtree_precondition():
    t = full_binary_tree(3)
    with pytest.raises(ValueError):
        is_strong_subtree({"000"}, t)


def test_enumeration_counts():
    t3 = full_binary_tree(3)
    assert len(enumerate_strong_subtrees(t3, 1)) == 7
    assert len(enumerate_strong_subtrees(t3, 2)) == 7
    assert len(enumerate_strong_subtrees(full_binary_tree(2), 2)) == 1
    assert len(enumerate_strong_subtrees_with_leaves(t3, 2)) == 6
    assert len(enumerate_strong_subtrees_with_leaves(t3, 3)) == 1


def test_enumeration_matches_brute_oracle():
    t = full_binary_tree(3)
    for n in (1, 2, 3):
        got = {frozenset(w.subtree.nodes)
               for w in enumerate_strong_subtrees(t, n)}
        assert got == brute_strong_subtrees(t, n)
    # an irregular tree with an early leaf
    irregular = FiniteTree(["", "0", "1", "00", "01"])
    for n in (1, 2):
        got = {frozenset(w.subtree.nodes)
               for w in enumerate_strong_subtrees(irregular, n)}
        assert got == brute_strong_subtrees(irregular, n)


def test_enumeration_is_sorted_and_duplicate_free():
    t = full_binary_tree(4)
    ws = enumerate_strong_subtrees(t, 2)
    keys = [w.key() for w in ws]
    assert keys == sorted(keys)
    assert len(keys) == len(set(keys))


def test_witnesses_validate():
    t = full_binary_tree(4)
    for w in enumerate_strong_subtrees(t, 3):
        again = is_strong_subtree(w.subtree.nodes, t)
        assert again is not None and again.level_fn == w.level_fn


def test_transitivity_within_height_four():
    t = full_binary_tree(4)
    all_subs = list(chain.from_iterable(
        enumerate_strong_subtrees(t, n) for n in (1, 2, 3, 4)))
    for s in all_subs:
        for beta in range(1, s.subtree.height + 1):
            for u in enumerate_strong_subtrees(s.subtree, beta):
                assert is_strong_subtree(u.subtree.nodes, t) is not None


def test_text_round_trip():
    t = FiniteTree(["", "0", "01"])
    text = nodes_to_text(t.nodes)
    assert text.splitlines()[0] == "e"
    assert set(nodes_from_text(text)) == set(t.nodes)
