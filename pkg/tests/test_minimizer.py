from itertools import combinations

import pytest

from treeramsey import minimizer
from treeramsey.minimizer import (PathOps, block_path, minimizer_tree,
                                  naive_census, path_word_packed,
                                  scaffold_length, tree_census,
                                  validate_prefix)
from treeramsey.sigs import (PackedOps, StrOps, classify_weak_type, signature,
                             tuple_signature, weak_signature)


def test_scaffold_lengths():
    assert scaffold_length("") == 0
    assert [scaffold_length(p) for p in ("0", "1", "00", "01", "10", "11")] \
        == [2, 4, 6, 8, 10, 12]


def test_packed_words_match_lazy_ops():
    prefix, _ = minimizer_tree(3)
    for a in prefix.addresses:
        p = block_path(a)
        pw = path_word_packed(p)
        assert pw[0] == scaffold_length(p)
        for i in range(pw[0]):
            assert PathOps.bit(p, i) == PackedOps.bit(pw, i)
    for a, b in combinations(prefix.paths, 2):
        pa, pb = path_word_packed(a), path_word_packed(b)
        assert PathOps.meet_len(a, b) == PackedOps.meet_len(pa, pb)


def test_prefix_passes_conditions_up_to_depth_8():
    for depth in (1, 3, 8):
        prefix, report = minimizer_tree(depth)
        assert report.ok, report.violations[:3]
        assert report.node_count == 2 ** (depth + 1) - 1


def test_validator_rejects_constructed_violations():
    # two nodes at one length
    bad = [(3, 0b101), (3, 0b110), (1, 0)]
    v = validate_prefix(bad)
    assert any("length" in s for s in v)
    # comparable pair continuing by bit 1
    bad2 = [(1, 0), (3, 0b011)]
    v2 = validate_prefix(bad2)
    assert any("comparable" in s for s in v2)


def test_depth_zero_rejected():
    with pytest.raises(ValueError):
        minimizer_tree(0)


def test_naive_equals_canonical_census():
    assert naive_census(2, 4) == tree_census(2, 4)
    assert naive_census(3, 4) == tree_census(3, 4)


def test_pairs_realize_exactly_three_types():
    prefix, _ = minimizer_tree(4)
    sigs = {signature(p, ops=PathOps) for p in combinations(prefix.paths, 2)}
    assert len(sigs) == 3


def test_tree_census_converges_to_the_tie_free_family():
    # the faithful prefix realizes the types whose meet levels collide
    # with nothing; they number 25 for triples at any sufficient depth
    assert len(tree_census(3, 8)) == len(tree_census(3, 12)) == 25


def test_minimal_census_matches_table():
    for n, (tm, em) in {0: (1, 1), 1: (1, 1), 2: (3, 3), 3: (29, 27)}.items():
        got = minimizer.minimal_type_census(n, max(1, 4 * n))
        from treeramsey.sigs import strip_stars
        assert len(got) == tm
        assert len({strip_stars(s) for s in got}) == em


def test_minimal_census_realizations_are_concrete_tuples():
    # every census signature is the signature of its realizing words
    got = minimizer.minimal_type_census(2, 8)
    from treeramsey.census import brute_signatures
    assert got <= brute_signatures(2)


def test_tree_tuples_are_length_injective_and_meet_avoiding():
    prefix, _ = minimizer_tree(4)
    for t in combinations(prefix.paths, 2):
        flags = classify_weak_type(signature(t, ops=PathOps, weak=True))
        assert flags["length_injective"] and flags["meet_avoiding"]


def test_tuple_and_weak_signatures_coincide_on_the_prefix():
    # on the minimizing tree the two partitions agree (sizes 2 and 3)
    prefix, _ = minimizer_tree(4)
    words = prefix.words()
    for n in (2, 3):
        small = words[:18] if n == 3 else words
        for t in combinations(small, n):
            assert tuple_signature(t) == weak_signature(t)


def test_explicit_words_agree_with_path_signatures():
    prefix, _ = minimizer_tree(4)
    words = prefix.words()
    paths = prefix.paths
    for idx in combinations(range(10), 3):
        ws = [words[i] for i in idx]
        ps = [paths[i] for i in idx]
        assert tuple_signature(ws) == signature(ps, ops=PathOps)
