import pytest

from treeramsey import minimizer
from treeramsey.census import (brute_signatures, census, count_height_shapes,
                               count_types, embedding_types_of_height,
                               qualifying_weak_types, type_catalog,
                               weak_type_catalog)
from treeramsey.sigs import strip_stars, tuple_signature


TABLE = {
    0: (1, 1, 1, 1),
    1: (1, 1, 1, 1),
    2: (7, 7, 3, 3),
    3: (345, 369, 27, 29),
}


def test_small_rows_of_the_table():
    for n, (ea, ta, em, tm) in TABLE.items():
        row = census(n)
        assert (row["emb-all"], row["tup-all"],
                row["emb-min"], row["tup-min"]) == (ea, ta, em, tm)


def test_count_types_kind_method_contract():
    assert count_types(2, "tup-all", "brute").count == 7
    assert count_types(3, "emb-all", "brute").count == 345
    assert count_types(2, "tup-min", "predicate").count == 3
    assert count_types(3, "tup-min", "minimizer").count == 29
    assert count_types(3, "emb-min", "minimizer").count == 27
    with pytest.raises(ValueError):
        count_types(2, "tup-all", "predicate")
    with pytest.raises(ValueError):
        count_types(2, "tup-min", "brute")
    with pytest.raises(ValueError):
        count_types(2, "nope", "brute")


def test_cross_method_agreement_small():
    for n in range(4):
        p = count_types(n, "tup-min", "predicate").count
        m = count_types(n, "tup-min", "minimizer").count
        assert p == m == TABLE[n][3]
        pe = count_types(n, "emb-min", "predicate").count
        me = count_types(n, "emb-min", "minimizer").count
        assert pe == me == TABLE[n][2]


def test_brute_domain_self_test():
    # enlarging the word-length bound from 2n-2 to 2n adds no signatures
    for n in (1, 2, 3):
        base = brute_signatures(n)
        wider = brute_signatures(n, max_len=2 * n)
        assert base == wider


def test_threads_do_not_change_counts():
    a = brute_signatures(3, max_len=5, threads=1)
    b = brute_signatures(3, max_len=5, threads=2)
    assert a == b


def test_unique_comparable_weak_type():
    # exactly one weak tuple type of each size has only comparable
    # members; n = 4 is asserted in the acceptance suite alongside the
    # heavy census
    for n in (1, 2, 3):
        chains = [w for w in weak_type_catalog(n) if _all_comparable(w)]
        assert len(chains) == 1


def _all_comparable(term):
    # no branching node separates two starred nodes
    def stars_below(t):
        if t is None:
            return 0
        s, c0, c1 = t
        return int(s) + stars_below(c0) + stars_below(c1)

    def walk(t):
        if t is None:
            return True
        _s, c0, c1 = t
        if stars_below(c0) and stars_below(c1):
            return False
        return walk(c0) and walk(c1)

    return walk(term)


def test_qualifying_types_realized_in_minimal_census():
    for n in (2, 3):
        assert qualifying_weak_types(n) == minimizer.minimal_type_census(n, 4 * n)


def test_recurrence_against_shape_enumeration():
    expected = [1, 1, 3, 21, 651, 457653]
    for h, want in enumerate(expected):
        assert embedding_types_of_height(h) == want
        if h <= 4:
            assert count_height_shapes(h) == want


def test_type_catalog():
    rows = type_catalog(2, "tup-all")
    assert len(rows) == 7
    assert all(set(r) == {"kind", "signature", "representative"} for r in rows)
    sigs = [r["signature"] for r in rows]
    assert sigs == sorted(sigs)
    for r in rows:
        assert r["signature"] == _render(tuple_signature(r["representative"]))
    mins = type_catalog(2, "tup-min")
    assert len(mins) == 3


def _render(sig):
    from treeramsey.sigs import render_signature
    return render_signature(sig)


def test_emb_counts_are_star_stripped_tuple_counts():
    sigs = brute_signatures(3)
    assert len({strip_stars(s) for s in sigs}) == 345
