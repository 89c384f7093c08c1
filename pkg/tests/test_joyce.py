import random
from itertools import combinations

import pytest

from treeramsey import joyce as J
from treeramsey.trees import enumerate_strong_subtrees, full_binary_tree
from treeramsey.words import words_upto


def pair_order(edge_label=0, x_label=1, y_label=2):
    return J.make_order(["x", "y"], {("x", "y"): edge_label,
                                     ("x", "x"): x_label,
                                     ("y", "y"): y_label})


# ---------------------------------------------------------------------------
# validators

def test_validate_joyce_order_examples():
    assert J.validate_joyce_order(pair_order()) == []
    clash = J.make_order(["x", "y"], {("x", "y"): 0, ("x", "x"): 1,
                                      ("y", "y"): 1})
    assert any("axiom 3" in v for v in J.validate_joyce_order(clash))
    singleton = J.make_order(["x"], {("x", "x"): 0})
    assert J.validate_joyce_order(singleton) == []


def test_make_order_rejects_bad_tables():
    with pytest.raises(ValueError):
        J.make_order(["x", "y"], {("x", "y"): 0, ("y", "x"): 1,
                                  ("x", "x"): 1, ("y", "y"): 2})
    with pytest.raises(ValueError):
        J.make_order(["x", "y"], {("x", "x"): 1, ("y", "y"): 2})


def test_subset_closure():
    rnd = random.Random(3)
    for t in J.enumerate_joyce_trees(4):
        order = J._order_of_tree(t)
        assert J.validate_joyce_order(order) == []
        idxs = rnd.sample(range(4), 2)
        assert J.validate_joyce_order(order.subset(idxs)) == []
        idxs = rnd.sample(range(4), 3)
        assert J.validate_joyce_order(order.subset(idxs)) == []


def test_label_cardinality_law():
    # via tree-derived orders (all isomorphism classes) ...
    for n in (1, 2, 3, 4):
        for t in J.enumerate_joyce_trees(n):
            order = J._order_of_tree(t)
            assert len(set(order.labels.values())) == 2 * n - 1
    # ... and non-circularly via orders assembled from string sets
    words = J.dlo_prefix(11)
    for n in (2, 3, 4):
        for combo in combinations(words[:9], n):
            order = J.dlo_order_subset = J.coded_order(combo)
            labels = set(order.labels.values())
            if not J.validate_joyce_order(order):
                assert len(labels) == 2 * n - 1


def test_coded_subsets_of_valid_coded_orders_stay_valid():
    base = J.encode_coded_order(J._order_of_tree(
        next(iter(J.enumerate_joyce_trees(4)))))
    assert J.validate_coded_joyce_order(base) == []
    for k in (2, 3):
        for sub in combinations(base, k):
            assert J.validate_coded_joyce_order(list(sub)) == []


# ---------------------------------------------------------------------------
# trees

def test_joyce_tree_base_cases():
    singleton = J.make_order(["x"], {("x", "x"): 7})
    assert J.joyce_tree_of(singleton) == (1, None, None)
    assert J.joyce_tree_of(pair_order()) == (1, (2, None, None),
                                             (3, None, None))


def test_joyce_tree_counts():
    assert [J.count_joyce_trees(n) for n in (1, 2, 3, 4)] == [1, 2, 16, 272]


def test_sixteen_trees_from_three_element_orders():
    outs = {J.joyce_tree_of(J._order_of_tree(t))
            for t in J.enumerate_joyce_trees(3)}
    assert len(outs) == 16


def test_joyce_tree_is_complete_isomorphism_invariant():
    orders = [J._order_of_tree(t) for t in J.enumerate_joyce_trees(3)]
    # relabeling monotonically yields isomorphic orders with equal trees
    rnd = random.Random(1)
    for order in orders[:6]:
        shift = {l: 3 * l + rnd.randint(0, 2)
                 for l in sorted(set(order.labels.values()))}
        relabeled = J.JoyceOrder(order.elements,
                                 {k: shift[v] for k, v in order.labels.items()})
        assert J.are_isomorphic(order, relabeled)
        assert J.joyce_tree_of(order) == J.joyce_tree_of(relabeled)
    for a, b in combinations(orders, 2):
        same_tree = J.joyce_tree_of(a) == J.joyce_tree_of(b)
        assert same_tree == J.are_isomorphic(a, b)


def test_tree_text_round_trip():
    for t in J.enumerate_joyce_trees(3):
        assert J.tree_from_text(J.tree_to_text(t)) == t
    assert J.validate_joyce_tree((1, (2, None, None), (3, None, None))) == []
    assert J.validate_joyce_tree((1, (2, None, None), None))
    assert J.validate_joyce_tree((2, (1, None, None), (3, None, None)))


# ---------------------------------------------------------------------------
# coded orders

def test_encode_examples():
    assert J.encode_coded_order(pair_order()) == ["0", "10"]
    singleton = J.make_order(["x"], {("x", "x"): 0})
    assert J.encode_coded_order(singleton) == [""]


def test_encode_round_trip_up_to_size_four():
    for n in (1, 2, 3, 4):
        for t in J.enumerate_joyce_trees(n):
            order = J._order_of_tree(t)
            words = J.encode_coded_order(order)
            assert J.validate_coded_joyce_order(words) == []
            assert [len(w) for w in words] == \
                [J._reranked(order).label(i, i) for i in range(n)]
            assert J.joyce_tree_of(J.coded_order(words)) == \
                J.joyce_tree_of(order)


def test_validate_coded_order_examples():
    # equal lengths force equal self-labels, which the third axiom forbids
    assert any("axiom 3" in v
               for v in J.validate_coded_joyce_order(["0", "1"]))
    assert any("axiom 3" in v
               for v in J.validate_coded_joyce_order(["1", "10"]))
    assert J.validate_coded_joyce_order(["0", "10"]) == []
    assert J.validate_coded_joyce_order(["00", "1"]) == []
    v = J.validate_coded_joyce_order(["00", "0100", "11"])
    assert v  # "11" reads 1 at the meet length of the first two


# ---------------------------------------------------------------------------
# the dense-order witness

def test_dlo_language():
    assert J.dlo_contains("10000010001")
    assert not J.dlo_contains("10000010000")
    assert J.dlo_prefix(2) == ["01"]
    assert J.dlo_prefix(5) == ["01", "00001", "10001"]


def test_dlo_order_is_a_joyce_order_at_any_depth():
    for ml in (2, 5, 8, 11):
        assert J.validate_joyce_order(J.dlo_order(ml)) == []


def test_hat_encoding():
    assert J.hat_encode("0110") == "00010010000001"
    assert J.hat_encode("") == "01"
    assert J.hat_encode("1") == "10001"
    assert J.dlo_contains(J.hat_encode("1"))
    assert all(J.dlo_contains(J.hat_encode(w)) for w in words_upto(4))


def test_hat_image_isomorphism_for_small_coded_orders():
    # for every coded Joyce order over short words, the hat image has
    # the same Joyce structure
    checked = 0
    ws = words_upto(4)
    for n in (1, 2, 3):
        for combo in combinations(ws, n):
            if J.validate_coded_joyce_order(list(combo)):
                continue
            hat = [J.hat_encode(w) for w in combo]
            assert J.validate_coded_joyce_order(hat) == []
            assert J.joyce_tree_of(J.coded_order(hat)) == \
                J.joyce_tree_of(J.coded_order(combo))
            checked += 1
    assert checked > 50


# ---------------------------------------------------------------------------
# uniqueness inside strong subtrees

def test_at_most_one_coded_copy_per_strong_subtree():
    t = full_binary_tree(5)
    shapes = [J.joyce_tree_of(J._order_of_tree(tt))
              for tt in J.enumerate_joyce_trees(2)]
    subs = enumerate_strong_subtrees(t, 3)
    assert subs
    found_any = 0
    for w in subs:
        per_shape = {s: 0 for s in map(J.tree_to_text, shapes)}
        for pair in combinations(w.subtree.sorted_nodes, 2):
            if J.validate_coded_joyce_order(list(pair)):
                continue
            shape = J.tree_to_text(J.joyce_tree_of(J.coded_order(pair)))
            per_shape[shape] += 1
            found_any += 1
        assert all(c <= 1 for c in per_shape.values()), w.subtree.sorted_nodes
    assert found_any > 0


def test_every_coded_copy_extends_to_a_strong_subtree():
    t = full_binary_tree(5)
    subs = enumerate_strong_subtrees(t, 3)
    memberships = [frozenset(w.subtree.nodes) for w in subs]
    for pair in combinations(t.sorted_nodes, 2):
        if J.validate_coded_joyce_order(list(pair)):
            continue
        if max(len(x) for x in pair) >= t.height:
            continue
        assert any(set(pair) <= m for m in memberships), pair


# ---------------------------------------------------------------------------
# graphs

def test_epn():
    assert J.epn("11", "1") is True
    assert J.epn("10001", "1") is False
    assert J.epn("1", "11") is True
    with pytest.raises(ValueError):
        J.epn("01", "10")


def test_graph_encode_examples():
    edge = J.JoyceGraph(pair_order(), frozenset({frozenset((0, 1))}))
    assert J.encode_coded_graph(edge) == ["0", "11"]
    no_edge = J.JoyceGraph(pair_order(), frozenset())
    assert J.encode_coded_graph(no_edge) == ["0", "10"]
    single = J.JoyceGraph(J.make_order(["x"], {("x", "x"): 3}), frozenset())
    assert J.encode_coded_graph(single) == ["000"]


def test_coded_graph_round_trip_size_two():
    for edges in (frozenset(), frozenset({frozenset((0, 1))})):
        g = J.JoyceGraph(pair_order(), edges)
        words = J.encode_coded_graph(g)
        assert J.validate_coded_joyce_graph(words) == []
        assert J.epn(words[0], words[1]) == (len(edges) == 1)
        assert J.joyce_tree_of(J.coded_order(words)) == \
            J.joyce_tree_of(pair_order())


def test_validate_coded_graph_examples():
    assert J.validate_coded_joyce_graph(["0", "11"]) == []
    # a constructed fourth-axiom violation: x linked to y but not z
    # although x's self-label sits below the meet label of y and z
    order = J.make_order(["x", "y", "z"],
                         {("x", "x"): 1, ("y", "y"): 3, ("z", "z"): 4,
                          ("x", "y"): 0, ("x", "z"): 0, ("y", "z"): 2})
    assert J.validate_joyce_order(order) == []
    bad = J.JoyceGraph(order, frozenset({frozenset((0, 1))}))
    assert any("axiom 4" in v for v in J.validate_joyce_graph(bad))
    good = J.JoyceGraph(order, frozenset({frozenset((0, 1)),
                                          frozenset((0, 2))}))
    assert J.validate_joyce_graph(good) == []


def test_joyce_graph_counts():
    assert J.count_joyce_graphs(2) == 4
    assert J.count_joyce_graphs(3) == 112
    k3 = frozenset(frozenset(p) for p in combinations(range(3), 2))
    assert J.count_joyce_graphs(3, k3) == 16
    with pytest.raises(ValueError):
        J.count_joyce_graphs(3, frozenset({frozenset((0, 5))}))


def test_graph_counts_sum_over_underlying_graphs():
    for n in (2, 3):
        total = sum(J.count_joyce_graphs(n, g) for g in J.graphs_of_size(n))
        assert total == J.count_joyce_graphs(n)


# ---------------------------------------------------------------------------
# blossom tables and Rado extension

def test_blossom_generator_passes_validator():
    for depth in (1, 2, 3):
        assert J.validate_blossom(J.generate_blossom(depth)) == []


def test_blossom_violations():
    tbl = J.generate_blossom(2)
    no_ext = J.BlossomTable(2, tbl.f, dict(tbl.f))
    assert any("strictly extend" in v for v in J.validate_blossom(no_ext))
    # force two sibling branches to agree at a read position
    f = dict(tbl.f)
    f["10"] = f["11"]
    broken = J.BlossomTable(2, f, tbl.g)
    assert any("agree at" in v or "preserve" in v
               for v in J.validate_blossom(broken))
    with pytest.raises(ValueError):
        J.validate_blossom(J.BlossomTable(1, {"0": "000"}, {"0": "00001"}))


def test_rado_extend():
    w = J.rado_extend({"01"}, set(), {"01"}, 8)
    assert w is not None and w[2] == "1" and len(w) <= 8
    assert J.rado_extend(set(), set(), set(), 4) == "01"
    assert J.rado_extend({"01"}, set(), {"01"}, 3) is None
    with pytest.raises(ValueError):
        J.rado_extend({"0", "11"}, {"0"}, {"0"}, 9)
    # linked to f1, not linked to f0, fresh length
    verts = {"0", "11"}
    w = J.rado_extend(verts, {"0"}, {"11"}, 20)
    assert w is not None and len(w) not in {1, 2}
    assert J.epn(w, "11") and not J.epn(w, "0")
