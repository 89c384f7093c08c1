"""Joyce orders, Joyce trees, Joyce graphs and their coded forms.

A Joyce order abstracts the left-to-right order and meet-depth structure
of an antichain in the binary tree: a linear order with a symmetric
label function satisfying three axioms (checked verbatim by the
validators here).  Every finite Joyce order is represented faithfully by
a Joyce tree: a full binary tree with 2n-1 vertices whose labels
1..2n-1 increase from parent to child.  Counting Joyce trees by leaf
number gives 1, 2, 16, 272, ... -- the big Ramsey degrees of the dense
linear order.

Coded forms replace abstract labels by concrete bit strings: elements
become strings, the order becomes lexicographic, labels become meet
lengths, and for graphs the edge relation is read off the bits (the
longer string's bit at the shorter one's length).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb

from .words import is_prefix, lt_q, meet

__all__ = [
    "JoyceOrder", "JoyceGraph", "make_order", "coded_order",
    "validate_joyce_order", "validate_joyce_graph",
    "validate_coded_joyce_order", "validate_coded_joyce_graph",
    "joyce_tree_of", "tree_to_text", "tree_from_text", "validate_joyce_tree",
    "enumerate_joyce_trees", "count_joyce_trees",
    "are_isomorphic", "encode_coded_order", "encode_coded_graph",
    "count_joyce_graphs", "graphs_of_size",
    "dlo_prefix", "dlo_contains", "hat_encode", "epn", "graph_triple_encode",
    "BlossomTable", "validate_blossom", "generate_blossom", "rado_extend",
]


# ---------------------------------------------------------------------------
# orders

@dataclass(frozen=True)
class JoyceOrder:
    """Elements listed in increasing order; labels indexed by (i, j), i <= j."""

    elements: tuple
    labels: dict

    def label(self, i: int, j: int) -> int:
        return self.labels[(i, j) if i <= j else (j, i)]

    @property
    def size(self) -> int:
        return len(self.elements)

    def subset(self, idxs) -> "JoyceOrder":
        idxs = sorted(idxs)
        pos = {x: k for k, x in enumerate(idxs)}
        labels = {(pos[i], pos[j]): self.label(i, j)
                  for i, j in combinations(idxs, 2)}
        labels.update({(pos[i], pos[i]): self.label(i, i) for i in idxs})
        return JoyceOrder(tuple(self.elements[i] for i in idxs), labels)


def make_order(elements, label_pairs) -> JoyceOrder:
    """Build an order from element names and a pair->label mapping.

    label_pairs maps (a, b) element pairs (any orientation) to labels;
    conflicting orientations are rejected.
    """
    elements = tuple(elements)
    pos = {x: i for i, x in enumerate(elements)}
    labels: dict = {}
    for (a, b), l in label_pairs.items():
        i, j = sorted((pos[a], pos[b]))
        if labels.setdefault((i, j), l) != l:
            raise ValueError(f"label table not symmetric on ({a!r}, {b!r})")
    n = len(elements)
    need = {(i, j) for i in range(n) for j in range(i, n)}
    if set(labels) != need:
        raise ValueError("label table must be total on all pairs")
    return JoyceOrder(elements, labels)


def coded_order(words) -> JoyceOrder:
    """The order (words, lex, meet length) of a set of binary words."""
    elems = tuple(sorted(set(words)))
    labels = {}
    for i in range(len(elems)):
        for j in range(i, len(elems)):
            labels[(i, j)] = len(meet(elems[i], elems[j]))
    return JoyceOrder(elems, labels)


def validate_joyce_order(order: JoyceOrder) -> list[str]:
    """All violated axiom instances, with the witnessing quadruple."""
    n = order.size
    L = order.label
    out = []
    for x in range(n):
        for y in range(x, n):
            for z in range(n):
                for t in range(z, n):
                    if x == y == z == t:
                        continue
                    quad = tuple(order.elements[i] for i in (x, y, z, t))
                    if L(x, y) < L(x, z) and (x < y) != (z < y):
                        out.append(f"axiom 1 fails on {quad}")
                    if L(x, y) < L(x, z) and L(x, y) != L(z, y):
                        out.append(f"axiom 2 fails on {quad}")
                    if L(x, y) == L(z, t) and \
                            not L(x, y) < min(L(x, z), L(y, t)):
                        out.append(f"axiom 3 fails on {quad}")
    return out


@dataclass(frozen=True)
class JoyceGraph:
    order: JoyceOrder
    edges: frozenset  # frozensets {i, j} of element indices, i != j

    @property
    def size(self) -> int:
        return self.order.size

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges


def validate_joyce_graph(graph: JoyceGraph) -> list[str]:
    """Order axioms plus the edge-compatibility axiom."""
    out = validate_joyce_order(graph.order)
    n = graph.size
    L = graph.order.label
    for e in graph.edges:
        if len(e) != 2 or not all(0 <= i < n for i in e):
            raise ValueError(f"malformed edge {set(e)}")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if y == x or z == x:
                    continue
                if L(x, x) < L(y, z) and \
                        graph.adjacent(x, y) != graph.adjacent(x, z):
                    trip = tuple(graph.order.elements[i] for i in (x, y, z))
                    out.append(f"axiom 4 fails on {trip}")
    return out


# ---------------------------------------------------------------------------
# Joyce trees

def joyce_tree_of(order: JoyceOrder):
    """The Joyce tree coded by a valid order.

    Recursive split at the minimal label; labels renamed through the
    unique order isomorphism onto 1..2n-1.  Isomorphic orders yield
    equal trees.
    """
    bad = validate_joyce_order(order)
    if bad:
        raise ValueError("not a Joyce order: " + bad[0])
    L = order.label
    n = order.size

    def build(idxs):
        pairs = [(i, j) for i, j in combinations(idxs, 2)] + \
                [(i, i) for i in idxs]
        l = min(L(i, j) for i, j in pairs)
        x, y = next((i, j) for i, j in pairs if L(i, j) == l)
        if x == y:
            return (l, None, None)
        left = [z for z in idxs if L(x, z) > l]
        right = [z for z in idxs if L(y, z) > l]
        return (l, build(left), build(right))

    raw = build(list(range(n)))
    used = sorted(_tree_labels(raw))
    rank = {l: k + 1 for k, l in enumerate(used)}

    def rename(t):
        if t is None:
            return None
        l, a, b = t
        return (rank[l], rename(a), rename(b))

    return rename(raw)


def _tree_labels(t) -> list[int]:
    if t is None:
        return []
    l, a, b = t
    return [l] + _tree_labels(a) + _tree_labels(b)


def validate_joyce_tree(t) -> list[str]:
    out = []
    labels = _tree_labels(t)
    n_nodes = len(labels)
    if sorted(labels) != list(range(1, n_nodes + 1)):
        out.append("labels are not a bijection onto 1..2n-1")
    if n_nodes % 2 == 0:
        out.append("even number of vertices")

    def walk(node):
        l, a, b = node
        if (a is None) != (b is None):
            out.append(f"node {l} has exactly one child")
        for c in (a, b):
            if c is not None:
                if c[0] <= l:
                    out.append(f"child label {c[0]} not above parent {l}")
                walk(c)

    walk(t)
    return out


def tree_leaves(t) -> list[int]:
    """Leaf labels in left-to-right order."""
    l, a, b = t
    if a is None and b is None:
        return [l]
    return tree_leaves(a) + tree_leaves(b)


def tree_to_text(t) -> str:
    if t is None:
        return "-"
    l, a, b = t
    return f"({l} {tree_to_text(a)} {tree_to_text(b)})"


def tree_from_text(text: str):
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse():
        nonlocal pos
        if tokens[pos] == "-":
            pos += 1
            return None
        if tokens[pos] != "(":
            raise ValueError(f"expected '(' at token {pos}")
        pos += 1
        label = int(tokens[pos]); pos += 1
        a = parse()
        b = parse()
        if tokens[pos] != ")":
            raise ValueError(f"expected ')' at token {pos}")
        pos += 1
        return (label, a, b)

    t = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens")
    return t


def _shapes(n_leaves: int):
    if n_leaves == 1:
        yield ()
        return
    for k in range(1, n_leaves):
        for a in _shapes(k):
            for b in _shapes(n_leaves - k):
                yield (a, b)


def _labelings(shape, labels: list[int]):
    """Parent-increasing labelings; the root takes the least label."""
    if shape == ():
        assert len(labels) == 1
        yield (labels[0], None, None)
        return
    a, b = shape
    root, rest = labels[0], labels[1:]
    size_a = 2 * _leaf_count(a) - 1
    for left_set in combinations(rest, size_a):
        right_set = [l for l in rest if l not in left_set]
        for ta in _labelings(a, list(left_set)):
            for tb in _labelings(b, right_set):
                yield (root, ta, tb)


def _leaf_count(shape) -> int:
    if shape == ():
        return 1
    a, b = shape
    return _leaf_count(a) + _leaf_count(b)


def enumerate_joyce_trees(n: int):
    """All Joyce trees with n leaves."""
    if n < 1:
        raise ValueError("need at least one leaf")
    labels = list(range(1, 2 * n))
    for shape in _shapes(n):
        yield from _labelings(shape, labels)


def count_joyce_trees(n: int) -> int:
    return sum(1 for _ in enumerate_joyce_trees(n))


def are_isomorphic(a: JoyceOrder, b: JoyceOrder) -> bool:
    """Joyce-structure isomorphism: the unique order bijection matches
    the relative order of all labels."""
    if a.size != b.size:
        return False
    n = a.size
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    for p, q in combinations(pairs, 2):
        la = (a.label(*p) < a.label(*q), a.label(*p) == a.label(*q))
        lb = (b.label(*p) < b.label(*q), b.label(*p) == b.label(*q))
        if la != lb:
            return False
    return True


# ---------------------------------------------------------------------------
# coded orders

def _reranked(order: JoyceOrder) -> JoyceOrder:
    """Labels compressed onto an initial segment of the naturals."""
    used = sorted({l for l in order.labels.values()})
    rank = {l: k for k, l in enumerate(used)}
    return JoyceOrder(order.elements,
                      {k: rank[l] for k, l in order.labels.items()})


def encode_coded_order(order: JoyceOrder) -> list[str]:
    """Strings representing the order, in element order.

    Element x becomes the string of length <x,x> whose bit at a label l
    is 1 exactly when l = <y,x> for some y < x.  Labels are re-ranked
    onto an initial segment first, so lengths equal self-labels.
    """
    bad = validate_joyce_order(order)
    if bad:
        raise ValueError("not a Joyce order: " + bad[0])
    order = _reranked(order)
    n = order.size
    L = order.label
    out = []
    for x in range(n):
        marks = {L(y, x) for y in range(x)}
        out.append("".join("1" if j in marks else "0"
                           for j in range(L(x, x))))
    return out


def validate_coded_joyce_order(words) -> list[str]:
    """Order axioms for (words, lex, meet length) plus the bit condition."""
    ws = sorted(set(words))
    out = validate_joyce_order(coded_order(ws))
    for s, t in combinations(ws, 2):
        m = meet(s, t)
        for r in ws:
            if len(r) > len(m) and not is_prefix(m, r) and r[len(m)] != "0":
                out.append(f"bit condition fails: {r} reads 1 at |{s}^{t}|")
    for s in ws:
        for r in ws:
            if len(r) > len(s) and not is_prefix(s, r) and r[len(s)] != "0":
                out.append(f"bit condition fails: {r} reads 1 at |{s}|")
    return out


# ---------------------------------------------------------------------------
# coded graphs

def epn(a: str, b: str) -> bool:
    """Edge read-off: the longer word has bit 1 at the shorter's length."""
    if len(a) == len(b):
        raise ValueError("edge relation requires distinct lengths")
    lo, hi = (a, b) if len(a) < len(b) else (b, a)
    return hi[len(lo)] == "1"


def validate_coded_joyce_graph(words) -> list[str]:
    ws = sorted(set(words))
    if len({len(w) for w in ws}) != len(ws):
        return ["two strings of equal length"]
    out = validate_joyce_order(coded_order(ws))
    edges = frozenset(frozenset((i, j)) for i, j in combinations(range(len(ws)), 2)
                      if epn(ws[i], ws[j]))
    out.extend(v for v in validate_joyce_graph(JoyceGraph(coded_order(ws), edges))
               if "axiom 4" in v)
    for s, t in combinations(ws, 2):
        m = meet(s, t)
        for r in ws:
            if len(r) > len(m) and not is_prefix(m, r) and r[len(m)] != "0":
                out.append(f"bit condition fails: {r} reads 1 at |{s}^{t}|")
    return out


def encode_coded_graph(graph: JoyceGraph) -> list[str]:
    """Strings whose lex order, meet lengths and bit read-offs realize
    the graph; lengths equal self-labels (re-ranked first)."""
    bad = validate_joyce_graph(graph)
    if bad:
        raise ValueError("not a Joyce graph: " + bad[0])
    order = _reranked(graph.order)
    n = order.size
    L = order.label
    out = []
    for x in range(n):
        bits = []
        for j in range(L(x, x)):
            b = "0"
            for y in range(n):
                if y != x and L(x, y) == j:
                    b = "1" if y < x else "0"
                    break
                if L(y, y) == j:
                    b = "1" if graph.adjacent(x, y) else "0"
                    break
            bits.append(b)
        out.append("".join(bits))
    return out


def graphs_of_size(n: int):
    """One representative edge set per isomorphism class of n-graphs."""
    seen = []
    for bits in range(1 << comb(n, 2)):
        pairs = list(combinations(range(n), 2))
        edges = frozenset(frozenset(p) for k, p in enumerate(pairs)
                          if bits >> k & 1)
        if not any(_graph_iso(n, edges, e2) for e2 in seen):
            seen.append(edges)
    return seen


def _graph_iso(n: int, e1: frozenset, e2: frozenset) -> bool:
    if len(e1) != len(e2):
        return False
    for p in permutations(range(n)):
        if all((frozenset((p[i], p[j])) in e2) == (frozenset((i, j)) in e1)
               for i, j in combinations(range(n), 2)):
            return True
    return False


def count_joyce_graphs(n: int, graph: frozenset | None = None) -> int:
    """Isomorphism classes of Joyce graphs of size n.

    A Joyce graph is a Joyce tree with n leaves together with an edge
    set on the leaves compatible with the fourth axiom; the optional
    filter keeps only those whose underlying graph is isomorphic to the
    given edge set on range(n).
    """
    if n < 1:
        raise ValueError("size must be >= 1")
    if graph is not None:
        verts = {i for e in graph for i in e}
        if not verts <= set(range(n)):
            raise ValueError("filter graph size does not match n")
    count = 0
    pairs = list(combinations(range(n), 2))
    for t in enumerate_joyce_trees(n):
        leaves = tree_leaves(t)
        order = _order_of_tree(t)
        for bits in range(1 << len(pairs)):
            edges = frozenset(frozenset(p) for k, p in enumerate(pairs)
                              if bits >> k & 1)
            g = JoyceGraph(order, edges)
            if any("axiom 4" in v for v in validate_joyce_graph(g)):
                continue
            if graph is not None and not _graph_iso(n, edges, graph):
                continue
            count += 1
    return count


def _order_of_tree(t) -> JoyceOrder:
    """The Joyce order whose elements are the tree's leaves."""
    leaves = tree_leaves(t)
    pos = {l: i for i, l in enumerate(leaves)}

    def fill(node, labels):
        l, a, b = node
        if a is None:
            labels[(pos[l], pos[l])] = l
            return [l]
        la, lb = fill(a, labels), fill(b, labels)
        for x in la:
            for y in lb:
                i, j = sorted((pos[x], pos[y]))
                labels[(i, j)] = l
        return la + lb

    labels: dict = {}
    fill(t, labels)
    return JoyceOrder(tuple(leaves), labels)


# ---------------------------------------------------------------------------
# the dense-linear-order witness and the two string encodings

def dlo_prefix(max_len: int) -> list[str]:
    """All members of the block language (000 u 100)*01 of bounded length."""
    if max_len < 2:
        raise ValueError("the shortest member has length 2")
    out = []
    k = 0
    while 3 * k + 2 <= max_len:
        for v in range(1 << k):
            blocks = "".join(format(v, f"0{k}b")[i] + "00" for i in range(k)) \
                if k else ""
            out.append(blocks + "01")
        k += 1
    return sorted(out, key=lambda w: (len(w), w))


def dlo_contains(w: str) -> bool:
    if len(w) % 3 != 2 or not w.endswith("01"):
        return False
    body, _tail = w[:-2], w[-2:]
    return all(body[i + 1] == "0" and body[i + 2] == "0"
               for i in range(0, len(body), 3))


def dlo_order(max_len: int) -> JoyceOrder:
    """The dense-order witness as a Joyce order.

    Elements are the language members; the label of a pair is the
    canonical (length-then-lexicographic) rank of its meet.  Meet
    lengths alone do not work: the language carries several members of
    each length 3k+2, and two elements with equal self-labels violate
    the third axiom, which is why the coded form of this order is
    obtained by re-encoding rather than taken verbatim.
    """
    from .words import rank

    elems = tuple(sorted(dlo_prefix(max_len)))
    labels = {}
    for i in range(len(elems)):
        for j in range(i, len(elems)):
            labels[(i, j)] = rank(meet(elems[i], elems[j]))
    return JoyceOrder(elems, labels)


def hat_encode(w: str) -> str:
    """Triple-pad each bit with two zeros and close with 01."""
    return "".join(c + "00" for c in w) + "01"


def graph_triple_encode(w: str) -> str:
    """Repeat each bit three times and close with 01."""
    return "".join(c * 3 for c in w) + "01"


# ---------------------------------------------------------------------------
# blossom trees

@dataclass(frozen=True)
class BlossomTable:
    """Finite records of the pair (f, g) on all words up to depth."""

    depth: int
    f: dict
    g: dict


def validate_blossom(table: BlossomTable) -> list[str]:
    dom = sorted(table.f, key=lambda w: (len(w), w))
    if any(w[:-1] not in table.f for w in dom if w):
        raise ValueError("domain of f is not prefix-closed")
    out = []
    f, g = table.f, table.g
    for s in dom:
        if s not in g:
            raise ValueError(f"g undefined on {s!r}")
        if not (is_prefix(f[s], g[s]) and len(g[s]) > len(f[s])):
            out.append(f"g({s}) does not strictly extend f({s})")
    for s, t in combinations(dom, 2):
        if is_prefix(s, t) != is_prefix(f[s], f[t]):
            out.append(f"f does not preserve the prefix relation on ({s},{t})")
        if (s < t) != (f[s] < f[t]):
            out.append(f"f does not preserve the lexicographic order on ({s},{t})")
        if f.get(meet(s, t)) != meet(f[s], f[t]):
            out.append(f"f does not preserve meets on ({s},{t})")
        lo, hi = (s, t) if len(s) < len(t) else (t, s)
        if len(lo) != len(hi) and not len(f[hi]) > len(g[lo]):
            out.append(f"length gap fails on ({lo},{hi})")
    for s in dom:
        for t in dom:
            if len(s) != len(t) or len(t) + 1 > table.depth:
                continue
            t0, t1 = t + "0", t + "1"
            p = len(g[s])
            if len(f[t0]) <= p or len(f[t1]) <= p:
                out.append(f"branch of {t} too short at |g({s})|")
            elif f[t0][p] == f[t1][p]:
                out.append(f"branches of {t} agree at |g({s})|")
    return out


def generate_blossom(depth: int) -> BlossomTable:
    """The triple-encoding witness: f triples the bits, g closes with 01."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    words = [""]
    for k in range(1, depth + 1):
        words.extend(format(v, f"0{k}b") for v in range(1 << k))
    f = {w: "".join(c * 3 for c in w) for w in words}
    g = {w: f[w] + "01" for w in words}
    return BlossomTable(depth, f, g)


# ---------------------------------------------------------------------------
# finite Rado extension

def rado_extend(vertices, f0, f1, search_len: int) -> str | None:
    """A fresh triple-encoded word adjacent to all of f1 and none of f0.

    Adjacency is the bit read-off; the witness is drawn from the image
    of the triple encoding, whose bit at position p is the source bit
    p // 3.  Absent when the budget is too small or the constraints
    collide on a source position.
    """
    vertices, f0, f1 = set(vertices), set(f0), set(f1)
    if f0 & f1:
        raise ValueError("required and forbidden sets overlap")
    if not (f0 <= vertices and f1 <= vertices):
        raise ValueError("constraint sets must be vertices")
    if len({len(v) for v in vertices}) != len(vertices):
        raise ValueError("vertex lengths must be pairwise distinct")
    need: dict[int, str] = {}
    for v in f1:
        need[len(v) // 3] = "1"
    for v in f0:
        p = len(v) // 3
        if need.get(p) == "1":
            return None
        need[p] = "0"
    lengths = {len(v) for v in vertices}
    m = max((len(v) // 3 + 1 for v in f0 | f1), default=0)
    while 3 * m + 2 <= search_len:
        if 3 * m + 2 not in lengths:
            src = "".join(need.get(i, "0") for i in range(m))
            return graph_triple_encode(src)
        m += 1
    return None
