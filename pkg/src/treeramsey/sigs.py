"""Closures of word sets and canonical type signatures.

The full closure of a set of words is its closure under pairwise meets
followed by truncation of every element to every occurring length.  A
signature serializes the resulting tree: each node carries an optional
0-child and 1-child (the child's bit at the parent's length), and, for
tuple signatures, a star on the nodes that belong to the generating
tuple.  Weak signatures additionally reroute every only-child through
bit 0, which erases exactly the information no perfect tree is forced
to show.

Signatures are built against a tiny ops protocol (length / bit / meet
length) so the same algorithm runs on plain strings, packed integers
(for the big censuses) and lazily represented very long words.
"""

from __future__ import annotations

from itertools import combinations

from .words import check_word, meet

__all__ = [
    "meet_closure", "level_closure", "full_closure",
    "StrOps", "PackedOps", "pack", "unpack",
    "signature", "embedding_signature", "tuple_signature", "weak_signature",
    "strip_stars", "weaken", "render_signature", "signature_height",
    "classify_weak_type", "is_length_injective", "is_meet_avoiding",
    "EMPTY_SIG",
]

EMPTY_SIG: tuple = ()


# ---------------------------------------------------------------------------
# closures on plain strings

def meet_closure(s) -> set[str]:
    ws = {check_word(w) for w in s}
    if not ws:
        raise ValueError("empty word set")
    return ws | {meet(a, b) for a, b in combinations(ws, 2)}


def level_closure(s) -> set[str]:
    ws = {check_word(w) for w in s}
    if not ws:
        raise ValueError("empty word set")
    lens = {len(w) for w in ws}
    return {w[:n] for w in ws for n in lens if n <= len(w)}


def full_closure(s) -> set[str]:
    """Level closure of the meet closure; an idempotent fixed point."""
    return level_closure(meet_closure(s))


# ---------------------------------------------------------------------------
# word ops

class StrOps:
    """Words as '0'/'1' strings."""

    @staticmethod
    def length(w) -> int:
        return len(w)

    @staticmethod
    def bit(w, i) -> int:
        return 1 if w[i] == "1" else 0

    @staticmethod
    def meet_len(a, b) -> int:
        return len(meet(a, b))


def pack(w: str) -> tuple[int, int]:
    return (len(w), int(w, 2) if w else 0)


def unpack(p: tuple[int, int]) -> str:
    n, v = p
    return format(v, f"0{n}b") if n else ""


class PackedOps:
    """Words as (length, value) pairs; value read left to right."""

    @staticmethod
    def length(w) -> int:
        return w[0]

    @staticmethod
    def bit(w, i) -> int:
        n, v = w
        return (v >> (n - 1 - i)) & 1

    @staticmethod
    def meet_len(a, b) -> int:
        (na, va), (nb, vb) = a, b
        m = min(na, nb)
        d = (va >> (na - m)) ^ (vb >> (nb - m))
        return m - d.bit_length()


# ---------------------------------------------------------------------------
# signature construction

def signature(tup, ops=StrOps, starred: bool = True, weak: bool = False):
    """Canonical signature term of a tuple of distinct words.

    The term for a closure node is (star, child0, child1) with absent
    children None; the empty tuple yields the empty term.  With
    weak=True every single child is moved to slot 0.
    """
    items = list(tup)
    if not items:
        return EMPTY_SIG
    for a, b in combinations(items, 2):
        if ops.length(a) == ops.length(b) and ops.meet_len(a, b) == ops.length(a):
            raise ValueError("tuple elements must be distinct")

    # meet closure, as (representative word, cut length)
    mc: list[tuple[object, int]] = [(w, ops.length(w)) for w in items]
    for a, b in combinations(items, 2):
        mc.append((a, ops.meet_len(a, b)))
    # dedupe: (w1, l) and (w2, l) agree iff their meet reaches l
    uniq: list[tuple[object, int]] = []
    for w, l in mc:
        if not any(l == l2 and ops.meet_len(w, w2) >= l for w2, l2 in uniq):
            uniq.append((w, l))
    lengths = sorted({l for _w, l in uniq})
    nodes_by_level: list[list[tuple[object, int]]] = []
    for l in lengths:
        level_nodes: list[tuple[object, int]] = []
        for w, wl in uniq:
            if wl < l:
                continue
            if not any(ops.meet_len(w, w2) >= l for w2, _l2 in level_nodes):
                level_nodes.append((w, l))
        nodes_by_level.append(level_nodes)

    def is_star(w, l) -> bool:
        return any(ops.length(t) == l and ops.meet_len(w, t) >= l for t in items)

    def node_id(w, l):
        li = lengths.index(l)
        for j, (w2, _l2) in enumerate(nodes_by_level[li]):
            if ops.meet_len(w, w2) >= l:
                return (li, j)
        raise AssertionError("closure node lookup failed")

    children: dict[tuple[int, int], dict[int, tuple[int, int]]] = {}
    for li in range(len(lengths) - 1, 0, -1):
        for j, (w, l) in enumerate(nodes_by_level[li]):
            parent = node_id(w, lengths[li - 1])
            bit = ops.bit(w, lengths[li - 1])
            children.setdefault(parent, {})[bit] = (li, j)

    def build(nid) -> tuple:
        li, j = nid
        w, l = nodes_by_level[li][j]
        ch = children.get(nid, {})
        c0 = build(ch[0]) if 0 in ch else None
        c1 = build(ch[1]) if 1 in ch else None
        if weak and c1 is not None and c0 is None:
            c0, c1 = c1, None
        star = starred and is_star(w, l)
        return (star, c0, c1)

    roots = nodes_by_level[0]
    if len(roots) != 1:
        raise AssertionError("closure must have a single root")
    return build((0, 0))


def embedding_signature(tup, ops=StrOps):
    return signature(tup, ops, starred=False, weak=False)


def tuple_signature(tup, ops=StrOps):
    return signature(tup, ops, starred=True, weak=False)


def weak_signature(tup, ops=StrOps):
    return signature(tup, ops, starred=True, weak=True)


def strip_stars(term):
    if term is None or term == EMPTY_SIG:
        return term
    _s, c0, c1 = term
    return (False, strip_stars(c0), strip_stars(c1))


def weaken(term):
    """Normalize a signature term to its weak form."""
    if term is None or term == EMPTY_SIG:
        return term
    s, c0, c1 = term
    c0, c1 = weaken(c0), weaken(c1)
    if c0 is None and c1 is not None:
        c0, c1 = c1, None
    return (s, c0, c1)


def signature_height(term) -> int:
    if term is None:
        return 0
    if term == EMPTY_SIG:
        return 0
    _s, c0, c1 = term
    return 1 + max(signature_height(c0), signature_height(c1))


def render_signature(term) -> str:
    """Grammar: T ::= mark '(' C ',' C ')',  C ::= '-' | T,  mark = '*'?"""
    if term == EMPTY_SIG:
        return "-"

    def rec(t) -> str:
        if t is None:
            return "-"
        s, c0, c1 = t
        return ("*" if s else "") + f"({rec(c0)},{rec(c1)})"

    return rec(term)


# ---------------------------------------------------------------------------
# the two predicates characterizing unavoidable weak types

def _walk(term, depth=0, path=()):
    if term is None or term == EMPTY_SIG:
        return
    yield path, depth, term
    _s, c0, c1 = term
    yield from _walk(c0, depth + 1, path + (0,))
    yield from _walk(c1, depth + 1, path + (1,))


def is_length_injective(term) -> bool:
    """No two tuple members share a level.

    Levels of a fully closed tree are its distinct word lengths, so this
    says the generating words have pairwise distinct lengths.  (Meets
    are free to share a level with anything; restricting them as well
    would also rule out types that a suitably built perfect tree does
    avoid, but the count tables this library reproduces are computed
    with the members-only reading.)
    """
    depths = [d for _p, d, t in _walk(term) if t[0]]
    return len(depths) == len(set(depths))


def is_meet_avoiding(term) -> bool:
    """No starred node is the meet of two incomparable starred nodes."""

    def has_star(t) -> bool:
        if t is None:
            return False
        s, c0, c1 = t
        return s or has_star(c0) or has_star(c1)

    for _p, _d, t in _walk(term):
        s, c0, c1 = t
        if s and has_star(c0) and has_star(c1):
            return False
    return True


def classify_weak_type(term) -> dict[str, bool]:
    if term is None:
        raise ValueError("not a signature term")
    return {
        "length_injective": is_length_injective(term),
        "meet_avoiding": is_meet_avoiding(term),
    }
