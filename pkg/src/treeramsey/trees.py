"""Finite trees of binary words and strong subtrees.

A tree here is a finite, rooted, meet-closed set of words; it need not be
closed under initial segments.  The level of a node is the number of its
proper initial segments inside the set, never its raw length.

A strong subtree sits on common levels of the ambient tree (witnessed by
a strictly increasing level function) and inherits the branching degree
of every node below its top level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

from .words import check_word, format_word, meet, parse_word, word_key

__all__ = [
    "FiniteTree", "StrongSubtreeWitness", "full_binary_tree",
    "is_strong_subtree", "enumerate_strong_subtrees",
    "enumerate_strong_subtrees_with_leaves",
    "nodes_to_text", "nodes_from_text",
]


@dataclass(frozen=True)
class FiniteTree:
    """Finite rooted meet-closed set of binary words."""

    nodes: frozenset[str]

    def __init__(self, nodes) -> None:
        ns = frozenset(check_word(w) for w in nodes)
        if not ns:
            raise ValueError("a tree is non-empty")
        object.__setattr__(self, "nodes", ns)
        root = min(ns, key=len)
        for w in ns:
            if not w.startswith(root):
                raise ValueError("no root: %r and %r have no common member prefix"
                                 % (root, w))
        for a, b in combinations(ns, 2):
            if meet(a, b) not in ns:
                raise ValueError(f"not meet-closed: meet({a!r}, {b!r}) missing")

    @cached_property
    def root(self) -> str:
        return min(self.nodes, key=len)

    @cached_property
    def sorted_nodes(self) -> tuple[str, ...]:
        return tuple(sorted(self.nodes, key=word_key))

    @cached_property
    def _level_map(self) -> dict[str, int]:
        out = {}
        for w in self.nodes:
            out[w] = sum(1 for v in self.nodes if v != w and w.startswith(v))
        return out

    def level_of(self, w: str) -> int:
        return self._level_map[w]

    @cached_property
    def height(self) -> int:
        return 1 + max(self._level_map.values())

    def level(self, n: int) -> tuple[str, ...]:
        """Nodes at level n, canonically ordered."""
        return tuple(w for w in self.sorted_nodes if self._level_map[w] == n)

    @cached_property
    def _children(self) -> dict[str, tuple[str, ...]]:
        # direct extensions: proper extensions with nothing strictly between
        out: dict[str, list[str]] = {w: [] for w in self.nodes}
        for w in self.sorted_nodes:
            best: str | None = None
            for v in self.nodes:
                if v != w and w.startswith(v):
                    if best is None or len(v) > len(best):
                        best = v
            if best is not None:
                out[best].append(w)
        return {w: tuple(sorted(cs, key=word_key)) for w, cs in out.items()}

    def children(self, w: str) -> tuple[str, ...]:
        return self._children[w]

    def branching(self, w: str) -> int:
        return len(self._children[w])

    @cached_property
    def leaves(self) -> tuple[str, ...]:
        return tuple(w for w in self.sorted_nodes if not self._children[w])

    def __contains__(self, w: str) -> bool:
        return w in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.sorted_nodes)


def full_binary_tree(height: int) -> FiniteTree:
    """The complete binary tree of all words of length < height."""
    if height < 1:
        raise ValueError("height must be >= 1")
    ns = [""]
    for n in range(1, height):
        ns.extend(format(v, f"0{n}b") for v in range(1 << n))
    return FiniteTree(ns)


@dataclass(frozen=True)
class StrongSubtreeWitness:
    subtree: FiniteTree
    ambient: FiniteTree
    level_fn: tuple[int, ...]

    def key(self) -> tuple:
        return tuple(word_key(w) for w in self.subtree.sorted_nodes)

    def to_json(self) -> dict:
        return {
            "nodes": [format_word(w) for w in self.subtree.sorted_nodes],
            "levels": list(self.level_fn),
        }

    @staticmethod
    def from_json(obj: dict, ambient: FiniteTree) -> "StrongSubtreeWitness":
        sub = FiniteTree(parse_word(w) for w in obj["nodes"])
        return StrongSubtreeWitness(sub, ambient, tuple(obj["levels"]))


def is_strong_subtree(s, t: FiniteTree) -> StrongSubtreeWitness | None:
    """Witness that the node set s is a strong subtree of t, if it is one.

    Checks, from the definition: s is itself a tree, all nodes of a given
    s-level share one ambient level (the level function), and every node
    below the top s-level has the same branching degree in s as in t.
    """
    node_list = [check_word(w) for w in s]
    for w in node_list:
        if w not in t:
            raise ValueError(f"node {w!r} not in ambient tree")
    try:
        sub = FiniteTree(node_list)
    except ValueError:
        return None
    h = sub.height
    level_fn: list[int] = []
    for n in range(h):
        ambient_levels = {t.level_of(w) for w in sub.level(n)}
        if len(ambient_levels) != 1:
            return None
        level_fn.append(ambient_levels.pop())
    if any(a >= b for a, b in zip(level_fn, level_fn[1:])):
        return None
    for w in sub.nodes:
        if sub.level_of(w) < h - 1 and sub.branching(w) != t.branching(w):
            return None
    return StrongSubtreeWitness(sub, t, tuple(level_fn))


def _extend(t: FiniteTree, frontier: list[str], target_level: int):
    """All ways to grow each frontier node into the target ambient level.

    Every non-leaf frontier node u contributes one descendant at
    target_level through each of its direct extensions in t; leaves of t
    stay as they are.  Yields (new_nodes, new_frontier) pairs.
    """
    slots: list[list[str]] = []
    for u in frontier:
        for v in t.children(u):
            cands = [w for w in t.sorted_nodes
                     if t.level_of(w) == target_level and w.startswith(v)]
            if not cands:
                return
            slots.append(cands)
    for choice in product(*slots):
        if len(set(choice)) != len(choice):
            continue
        new_frontier = [u for u in frontier if not t.children(u)]
        yield list(choice), new_frontier + list(choice)


def enumerate_strong_subtrees(t: FiniteTree, n: int) -> list[StrongSubtreeWitness]:
    """All strong subtrees of t of height n, canonically ordered."""
    if n < 1:
        raise ValueError("height must be >= 1")
    out: list[StrongSubtreeWitness] = []
    h = t.height
    if n > h:
        return out
    for levels in combinations(range(h), n):
        for root in t.sorted_nodes:
            if t.level_of(root) != levels[0]:
                continue
            partial = [([root], [root])]
            for target in levels[1:]:
                nxt = []
                for nodes, frontier in partial:
                    live = [u for u in frontier if t.level_of(u) < target]
                    keep = [u for u in frontier if t.level_of(u) >= target]
                    if keep:
                        # nodes already at or past the next chosen level
                        # cannot sit on it again
                        continue
                    for new_nodes, new_frontier in _extend(t, live, target):
                        nxt.append((nodes + new_nodes, new_frontier))
                partial = nxt
            for nodes, _frontier in partial:
                w = is_strong_subtree(nodes, t)
                if w is not None and w.subtree.height == n and w.level_fn == levels:
                    out.append(w)
    uniq = {w.key(): w for w in out}
    return [uniq[k] for k in sorted(uniq)]


def enumerate_strong_subtrees_with_leaves(t: FiniteTree, n: int) -> list[StrongSubtreeWitness]:
    """The strong subtrees of height n whose leaves are leaves of t."""
    tl = set(t.leaves)
    return [w for w in enumerate_strong_subtrees(t, n)
            if set(w.subtree.leaves) <= tl]


def nodes_to_text(nodes) -> str:
    return "\n".join(format_word(w) for w in sorted(nodes, key=word_key)) + "\n"


def nodes_from_text(text: str) -> list[str]:
    return [parse_word(line) for line in text.splitlines() if line.strip()]
