"""The type-minimizing perfect tree.

Built in two phases.  Phase one grows a meet-closed scaffold inside the
full binary tree: nodes are added one at a time (level by level, within
a level in order of increasing length, 0-side before 1-side), each new
node extending its parent by its branch bit and then only zeros, out to
a fresh length two beyond everything built so far.  The k-th node added
therefore has length exactly 2k, every scaffold node has a unique
length, and any node reads 0 at the length of any node that is not an
ancestor.  Phase two keeps the images of the addresses built from
blocks 0b, so consecutive kept nodes are joined through a 0-step before
the branch: comparable kept nodes always continue by bit 0.

The kept tree violates meet-closure on purpose; its meets land on the
dropped split nodes.  Conditions checked by the validator:

1. all members of the meet closure have pairwise distinct lengths;
2. comparable kept nodes continue through bit 0;
3. incomparable meet-closure members read bit 0 at each other's length.

Node words have length about 2^(2 depth), so words are handled packed
(small depths) or lazily through scaffold paths (censuses): the length
of the scaffold node at path p is 2 (2^|p| - 1 + int(p)), and its word
reads bit b at an ancestor's length when it branches from that ancestor
by b, and 0 at every other position.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .sigs import PackedOps, StrOps, signature

__all__ = [
    "scaffold_length", "block_path", "path_word_packed", "PathOps",
    "MinimizerPrefix", "MinimizerReport", "minimizer_tree",
    "validate_prefix", "tree_census", "minimal_type_census", "naive_census",
]


def scaffold_length(path: str) -> int:
    """Word length of the scaffold node at the given path address."""
    if not path:
        return 0
    return 2 * ((1 << len(path)) - 1 + int(path, 2))


def block_path(address: str) -> str:
    """Scaffold path of the kept node with the given tree address."""
    return "".join("0" + b for b in address)


def path_word_packed(path: str) -> tuple[int, int]:
    """The scaffold node's word as (length, value)."""
    length = scaffold_length(path)
    value = 0
    prev = 0
    for i, b in enumerate(path):
        cur = scaffold_length(path[: i + 1])
        value = (value << (cur - prev)) | (int(b) << (cur - prev - 1))
        prev = cur
    return (length, value)


class PathOps:
    """Word ops for scaffold nodes represented by their paths."""

    @staticmethod
    def length(p: str) -> int:
        return scaffold_length(p)

    @staticmethod
    def meet_len(p: str, q: str) -> int:
        n = min(len(p), len(q))
        i = 0
        while i < n and p[i] == q[i]:
            i += 1
        return scaffold_length(p[:i])

    @staticmethod
    def bit(p: str, i: int) -> int:
        if i >= scaffold_length(p):
            raise IndexError("bit position past end of word")
        for j in range(len(p)):
            anc_len = scaffold_length(p[:j])
            if anc_len == i:
                return int(p[j])
            if anc_len > i:
                break
        return 0


@dataclass(frozen=True)
class MinimizerPrefix:
    """Kept nodes with tree-address length up to depth."""

    depth: int
    addresses: tuple[str, ...]

    @property
    def paths(self) -> tuple[str, ...]:
        return tuple(block_path(a) for a in self.addresses)

    def packed_words(self) -> list[tuple[int, int]]:
        return [path_word_packed(p) for p in self.paths]

    def words(self) -> list[str]:
        out = []
        for n, v in self.packed_words():
            out.append(format(v, f"0{n}b") if n else "")
        return out


@dataclass(frozen=True)
class MinimizerReport:
    depth: int
    node_count: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _addresses(depth: int) -> list[str]:
    out = [""]
    for n in range(1, depth + 1):
        out.extend(format(v, f"0{n}b") for v in range(1 << n))
    return out


def validate_prefix(words: list[tuple[int, int]]) -> list[str]:
    """Check the three minimizing conditions on packed node words."""
    violations: list[str] = []
    meets: dict[tuple[int, int], tuple[int, int]] = {}
    closure = set(words)
    for a, b in combinations(words, 2):
        ml = PackedOps.meet_len(a, b)
        mw = (ml, a[1] >> (a[0] - ml)) if a[0] else (0, 0)
        closure.add(mw)
        if ml == a[0] or ml == b[0]:
            lo, hi = (a, b) if a[0] < b[0] else (b, a)
            if PackedOps.bit(hi, lo[0]) != 0:
                violations.append(
                    f"comparable pair continues by bit 1 at length {lo[0]}")
    lens = sorted(w[0] for w in closure)
    for x, y in zip(lens, lens[1:]):
        if x == y:
            violations.append(f"two meet-closure members of length {x}")
    for a, b in combinations(closure, 2):
        lo, hi = (a, b) if a[0] < b[0] else (b, a)
        if lo[0] == hi[0]:
            continue
        if PackedOps.meet_len(lo, hi) < lo[0]:
            if PackedOps.bit(hi, lo[0]) != 0:
                violations.append(
                    f"incomparable member reads bit 1 at foreign length {lo[0]}")
    return violations


def minimizer_tree(depth: int) -> tuple[MinimizerPrefix, MinimizerReport]:
    """A depth-bounded prefix of the minimizing tree, plus its validation."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    prefix = MinimizerPrefix(depth, tuple(_addresses(depth)))
    violations = validate_prefix(prefix.packed_words())
    report = MinimizerReport(depth, len(prefix.addresses), tuple(violations))
    return prefix, report


# ---------------------------------------------------------------------------
# censuses over the minimizing tree

def naive_census(n: int, depth: int) -> frozenset:
    """Tuple-type signatures of all n-tuples in the prefix (small depths)."""
    prefix, _ = minimizer_tree(depth)
    paths = prefix.paths
    return frozenset(signature(t, ops=PathOps) for t in combinations(paths, n))


@lru_cache(maxsize=None)
def _structures(stars: int) -> tuple:
    """Decorated meet-trees with the given number of starred nodes.

    A node is (starred, ((bit, child), ...)); unstarred nodes branch
    both ways, every leaf is starred, an only child hangs off bit 0.
    """
    out = []
    if stars == 1:
        out.append((True, ()))
    if stars >= 2:
        for sub in _structures(stars - 1):
            out.append((True, ((0, sub),)))
    for left in range(1, stars):
        right = stars - left
        for s0 in _structures(left):
            for s1 in _structures(right):
                out.append((False, ((0, s0), (1, s1))))
    for left in range(1, stars - 1):
        right = stars - 1 - left
        for s0 in _structures(left):
            for s1 in _structures(right):
                out.append((True, ((0, s0), (1, s1))))
    return tuple(out)


def _flatten(structure):
    """Preorder (parent_index, starred, bit_from_parent) rows."""
    rows: list[tuple[int, bool, int]] = []

    def rec(node, parent: int, bit: int) -> None:
        starred, children = node
        rows.append((parent, starred, bit))
        me = len(rows) - 1
        for b, ch in children:
            rec(ch, me, b)

    rec(structure, -1, 0)
    return rows


def _depth_patterns(rows, max_depth: int):
    """All compressed depth assignments: strictly increasing along edges,
    depths used forming an initial segment, max depth bounded."""
    total = len(rows)
    kids: dict[int, list[int]] = {}
    for i, (p, _s, _b) in enumerate(rows):
        kids.setdefault(p, []).append(i)
    depth = [-1] * total

    def rounds(r: int, assigned: int, available: frozenset[int]):
        if assigned == total:
            yield tuple(depth)
            return
        if r > max_depth or not available:
            return
        avail = sorted(available)
        for mask in range(1, 1 << len(avail)):
            chosen = [avail[i] for i in range(len(avail)) if mask >> i & 1]
            for c in chosen:
                depth[c] = r
            nxt = (available - set(chosen)) | {
                k for c in chosen for k in kids.get(c, [])}
            yield from rounds(r + 1, assigned + len(chosen), frozenset(nxt))
            for c in chosen:
                depth[c] = -1

    yield from rounds(0, 0, frozenset(kids.get(-1, [])))


def _realize(rows, depths) -> list[str]:
    """Tree addresses of the starred nodes, zero padding everywhere."""
    addr = [""] * len(rows)
    for i, (p, _s, b) in enumerate(rows):
        if p < 0:
            addr[i] = "0" * depths[i]
        else:
            gap = depths[i] - depths[p] - 1
            addr[i] = addr[p] + str(b) + "0" * gap
    return [addr[i] for i, (_p, s, _b) in enumerate(rows) if s]


def tree_census(n: int, depth: int) -> frozenset:
    """Tuple-type signatures realized by n-tuples within the prefix.

    Enumerates one canonical representative tuple per meet-structure and
    depth pattern; signatures are invariant under zeroing padding bits
    and under order-preserving depth reassignment, so the set equals the
    naive census over the same prefix.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        from .sigs import EMPTY_SIG
        return frozenset({EMPTY_SIG})
    sigs = set()
    for structure in _structures(n):
        rows = _flatten(structure)
        for depths in _depth_patterns(rows, depth):
            addresses = _realize(rows, depths)
            if any(len(a) > depth for a in addresses):
                continue
            paths = [block_path(a) for a in addresses]
            sigs.add(signature(paths, ops=PathOps))
    return frozenset(sigs)


def _tie_patterns(rows, max_level: int):
    """Level assignments where only same-level star pairs are forbidden.

    Strictly increasing along edges; incomparable nodes may share a
    level unless both are generating-tuple members; levels used form an
    initial segment.
    """
    total = len(rows)
    kids: dict[int, list[int]] = {}
    for i, (p, _s, _b) in enumerate(rows):
        kids.setdefault(p, []).append(i)
    level = [-1] * total

    def rounds(r: int, assigned: int, available: frozenset[int]):
        if assigned == total:
            yield tuple(level)
            return
        if r > max_level or not available:
            return
        avail = sorted(available)
        for mask in range(1, 1 << len(avail)):
            chosen = [avail[i] for i in range(len(avail)) if mask >> i & 1]
            if sum(1 for c in chosen if rows[c][1]) > 1:
                continue
            for c in chosen:
                level[c] = r
            nxt = (available - set(chosen)) | {
                k for c in chosen for k in kids.get(c, [])}
            yield from rounds(r + 1, assigned + len(chosen), frozenset(nxt))
            for c in chosen:
                level[c] = -1

    yield from rounds(0, 0, frozenset(kids.get(-1, [])))


def minimal_type_census(n: int, depth: int) -> frozenset:
    """Tuple types that survive in a type-minimal perfect tree.

    Enumerates the meet-tree configurations such a tree cannot avoid
    (members on pairwise distinct levels, no member is a meet of two
    others, every non-branching step through bit 0) and realizes each as
    a concrete word tuple with one position per level; deduplicates by
    signature of the realized words.  The level of a meet is free to
    coincide with the level of anything except a second member, which
    is exactly the freedom the scaffold prefix does not exhibit; see
    tree_census for the census of the prefix itself.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        from .sigs import EMPTY_SIG
        return frozenset({EMPTY_SIG})
    sigs = set()
    for structure in _structures(n):
        if _has_starred_branch(structure):
            continue
        rows = _flatten(structure)
        for levels in _tie_patterns(rows, depth):
            words = _realize(rows, levels)
            sigs.add(signature(words, ops=StrOps))
    return frozenset(sigs)


def _has_starred_branch(structure) -> bool:
    starred, children = structure
    if starred and len(children) == 2:
        return True
    return any(_has_starred_branch(ch) for _b, ch in children)
