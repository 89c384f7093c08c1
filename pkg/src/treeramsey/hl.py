"""Exhaustive finitary partition searches on products of trees.

Everything here returns certificates that re-validate from scratch: a
monochromatic tuple of strong subtrees with one shared level function, a
dense matrix on which a coloring is constant, or a strong subtree all of
whose height-n strong subtrees share a color.  Searches are exhaustive
with lexicographic tie-breaking, so equal inputs give identical
certificates; inputs whose search space is too large are rejected up
front rather than left to run forever.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, product
from multiprocessing import get_context

from .trees import (FiniteTree, StrongSubtreeWitness, enumerate_strong_subtrees,
                    enumerate_strong_subtrees_with_leaves, full_binary_tree,
                    is_strong_subtree)
from .words import word_key

__all__ = [
    "BudgetExceeded", "KOverflowError", "DEFAULT_BUDGET",
    "LevelProductColoring", "HLCertificate", "DenseMatrixCertificate",
    "MillikenCertificate", "search_level_product_mono", "min_hl_height",
    "find_dense_matrix", "milliken_search", "verify_certificate",
    "BoundParams", "bound_step_params", "hl_iteration_bound",
    "exhaustive_hl_backend",
]

DEFAULT_BUDGET = 10 ** 8


class BudgetExceeded(RuntimeError):
    """The search space exceeds the configured state budget."""


class KOverflowError(ValueError):
    """The color-count K in the bound recursion is too large to evaluate."""


# ---------------------------------------------------------------------------
# colorings of level products

@dataclass(frozen=True)
class LevelProductColoring:
    """Total coloring of same-level node tuples of d trees."""

    trees: tuple[FiniteTree, ...]
    k: int
    table: dict

    def __post_init__(self):
        for tup in self.domain():
            if tup not in self.table:
                raise ValueError(f"color table not total: missing {tup}")
            if not 0 <= self.table[tup] < self.k:
                raise ValueError(f"color out of range on {tup}")

    def domain(self):
        h = min(t.height for t in self.trees)
        for n in range(h):
            yield from product(*(t.level(n) for t in self.trees))

    @classmethod
    def from_function(cls, trees, k, fn) -> "LevelProductColoring":
        trees = tuple(trees)
        table = {}
        h = min(t.height for t in trees)
        for n in range(h):
            for tup in product(*(t.level(n) for t in trees)):
                table[tup] = fn(*tup)
        return cls(trees, k, table)


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class HLCertificate:
    witnesses: tuple[StrongSubtreeWitness, ...]
    color: int
    leaf_preserving: bool = False


@dataclass(frozen=True)
class DenseMatrixCertificate:
    trees: tuple[FiniteTree, ...]
    pi: tuple[str, ...]
    m: int
    parts: tuple[frozenset, ...]
    color: int


@dataclass(frozen=True)
class MillikenCertificate:
    witness: StrongSubtreeWitness
    n: int
    color: int


def _level_products(witnesses) -> list[tuple[str, ...]]:
    height = witnesses[0].subtree.height
    out = []
    for lvl in range(height):
        out.extend(product(*(w.subtree.level(lvl) for w in witnesses)))
    return out


def search_level_product_mono(coloring: LevelProductColoring, N: int,
                              leaf_preserving: bool = False,
                              budget: int = DEFAULT_BUDGET) -> HLCertificate | None:
    """Least monochromatic d-tuple of height-N strong subtrees sharing a
    level function, or None when no such tuple exists."""
    if N < 1:
        raise ValueError("height must be >= 1")
    trees = coloring.trees
    enum = (enumerate_strong_subtrees_with_leaves if leaf_preserving
            else enumerate_strong_subtrees)
    per_tree: list[dict[tuple, list[StrongSubtreeWitness]]] = []
    for t in trees:
        groups: dict[tuple, list[StrongSubtreeWitness]] = {}
        for w in enum(t, N):
            groups.setdefault(w.level_fn, []).append(w)
        per_tree.append(groups)
    common = set(per_tree[0])
    for groups in per_tree[1:]:
        common &= set(groups)
    states = sum(
        _product_size([len(g[lf]) for g in per_tree]) for lf in common)
    if states > budget:
        raise BudgetExceeded(f"{states} candidate tuples exceed budget {budget}")
    for lf in sorted(common):
        for tup in product(*(g[lf] for g in per_tree)):
            colors = {coloring.table[p] for p in _level_products(tup)}
            if len(colors) == 1:
                return HLCertificate(tuple(tup), colors.pop(), leaf_preserving)
    return None


def _product_size(sizes) -> int:
    out = 1
    for s in sizes:
        out *= s
    return out


# ---------------------------------------------------------------------------
# minimal height for the leaf coloring theorem

def _leaf_candidates(trees, N):
    """Tuples of leaf-preserving height-N subtrees with one level function,
    each with the set of its top-level leaf tuples."""
    per_tree: list[dict[tuple, list]] = []
    for t in trees:
        groups: dict[tuple, list] = {}
        for w in enumerate_strong_subtrees_with_leaves(t, N):
            groups.setdefault(w.level_fn, []).append(w)
        per_tree.append(groups)
    common = set(per_tree[0])
    for g in per_tree[1:]:
        common &= set(g)
    out = []
    for lf in sorted(common):
        for tup in product(*(g[lf] for g in per_tree)):
            tops = list(product(*(w.subtree.level(N - 1) for w in tup)))
            out.append((tup, tops))
    return out


def _min_hl_chunk(args):
    (N, k, d, h, start, stop) = args
    trees = tuple(full_binary_tree(h) for _ in range(d))
    domain = sorted(product(*(t.leaves for t in trees)))
    index = {tup: i for i, tup in enumerate(domain)}
    cands = [(w, [index[t] for t in tops])
             for w, tops in _leaf_candidates(trees, N)]
    size = len(domain)
    for j in range(start, stop):
        digits = []
        v = j
        for _ in range(size):
            digits.append(v % k)
            v //= k
        digits.reverse()
        ok = False
        for _w, idxs in cands:
            if len({digits[i] for i in idxs}) == 1:
                ok = True
                break
        if not ok:
            return j
    return None


def min_hl_height(N: int, k: int, d: int, b: int = 2, h_max: int = 6,
                  budget: int = DEFAULT_BUDGET, workers: int = 1):
    """Minimal height h <= h_max such that every k-coloring of the leaf
    products of d full trees of height h admits a monochromatic
    leaf-preserving tuple of height N, together with the least defeating
    coloring at height h-1 (None when h == 1).

    Returns (h, defeating) where defeating maps leaf tuples to colors.
    """
    if b != 2:
        raise NotImplementedError("only binary trees are materialized")
    if N < 1 or k < 1 or d < 1:
        raise ValueError("parameters must be positive")
    prev_defeat = None
    for h in range(1, h_max + 1):
        trees = tuple(full_binary_tree(h) for _ in range(d))
        domain = sorted(product(*(t.leaves for t in trees)))
        n_colorings = k ** len(domain)
        if n_colorings > budget:
            raise BudgetExceeded(
                f"{n_colorings} colorings at height {h} exceed budget {budget}")
        fail = _search_defeating(N, k, d, h, n_colorings, workers)
        if fail is None:
            return h, prev_defeat
        digits = []
        v = fail
        for _ in range(len(domain)):
            digits.append(v % k)
            v //= k
        digits.reverse()
        prev_defeat = dict(zip(domain, digits))
    raise BudgetExceeded(f"no sufficient height up to cap {h_max}")


def _search_defeating(N, k, d, h, n_colorings, workers):
    """Index of the least coloring without a monochromatic witness."""
    if workers <= 1 or n_colorings < 4096:
        return _min_hl_chunk((N, k, d, h, 0, n_colorings))
    w = min(workers, os.cpu_count() or 1)
    bounds = [round(i * n_colorings / (2 * w)) for i in range(2 * w + 1)]
    jobs = [(N, k, d, h, a, bnd) for a, bnd in zip(bounds, bounds[1:]) if a < bnd]
    ctx = get_context("fork" if os.name == "posix" else "spawn")
    with ctx.Pool(w) as pool:
        results = [r for r in pool.map(_min_hl_chunk, jobs) if r is not None]
    return min(results) if results else None


# ---------------------------------------------------------------------------
# dense matrices

def find_dense_matrix(trees, table: dict,
                      budget: int = DEFAULT_BUDGET) -> DenseMatrixCertificate | None:
    """Least (pi, m, parts) with each part dense over pi's level-m
    extensions and the coloring constant on the product.

    The coloring table must be total on the full product of the trees'
    node sets.  Only levels that exist in every tree and give every
    coordinate at least one extension are considered, and the minimal
    dense parts (one extension per level-m node) are searched.
    """
    trees = tuple(trees)
    for tup in product(*(t.sorted_nodes for t in trees)):
        if tup not in table:
            raise ValueError(f"color table not total: missing {tup}")
    height = min(t.height for t in trees)
    pis = []
    for n in range(height):
        pis.extend(product(*(t.level(n) for t in trees)))
    pis.sort(key=lambda tup: (max(t.level_of(x) for t, x in zip(trees, tup)),
                              tuple(word_key(x) for x in tup)))
    for pi in pis:
        lvl = trees[0].level_of(pi[0])
        for m in range(lvl + 1, height):
            slots: list[list[list[str]]] = []
            ok = True
            for t, sigma in zip(trees, pi):
                reqs = [tau for tau in t.level(m) if tau.startswith(sigma)]
                if not reqs:
                    ok = False
                    break
                slots.append([[rho for rho in t.sorted_nodes
                               if rho.startswith(tau)] for tau in reqs])
            if not ok:
                continue
            flat = [c for tree_slots in slots for c in tree_slots]
            states = _product_size([len(c) for c in flat])
            if states > budget:
                raise BudgetExceeded(
                    f"{states} dense-matrix choices exceed budget {budget}")
            for choice in product(*flat):
                parts = []
                pos = 0
                for tree_slots in slots:
                    parts.append(frozenset(choice[pos:pos + len(tree_slots)]))
                    pos += len(tree_slots)
                cols = {table[tup] for tup in product(*parts)}
                if len(cols) == 1:
                    return DenseMatrixCertificate(
                        trees, pi, m, tuple(parts), cols.pop())
    return None


# ---------------------------------------------------------------------------
# Milliken search

def milliken_search(t: FiniteTree, n: int, table: dict, m: int,
                    budget: int = DEFAULT_BUDGET) -> MillikenCertificate | None:
    """A height-m strong subtree whose height-n strong subtrees all get
    one color, or None.  The table maps frozensets of node sets of the
    height-n subtrees of t to colors."""
    if m < n:
        raise ValueError("target height below colored height")
    for w in enumerate_strong_subtrees(t, n):
        if frozenset(w.subtree.nodes) not in table:
            raise ValueError(
                f"partial coloring: missing {sorted(w.subtree.nodes)}")
    cands = enumerate_strong_subtrees(t, m)
    inner = enumerate_strong_subtrees(full_binary_tree(max(m, 1)), n)
    states = len(cands) * max(1, len(inner))
    if states > budget:
        raise BudgetExceeded(f"{states} candidates exceed budget {budget}")
    for w in cands:
        colors = set()
        for u in enumerate_strong_subtrees(w.subtree, n):
            colors.add(table[frozenset(u.subtree.nodes)])
            if len(colors) > 1:
                break
        if len(colors) == 1:
            return MillikenCertificate(w, n, colors.pop())
    return None


# ---------------------------------------------------------------------------
# verification, independent of the searches

def verify_certificate(cert, context=None) -> bool:
    """Re-validate a certificate from its definition.

    For HL certificates the context is the LevelProductColoring; for
    dense matrices, the full-product color table; for Milliken results,
    the subtree color table.
    """
    if isinstance(cert, HLCertificate):
        coloring: LevelProductColoring = context
        lfs = {w.level_fn for w in cert.witnesses}
        if len(lfs) != 1:
            return False
        if any(len(w.level_fn) != len(set(w.level_fn)) or
               list(w.level_fn) != sorted(w.level_fn)
               for w in cert.witnesses):
            return False
        for w, t in zip(cert.witnesses, coloring.trees):
            good = is_strong_subtree(w.subtree.nodes, t)
            if good is None or good.level_fn != w.level_fn:
                return False
            if cert.leaf_preserving and \
                    not set(w.subtree.leaves) <= set(t.leaves):
                return False
        return all(coloring.table[p] == cert.color
                   for p in _level_products(cert.witnesses))
    if isinstance(cert, DenseMatrixCertificate):
        table: dict = context
        trees = cert.trees
        lvls = {t.level_of(x) for t, x in zip(trees, cert.pi)}
        if len(lvls) != 1:
            return False
        lvl = lvls.pop()
        if not cert.m > lvl:
            return False
        for t, sigma, part in zip(trees, cert.pi, cert.parts):
            reqs = [tau for tau in t.level(cert.m) if tau.startswith(sigma)]
            if not reqs:
                return False
            for tau in reqs:
                if not any(rho.startswith(tau) for rho in part):
                    return False
            if not all(rho in t for rho in part):
                return False
        return all(table[tup] == cert.color
                   for tup in product(*cert.parts))
    if isinstance(cert, MillikenCertificate):
        table = context
        w = cert.witness
        good = is_strong_subtree(w.subtree.nodes, w.ambient)
        if good is None or good.level_fn != w.level_fn:
            return False
        return all(table[frozenset(u.subtree.nodes)] == cert.color
                   for u in enumerate_strong_subtrees(w.subtree, cert.n))
    raise ValueError(f"unknown certificate type {type(cert)!r}")


# ---------------------------------------------------------------------------
# the height bound recursion

@dataclass(frozen=True)
class BoundParams:
    """Inputs of the iterated bound: N rounds over stems of height ell,
    colorings of height-(n) subtree tuples in k colors on d trees bounded
    by b, with a pluggable finitary-HL backend (N, k, d, b) -> height."""

    N: int
    ell: int
    n: int
    k: int
    d: int
    b: object = 2
    backend: object = None


def _bound_fn(b):
    if callable(b):
        return b
    return lambda _i: b


def bound_step_params(ell: int, k: int, d: int, b, h_prev: int):
    """The (K, D, B) arguments fed to the backend at one recursion step."""
    bf = _bound_fn(b)
    m = ell + h_prev
    nodes_below = sum(_product_size([bf(i) for i in range(j)]) for j in range(m))
    nodes_at = _product_size([bf(i) for i in range(m)])
    exponent = d * (nodes_below + nodes_at)
    if k == 1:
        K = 1
    elif exponent > 26:
        raise KOverflowError(
            f"color count k^(2^{exponent}) cannot be evaluated")
    else:
        K = k ** (1 << exponent)
    D = d * _product_size([bf(i) for i in range(ell)]) * \
        _product_size([bf(ell + i) for i in range(h_prev)])
    B = (lambda h0: (lambda i: bf(i + h0)))(h_prev)
    return K, D, B


def exhaustive_hl_backend(N: int, k: int, d: int, b, h_max: int = 6) -> int:
    """Backend computing the exact minimal height by exhaustive search."""
    bf = _bound_fn(b)
    if any(bf(i) != 2 for i in range(8)):
        raise NotImplementedError("exhaustive backend handles binary bounds")
    if k > 1 << 64:
        raise BudgetExceeded(
            "exhaustive backend refused: more than 2^64 colors")
    h, _ = min_hl_height(N, k, d, 2, h_max=h_max)
    return h


def hl_iteration_bound(params: BoundParams) -> int:
    """Evaluate the iterated height bound: base 0, each round adds the
    backend's height for 2 levels with the blown-up color count."""
    if params.N < 0:
        raise ValueError("rounds must be >= 0")
    backend = params.backend or exhaustive_hl_backend
    exhaustive = backend is exhaustive_hl_backend
    h = 0
    for _step in range(params.N):
        K, D, B = bound_step_params(params.ell, params.k, params.d,
                                    params.b, h)
        if exhaustive and K > 1 << 64:
            raise BudgetExceeded(
                "exhaustive backend refused: K exceeds 2^64")
        h += backend(2, K, D, B)
    return params.ell + h
