"""Counting embedding and tuple types.

Four counting targets: embedding and tuple types generated by n distinct
words anywhere in the full binary tree ("all"), and the minimum numbers
achievable inside a perfect tree ("min").  Three methods:

* brute  -- enumerate all n-tuples of distinct words of length at most
  2n-2 (enough: a closure has at most 2n-1 levels, and compressing the
  used lengths to an initial segment preserves every relation a
  signature inspects), classify, deduplicate by signature;
* predicate -- count the weak tuple types that are length-injective and
  meet-avoiding, the ones no perfect tree avoids;
* minimizer -- enumerate tuples inside the type-minimizing tree and
  deduplicate; see the minimizer module.

The brute pass is the expensive one (10.3M tuples at n=4); it runs on
packed words with precomputed meet tables and can fan out over worker
processes.  Counts are independent of the worker count: partial
signature sets are merged by set union and only the final sorted catalog
is reported.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from multiprocessing import get_context

from . import minimizer
from .sigs import (EMPTY_SIG, PackedOps, classify_weak_type, pack,
                   render_signature, strip_stars, unpack, weaken)
from .words import words_upto

__all__ = [
    "KINDS", "METHODS", "TypeCount", "count_types", "census",
    "brute_signatures", "weak_type_catalog", "qualifying_weak_types",
    "embedding_types_of_height", "enumerate_height_shapes",
    "count_height_shapes", "type_catalog",
]

KINDS = ("emb-all", "tup-all", "emb-min", "tup-min")
METHODS = ("brute", "predicate", "minimizer")


@dataclass(frozen=True)
class TypeCount:
    n: int
    kind: str
    method: str
    count: int


# ---------------------------------------------------------------------------
# brute census over packed words

def _domain(n: int, max_len: int | None = None) -> list[tuple[int, int]]:
    if max_len is None:
        max_len = max(0, 2 * n - 2)
    return [pack(w) for w in words_upto(max_len)]


class _Tables:
    """Precomputed meet structure of the word domain.

    Meets of domain words stay in the domain, so a tuple's whole closure
    is manipulated through integer indices.
    """

    def __init__(self, words: list[tuple[int, int]]):
        self.words = words
        idx = {w: i for i, w in enumerate(words)}
        m = len(words)
        self.length = [w[0] for w in words]
        self.meetlen = [[0] * m for _ in range(m)]
        self.meetid = [[0] * m for _ in range(m)]
        self.bit = [[0] * (w[0]) for w in words]
        for i, w in enumerate(words):
            for p in range(w[0]):
                self.bit[i][p] = PackedOps.bit(w, p)
        for i in range(m):
            wi = words[i]
            for j in range(i, m):
                wj = words[j]
                ml = PackedOps.meet_len(wi, wj)
                mw = (ml, wi[1] >> (wi[0] - ml))
                k = idx[mw]
                self.meetlen[i][j] = self.meetlen[j][i] = ml
                self.meetid[i][j] = self.meetid[j][i] = k


def _sig_of_ids(ids: tuple[int, ...], tb: _Tables):
    """Tuple signature of domain words given by index, via the tables.

    Recursive split: members of a group agree below the group's cut
    length and can only diverge at realized lengths, so partitioning by
    the bit at the cut gives the two child groups directly.
    """
    length, meetlen, meetid, bit = tb.length, tb.meetlen, tb.meetid, tb.bit
    mc: list[int] = list(ids)
    for a, b in combinations(ids, 2):
        mc.append(meetid[a][b])
    mc = sorted(set(mc), key=lambda i: length[i])
    lengths = sorted({length[i] for i in mc})
    elems = set(ids)

    def build(group: list[int], li: int):
        l = lengths[li]
        star = any(i in elems and length[i] == l for i in group)
        g0 = [i for i in group if length[i] > l and bit[i][l] == 0]
        g1 = [i for i in group if length[i] > l and bit[i][l] == 1]
        c0 = build(g0, li + 1) if g0 else None
        c1 = build(g1, li + 1) if g1 else None
        return (star, c0, c1)

    return build(mc, 0)


def _key_of_ids(ids, length, meetlen, bit):
    """Canonical strong-isomorphism key of a tuple of domain words.

    Two tuples get equal keys iff their full closures are strongly
    isomorphic by a map matching tuple elements: the key records, per
    element in a canonical order, the rank of its length among the
    realized lengths and its bits at every shorter realized length.
    Distinct elements always differ at a realized position (their meet
    length is realized), so the per-element records are distinct and
    the canonical order is well-defined.
    """
    ls = {length[i] for i in ids}
    for a, b in combinations(ids, 2):
        ls.add(meetlen[a][b])
    lengths = sorted(ls)
    recs = []
    for i in ids:
        li = length[i]
        vec = 0
        rank = 0
        bits_i = bit[i]
        for l in lengths:
            if l >= li:
                break
            vec = (vec << 1) | bits_i[l]
            rank += 1
        recs.append((rank, vec))
    recs.sort()
    return tuple(recs)


def _census_chunk(args):
    n, max_len, start, stop = args
    words = _domain(n, max_len)
    tb = _Tables(words)
    m = len(words)
    length, meetlen, bit = tb.length, tb.meetlen, tb.bit
    reps: dict = {}
    if n == 0:
        return {(): ()}
    if n == 1:
        for i in range(start, stop):
            reps.setdefault(_key_of_ids((i,), length, meetlen, bit), (i,))
        return reps
    for i in range(start, stop):
        for rest in combinations(range(i + 1, m), n - 1):
            ids = (i,) + rest
            k = _key_of_ids(ids, length, meetlen, bit)
            if k not in reps:
                reps[k] = ids
    return reps


_REPS_MEMO: dict = {}


def _census_reps(n: int, max_len: int | None = None,
                 threads: int = 1) -> dict:
    """One representative id-tuple per strong-isomorphism class.

    Memoized per (n, max_len); the result does not depend on threads.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    memo_key = (n, max_len)
    if memo_key in _REPS_MEMO:
        return _REPS_MEMO[memo_key]
    out = _census_reps_uncached(n, max_len, threads)
    _REPS_MEMO[memo_key] = out
    return out


def _census_reps_uncached(n: int, max_len: int | None,
                          threads: int) -> dict:
    words = _domain(n, max_len)
    m = len(words)
    if n == 0 or threads <= 1 or m < 16:
        return _census_chunk((n, max_len, 0, m))
    workers = min(threads, os.cpu_count() or 1)
    bounds = [round(k * m / (4 * workers)) for k in range(4 * workers + 1)]
    jobs = [(n, max_len, a, b) for a, b in zip(bounds, bounds[1:]) if a < b]
    ctx = get_context("fork" if os.name == "posix" else "spawn")
    with ctx.Pool(workers) as pool:
        parts = pool.map(_census_chunk, jobs)
    out: dict = {}
    for p in parts:
        for k, ids in p.items():
            out.setdefault(k, ids)
    return out


def brute_signatures(n: int, max_len: int | None = None,
                     threads: int = 1) -> frozenset:
    """All tuple-type signatures of n distinct words of bounded length."""
    if n == 0:
        return frozenset({EMPTY_SIG})
    reps = _census_reps(n, max_len, threads)
    words = _domain(n, max_len)
    tb = _Tables(words)
    return frozenset(_sig_of_ids(ids, tb) for ids in reps.values())


def weak_type_catalog(n: int, max_len: int | None = None,
                      threads: int = 1) -> frozenset:
    return frozenset(weaken(s) for s in brute_signatures(n, max_len, threads))


def qualifying_weak_types(n: int, threads: int = 1) -> frozenset:
    """Weak tuple types that are length-injective and meet-avoiding."""
    out = []
    for w in weak_type_catalog(n, threads=threads):
        flags = classify_weak_type(w) if w != EMPTY_SIG else {
            "length_injective": True, "meet_avoiding": True}
        if flags["length_injective"] and flags["meet_avoiding"]:
            out.append(w)
    return frozenset(out)


# ---------------------------------------------------------------------------
# the four counts

def census(n: int, threads: int = 1) -> dict[str, int]:
    """All four counts for one row, from a single brute pass."""
    tsigs = brute_signatures(n, threads=threads)
    esigs = {strip_stars(s) for s in tsigs}
    qual = qualifying_weak_types(n, threads=threads)
    return {
        "emb-all": len(esigs),
        "tup-all": len(tsigs),
        "emb-min": len({strip_stars(w) for w in qual}),
        "tup-min": len(qual),
    }


def count_types(n: int, kind: str, method: str, threads: int = 1) -> TypeCount:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if kind in ("emb-all", "tup-all"):
        if method != "brute":
            raise ValueError(f"method {method!r} applies only to -min kinds")
        sigs = brute_signatures(n, threads=threads)
        if kind == "emb-all":
            count = len({strip_stars(s) for s in sigs})
        else:
            count = len(sigs)
    else:
        if method == "brute":
            raise ValueError("brute applies only to -all kinds")
        if method == "predicate":
            qual = qualifying_weak_types(n, threads=threads)
            if kind == "tup-min":
                count = len(qual)
            else:
                count = len({strip_stars(w) for w in qual})
        else:
            depth = max(1, 4 * n)
            got = minimizer.minimal_type_census(n, depth)
            again = minimizer.minimal_type_census(n, depth + 2)
            if got != again:
                raise AssertionError(
                    f"minimizer census not converged at depth {depth}")
            if kind == "tup-min":
                count = len(got)
            else:
                count = len({strip_stars(s) for s in got})
    return TypeCount(n=n, kind=kind, method=method, count=count)


def type_catalog(n: int, kind: str, threads: int = 1) -> list[dict]:
    """Signatures with a representative tuple, canonically ordered."""
    words = _domain(n)
    tb = _Tables(words)
    reps: dict = {}
    if n == 0:
        reps[EMPTY_SIG] = ()
    else:
        for ids in combinations(range(len(words)), n):
            s = _sig_of_ids(ids, tb)
            if kind == "emb-all":
                s = strip_stars(s)
            elif kind == "tup-min":
                s = weaken(s)
                flags = classify_weak_type(s)
                if not (flags["length_injective"] and flags["meet_avoiding"]):
                    continue
            elif kind == "emb-min":
                s = weaken(s)
                flags = classify_weak_type(s)
                if not (flags["length_injective"] and flags["meet_avoiding"]):
                    continue
                s = strip_stars(s)
            reps.setdefault(s, tuple(unpack(words[i]) for i in ids))
    rows = [{"kind": kind, "signature": render_signature(s),
             "representative": list(rep)} for s, rep in reps.items()]
    rows.sort(key=lambda r: r["signature"])
    return rows


# ---------------------------------------------------------------------------
# embedding types of a given height

def embedding_types_of_height(n: int) -> int:
    """Count via the height recurrence, seeded with 1, 1."""
    if n < 0:
        raise ValueError("height must be >= 0")
    e = [1, 1]
    while len(e) <= n:
        k = len(e) - 1
        e.append(2 * e[k] * sum(e[:k]) + e[k] ** 2)
    return e[n]


def enumerate_height_shapes(h: int):
    """Yield every embedding-type shape of height exactly h."""
    if h == 0:
        yield None
        return
    for h0 in range(h):
        for h1 in range(h):
            if max(h0, h1) != h - 1:
                continue
            for c0 in enumerate_height_shapes(h0):
                for c1 in enumerate_height_shapes(h1):
                    yield (False, c0, c1)


def count_height_shapes(h: int) -> int:
    """Independent count by direct shape enumeration."""
    return sum(1 for _ in enumerate_height_shapes(h))
