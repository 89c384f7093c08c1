"""The named lower-bound colorings, as reusable coloring objects.

A coloring object is a callable on tuples of words carrying its arity
and color count.  The pair colorings orient unordered pairs by the
dense tree order before evaluating, which fixes the one case (equal
lengths) where the raw formula depends on the argument order.  The
stage-based oracle stands in for halting-set approximations: membership
is a function of (element, stage) that stabilizes at a declared stage,
so every assertion about these colorings is decidable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import census
from .sigs import StrOps, signature
from .words import cmp_q, lt_q, meet, rank, LT

__all__ = [
    "Coloring", "EnumOrder", "ApproxOracle",
    "f_lt_q", "devlin_f0", "jockusch_f_levels", "jockusch_f_pairs",
    "tuple_type_coloring", "product_coloring", "colors_used",
]


@dataclass(frozen=True)
class Coloring:
    name: str
    arity: int
    colors: int
    fn: object

    def __call__(self, *words):
        if len(words) == 1 and isinstance(words[0], (tuple, list)):
            words = tuple(words[0])
        if len(words) != self.arity:
            raise ValueError(f"{self.name} expects {self.arity} words")
        return self.fn(*words)


@dataclass(frozen=True)
class EnumOrder:
    """A bijective enumeration of all words; rank 0 is the empty word."""

    rank_fn: object = rank

    def rank(self, w: str) -> int:
        return self.rank_fn(w)


@dataclass(frozen=True)
class ApproxOracle:
    """Stagewise membership with a declared stabilization stage per element.

    entry_stages maps elements to the stage at which they enter; absent
    elements never enter.  member(e, s) is eventually constant in s and
    equals the limit from the stabilization stage on.
    """

    entry_stages: dict

    def member(self, element: int, stage: int) -> bool:
        s = self.entry_stages.get(element)
        return s is not None and stage >= s

    def stabilization(self, element: int) -> int:
        return self.entry_stages.get(element, 0)

    def snapshot(self, below: int, stage: int) -> tuple[bool, ...]:
        return tuple(self.member(e, stage) for e in range(below))

    @staticmethod
    def from_json(rows) -> "ApproxOracle":
        return ApproxOracle({int(r["element"]): int(r["enters_at"])
                             for r in rows})


def _orient(a: str, b: str) -> tuple[str, str]:
    if a == b:
        raise ValueError("pair colorings need two distinct words")
    return (a, b) if cmp_q(a, b) == LT else (b, a)


def f_lt_q() -> Coloring:
    """1 exactly when the order-smaller element is strictly shorter."""

    def fn(a, b):
        lo, hi = _orient(a, b)
        return 1 if len(lo) < len(hi) else 0

    return Coloring("f-lt-q", 2, 2, fn)


def devlin_f0(order: EnumOrder | None = None) -> Coloring:
    """0 exactly when the enumeration order agrees with the tree order."""
    order = order or EnumOrder()

    def fn(a, b):
        if a == b:
            raise ValueError("pair colorings need two distinct words")
        return 0 if lt_q(a, b) == (order.rank(a) < order.rank(b)) else 1

    return Coloring("devlin-f0", 2, 2, fn)


def jockusch_f_levels(oracle: ApproxOracle) -> Coloring:
    """1 exactly when the stage-y and stage-z approximations agree below x."""

    def fn(x, y, z):
        if not x < y < z:
            raise ValueError("levels must be strictly increasing")
        return 1 if oracle.snapshot(x, y) == oracle.snapshot(x, z) else 0

    return Coloring("jockusch-levels", 3, 2, fn)


def jockusch_f_pairs(oracle: ApproxOracle) -> Coloring:
    """The pair form: levels are meet length, then the two word lengths."""
    levels = jockusch_f_levels(oracle)

    def fn(a, b):
        lo, hi = (a, b) if len(a) < len(b) else (b, a)
        return levels(len(meet(a, b)), len(lo), len(hi))

    return Coloring("jockusch", 2, 2, fn)


def tuple_type_coloring(n: int) -> Coloring:
    """Maps each n-tuple of distinct words to the index of its tuple type
    in the fixed catalog; the color range is the full type count."""
    catalog = sorted(census.brute_signatures(n), key=repr)
    index = {s: i for i, s in enumerate(catalog)}

    def fn(*words):
        return index[signature(words, ops=StrOps)]

    return Coloring(f"tuple-type:{n}", n, len(catalog), fn)


def product_coloring(c1: Coloring, c2: Coloring) -> Coloring:
    if c1.arity != c2.arity:
        raise ValueError("component colorings must share an arity")

    def fn(*words):
        return (c1(*words), c2(*words))

    return Coloring(f"product({c1.name},{c2.name})", c1.arity,
                    c1.colors * c2.colors, fn)


def colors_used(coloring: Coloring, family) -> set:
    """Exhaustive census of the colors the coloring takes on the family
    of argument tuples."""
    return {coloring(*tup) for tup in family}
