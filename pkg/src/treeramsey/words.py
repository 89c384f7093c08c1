"""Binary words and the dense order on them.

Words are plain strings over '0'/'1'; the empty word is ''.  In text
formats the empty word is rendered as "e".  The order ``cmp_q`` is the
left-to-right order of nodes when the infinite binary tree is drawn
growing upward: a word is smaller than its extensions through bit 1 and
larger than its extensions through bit 0; incomparable words compare
lexicographically.  It is dense with no endpoints, and ``q_value`` embeds
it into the dyadic rationals.
"""

from __future__ import annotations

from fractions import Fraction

LT, EQ, GT = -1, 0, 1

__all__ = [
    "LT", "EQ", "GT",
    "is_word", "check_word", "meet", "is_prefix",
    "cmp_q", "lt_q", "q_value", "q_between",
    "word_key", "words_upto", "rank", "format_word", "parse_word",
]


def is_word(w: str) -> bool:
    return isinstance(w, str) and all(c in "01" for c in w)


def check_word(w: str) -> str:
    if not is_word(w):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def is_prefix(a: str, b: str) -> bool:
    """True iff a is an initial segment of b (not necessarily proper)."""
    return b.startswith(a)


def meet(a: str, b: str) -> str:
    """Longest common initial segment of a and b."""
    n = min(len(a), len(b))
    for i in range(n):
        if a[i] != b[i]:
            return a[:i]
    return a[:n]


def cmp_q(a: str, b: str) -> int:
    """Compare in the dense tree order; returns LT, EQ or GT."""
    if a == b:
        return EQ
    if is_prefix(a, b):
        return LT if b[len(a)] == "1" else GT
    if is_prefix(b, a):
        return GT if a[len(b)] == "1" else LT
    m = len(meet(a, b))
    return LT if a[m] < b[m] else GT


def lt_q(a: str, b: str) -> bool:
    return cmp_q(a, b) == LT


def q_value(w: str) -> Fraction:
    """Exact dyadic value sum_i (w(i) - 1/2) * 2^-i; monotone for cmp_q."""
    total = Fraction(0)
    for i, c in enumerate(w):
        total += (Fraction(int(c)) - Fraction(1, 2)) / (1 << i)
    return total


def q_between(a: str, b: str) -> str:
    """A word strictly between a and b in the dense order.

    The witness has length at most max(len(a), len(b)) + 1.
    """
    if cmp_q(a, b) != LT:
        raise ValueError("arguments must satisfy a < b in the tree order")
    if is_prefix(a, b):
        return b + "0"
    if is_prefix(b, a):
        return a + "1"
    return a + "1"


def word_key(w: str) -> tuple[int, str]:
    """Sort key for the canonical length-then-lexicographic enumeration."""
    return (len(w), w)


def rank(w: str) -> int:
    """Index of w in the length-then-lexicographic enumeration (rank('')=0)."""
    return (1 << len(w)) - 1 + (int(w, 2) if w else 0)


def words_upto(max_len: int) -> list[str]:
    """All binary words of length <= max_len, in canonical order."""
    out: list[str] = []
    for n in range(max_len + 1):
        out.extend(format(v, f"0{n}b") if n else "" for v in range(1 << n))
    return out


def format_word(w: str) -> str:
    """Render for text formats: the empty word becomes 'e'."""
    return w if w else "e"


def parse_word(text: str) -> str:
    text = text.strip()
    if text == "e":
        return ""
    return check_word(text)
