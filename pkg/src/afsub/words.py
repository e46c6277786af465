"""Square-free and abelian-square-free words over small integer alphabets.

An *anagram* (abelian square) is a word of even length whose two halves have
equal symbol multisets.  A *square* is a word WW with W non-empty.  This
module generates arbitrarily long square-free words on 3 symbols and
anagram-free words on 4 symbols, detects both kinds of repetition, and
implements the subsequence restriction operator used throughout the
colouring constructions.

Symbols are 0-based integers; rendering as letters happens only at the CLI
boundary.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

_LETTERS = "abcdefghijklmnopqrstuvwxyz"

# Threshold above which repetition scans switch from the pure rolling-counter
# implementation to the vectorised prefix-count implementation.
_VECTOR_THRESHOLD = 256


@dataclass(frozen=True)
class Word:
    """A finite symbol sequence over the alphabet {0, ..., alphabet_size-1}."""

    symbols: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self):
        if self.alphabet_size <= 0:
            raise ValueError("alphabet_size must be positive")
        for s in self.symbols:
            if not 0 <= s < self.alphabet_size:
                raise ValueError(f"symbol {s} outside alphabet of size {self.alphabet_size}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    @classmethod
    def from_string(cls, text: str, alphabet_size: Optional[int] = None) -> "Word":
        symbols = tuple(_LETTERS.index(ch) for ch in text)
        if alphabet_size is None:
            alphabet_size = max(symbols, default=-1) + 1 or 1
        return cls(symbols, alphabet_size)

    def to_string(self) -> str:
        if self.alphabet_size > len(_LETTERS):
            raise ValueError("alphabet too large for letter rendering")
        return "".join(_LETTERS[s] for s in self.symbols)


WordLike = Union[Word, Sequence[int]]


def _symbols_of(w: WordLike) -> Sequence[int]:
    return w.symbols if isinstance(w, Word) else w


def multiset(symbols: Iterable[int]) -> Counter:
    """Colour multiset of a symbol sequence; equality is count-wise."""
    return Counter(symbols)


def is_anagram(w: WordLike) -> bool:
    """True iff w has even length >= 2 and its halves share one multiset."""
    s = _symbols_of(w)
    n = len(s)
    if n < 2 or n % 2:
        return False
    h = n // 2
    return Counter(s[:h]) == Counter(s[h:])


def _rolling_abelian_position_major(s: Sequence[int]) -> Optional[tuple[int, int]]:
    """First abelian-square window by (start, length), rolling difference counters."""
    n = len(s)
    for i in range(n - 1):
        diff: dict[int, int] = {}
        nonzero = 0

        def upd(sym: int, delta: int) -> None:
            nonlocal nonzero
            old = diff.get(sym, 0)
            new = old + delta
            diff[sym] = new
            nonzero += (new != 0) - (old != 0)

        # halves [i, i+L) and [i+L, i+2L); L = 1 seeds the counters
        upd(s[i], 1)
        upd(s[i + 1], -1)
        if nonzero == 0:
            return (i, 2)
        max_len = (n - i) // 2
        for L in range(2, max_len + 1):
            upd(s[i + L - 1], 2)       # boundary symbol moves right half -> left half
            upd(s[i + 2 * L - 2], -1)  # two symbols join the right half
            upd(s[i + 2 * L - 1], -1)
            if nonzero == 0:
                return (i, 2 * L)
    return None


def _rolling_abelian_length_major(s: Sequence[int]) -> Optional[tuple[int, int]]:
    """First abelian-square window by (length, start), rolling difference counters."""
    n = len(s)
    for L in range(1, n // 2 + 1):
        diff: dict[int, int] = {}
        nonzero = 0

        def upd(sym: int, delta: int) -> None:
            nonlocal nonzero
            old = diff.get(sym, 0)
            new = old + delta
            diff[sym] = new
            nonzero += (new != 0) - (old != 0)

        for j in range(L):
            upd(s[j], 1)
            upd(s[L + j], -1)
        if nonzero == 0:
            return (0, 2 * L)
        for i in range(1, n - 2 * L + 1):
            upd(s[i - 1], -1)
            upd(s[i + L - 1], 2)
            upd(s[i + 2 * L - 1], -1)
            if nonzero == 0:
                return (i, 2 * L)
    return None


def _prefix_counts(s: Sequence[int]) -> np.ndarray:
    a = np.asarray(s, dtype=np.int64)
    _, dense = np.unique(a, return_inverse=True)
    k = int(dense.max()) + 1 if len(a) else 1
    P = np.zeros((k, len(a) + 1), dtype=np.int64)
    for c in range(k):
        P[c, 1:] = np.cumsum(dense == c)
    return P


def _vector_abelian(s: Sequence[int], length_major: bool) -> Optional[tuple[int, int]]:
    """Vectorised equivalent of the rolling scans via per-symbol prefix counts.

    A window (i, 2L) is an abelian square iff 2*P[:, i+L] == P[:, i] + P[:, i+2L]
    for every symbol row of the prefix-count matrix P.
    """
    n = len(s)
    if n < 2:
        return None
    P = _prefix_counts(s)
    best: Optional[tuple[int, int]] = None  # (start, L)
    for L in range(1, n // 2 + 1):
        hi = n - 2 * L
        if best is not None:
            if length_major:
                break
            hi = min(hi, best[0] - 1)
        if hi < 0:
            continue
        ok = np.all(2 * P[:, L : L + hi + 1] == P[:, : hi + 1] + P[:, 2 * L : 2 * L + hi + 1], axis=0)
        idx = np.flatnonzero(ok)
        if idx.size:
            i = int(idx[0])
            if best is None or i < best[0]:
                best = (i, L)
                if i == 0 and not length_major:
                    break
    return None if best is None else (best[0], 2 * best[1])


def find_abelian_square(w: WordLike, *, length_major: bool = False) -> Optional[tuple[int, int]]:
    """Locate the first even factor of w that is an anagram.

    Returns (start, length) of the first abelian square under (start, length)
    order, or None if w is anagram-free.  With length_major=True the scan
    order is (length, start) instead, which finds short repetitions first.
    Total work is O(|w|^2) either way: the rolling multiset-difference
    counters pay O(1) per window slide, and the vectorised path used for
    long inputs does the same comparisons via prefix counts.
    """
    s = _symbols_of(w)
    if len(s) >= _VECTOR_THRESHOLD:
        return _vector_abelian(s, length_major)
    if length_major:
        return _rolling_abelian_length_major(s)
    return _rolling_abelian_position_major(s)


def _naive_square(s: Sequence[int]) -> Optional[tuple[int, int]]:
    n = len(s)
    for i in range(n - 1):
        for L in range(1, (n - i) // 2 + 1):
            if tuple(s[i : i + L]) == tuple(s[i + L : i + 2 * L]):
                return (i, 2 * L)
    return None


def _vector_square(s: Sequence[int]) -> Optional[tuple[int, int]]:
    n = len(s)
    a = np.asarray(s, dtype=np.int64)
    best: Optional[tuple[int, int]] = None
    for L in range(1, n // 2 + 1):
        m = (a[:-L] == a[L:]).astype(np.int64)
        cs = np.concatenate([[0], np.cumsum(m)])
        hi = n - 2 * L
        if best is not None:
            hi = min(hi, best[0] - 1)
        if hi < 0:
            if best is not None:
                break
            continue
        runs = cs[L : L + hi + 1] - cs[: hi + 1]
        idx = np.flatnonzero(runs == L)
        if idx.size:
            i = int(idx[0])
            if best is None or i < best[0]:
                best = (i, L)
                if i == 0:
                    break
    return None if best is None else (best[0], 2 * best[1])


def find_square(w: WordLike) -> Optional[tuple[int, int]]:
    """First factor WW (W non-empty) by (start, length) order, or None."""
    s = _symbols_of(w)
    if len(s) >= _VECTOR_THRESHOLD:
        return _vector_square(s)
    return _naive_square(s)


# Fixed point of 0 -> 012, 1 -> 02, 2 -> 1, a standard square-free word on
# three symbols.
_THUE_IMAGES = ((0, 1, 2), (0, 2), (1,))

# 85-uniform morphism producing an abelian-square-free fixed point on four
# symbols.  The image of symbol k is the image of 0 shifted by k mod 4
# (cyclic symbol permutation), which makes the output reproducible
# bit-for-bit.
KERANEN_IMAGE: tuple[int, ...] = tuple(
    "abcd".index(ch)
    for ch in "abcacdcbcdcadcdbdabacabadbabcbdbcbacbcdcacbabdabacadcbcdcacdbcbacbcdcacdcbdcdadbdcbca"
)
_KERANEN_IMAGES = tuple(tuple((s + k) % 4 for s in KERANEN_IMAGE) for k in range(4))

_keranen_cache: list[int] = [0]
_thue_cache: list[int] = [0]


def _fixed_point_prefix(cache: list[int], images, n: int) -> list[int]:
    while len(cache) < n:
        out: list[int] = []
        for sym in cache:
            out.extend(images[sym])
            if len(out) >= n:
                break
        cache[:] = out
    return cache[:n]


def thue_symbols(n: int) -> list[int]:
    if n < 0:
        raise ValueError("length must be non-negative")
    return _fixed_point_prefix(_thue_cache, _THUE_IMAGES, n)


def keranen_symbols(n: int) -> list[int]:
    if n < 0:
        raise ValueError("length must be non-negative")
    return _fixed_point_prefix(_keranen_cache, _KERANEN_IMAGES, n)


def thue_word(n: int) -> Word:
    """Length-n prefix of a fixed square-free word on {0, 1, 2}."""
    return Word(tuple(thue_symbols(n)), 3)


def keranen_word(n: int) -> Word:
    """Length-n prefix of a fixed abelian-square-free word on {0, 1, 2, 3}."""
    return Word(tuple(keranen_symbols(n)), 4)


def restrict(w: Word, keep: Iterable[int]) -> Word:
    """Subsequence of w keeping exactly the positions whose symbol is in keep."""
    keep_set = set(keep)
    for sym in keep_set:
        if not 0 <= sym < w.alphabet_size:
            raise ValueError(f"symbol {sym} outside alphabet")
    return Word(tuple(s for s in w.symbols if s in keep_set), w.alphabet_size)


def _ends_with_anagram(s: list[int]) -> bool:
    n = len(s)
    for L in range(1, n // 2 + 1):
        if Counter(s[n - 2 * L : n - L]) == Counter(s[n - L :]):
            return True
    return False


def longest_anagram_free(alphabet_size: int) -> tuple[int, Word]:
    """Exhaustive search for the longest anagram-free word on 1-3 symbols.

    Explores only words whose distinct symbols first appear in increasing
    order; every word is a symbol permutation of such a word, and
    permutations preserve anagram-freeness, so the search is exhaustive.
    Returns the maximum length and the first witness found at that length.
    """
    if alphabet_size not in (1, 2, 3):
        raise ValueError(
            "exhaustive search only terminates for alphabets of size 1-3; "
            "4 symbols admit arbitrarily long anagram-free words"
        )
    best_len = 0
    best: tuple[int, ...] = ()
    word: list[int] = []

    def extend(used: int) -> None:
        nonlocal best_len, best
        if len(word) > best_len:
            best_len = len(word)
            best = tuple(word)
        for sym in range(min(used + 1, alphabet_size)):
            word.append(sym)
            if not _ends_with_anagram(word):
                extend(max(used, sym + 1))
            word.pop()

    extend(0)
    return best_len, Word(best, alphabet_size)
