"""Binary words and word-level predicates.

A :class:`Word` is stored bit-packed: the first symbol is the most
significant of ``length`` bits, so for words of equal length the integer
order of ``bits`` coincides with lexicographic order.  All positions in the
public API are 1-based.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Iterator

import numpy as np

from .errors import InputError
from .limits import require_enumerable


class Word:
    __slots__ = ("bits", "length")

    bits: int
    length: int

    def __init__(self, text: str = "") -> None:
        if text and text.strip("01"):
            raise InputError(f"not a binary word: {text!r}")
        object.__setattr__(self, "bits", int(text, 2) if text else 0)
        object.__setattr__(self, "length", len(text))

    @classmethod
    def from_int(cls, bits: int, length: int) -> Word:
        if length < 0 or bits < 0 or bits >> length:
            raise InputError(f"{bits} does not fit in {length} bits")
        w = cls.__new__(cls)
        object.__setattr__(w, "bits", bits)
        object.__setattr__(w, "length", length)
        return w

    @classmethod
    def from_symbols(cls, symbols: Iterable[int]) -> Word:
        return cls("".join("1" if s else "0" for s in symbols))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @property
    def text(self) -> str:
        return format(self.bits, f"0{self.length}b") if self.length else ""

    def symbol(self, i: int) -> int:
        """Return u_i (1-based)."""
        if not 1 <= i <= self.length:
            raise InputError(f"position {i} outside [1, {self.length}]")
        return (self.bits >> (self.length - i)) & 1

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        for i in range(self.length - 1, -1, -1):
            yield (self.bits >> i) & 1

    def __add__(self, other: Word) -> Word:
        return Word.from_int((self.bits << other.length) | other.bits,
                             self.length + other.length)

    def __mul__(self, times: int) -> Word:
        out = Word()
        for _ in range(times):
            out = out + self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.bits == other.bits and self.length == other.length

    def __lt__(self, other: Word) -> bool:
        if self.length == other.length:
            return self.bits < other.bits
        return self.text < other.text

    def __le__(self, other: Word) -> bool:
        return self == other or self < other

    def __hash__(self) -> int:
        return hash((self.bits, self.length))

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Word({self.text!r})"

    def __reduce__(self):
        return (Word.from_int, (self.bits, self.length))


EMPTY = Word()


def as_word(u: Word | str) -> Word:
    return u if isinstance(u, Word) else Word(u)


def subword(u: Word, positions: Iterable[int]) -> Word:
    """Return u_S, the symbols of ``u`` at the sorted positions S."""
    ps = sorted(positions)
    for p in ps:
        if not 1 <= p <= u.length:
            raise InputError(f"position {p} outside [1, {u.length}]")
    if len(set(ps)) != len(ps):
        raise InputError("positions must be distinct")
    text = u.text
    return Word("".join(text[p - 1] for p in ps))


def subinterval(u: Word, x: int, y: int) -> Word:
    """Return the contiguous slice u_x ... u_y."""
    if not 1 <= x <= y <= u.length:
        raise InputError(f"invalid interval [{x}, {y}] for a word of length {u.length}")
    return Word(u.text[x - 1:y])


def is_lambda_nonrepeating(u: Word, lam: int) -> bool:
    """True iff all length-``lam`` subintervals of ``u`` are pairwise distinct."""
    if lam < 1:
        raise InputError("lambda must be positive")
    windows = u.length - lam + 1
    if windows <= 1:
        return True
    if windows > 1 << lam:
        return False
    mask = (1 << lam) - 1
    seen = set()
    for shift in range(u.length - lam, -1, -1):
        window = (u.bits >> shift) & mask
        if window in seen:
            return False
        seen.add(window)
    return True


def periodic_prefix(u: Word, m: int) -> Word:
    """Return u^<m>, the first ``m`` symbols of uuu..."""
    if u.length == 0:
        raise InputError("the periodic extension of the empty word is undefined")
    if m < 0:
        raise InputError("prefix length must be nonnegative")
    reps, rest = divmod(m, u.length)
    return Word(u.text * reps + u.text[:rest])


def _repeating_mask(codes: np.ndarray, n: int, lam: int) -> np.ndarray:
    shifts = np.arange(n - lam, -1, -1, dtype=np.int64)
    windows = (codes[:, None] >> shifts[None, :]) & ((1 << lam) - 1)
    windows.sort(axis=1)
    return (windows[:, 1:] == windows[:, :-1]).any(axis=1)


def count_lambda_repeating(n: int, lam: int, chunk: int = 1 << 16) -> int:
    """Exact number of lam-repeating words in {0,1}^n, by enumeration."""
    if lam < 1 or n < 0:
        raise InputError("need n >= 0 and lambda >= 1")
    require_enumerable(n)
    if n - lam + 1 <= 1:
        return 0
    total = 0
    for start in range(0, 1 << n, chunk):
        codes = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        total += int(_repeating_mask(codes, n, lam).sum())
    return total


def repeating_union_bound(n: int, lam: int) -> int:
    """C(n,2) * 2^(n-lam): the first-moment ceiling on lam-repeating words."""
    return comb(n, 2) * 2 ** (n - lam)
