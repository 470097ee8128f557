"""Longest common subsequences, shortest common supersequences, and friends.

Multiplicities always count distinct strings, never alignments.  Set
enumerations are memoized per call over suffix pairs ``(i, j)``; the
``count_*`` functions are independent counting recurrences that never build
strings and serve as the fast path for censuses.
"""

from __future__ import annotations

import dataclasses
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import InputError, ResourceGuardError
from .limits import LIMITS
from .word import Word


@dataclasses.dataclass(frozen=True)
class OptimalSet:
    kind: str  # "LCS", "SCS" or "MCS"
    strings: tuple[Word, ...]
    opt_length: int | None = None

    @property
    def count(self) -> int:
        return len(self.strings)

    def __len__(self) -> int:
        return len(self.strings)

    def __contains__(self, w: Word) -> bool:
        return w in self.strings

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "opt_length": self.opt_length,
            "count": self.count,
            "strings": [w.text for w in self.strings],
        }


def _optimal_set(kind: str, texts: Iterable[str], opt_length: int | None) -> OptimalSet:
    return OptimalSet(kind, tuple(Word(t) for t in sorted(texts)), opt_length)


def _guard(size: int) -> None:
    if size > LIMITS.output_max:
        raise ResourceGuardError(
            f"candidate set of {size} strings exceeds output_max={LIMITS.output_max}")


def _suffix_table(a: str, b: str) -> list[list[int]]:
    """L[i][j] = LCS(a[i:], b[j:])."""
    m, n = len(a), len(b)
    L = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        row, below = L[i], L[i + 1]
        ai = a[i]
        for j in range(n - 1, -1, -1):
            if ai == b[j]:
                row[j] = below[j + 1] + 1
            else:
                row[j] = below[j] if below[j] >= row[j + 1] else row[j + 1]
    return L


def lcs_len(u: Word, v: Word) -> int:
    a, b = u.text, v.text
    prev = [0] * (len(b) + 1)
    for ch in a:
        cur = [0]
        for j, bj in enumerate(b):
            if ch == bj:
                cur.append(prev[j] + 1)
            else:
                cur.append(prev[j + 1] if prev[j + 1] >= cur[j] else cur[j])
        prev = cur
    return prev[-1]


def scs_len(u: Word, v: Word) -> int:
    return len(u) + len(v) - lcs_len(u, v)


def deletion_distance(u: Word, v: Word) -> int:
    if len(u) != len(v):
        raise InputError("deletion distance is defined only for words of equal length")
    return len(u) - lcs_len(u, v)


def is_subsequence(w: Word | str, u: Word | str) -> bool:
    """True iff ``w`` can be obtained from ``u`` by deleting symbols."""
    it = iter(str(u))
    return all(ch in it for ch in str(w))


def leftmost_embedding(u: Word, w: Word) -> tuple[int, ...]:
    """left(u, w): the lexicographically smallest position set S with u_S = w."""
    positions = []
    text = u.text
    start = 0
    for ch in w.text:
        idx = text.find(ch, start)
        if idx < 0:
            raise InputError(f"{w} is not a subsequence of {u}")
        positions.append(idx + 1)
        start = idx + 1
    return tuple(positions)


# -- set enumerations -------------------------------------------------------

def lcs_set(u: Word, v: Word) -> OptimalSet:
    a, b = u.text, v.text
    L = _suffix_table(a, b)

    @lru_cache(maxsize=None)
    def rec(i: int, j: int) -> frozenset[str]:
        if L[i][j] == 0:
            return frozenset([""])
        out: set[str] = set()
        if a[i] == b[j]:
            out.update(a[i] + s for s in rec(i + 1, j + 1))
        if L[i + 1][j] == L[i][j]:
            out.update(rec(i + 1, j))
        if L[i][j + 1] == L[i][j]:
            out.update(rec(i, j + 1))
        _guard(len(out))
        return frozenset(out)

    return _optimal_set("LCS", rec(0, 0), L[0][0])


def _prefix_counts(y: str, target: str) -> list[int]:
    """pre[p] = symbols of ``target`` matched greedily inside y[:p]."""
    pre = [0] * (len(y) + 1)
    t, k = len(target), 0
    for p, ch in enumerate(y):
        if k < t and target[k] == ch:
            k += 1
        pre[p + 1] = k
    return pre


def _suffix_counts(y: str, target: str) -> list[int]:
    """suf[p] = symbols of ``target`` matched greedily (from the right) inside y[p:]."""
    suf = [0] * (len(y) + 1)
    k = len(target)
    for p in range(len(y) - 1, -1, -1):
        if k > 0 and target[k - 1] == y[p]:
            k -= 1
        suf[p] = len(target) - k
    return suf


def _is_minimal_supersequence(y: str, a: str, b: str) -> bool:
    """No single-symbol deletion of ``y`` still contains both ``a`` and ``b``."""
    pa, sa = _prefix_counts(y, a), _suffix_counts(y, a)
    pb, sb = _prefix_counts(y, b), _suffix_counts(y, b)
    la, lb = len(a), len(b)
    for p in range(len(y)):
        if pa[p] + sa[p + 1] >= la and pb[p] + sb[p + 1] >= lb:
            return False
    return True


@lru_cache(maxsize=1 << 18)
def _mcs_texts(a: str, b: str) -> frozenset[str]:
    # keyed on the suffix strings themselves, so subproblems are shared
    # between calls; values are immutable
    p = 0
    while p < len(a) and p < len(b) and a[p] == b[p]:
        p += 1
    if p:
        prefix = a[:p]
        rest = _mcs_texts(a[p:], b[p:])
        return frozenset(prefix + y for y in rest
                         if _is_minimal_supersequence(prefix + y, a, b))
    if not a:
        return frozenset([b])
    if not b:
        return frozenset([a])
    cands = {a[0] + x for x in _mcs_texts(a[1:], b)}
    cands.update(b[0] + y for y in _mcs_texts(a, b[1:]))
    _guard(len(cands))
    return frozenset(y for y in cands if _is_minimal_supersequence(y, a, b))


def mcs_set(u: Word, v: Word) -> OptimalSet:
    """All minimal common supersequences of ``u`` and ``v``."""
    return _optimal_set("MCS", _mcs_texts(u.text, v.text), None)


def scs_set(u: Word, v: Word) -> OptimalSet:
    target = scs_len(u, v)
    texts = [y for y in _mcs_texts(u.text, v.text) if len(y) == target]
    return _optimal_set("SCS", texts, target)


# -- counting recurrences ---------------------------------------------------

def count_lcs(u: Word, v: Word) -> int:
    """m_LCS(u, v) by a next-occurrence recurrence (no strings are built)."""
    a, b = u.text, v.text
    m, n = len(a), len(b)
    L = _suffix_table(a, b)
    nxt_a = _next_occurrence(a)
    nxt_b = _next_occurrence(b)
    C = [[1] * (n + 1) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        for j in range(n - 1, -1, -1):
            target = L[i][j]
            if target == 0:
                continue
            total = 0
            for c in "01":
                p, q = nxt_a[i][c], nxt_b[j][c]
                if p < m and q < n and L[p + 1][q + 1] + 1 == target:
                    total += C[p + 1][q + 1]
            C[i][j] = total
    return C[0][0]


def _next_occurrence(a: str) -> list[dict[str, int]]:
    out = [{"0": len(a), "1": len(a)}]
    for ch in reversed(a):
        d = dict(out[-1])
        d[ch] = len(a) - len(out)
        out.append(d)
    out.reverse()
    return out


def count_scs(u: Word, v: Word) -> int:
    """m_SCS(u, v) by a first-symbol recurrence (no strings are built)."""
    a, b = u.text, v.text
    m, n = len(a), len(b)
    L = _suffix_table(a, b)
    C = [[1] * (n + 1) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        for j in range(n - 1, -1, -1):
            if a[i] == b[j]:
                C[i][j] = C[i + 1][j + 1]
                continue
            # SCS(i, j) = m - i + n - j - L[i][j]; a step is optimal iff L is kept
            total = 0
            if L[i + 1][j] == L[i][j]:
                total += C[i + 1][j]
            if L[i][j + 1] == L[i][j]:
                total += C[i][j + 1]
            C[i][j] = total
    return C[0][0]


# -- the LCS -> SCS injection -----------------------------------------------

def _check_lcs(u: Word, v: Word, w: Word) -> None:
    if not (is_subsequence(w, u) and is_subsequence(w, v)) or len(w) != lcs_len(u, v):
        raise InputError(f"{w} is not a longest common subsequence of {u} and {v}")


def phi(u: Word, v: Word, w: Word) -> Word:
    """Map the LCS ``w`` of (u, v) to an SCS of (u, v), injectively."""
    _check_lcs(u, v, w)
    a, b = u.text, v.text
    m, n, ell = len(a), len(b), len(w)
    left_u = set(leftmost_embedding(u, w))
    left_v = set(leftmost_embedding(v, w))
    i = j = 1
    out = []
    for _ in range(m + n - ell):
        if i not in left_u and i != m + 1:
            out.append(a[i - 1])
            i += 1
        elif j not in left_v and j != n + 1:
            out.append(b[j - 1])
            j += 1
        else:
            out.append(a[i - 1])
            i += 1
            j += 1
    return Word("".join(out))


def phi_invert(u: Word, v: Word, y: Word) -> Word:
    """Recover w from phi(u, v, w) by replaying the three cases."""
    a, b, t = u.text, v.text, y.text
    m, n = len(a), len(b)
    i = j = 0
    kept = []
    for ch in t:
        if i < m and j < n and a[i] == b[j]:
            if ch != a[i]:
                break
            kept.append(ch)
            i += 1
            j += 1
        elif i < m and a[i] == ch:
            i += 1
        elif j < n and b[j] == ch:
            j += 1
        else:
            break
    else:
        if i == m and j == n:
            w = Word("".join(kept))
            if len(w) == lcs_len(u, v) and phi(u, v, w) == y:
                return w
    raise InputError(f"{y} is not in the image of phi for ({u}, {v})")


# -- vectorized lengths for censuses ---------------------------------------

def lcs_len_array(xs: np.ndarray, m: int, ys: np.ndarray, n: int) -> np.ndarray:
    """LCS lengths for broadcast-compatible arrays of packed words.

    ``xs`` holds length-``m`` words and ``ys`` length-``n`` words, both packed
    most-significant-symbol first.  Pass ``xs[:, None]`` and ``ys[None, :]``
    for a full matrix.
    """
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    shape = np.broadcast_shapes(xs.shape, ys.shape)
    ybits = [((ys >> (n - 1 - j)) & 1).astype(np.int8) for j in range(n)]
    prev = [np.zeros(shape, dtype=np.int8) for _ in range(n + 1)]
    for i in range(m):
        xb = ((xs >> (m - 1 - i)) & 1).astype(np.int8)
        cur = [prev[0]]
        for j in range(n):
            take = np.maximum(prev[j + 1], cur[j])
            cur.append(np.where(xb == ybits[j], prev[j] + 1, take).astype(np.int8))
        prev = cur
    return np.broadcast_to(prev[n], shape).astype(np.int16)
