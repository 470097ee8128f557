"""k-deletion codes: construction, validation and the unique-SCS census."""

from __future__ import annotations

import dataclasses
import math
import time
from pathlib import Path
from typing import Iterable

import numpy as np

from . import _parallel
from .errors import InputError
from .graph import DeletionGraph, _delete_one, _neighbor_codes, neighbor_table
from .lcsscs import count_scs, lcs_len_array
from .limits import require_enumerable
from .report import CensusReport
from .word import Word

CONSTRUCTIONS = ("vt", "greedy", "exact", "external")


@dataclasses.dataclass(frozen=True)
class Code:
    n: int
    k: int
    words: tuple[Word, ...]
    construction: str = "external"

    def __post_init__(self) -> None:
        object.__setattr__(self, "words", tuple(sorted(set(self.words))))
        if any(len(w) != self.n for w in self.words):
            raise InputError(f"all codewords must have length n={self.n}")
        if self.construction not in CONSTRUCTIONS:
            raise InputError(f"unknown construction tag {self.construction!r}")

    def __len__(self) -> int:
        return len(self.words)

    @property
    def codes(self) -> np.ndarray:
        return np.array([w.bits for w in self.words], dtype=np.int64)


def _min_pairwise_distance(codes: np.ndarray, n: int, chunk: int = 256) -> int | None:
    best = None
    for lo in range(0, len(codes), chunk):
        block = codes[lo:lo + chunk]
        L = lcs_len_array(block[:, None], n, codes[None, :], n)
        idx = np.arange(lo, lo + len(block))
        L[np.arange(len(block)), idx] = -1  # ignore the diagonal
        top = int(L.max(initial=-1))
        if top >= 0:
            d = n - top
            best = d if best is None else min(best, d)
    return best


def _subsequences_disjoint(code: Code) -> bool:
    """Every y in {0,1}^(n-k) lies inside at most one codeword."""
    owner: dict[int, int] = {}
    for idx, w in enumerate(code.words):
        level = {w.bits}
        for step in range(code.k):
            level = set().union(*(_delete_one(c, code.n - step) for c in level))
        for y in level:
            if owner.setdefault(y, idx) != idx:
                return False
    return True


def is_valid_code(code: Code, cross_check_max_n: int = 16) -> bool:
    """Pairwise deletion distance exceeds k; cross-checked against the subsequence definition."""
    if len(code) <= 1:
        return True
    d_min = _min_pairwise_distance(code.codes, code.n)
    valid = d_min is None or d_min > code.k
    if code.n <= cross_check_max_n and code.k <= code.n:
        if _subsequences_disjoint(code) != valid:
            raise AssertionError("pairwise-LCS and subsequence checks disagree")
    return valid


def _vt_syndromes(n: int) -> np.ndarray:
    require_enumerable(n)
    codes = np.arange(1 << n, dtype=np.int64)
    total = np.zeros_like(codes)
    for i in range(1, n + 1):
        total += i * ((codes >> (n - i)) & 1)
    return total % (n + 1)


def vt_code(n: int, residue: int) -> Code:
    """{x : sum_i i x_i = residue (mod n+1)}."""
    if n < 1 or not 0 <= residue <= n:
        raise InputError(f"need n >= 1 and 0 <= residue <= n, got n={n}, residue={residue}")
    members = np.flatnonzero(_vt_syndromes(n) == residue)
    return Code(n, 1, tuple(Word.from_int(int(x), n) for x in members), "vt")


def vt_sizes(n: int) -> list[int]:
    return np.bincount(_vt_syndromes(n), minlength=n + 1).tolist()


def _order(n: int, order: str) -> Iterable[int]:
    if order == "lex":
        return range(1 << n)
    if order == "gray":
        return (i ^ (i >> 1) for i in range(1 << n))
    if order.startswith("random:"):
        seed = int(order.split(":", 1)[1])
        return np.random.default_rng(seed).permutation(1 << n).tolist()
    raise InputError(f"unknown order {order!r} (lex, gray or random:SEED)")


def greedy_code(n: int, k: int, order: str = "lex") -> Code:
    """Scan {0,1}^n in ``order`` and keep each word far from all kept words."""
    DeletionGraph(n, k)
    require_enumerable(n)
    blocked = bytearray(1 << n)
    kept = []
    for x in _order(n, order):
        if blocked[x]:
            continue
        kept.append(x)
        blocked[x] = 1
        for y in _neighbor_codes(x, n, k):
            blocked[y] = 1
    return Code(n, k, tuple(Word.from_int(x, n) for x in kept), "greedy")


def is_maximal(code: Code, chunk: int = 512) -> bool:
    """Every non-codeword is within distance k of some codeword (checked by LCS)."""
    require_enumerable(code.n)
    cw = code.codes
    for lo in range(0, 1 << code.n, chunk):
        xs = np.arange(lo, min(lo + chunk, 1 << code.n), dtype=np.int64)
        L = lcs_len_array(xs[:, None], code.n, cw[None, :], code.n)
        if not (L >= code.n - code.k).any(axis=1).all():
            return False
    return True


def exact_max_code(n: int, k: int, max_n: int = 6) -> Code:
    """A maximum k-deletion code by branch and bound (small n only)."""
    if n > max_n:
        raise InputError(f"exact search is limited to n <= {max_n}")
    indptr, indices = neighbor_table(n, k)
    nbr = [sum(1 << int(y) for y in indices[indptr[x]:indptr[x + 1]]) for x in range(1 << n)]
    best: list[int] = []

    def search(cand: int, chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) + bin(cand).count("1") <= len(best):
            return
        if not cand:
            best = list(chosen)
            return
        v = (cand & -cand).bit_length() - 1
        chosen.append(v)
        search(cand & ~nbr[v] & ~(1 << v), chosen)
        chosen.pop()
        if nbr[v] & cand:
            search(cand & ~(1 << v), chosen)

    search((1 << (1 << n)) - 1, [])
    return Code(n, k, tuple(Word.from_int(x, n) for x in best), "exact")


# -- file format ------------------------------------------------------------

def format_code(code: Code) -> str:
    header = f"n={code.n} k={code.k} size={len(code)} construction={code.construction}"
    return "\n".join([header, *(w.text for w in code.words)]) + "\n"


def parse_code(text: str) -> Code:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty code file")
    try:
        fields = dict(item.split("=", 1) for item in lines[0].split())
        n, k, size = int(fields["n"]), int(fields["k"]), int(fields["size"])
        construction = fields.get("construction", "external")
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad code header {lines[0]!r}") from exc
    words = tuple(Word(ln) for ln in lines[1:])
    if len(words) != size:
        raise InputError(f"header says size={size} but file lists {len(words)} words")
    return Code(n, k, words, construction)


def write_code(code: Code, path: str | Path) -> None:
    Path(path).write_text(format_code(code))


def read_code(path: str | Path) -> Code:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read code file {path}: {exc}") from exc
    return parse_code(text)


# -- census -----------------------------------------------------------------

def unique_scs_reference(n: int, k: int) -> float:
    return 2.0**n * n ** (2 * k - 1) * math.log2(n)


def _distance_k_rows(n: int, k: int, u: int) -> list[int]:
    indptr, indices = neighbor_table(n, k)
    row = indices[indptr[u]:indptr[u + 1]]
    if k > 1:
        ip, ix = neighbor_table(n, k - 1)
        row = np.setdiff1d(row, ix[ip[u]:ip[u + 1]], assume_unique=True)
    return row.tolist()


def _unique_scs_range(args: tuple[int, int, int, int]) -> int:
    n, k, lo, hi = args
    total = 0
    for x in range(lo, hi):
        u = Word.from_int(x, n)
        for y in _distance_k_rows(n, k, x):
            if count_scs(u, Word.from_int(y, n)) > 1:
                total += 1
    return total


def unique_scs_census(n: int, k: int, workers: int = 1) -> CensusReport:
    """Ordered pairs at distance exactly k with more than one SCS."""
    if n < 1 or k < 1:
        raise InputError("need n >= 1 and k >= 1")
    started = time.perf_counter()
    reference = unique_scs_reference(n, k) if n > 1 else None
    if k > n:
        return CensusReport({"n": n, "k": k}, 0, reference, 0)
    require_enumerable(n)
    neighbor_table(n, k)
    if k > 1:
        neighbor_table(n, k - 1)
    N = 1 << n
    step = max(1, N // 16)
    chunks = [(n, k, lo, min(lo + step, N)) for lo in range(0, N, step)]
    count = sum(_parallel.map_chunks(_unique_scs_range, chunks, workers))
    return CensusReport({"n": n, "k": k}, count, reference, _parallel.elapsed_ms(started))
