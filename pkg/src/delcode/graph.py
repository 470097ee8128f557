"""The k-deletion graph on {0,1}^n as an implicit graph.

Vertices are packed words (see :class:`~delcode.word.Word`); two words are
adjacent when they are distinct and have deletion distance at most k.  No
2^n x 2^n adjacency structure is built: neighborhoods are generated by k
deletions followed by k insertions.  The only dense object is the optional
all-pairs distance matrix used for small-n good-triple counts.
"""

from __future__ import annotations

import dataclasses
import math
import time
from functools import lru_cache

import numpy as np
from scipy import sparse

from . import _parallel
from .errors import InputError
from .lcsscs import deletion_distance, lcs_len_array
from .limits import LIMITS, require, require_enumerable
from .report import CensusReport
from .word import Word

_SENTINEL = np.iinfo(np.int64).max


@dataclasses.dataclass(frozen=True)
class DeletionGraph:
    n: int
    k: int

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n:
            raise InputError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")

    @property
    def N(self) -> int:
        return 1 << self.n


@dataclasses.dataclass(frozen=True)
class GraphStats:
    n: int
    k: int
    N: int
    max_degree: int
    triangle_count: int
    bollobas_bound: float

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "N": self.N, "max_degree": self.max_degree,
                "triangles": self.triangle_count, "bollobas_bound": self.bollobas_bound}


def _check_vertex(g: DeletionGraph, u: Word) -> None:
    if len(u) != g.n:
        raise InputError(f"{u} is not a vertex of the graph on words of length {g.n}")


def adjacent(g: DeletionGraph, u: Word, v: Word) -> bool:
    _check_vertex(g, u)
    _check_vertex(g, v)
    return u != v and deletion_distance(u, v) <= g.k


def degree_ceiling(n: int, k: int) -> int:
    """C(n,k)^2 2^k: delete k symbols, then insert k symbols."""
    return math.comb(n, k) ** 2 * 2**k


# -- single-vertex generation on Python ints --------------------------------

def _delete_one(code: int, m: int) -> set[int]:
    out = set()
    for p in range(m):
        tail = m - p - 1
        out.add(((code >> (tail + 1)) << tail) | (code & ((1 << tail) - 1)))
    return out


def _insert_one(code: int, m: int) -> set[int]:
    out = set()
    for p in range(m + 1):
        tail = m - p
        head = (code >> tail) << 1
        low = code & ((1 << tail) - 1)
        out.add((head << tail) | low)
        out.add(((head | 1) << tail) | low)
    return out


def _neighbor_codes(code: int, n: int, k: int) -> set[int]:
    level = {code}
    for step in range(k):
        level = set().union(*(_delete_one(c, n - step) for c in level))
    for step in range(k):
        level = set().union(*(_insert_one(c, n - k + step) for c in level))
    level.discard(code)
    return level


def neighborhood(g: DeletionGraph, u: Word) -> set[Word]:
    _check_vertex(g, u)
    require(degree_ceiling(g.n, g.k) <= LIMITS.neighborhood_max,
            f"neighborhood of size up to {degree_ceiling(g.n, g.k)} exceeds the guard")
    return {Word.from_int(c, g.n) for c in _neighbor_codes(u.bits, g.n, g.k)}


# -- all-vertex neighbor table in numpy -------------------------------------

def _unique_rows(a: np.ndarray) -> np.ndarray:
    a.sort(axis=1)
    a[:, 1:][a[:, 1:] == a[:, :-1]] = _SENTINEL
    a.sort(axis=1)
    width = int((a != _SENTINEL).sum(axis=1).max(initial=0))
    return a[:, :max(width, 1)]


def _delete_step(a: np.ndarray, m: int) -> np.ndarray:
    valid = a != _SENTINEL
    parts = []
    for p in range(m):
        tail = m - p - 1
        res = ((a >> (tail + 1)) << tail) | (a & ((1 << tail) - 1))
        parts.append(np.where(valid, res, _SENTINEL))
    return _unique_rows(np.concatenate(parts, axis=1))


def _insert_step(a: np.ndarray, m: int) -> np.ndarray:
    valid = a != _SENTINEL
    parts = []
    for p in range(m + 1):
        tail = m - p
        head = (a >> tail) << 1
        low = a & ((1 << tail) - 1)
        for c in (0, 1):
            parts.append(np.where(valid, ((head | c) << tail) | low, _SENTINEL))
    return _unique_rows(np.concatenate(parts, axis=1))


@lru_cache(maxsize=8)
def neighbor_table(n: int, k: int, chunk: int = 1024) -> tuple[np.ndarray, np.ndarray]:
    """CSR arrays ``(indptr, indices)`` of the whole graph, rows sorted."""
    DeletionGraph(n, k)
    require_enumerable(n)
    require(degree_ceiling(n, k) <= LIMITS.neighborhood_max,
            f"neighborhood of size up to {degree_ceiling(n, k)} exceeds the guard")
    counts, flat = [], []
    for start in range(0, 1 << n, chunk):
        codes = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        a = codes[:, None].copy()
        for step in range(k):
            a = _delete_step(a, n - step)
        for step in range(k):
            a = _insert_step(a, n - k + step)
        a[a == codes[:, None]] = _SENTINEL
        keep = a != _SENTINEL
        counts.append(keep.sum(axis=1))
        a.sort(axis=1)
        flat.append(a[a != _SENTINEL])
    indptr = np.concatenate([[0], np.cumsum(np.concatenate(counts))]).astype(np.int64)
    indices = np.concatenate(flat).astype(np.int64)
    indptr.flags.writeable = False
    indices.flags.writeable = False
    return indptr, indices


def degrees(g: DeletionGraph) -> np.ndarray:
    indptr, _ = neighbor_table(g.n, g.k)
    return np.diff(indptr)


def max_degree(g: DeletionGraph) -> int:
    return int(degrees(g).max())


def adjacency_matrix(g: DeletionGraph) -> sparse.csr_matrix:
    indptr, indices = neighbor_table(g.n, g.k)
    data = np.ones(len(indices), dtype=np.float64)
    return sparse.csr_matrix((data, indices, indptr), shape=(g.N, g.N))


# -- censuses ----------------------------------------------------------------

def _require_triangle_budget(n: int, k: int) -> None:
    estimate = (1 << n) * degree_ceiling(n, k) ** 2
    require(estimate <= LIMITS.triangle_ops_max,
            f"triangle census of n={n}, k={k} estimated at {estimate:.3g} operations "
            f"exceeds triangle_ops_max={LIMITS.triangle_ops_max:.3g}")


def _triangles_in_range(args: tuple[int, int, int, int]) -> int:
    n, k, lo, hi = args
    indptr, indices = neighbor_table(n, k)
    rows = [set(indices[indptr[x]:indptr[x + 1]].tolist()) for x in range(1 << n)]
    total = 0
    for u in range(lo, hi):
        nu = rows[u]
        for v in nu:
            if v > u:
                total += sum(1 for w in nu & rows[v] if w > v)
    return total


def triangle_census(g: DeletionGraph, workers: int = 1) -> int:
    """Unordered pairwise-adjacent triples, each counted once as u < v < w."""
    _require_triangle_budget(g.n, g.k)
    neighbor_table(g.n, g.k)  # build once before forking
    step = max(1, g.N // 16)
    chunks = [(g.n, g.k, lo, min(lo + step, g.N)) for lo in range(0, g.N, step)]
    return sum(_parallel.map_chunks(_triangles_in_range, chunks, workers))


def triangle_census_trace(g: DeletionGraph, chunk: int = 1024) -> int:
    """Triangles as trace(A^3) / 6 from the sparse adjacency matrix."""
    _require_triangle_budget(g.n, g.k)
    A = adjacency_matrix(g)
    total = 0.0
    for lo in range(0, g.N, chunk):
        rows = A[lo:lo + chunk]
        total += (rows @ A).multiply(rows).sum()
    count, rem = divmod(int(round(total)), 6)
    assert rem == 0
    return count


@lru_cache(maxsize=4)
def distance_matrix(n: int) -> np.ndarray:
    """D[x, y] = d(x, y) for all packed x, y in {0,1}^n."""
    require(n <= LIMITS.pair_matrix_max_n,
            f"n={n} exceeds the pair-matrix guard (pair_matrix_max_n={LIMITS.pair_matrix_max_n})")
    codes = np.arange(1 << n, dtype=np.int64)
    D = (n - lcs_len_array(codes[:, None], n, codes[None, :], n)).astype(np.int8)
    D.flags.writeable = False
    return D


def good_triple_census(n: int, a: int, b: int, c: int) -> int:
    """Ordered (u, v, w), repeats allowed, with d(u,v)<=a, d(v,w)<=b, d(w,u)<=c."""
    if n < 1 or min(a, b, c) < 0:
        raise InputError("need n >= 1 and nonnegative distance bounds")
    D = distance_matrix(n)
    A, B, C = ((D <= x).astype(np.float64) for x in (a, b, c))
    # sum_{u,v} A[u,v] * sum_w B[v,w] C[w,u]
    return int(round(float((A * (B @ C).T).sum())))


def bollobas_bound(N: int, delta: int, T: int) -> float:
    """(N / 10 Delta) (log Delta - log(T / N) / 2), base-2 logs; T = 0 counts as 1."""
    if N < 1 or delta < 1 or T < 0:
        raise InputError("need N >= 1, Delta >= 1, T >= 0")
    t_eff = max(T, 1)
    return N / (10 * delta) * (math.log2(delta) - 0.5 * math.log2(t_eff / N))


def graph_stats(g: DeletionGraph, workers: int = 1) -> GraphStats:
    delta = max_degree(g)
    T = triangle_census(g, workers)
    return GraphStats(g.n, g.k, g.N, delta, T, bollobas_bound(g.N, delta, T))


# -- reference curves ---------------------------------------------------------

def triangle_reference(n: int, k: int) -> float:
    return 2.0**n * n ** (3 * k) * math.log2(n) ** k


def good_triple_reference(n: int, a: int, b: int, c: int, log_exponent: int | None = None) -> float:
    if log_exponent is None:
        log_exponent = b + c - a
    return 2.0**n * n ** (a + b + c) * math.log2(n) ** log_exponent


def triangle_report(n: int, k: int, workers: int = 1) -> CensusReport:
    started = time.perf_counter()
    T = triangle_census(DeletionGraph(n, k), workers)
    return CensusReport({"n": n, "k": k}, T, triangle_reference(n, k),
                        _parallel.elapsed_ms(started))
