"""Brute-force reference implementations, written independently of the package.

Everything here works on plain strings and enumerates by definition, so it is
slow and only meant for small inputs.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product


def words(length: int) -> list[str]:
    return ["".join(p) for p in product("01", repeat=length)]


def words_upto(max_len: int) -> list[str]:
    return [w for n in range(max_len + 1) for w in words(n)]


@lru_cache(maxsize=None)
def subsequences(s: str) -> frozenset[str]:
    if not s:
        return frozenset([""])
    rest = subsequences(s[1:])
    return rest | frozenset(s[0] + t for t in rest)


def is_subseq(w: str, s: str) -> bool:
    it = iter(s)
    return all(c in it for c in w)


def lcs_set(a: str, b: str) -> set[str]:
    common = subsequences(a) & subsequences(b)
    best = max(map(len, common))
    return {w for w in common if len(w) == best}


def common_supersequences(a: str, b: str) -> set[str]:
    out = set()
    for n in range(max(len(a), len(b)), len(a) + len(b) + 1):
        out.update(y for y in words(n) if is_subseq(a, y) and is_subseq(b, y))
    return out


def scs_set(a: str, b: str) -> set[str]:
    sup = common_supersequences(a, b)
    best = min(map(len, sup))
    return {y for y in sup if len(y) == best}


def mcs_set(a: str, b: str) -> set[str]:
    """Minimal elements: no single deletion is still a common supersequence.

    Any minimal common supersequence has length at most |a| + |b|, so the
    enumeration bound in common_supersequences is complete.
    """
    sup = common_supersequences(a, b)
    return {y for y in sup
            if not any(y[:p] + y[p + 1:] in sup for p in range(len(y)))}


def scs_len_dp(a: str, b: str) -> int:
    """Direct SCS recurrence (not via LCS)."""
    m, n = len(a), len(b)
    S = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        for j in range(n + 1):
            if i == 0 or j == 0:
                S[i][j] = i + j
            elif a[i - 1] == b[j - 1]:
                S[i][j] = S[i - 1][j - 1] + 1
            else:
                S[i][j] = min(S[i - 1][j], S[i][j - 1]) + 1
    return S[m][n]


def lcs_len_dp(a: str, b: str) -> int:
    m, n = len(a), len(b)
    L = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            L[i][j] = L[i - 1][j - 1] + 1 if a[i - 1] == b[j - 1] else max(L[i - 1][j], L[i][j - 1])
    return L[m][n]


def deletion_ball(u: str, k: int) -> set[str]:
    return {"".join(u[i] for i in keep) for keep in combinations(range(len(u)), len(u) - k)}


def distance(u: str, v: str) -> int:
    """Smallest k with a common length-(n-k) subsequence."""
    for k in range(len(u) + 1):
        if deletion_ball(u, k) & deletion_ball(v, k):
            return k
    raise AssertionError("unreachable")


def leftmost(u: str, w: str) -> tuple[int, ...]:
    """Lexicographically smallest 1-based position tuple S with u_S = w, by search."""
    for S in combinations(range(1, len(u) + 1), len(w)):
        if "".join(u[i - 1] for i in S) == w:
            return S
    raise ValueError("not a subsequence")


def is_nonrepeating(u: str, lam: int) -> bool:
    windows = [u[i:i + lam] for i in range(len(u) - lam + 1)]
    return len(windows) == len(set(windows))


def triangles_ordered(dist: list[list[int]], k: int) -> int:
    N = len(dist)
    adj = [[i != j and dist[i][j] <= k for j in range(N)] for i in range(N)]
    total = 0
    for i in range(N):
        for j in range(N):
            if adj[i][j]:
                total += sum(adj[i][t] and adj[j][t] for t in range(N))
    return total // 6
