"""Closed forms for LCS length and multiplicity of ((10)^<a>, (0110)^<b>).

The closed forms are treated as claims under test: :func:`verify_closed_forms`
compares them against the generic DP and enumeration in :mod:`delcode.lcsscs`
and reports every cell where they disagree.
"""

from __future__ import annotations

import dataclasses
import math
import time

from . import _parallel
from .errors import InputError
from .lcsscs import count_lcs, deletion_distance, lcs_len, lcs_set, scs_set
from .limits import LIMITS, require
from .report import CensusReport
from .word import Word, periodic_prefix

_TEN = Word("10")
_ZOOZ = Word("0110")


def binom(n: int, k: int) -> int:
    """C(n, k), zero when k is outside [0, n]."""
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def family_pair(a: int, b: int) -> tuple[Word, Word]:
    return periodic_prefix(_TEN, a), periodic_prefix(_ZOOZ, b)


@dataclasses.dataclass(frozen=True)
class ExtremalPair:
    c: int

    def __post_init__(self) -> None:
        if self.c < 1:
            raise InputError("c must be positive")

    @property
    def u(self) -> Word:
        return periodic_prefix(_TEN, 4 * self.c - 2)

    @property
    def v(self) -> Word:
        return periodic_prefix(_ZOOZ, 4 * self.c - 2)


def _check_even(b: int) -> None:
    if b < 0 or b % 2:
        raise InputError(f"b must be a nonnegative even integer, got {b}")


def ell(a: int, b: int) -> int:
    _check_even(b)
    if a < 0:
        raise InputError("a must be nonnegative")
    if 2 * a <= b:
        return a
    if 2 * a <= 3 * b:
        return b // 2 + (2 * a - b) // 4
    return b


def m_closed(a: int, b: int) -> int:
    _check_even(b)
    if a < 0:
        raise InputError("a must be nonnegative")
    if (2 * a - b) % 4 == 0:
        return binom(b // 2, (2 * a - b) // 4)
    return binom(b // 2 + 1, (2 * a - b + 2) // 4)


def regime(a: int, b: int) -> str:
    if 2 * a <= b:
        return "low"
    if 2 * a <= 3 * b:
        return "middle"
    return "high"


def verify_extremal(c_max: int) -> CensusReport:
    """Check d = c and m_LCS = m_SCS = C(2c, c) for every c <= c_max."""
    if c_max < 1:
        raise InputError("c_max must be positive")
    require(math.comb(2 * c_max, c_max) <= LIMITS.extremal_max_mult,
            f"C({2 * c_max},{c_max}) exceeds extremal_max_mult={LIMITS.extremal_max_mult}")
    started = time.perf_counter()
    rows = []
    for c in range(1, c_max + 1):
        pair = ExtremalPair(c)
        expected = math.comb(2 * c, c)
        d = deletion_distance(pair.u, pair.v)
        m_lcs = lcs_set(pair.u, pair.v).count
        m_scs = scs_set(pair.u, pair.v).count
        rows.append({"c": c, "u": pair.u.text, "v": pair.v.text, "distance": d,
                     "m_lcs": m_lcs, "m_scs": m_scs, "expected": expected,
                     "pass": d == c and m_lcs == expected and m_scs == expected})
    failures = sum(not r["pass"] for r in rows)
    return CensusReport({"c_max": c_max}, failures, None, _parallel.elapsed_ms(started),
                        {"rows": rows})


def verify_closed_forms(a_max: int, b_max: int) -> CensusReport:
    """Grid comparison of ell/m_closed against generic LCS length and multiplicity.

    ``count`` is the number of mismatching cells; every row carries its
    regime so the region where the closed forms fail can be read off.
    """
    if a_max < 0 or b_max < 0:
        raise InputError("grid bounds must be nonnegative")
    require(a_max + b_max <= 80, "closed-form grid limited to a_max + b_max <= 80")
    started = time.perf_counter()
    rows = []
    for a in range(a_max + 1):
        for b in range(0, b_max + 1, 2):
            u, v = family_pair(a, b)
            length = lcs_len(u, v)
            mult = lcs_set(u, v).count
            assert mult == count_lcs(u, v)
            e, m = ell(a, b), m_closed(a, b)
            rows.append({"a": a, "b": b, "regime": regime(a, b),
                         "ell_closed": e, "ell_bruteforce": length,
                         "m_closed": m, "m_bruteforce": mult,
                         "match": e == length and m == mult})
    mismatches = [r for r in rows if not r["match"]]
    return CensusReport({"a_max": a_max, "b_max": b_max}, len(mismatches), None,
                        _parallel.elapsed_ms(started),
                        {"rows": rows, "mismatch_cells": [(r["a"], r["b"]) for r in mismatches]})
