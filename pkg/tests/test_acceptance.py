"""Acceptance criteria, each run at its stated scale and tolerance.

Every test records one PASS/FAIL line (shown in the run summary) before
asserting, so a failing criterion still reports what was measured.
"""

from __future__ import annotations

import contextlib
import io
import math
import time
from collections import defaultdict

import numpy as np
import pytest

from delcode.cli import run_command
from delcode.codes import greedy_code, is_maximal, is_valid_code, unique_scs_census, vt_code, vt_sizes
from delcode.editops import verify_isolation_lemma
from delcode.errors import ResourceGuardError
from delcode.extremal import verify_closed_forms, verify_extremal
from delcode.graph import (
    DeletionGraph, distance_matrix, graph_stats, triangle_census, triangle_census_trace,
    triangle_reference,
)
from delcode.lcsscs import (
    count_scs, is_subsequence, lcs_len, lcs_set, mcs_set, phi, phi_invert, scs_len,
)
from delcode.word import Word

import oracles
from acceptance_log import record

MAX_LEN = 8


@pytest.fixture(scope="module")
def pairs() -> list[tuple[Word, Word]]:
    ws = [Word(t) for t in oracles.words_upto(MAX_LEN)]
    return [(u, v) for u in ws for v in ws]


@pytest.fixture(scope="module")
def multiplicities(pairs):
    """m_LCS, m_SCS and the phi checks for every pair; shared by criteria 2 and 3."""
    started = time.perf_counter()
    rows = []
    phi_failures = []
    for u, v in pairs:
        lcs = lcs_set(u, v)
        m_scs = count_scs(u, v)
        target = scs_len(u, v)
        images = set()
        for w in lcs.strings:
            y = phi(u, v, w)
            in_scs = len(y) == target and is_subsequence(u, y) and is_subsequence(v, y)
            if not in_scs or y in images or phi_invert(u, v, y) != w:
                phi_failures.append((u.text, v.text, w.text))
            images.add(y)
        rows.append((u, v, target, lcs.count, m_scs))
    return rows, phi_failures, time.perf_counter() - started


def test_criterion_1_duality(pairs):
    started = time.perf_counter()
    bad = [(u.text, v.text) for u, v in pairs
           if lcs_len(u, v) + oracles.scs_len_dp(u.text, v.text) != len(u) + len(v)]
    elapsed = time.perf_counter() - started
    ok = not bad and elapsed < 120
    record(1, ok, f"{len(pairs)} pairs with |u|,|v| <= {MAX_LEN}, {len(bad)} violations, "
                  f"{elapsed:.1f}s (limit 120s)")
    assert ok, bad[:5]


def test_criterion_2_lcs_at_most_scs(multiplicities):
    rows, phi_failures, elapsed = multiplicities
    violations = [(u.text, v.text) for u, v, _, m_lcs, m_scs in rows if m_lcs > m_scs]
    ok = not violations and not phi_failures and elapsed < 600
    record(2, ok, f"{len(rows)} pairs, {len(violations)} with m_LCS > m_SCS, "
                  f"{len(phi_failures)} phi failures (injective, into SCS set, inverted), "
                  f"{elapsed:.1f}s (limit 600s)")
    assert ok, (violations[:5], phi_failures[:5])


def test_criterion_3_binomial_bound(multiplicities):
    rows, _, _ = multiplicities
    violations = []
    best_lcs: dict[tuple[int, int], int] = defaultdict(int)
    best_scs: dict[tuple[int, int], int] = defaultdict(int)
    for u, v, n, m_lcs, m_scs in rows:
        a, b = n - len(u), n - len(v)
        bound = math.comb(a + b, a)
        if m_lcs > bound or m_scs > bound:
            violations.append((u.text, v.text))
        best_lcs[a, b] = max(best_lcs[a, b], m_lcs)
        best_scs[a, b] = max(best_scs[a, b], m_scs)
    small = [(a, b) for a in range(5) for b in range(5) if a + b <= 4]
    scs_tight = [ab for ab in small if best_scs[ab] == math.comb(sum(ab), ab[0])]
    lcs_tight = [ab for ab in small if best_lcs[ab] == math.comb(sum(ab), ab[0])]
    ok = not violations and len(scs_tight) == len(small) and len(lcs_tight) == len(small)
    record(3, ok, f"{len(violations)} bound violations; equality attained for "
                  f"{len(scs_tight)}/{len(small)} (a,b) with a+b <= 4 by m_SCS and "
                  f"{len(lcs_tight)}/{len(small)} by m_LCS")
    assert ok, (violations[:5], sorted(set(small) - set(lcs_tight)))


def test_criterion_4_minimal_supersequences(pairs):
    started = time.perf_counter()
    over_bound = []
    scs_missing = []
    for u, v in pairs:
        mcs = mcs_set(u, v)
        n = scs_len(u, v)
        a, b = n - len(u), n - len(v)
        if mcs.count > math.comb(a + b, a):
            over_bound.append((u.text, v.text, mcs.count, math.comb(a + b, a)))
        # every SCS is minimal: the shortest members must number m_SCS exactly
        if sum(len(y) == n for y in mcs.strings) != count_scs(u, v):
            scs_missing.append((u.text, v.text))
    elapsed = time.perf_counter() - started
    example = sorted(w.text for w in mcs_set(Word("1000"), Word("0001")).strings)
    expected = ["0001000", "10001"]
    ok = not over_bound and not scs_missing and example == expected
    worst = max(over_bound, key=lambda t: t[2] / t[3], default=None)
    record(4, ok, f"{len(over_bound)} of {len(pairs)} pairs exceed C(a+b,a) "
                  f"(worst {worst}); scs_set within mcs_set for all but {len(scs_missing)}; "
                  f"mcs_set(1000,0001) = {example}, expected {expected}; {elapsed:.1f}s")
    assert ok


def test_criterion_5_extremal_family():
    started = time.perf_counter()
    report = verify_extremal(4)
    elapsed = time.perf_counter() - started
    rows = report.details["rows"]
    ok = (report.count == 0 and [r["m_lcs"] for r in rows] == [2, 6, 20, 70]
          and [r["distance"] for r in rows] == [1, 2, 3, 4] and elapsed < 60)
    record(5, ok, f"c=1..4: d = {[r['distance'] for r in rows]}, "
                  f"m_LCS = {[r['m_lcs'] for r in rows]}, {elapsed:.1f}s (limit 60s)")
    assert ok


def test_criterion_6_closed_forms():
    started = time.perf_counter()
    report = verify_closed_forms(20, 20)
    elapsed = time.perf_counter() - started
    rows = report.details["rows"]
    mismatched = [r for r in rows if not r["match"]]
    claimed = [(r["a"], r["b"]) for r in mismatched
               if r["regime"] == "middle" and r["a"] >= 1 and r["b"] >= 4]
    by_regime = defaultdict(int)
    for r in mismatched:
        by_regime[r["regime"]] += 1
    ell_bad = sum(r["ell_closed"] != r["ell_bruteforce"] for r in rows)
    ok = not claimed and elapsed < 60
    record(6, ok, f"{len(rows)} cells, {len(mismatched)} mismatches "
                  f"(by regime {dict(by_regime)}, ell mismatches {ell_bad}); "
                  f"{len(claimed)} in the middle regime with a >= 1, b >= 4; {elapsed:.1f}s")
    assert ok, claimed[:10]


def test_criterion_7_isolation_lemma():
    results = []
    for n, k, lam in [(40, 1, 3), (40, 2, 3), (60, 2, 4)]:
        try:
            report = verify_isolation_lemma(n, k, lam, 500, rng_seed=0)
            results.append(((n, k, lam), report.count, report.details["tested"], None))
        except ResourceGuardError as exc:
            results.append(((n, k, lam), None, 0, str(exc)))
    ok = all(count == 0 and tested >= 500 for _, count, tested, _ in results)
    detail = "; ".join(f"{p}: " + (f"{c} counterexamples in {t} trials" if err is None else f"refused ({err})")
                       for p, c, t, err in results)
    record(7, ok, detail)
    assert ok


def test_isolation_lemma_feasible_parameters():
    # supplementary runs where the lemma's hypotheses can actually be met
    for n, k, lam in [(80, 1, 9), (140, 2, 11)]:
        report = verify_isolation_lemma(n, k, lam, 500, rng_seed=0)
        assert report.count == 0
        assert report.details["tested"] == 500


def test_criterion_8_graph_censuses():
    started = time.perf_counter()
    s = graph_stats(DeletionGraph(2, 1))
    small_ok = (s.N, s.max_degree, s.triangle_count) == (4, 3, 2)
    counts, agree = {}, True
    for n in range(8, 14):
        g = DeletionGraph(n, 1)
        counts[n] = triangle_census(g)
        agree &= counts[n] == triangle_census_trace(g)
    D = distance_matrix(8)
    A = ((D <= 1) & ~np.eye(256, dtype=bool)).astype(np.int64)
    ordered = int(np.einsum("ij,jk,ki->", A, A, A))
    agree &= ordered % 6 == 0 and ordered // 6 == counts[8]
    ratios = [counts[n] / triangle_reference(n, 1) for n in counts]
    band = max(ratios) / min(ratios)
    elapsed = time.perf_counter() - started
    ok = small_ok and agree and band < 10 and elapsed < 1800
    record(8, ok, f"Gamma_2,1 (N, Delta, T) = {(s.N, s.max_degree, s.triangle_count)}; "
                  f"T(n=8..13) = {list(counts.values())}, routes agree: {agree}; "
                  f"ratio {min(ratios):.4f}..{max(ratios):.4f} (band {band:.2f} < 10); {elapsed:.1f}s")
    assert ok


def test_criterion_9_codes():
    started = time.perf_counter()
    vt_bad, vt_small = [], []
    for n in range(1, 15):
        for r in range(n + 1):
            if not is_valid_code(vt_code(n, r)):
                vt_bad.append((n, r))
        if max(vt_sizes(n)) < 2**n / (n + 1):
            vt_small.append(n)
    greedy_bad = []
    sizes = []
    for n in range(2, 13):
        code = greedy_code(n, 2)
        sizes.append(len(code))
        if not (is_valid_code(code) and is_maximal(code)):
            greedy_bad.append(n)
    elapsed = time.perf_counter() - started
    ok = not vt_bad and not vt_small and not greedy_bad and elapsed < 1200
    record(9, ok, f"VT n<=14 invalid: {vt_bad}, below 2^n/(n+1): {vt_small}; "
                  f"greedy k=2 n=2..12 sizes {sizes}, failing: {greedy_bad}; {elapsed:.1f}s")
    assert ok


def test_criterion_10_unique_scs_census():
    started = time.perf_counter()
    ratios, counts = [], []
    for n in range(6, 12):
        report = unique_scs_census(n, 1)
        counts.append(report.count)
        ratios.append(report.count / report.reference_value)
    elapsed = time.perf_counter() - started
    band = max(ratios) / min(ratios)
    ok = band < 10 and elapsed < 1200
    record(10, ok, f"k=1, n=6..11 counts {counts}, ratio {min(ratios):.3f}..{max(ratios):.3f} "
                   f"(band {band:.2f} < 10); {elapsed:.1f}s")
    assert ok


_DETERMINISM_RUNS = [
    ["script", "verify-isolation", "--n", "40", "--k", "1", "--lam", "3", "--trials", "500"],
    ["script", "verify-isolation", "--n", "80", "--k", "1", "--lam", "9", "--trials", "500"],
    ["experiment", "triangles", "--n-range", "8..13"],
    ["graph", "stats", "--n", "10", "--k", "1"],
    ["code", "vt", "--n", "14", "--residue", "0"],
    ["code", "greedy", "--n", "12", "--k", "2"],
    ["experiment", "code-sizes", "--n-range", "2..12", "--k", "2"],
    ["experiment", "unique-scs", "--n-range", "6..11"],
]


def _capture(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = run_command(argv)
    return code, buf.getvalue()


def test_criterion_11_determinism():
    differing = []
    for argv in _DETERMINISM_RUNS:
        one = _capture(argv + ["--threads", "1"])
        eight = _capture(argv + ["--threads", "8"])
        if one != eight:
            differing.append(" ".join(argv))
    ok = not differing
    record(11, ok, f"{len(_DETERMINISM_RUNS)} CLI runs covering criteria 7-10, "
                   f"--threads 1 vs 8 stdout and exit status differ for: {differing or 'none'}")
    assert ok
