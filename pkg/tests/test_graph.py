import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from delcode.errors import InputError, ResourceGuardError
from delcode.graph import (
    DeletionGraph, adjacent, bollobas_bound, degree_ceiling, degrees, distance_matrix,
    good_triple_census, good_triple_reference, graph_stats, max_degree, neighbor_table,
    neighborhood, triangle_census, triangle_census_trace, triangle_reference,
)
from delcode.limits import override
from delcode.word import Word

import oracles


def _oracle_distances(n):
    ws = oracles.words(n)
    return [[n - oracles.lcs_len_dp(x, y) for y in ws] for x in ws]


def test_gamma_2_1_by_hand():
    # 00 and 11 are the only non-adjacent pair; triangles {00,01,10}, {01,10,11}
    g = DeletionGraph(2, 1)
    stats = graph_stats(g)
    assert (stats.N, stats.max_degree, stats.triangle_count) == (4, 3, 2)
    assert not adjacent(g, Word("00"), Word("11"))
    assert adjacent(g, Word("01"), Word("10"))
    assert stats.bollobas_bound == pytest.approx(4 / 30 * (math.log2(3) - 0.5 * math.log2(0.5)))


@pytest.mark.parametrize("n,k", [(4, 1), (5, 2), (6, 1), (6, 3), (7, 2)])
def test_neighbor_table_matches_distances(n, k):
    D = np.array(_oracle_distances(n)) if n <= 6 else distance_matrix(n)
    indptr, indices = neighbor_table(n, k)
    for x in range(1 << n):
        row = indices[indptr[x]:indptr[x + 1]]
        expected = np.flatnonzero((D[x] <= k) & (np.arange(1 << n) != x))
        assert row.tolist() == expected.tolist()


def test_distance_matrix_matches_oracle():
    assert distance_matrix(5).tolist() == _oracle_distances(5)


@given(st.text(alphabet="01", min_size=3, max_size=9), st.integers(1, 2))
@settings(max_examples=60)
def test_neighborhood_matches_ball_intersection(text, k):
    g = DeletionGraph(len(text), k)
    nb = {w.text for w in neighborhood(g, Word(text))}
    ball = oracles.deletion_ball(text, k)
    expected = {y for y in oracles.words(len(text))
                if y != text and ball & oracles.deletion_ball(y, k)}
    assert nb == expected
    assert len(nb) <= degree_ceiling(len(text), k)


def test_neighborhood_rejects_wrong_length():
    with pytest.raises(InputError):
        neighborhood(DeletionGraph(4, 1), Word("101"))
    with pytest.raises(InputError):
        DeletionGraph(3, 4)


def test_neighborhood_guard():
    with override(neighborhood_max=10):
        with pytest.raises(ResourceGuardError):
            neighborhood(DeletionGraph(8, 2), Word("01011010"))


@pytest.mark.parametrize("n,k", [(3, 1), (5, 1), (6, 2), (7, 1), (8, 1)])
def test_triangles_three_ways(n, k):
    g = DeletionGraph(n, k)
    T = triangle_census(g)
    assert T == triangle_census_trace(g)
    if n <= 6:
        assert T == oracles.triangles_ordered(_oracle_distances(n), k)
    D = distance_matrix(n)
    A = ((D <= k) & ~np.eye(1 << n, dtype=bool)).astype(np.int64)
    assert T == int(np.einsum("ij,jk,ki->", A, A, A)) // 6


def test_triangle_counts_frozen():
    # computed by the neighborhood route and the trace route, which agree
    frozen = {8: 16148, 9: 46776, 10: 129760}
    for n, T in frozen.items():
        assert triangle_census(DeletionGraph(n, 1), workers=2) == T


def test_degrees():
    g = DeletionGraph(6, 1)
    D = distance_matrix(6)
    assert degrees(g).tolist() == ((D <= 1).sum(axis=1) - 1).tolist()
    assert max_degree(g) == int(degrees(g).max())


def test_triangle_guard():
    with override(triangle_ops_max=1000):
        with pytest.raises(ResourceGuardError):
            triangle_census(DeletionGraph(8, 1))


def test_good_triples_bruteforce():
    n = 4
    D = _oracle_distances(n)
    N = 1 << n
    for a, b, c in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (0, 1, 2)]:
        expected = sum(D[u][v] <= a and D[v][w] <= b and D[w][u] <= c
                       for u, v, w in itertools.product(range(N), repeat=3))
        assert good_triple_census(n, a, b, c) == expected


@pytest.mark.parametrize("abc", [(3, 2, 1), (2, 2, 1), (1, 2, 3)])
def test_good_triples_symmetry(abc):
    # relabelling the triple permutes the three bounds
    n = 6
    count = good_triple_census(n, *abc)
    for perm in itertools.permutations(abc):
        assert good_triple_census(n, *perm) == count


def test_good_triples_input_checks():
    with pytest.raises(InputError):
        good_triple_census(4, -1, 1, 1)
    with override(pair_matrix_max_n=5):
        with pytest.raises(ResourceGuardError):
            good_triple_census(12, 1, 1, 1)


def test_bollobas_formula():
    assert bollobas_bound(2**16, 3, 2) == pytest.approx(2**16 / 30 * (math.log2(3) - 0.5 * math.log2(2 / 2**16)))
    assert bollobas_bound(16, 3, 0) == bollobas_bound(16, 3, 1)
    with pytest.raises(InputError):
        bollobas_bound(0, 1, 1)


def test_reference_curves():
    assert triangle_reference(8, 1) == 2**8 * 8**3 * 3
    assert good_triple_reference(4, 2, 1, 1) == 2**4 * 4**4 * 2**0
    assert good_triple_reference(4, 2, 1, 1, log_exponent=2) == 2**4 * 4**4 * 2**2


def test_bollobas_small_value():
    # 16/30 * (log2 3 + 1.5), evaluated by hand
    assert bollobas_bound(16, 3, 2) == pytest.approx(1.64531, abs=1e-5)
