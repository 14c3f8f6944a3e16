import random
from fractions import Fraction

import pytest

from witt_trace.endo import (
    MatrixEndo,
    almkvist_degree_ok,
    block_triangular,
    change_ring,
    char_series,
    endo_direct_sum,
    is_zero_section,
    iterate_traces,
    tr_trace,
    trace,
    twisted_iterate,
)
from witt_trace.linalg import Matrix
from witt_trace.rings import QQ, ZZ, IntegersMod
from witt_trace.series import TruncatedSeries, from_ghost_sum, neg_log_derivative
from witt_trace.witt import TruncationSet, WittVector, ghost, witt_to_series


def M(rows, ring=ZZ):
    return Matrix(ring, rows)


def ints(values):
    return [v.value for v in values]


def power_traces(a, N):
    out, p = [], a
    for _ in range(N):
        out.append(sum(p[i][i] for i in range(len(a))))
        p = [[sum(p[i][k] * a[k][j] for k in range(len(a))) for j in range(len(a))] for i in range(len(a))]
    return out


def random_matrix(rng, k=None, bound=4):
    k = k or rng.randint(1, 5)
    return [[rng.randint(-bound, bound) for _ in range(k)] for _ in range(k)]


def random_unimodular(rng, k):
    """A product of elementary matrices together with its inverse."""
    u = [[int(i == j) for j in range(k)] for i in range(k)]
    inv = [row[:] for row in u]
    for _ in range(3 * k):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if i == j:
            break
        c = rng.randint(-2, 2)
        # u <- E u with E = I + c e_ij, inv <- inv E^-1
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
        for row in inv:
            row[j] -= c * row[i]
    return u, inv


def test_trace_examples():
    assert trace(M([[2]])) == ZZ(2)
    assert trace(Matrix.identity(ZZ, 4)) == ZZ(4)
    assert trace(M([[0, 1], [1, 0]])) == ZZ(0)


def test_iterate_traces_examples():
    assert ints(iterate_traces(M([[2]]), 4)) == [2, 4, 8, 16]
    assert ints(iterate_traces(M([[0, 1], [1, 0]]), 4)) == [0, 2, 0, 2]
    assert ints(iterate_traces(Matrix.identity(ZZ, 3), 3)) == [3, 3, 3]


def test_char_series_examples():
    assert char_series(M([[2]]), 4) == TruncatedSeries(ZZ, [1, -2], 4)
    assert char_series(M([[0, 1], [1, 0]]), 4) == TruncatedSeries(ZZ, [1, 0, -1], 4)
    assert char_series(Matrix.zeros(ZZ, 3), 4) == TruncatedSeries.one(ZZ, 4)


def test_tr_trace_examples():
    w = tr_trace(M([[2]]), 4)
    # det(1 - 2t) = 1 - 2t is one factor (1 - a_1 t): a = (2, 0, 0, 0)
    assert ints(w.values()) == [2, 0, 0, 0]
    assert ints(ghost(w).values()) == [2, 4, 8, 16]
    assert tr_trace(Matrix.zeros(ZZ, 2), 4) == WittVector.zero(ZZ, TruncationSet.interval(4))
    assert ints(tr_trace(M([[1]]), 4).values()) == [1, 0, 0, 0]


def test_trace_triangle_and_log_derivative():
    rng = random.Random(14)
    for _ in range(200):
        a = random_matrix(rng)
        f = M(a)
        want = power_traces(a, 12)
        assert ints(ghost(tr_trace(f, 12)).values()) == want
        assert ints(iterate_traces(f, 12)) == want
        assert neg_log_derivative(char_series(f, 12)) == from_ghost_sum([ZZ(v) for v in want], ZZ, 12)


def test_additivity_block_triangular():
    rng = random.Random(15)
    for _ in range(100):
        f, g = M(random_matrix(rng, rng.randint(1, 3))), M(random_matrix(rng, rng.randint(1, 3)))
        c = M([[rng.randint(-3, 3) for _ in range(g.nrows)] for _ in range(f.nrows)])
        h = block_triangular(f, c, g)
        assert char_series(h) == char_series(f) * char_series(g)
        assert char_series(h) == char_series(endo_direct_sum(f, g))
        assert tr_trace(h) == tr_trace(f) + tr_trace(g)


def test_similarity_invariance():
    rng = random.Random(16)
    for _ in range(100):
        k = rng.randint(1, 4)
        a = random_matrix(rng, k)
        u, inv = random_unimodular(rng, k)
        U, Uinv = M(u), M(inv)
        assert U @ Uinv == Matrix.identity(ZZ, k)
        assert char_series(U @ M(a) @ Uinv) == char_series(M(a))


def test_almkvist_degree_bound():
    rng = random.Random(17)
    for _ in range(100):
        a = random_matrix(rng)
        assert almkvist_degree_ok(M(a))
        assert witt_to_series(tr_trace(M(a))).degree() <= len(a)


def test_nilpotent_classes_vanish():
    n = M([[0, 1, 5], [0, 0, 2], [0, 0, 0]])
    assert is_zero_section(n)
    assert tr_trace(n) == WittVector.zero(ZZ, TruncationSet.interval(12))
    assert not is_zero_section(M([[1]]))


def test_naturality_under_reduction():
    rng = random.Random(18)
    for m in (2, 6, 12):
        Zm = IntegersMod(m)
        for _ in range(30):
            f = M(random_matrix(rng))
            assert tr_trace(change_ring(f, Zm)) == tr_trace(f).change_ring(Zm)


def test_rational_and_modular_inputs():
    half = M([[Fraction(1, 2)]], QQ)
    w = tr_trace(half, 3)
    assert w[1] == QQ(Fraction(1, 2)) and w[2] == QQ(0)
    assert ints(tr_trace(M([[3]], IntegersMod(6)), 3).values()) == [3, 0, 0]


def test_twisted_iterate_convention():
    # the identity twist reduces to ordinary powers; genuine twists are
    # exercised over group rings in test_hh0
    f = MatrixEndo(M([[1, 2], [3, 4]]), lambda v: v)
    assert twisted_iterate(f, 2) == M([[1, 2], [3, 4]]) ** 2
    assert ints(iterate_traces(f, 3)) == power_traces([[1, 2], [3, 4]], 3)
    with pytest.raises(ValueError):
        char_series(f)
    with pytest.raises(ValueError):
        MatrixEndo(M([[1, 2]]))
