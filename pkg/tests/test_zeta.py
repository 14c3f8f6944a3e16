import random
from fractions import Fraction

import pytest

from witt_trace.errors import RingMismatchError
from witt_trace.linalg import Matrix
from witt_trace.rings import QQ, ZZ, IntegersMod
from witt_trace.series import TruncatedSeries, from_ghost_sum, neg_log_derivative
from witt_trace.zeta import GradedEndo, lefschetz_number, lefschetz_numbers, zeta_exp, zeta_rational


def S(coeffs, N=12):
    return TruncatedSeries(QQ, coeffs, N)


def graded(*blocks):
    return GradedEndo.from_ints(blocks, ZZ)


def random_graded(rng):
    blocks = []
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(0, 3)
        blocks.append([[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)])
    return GradedEndo.from_ints(blocks)


def test_lefschetz_examples():
    torus = graded([[1]], [[1, 0], [0, 1]], [[1]])
    assert lefschetz_number(torus) == 0
    g = graded([[2]])
    assert [v.value for v in lefschetz_numbers(g, 5)] == [2, 4, 8, 16, 32]
    assert lefschetz_number(graded([[0]], [[0, 0], [0, 0]]), 3) == 0


def test_zeta_exp_examples():
    assert zeta_exp(graded([[1]])) == S([1] * 13)
    assert zeta_exp(graded([[0]])) == S([1])
    assert zeta_exp(graded([[0]], [[1]])) == S([1, -1])
    assert zeta_exp(GradedEndo(())) == S([1])


def test_zeta_rational_examples():
    assert zeta_rational(graded([[1]])) == (S([1]), S([1, -1]))
    assert zeta_rational(graded([[1]], [[2]])) == (S([1, -2]), S([1, -1]))
    assert zeta_rational(graded([[0]], [[0]])) == (S([1]), S([1]))


def test_exponential_equals_rational_form():
    rng = random.Random(30)
    for _ in range(200):
        g = random_graded(rng)
        num, den = zeta_rational(g)
        assert zeta_exp(g) * den == num


def test_log_derivative_sign_convention():
    rng = random.Random(31)
    for _ in range(50):
        g = random_graded(rng)
        lef = [QQ(v.value) for v in lefschetz_numbers(g, 12)]
        minus = [-v for v in lef]
        assert neg_log_derivative(zeta_exp(g)) == from_ghost_sum(minus, QQ, 12)


def test_similarity_in_each_degree():
    rng = random.Random(32)
    u = Matrix(ZZ, [[1, 2], [0, 1]])
    uinv = Matrix(ZZ, [[1, -2], [0, 1]])
    for _ in range(30):
        g = random_graded(rng)
        comps = [u @ c @ uinv if c.nrows == 2 else c for c in g.components]
        assert zeta_exp(GradedEndo(tuple(comps), ZZ)) == zeta_exp(g)


def test_rational_components():
    g = GradedEndo((Matrix(QQ, [[Fraction(1, 2)]]),), QQ)
    assert zeta_exp(g, 3) == S([1, Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)], 3)


def test_invalid_graded_endos():
    with pytest.raises(RingMismatchError):
        GradedEndo((Matrix(ZZ, [[1]]), Matrix(QQ, [[1]])))
    with pytest.raises(ValueError):
        GradedEndo((Matrix(IntegersMod(3), [[1]]),))
    with pytest.raises(ValueError):
        GradedEndo((Matrix(ZZ, [[1, 2]]),))
    with pytest.raises(ValueError):
        lefschetz_number(graded([[1]]), 0)
