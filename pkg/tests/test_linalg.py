import random

from hypothesis import given
from hypothesis import strategies as st

from witt_trace.linalg import Matrix, berkowitz_char_poly, block_matrix, det, smith_normal_form
from witt_trace.rings import QQ, ZZ, IntegersMod, PolynomialRing


def cofactor_det(a):
    if not a:
        return 1
    if len(a) == 1:
        return a[0][0]
    total = 0
    for j, x in enumerate(a[0]):
        if x:
            minor = [row[:j] + row[j + 1:] for row in a[1:]]
            total += (-1) ** j * x * cofactor_det(minor)
    return total


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def det_of_poly_matrix(m):
    """Cofactor expansion for a matrix of integer polynomials in t (coefficient lists)."""
    if len(m) == 1:
        return m[0][0]
    total = [0]
    for j, p in enumerate(m[0]):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = poly_mul(p, det_of_poly_matrix(minor))
        sign = (-1) ** j
        total = [a + sign * b for a, b in zip(total + [0] * len(term), term + [0] * len(total))]
    return total


def det_one_minus_tf(a):
    k = len(a)
    m = [[[int(i == j), -a[i][j]] for j in range(k)] for i in range(k)]
    p = det_of_poly_matrix(m)
    p = p + [0] * (k + 1 - len(p))
    return p[:k + 1]


def test_berkowitz_against_cofactor_expansion():
    rng = random.Random(13)
    for _ in range(500):
        k = rng.randint(1, 4)
        a = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)]
        cp = [c.value for c in berkowitz_char_poly(Matrix(ZZ, a))]
        assert cp == det_one_minus_tf(a)
        assert det(Matrix(ZZ, a)).value == cofactor_det(a)


def test_berkowitz_examples():
    assert [c.value for c in berkowitz_char_poly(Matrix(ZZ, [[0, 1], [1, 0]]))] == [1, 0, -1]
    assert det(Matrix(ZZ, [[1, 2, 3], [4, 5, 6], [7, 8, 10]])) == ZZ(-3)
    assert [c.value for c in berkowitz_char_poly(Matrix(ZZ, []))] == [1]


def test_berkowitz_over_other_rings():
    Z6 = IntegersMod(6)
    a = [[2, 5], [3, 4]]
    mod = berkowitz_char_poly(Matrix(Z6, a))
    assert mod == [Z6(c.value) for c in berkowitz_char_poly(Matrix(ZZ, a))]
    R = PolynomialRing(("x",))
    x = R.gen("x")
    cp = berkowitz_char_poly(Matrix(R, [[x, R(1)], [R(0), x]]))
    assert cp == [R(1), x * -2, x * x]
    assert det(Matrix(QQ, [[1, 2], [3, 4]])) == QQ(-2)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_smith_normal_form(nrows, ncols, data):
    a = data.draw(st.lists(st.lists(st.integers(-9, 9), min_size=ncols, max_size=ncols),
                           min_size=nrows, max_size=nrows))
    m = Matrix(ZZ, a)
    U, D, V = smith_normal_form(m)
    assert U @ m @ V == D
    assert abs(det(U).value) == 1 and abs(det(V).value) == 1
    d = [D[i, i].value for i in range(min(nrows, ncols))]
    for i in range(nrows):
        for j in range(ncols):
            if i != j:
                assert D[i, j].value == 0
    assert all(x >= 0 for x in d)
    nonzero = [x for x in d if x]
    assert d[:len(nonzero)] == nonzero
    for x, y in zip(nonzero, nonzero[1:]):
        assert y % x == 0


def test_smith_examples():
    U, D, V = smith_normal_form(Matrix(ZZ, [[2, 0], [0, 3]]))
    assert D == Matrix(ZZ, [[1, 0], [0, 6]])
    _, D, _ = smith_normal_form(Matrix(ZZ, [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]))
    assert [D[i, i].value for i in range(3)] == [2, 2, 156]


def test_block_matrix_and_powers():
    f = Matrix(ZZ, [[1, 1], [0, 1]])
    assert f ** 3 == Matrix(ZZ, [[1, 3], [0, 1]])
    b = block_matrix([[f, None], [None, Matrix(ZZ, [[5]])]], ZZ)
    assert b.to_ints() == [[1, 1, 0], [0, 1, 0], [0, 0, 5]]
    assert b.trace() == ZZ(7)
