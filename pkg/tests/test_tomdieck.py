import random
from fractions import Fraction

import pytest

from witt_trace.errors import NotIntegral
from witt_trace.poly import Poly
from witt_trace.rings import ZZ
from witt_trace.tomdieck import (
    TomDieckVector,
    convert,
    coordinate_change_polys,
    ghost_to_tomdieck,
    integer_valued_on_box,
    tomdieck_to_ghost,
    tomdieck_to_witt,
    witt_from_ints,
    witt_to_tomdieck,
)
from witt_trace.witt import GhostVector, TruncationSet, ghost, ghost_to_witt


def G(coords):
    return GhostVector(ZZ, TruncationSet.interval(len(coords)), coords)


def B(*coords):
    return TomDieckVector(coords)


def test_tomdieck_to_ghost_examples():
    assert tomdieck_to_ghost(B(1, 0, 0, 0)) == G([1, 1, 1, 1])
    assert tomdieck_to_ghost(B(0, 1, 0, 0)) == G([0, 2, 0, 2])
    assert tomdieck_to_ghost(B(0, 0, 0)) == G([0, 0, 0])


def test_ghost_to_tomdieck_examples():
    assert ghost_to_tomdieck(G([1, 1, 1, 1])) == B(1, 0, 0, 0)
    assert ghost_to_tomdieck(G([2, 4, 8, 16])) == B(2, 1, 2, 3)
    with pytest.raises(NotIntegral) as info:
        ghost_to_tomdieck(G([0, 1, 0, 0]))
    assert info.value.n == 2


def test_tomdieck_to_witt_examples():
    assert tomdieck_to_witt(B(1, 0, 0, 0)) == witt_from_ints([1, 0, 0, 0])
    assert tomdieck_to_witt(B(2, 1, 2, 3)) == witt_from_ints([2, 0, 0, 0])


def test_round_trips_and_surjectivity():
    rng = random.Random(40)
    for _ in range(300):
        b = TomDieckVector([rng.randint(-10, 10) for _ in range(12)])
        a = witt_from_ints([rng.randint(-10, 10) for _ in range(12)])
        assert witt_to_tomdieck(tomdieck_to_witt(b)) == b
        assert tomdieck_to_witt(witt_to_tomdieck(a)) == a
        assert ghost_to_tomdieck(tomdieck_to_ghost(b)) == b
        assert ghost(tomdieck_to_witt(b)) == tomdieck_to_ghost(b)


def test_convert_dispatch():
    b = B(2, 1, 2, 3)
    w = G([2, 4, 8, 16])
    a = witt_from_ints([2, 0, 0, 0])
    assert convert(b, "tomdieck", "ghost") == w
    assert convert(w, "ghost", "tomdieck") == b
    assert convert(a, "witt", "tomdieck") == b
    assert convert(w, "ghost", "witt") == a
    with pytest.raises(ValueError):
        convert(b, "tomdieck", "lambda")


def names(n):
    return [f"b{i}" for i in range(1, n + 1)], [f"a{i}" for i in range(1, n + 1)]


def test_low_degree_polynomials():
    C = coordinate_change_polys(3)
    b = [None] + [Poly.variable(3, i) for i in range(3)]
    a = b
    half, third = Fraction(1, 2), Fraction(1, 3)
    assert C.a_polys[1] == b[1]
    assert C.a_polys[2] == b[2] - (b[1] ** 2 - b[1]) * half
    assert C.b_polys[2] == a[2] + (a[1] ** 2 - a[1]) * half
    assert C.b_polys[3] == a[3] + (a[1] ** 3 - a[1]) * third
    # the displayed a_3 needs (b1^3 - b1)/3 in place of (b1^3 - b1^3)/3
    assert C.a_polys[3] == b[3] - (b[1] ** 3 - b[1]) * third


def test_a4_is_the_derived_polynomial():
    C = coordinate_change_polys(4)
    b1, b2, b3, b4 = (Poly.variable(4, i) for i in range(4))
    q = Fraction(1, 4)
    derived = b4 + (b2 * 2 - b2 ** 2 * 2 + b1 ** 2 * b2 * 2 - b1 * b2 * 2 - b1 ** 4 * Fraction(3, 2)
                    + b1 ** 3 - b1 ** 2 * Fraction(1, 2) + b1) * q
    assert C.a_polys[4] == derived
    # spot value: b = (0, 1, 0, 0) has ghost (0, 2, 0, 2), Witt coordinates (0, 1, 0, 0)
    assert C.a_polys[4].evaluate([0, 1, 0, 0]) == 0
    assert tomdieck_to_witt(B(0, 1, 0, 0)) == witt_from_ints([0, 1, 0, 0])


def test_polynomials_reproduce_conversions():
    C = coordinate_change_polys(6)
    rng = random.Random(41)
    for _ in range(50):
        b = [rng.randint(-5, 5) for _ in range(6)]
        a = [v.value for v in tomdieck_to_witt(TomDieckVector(b)).values()]
        assert [C.a_polys[n].evaluate(b) for n in range(1, 7)] == a
        assert [C.b_polys[n].evaluate(a) for n in range(1, 7)] == b


def test_integer_valued_on_box():
    C = coordinate_change_polys(8)
    for n in range(1, 9):
        assert integer_valued_on_box(C.a_polys[n])[0]
        assert integer_valued_on_box(C.b_polys[n])[0]
    x = Poly.variable(1, 0)
    ok, point = integer_valued_on_box(x * x * Fraction(1, 2))
    assert not ok and point == {"x1": -3}
    assert integer_valued_on_box((x * x + x) * Fraction(1, 2))[0]


def test_lines_are_readable():
    lines = coordinate_change_polys(2).lines()
    assert lines[0] == "a1 = b1"
    assert lines[1] == "a2 = -1/2*b1^2 + 1/2*b1 + b2"


def test_ghost_injectivity_over_integers():
    rng = random.Random(42)
    seen = {}
    for _ in range(300):
        b = tuple(rng.randint(-2, 2) for _ in range(5))
        w = tomdieck_to_ghost(TomDieckVector(b))
        assert seen.setdefault(w, b) == b
    assert ghost_to_witt(tomdieck_to_ghost(B(3, 0, 0))) == witt_from_ints([3, -3, -8])
