"""tom Dieck, Witt and ghost coordinates on ``W(ZZ)`` and the maps between them.

Both coordinate systems map injectively to ghost coordinates:

    sum_{d | n} d b_d = w_n = sum_{d | n} d a_d^(n/d)

Conversions go through ghosts, with integrality checked at the end.  Going
from tom Dieck to Witt coordinates (or back) can never fail over ZZ; if it
does, that is reported as an :class:`IntegralityViolation`.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import IntegralityViolation, NotIntegral
from .poly import Poly
from .rings import ZZ
from .witt import GhostVector, TruncationSet, WittVector, divisors, ghost, ghost_to_witt


class TomDieckVector:
    """Integer tom Dieck coordinates ``b_1..b_N``."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        if not coords:
            raise ValueError("need at least one coordinate")
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in coords):
            raise TypeError("tom Dieck coordinates are integers")
        self.coords = coords

    @property
    def order(self):
        return len(self.coords)

    @property
    def trunc(self):
        return TruncationSet.interval(len(self.coords))

    def __getitem__(self, n):
        return self.coords[n - 1]

    def __eq__(self, other):
        return isinstance(other, TomDieckVector) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def to_json(self):
        return {"trunc": self.trunc.to_json(), "coords": {str(n): str(c) for n, c in enumerate(self.coords, 1)}}

    def __repr__(self):
        return f"TomDieckVector{self.coords}"


def _int_list(v):
    return [x.value for x in v.values()]


def tomdieck_to_ghost(b):
    """``w_n = sum_{d | n} d b_d``."""
    N = b.order
    return GhostVector(ZZ, b.trunc, [sum(d * b[d] for d in divisors(n)) for n in range(1, N + 1)])


def ghost_to_tomdieck(w):
    """Triangular inversion ``b_n = (w_n - sum_{d|n, d<n} d b_d) / n``; :class:`NotIntegral` on failure."""
    if w.ring != ZZ or w.trunc.kind != "interval":
        raise ValueError("tom Dieck coordinates are integer vectors on an interval")
    b = []
    for n in range(1, w.trunc.n + 1):
        rest = w[n].value - sum(d * b[d - 1] for d in divisors(n)[:-1])
        q, r = divmod(rest, n)
        if r:
            raise NotIntegral(n, f"ghost vector is not in the tom Dieck image: {n} does not divide {rest}")
        b.append(q)
    return TomDieckVector(b)


def tomdieck_to_witt(b):
    try:
        return ghost_to_witt(tomdieck_to_ghost(b))
    except NotIntegral as e:
        raise IntegralityViolation(f"tom Dieck -> Witt produced a non-integral coordinate at {e.n}") from e


def witt_to_tomdieck(a):
    if a.ring != ZZ:
        raise ValueError("tom Dieck coordinates are defined over ZZ")
    try:
        return ghost_to_tomdieck(ghost(a))
    except NotIntegral as e:
        raise IntegralityViolation(f"Witt -> tom Dieck produced a non-integral coordinate at {e.n}") from e


def convert(vec, source, target):
    """Convert a coordinate vector between ``tomdieck``, ``witt`` and ``ghost`` systems."""
    if source == "tomdieck":
        g = tomdieck_to_ghost(vec)
    elif source == "witt":
        g = ghost(vec)
    elif source == "ghost":
        g = vec
    else:
        raise ValueError(f"unknown coordinate system {source!r}")
    if target == "ghost":
        return g
    if target == "tomdieck":
        return witt_to_tomdieck(vec) if source == "witt" else ghost_to_tomdieck(g)
    if target == "witt":
        return tomdieck_to_witt(vec) if source == "tomdieck" else ghost_to_witt(g)
    raise ValueError(f"unknown coordinate system {target!r}")


# -- change-of-coordinate polynomials -------------------------------------------

@dataclass(frozen=True)
class CoordinateChangePolys:
    """``a_polys[n]`` is ``a_n`` in QQ[b_1..b_max_n]; ``b_polys[n]`` is ``b_n`` in QQ[a_1..a_max_n]."""

    max_n: int
    a_polys: tuple
    b_polys: tuple

    def a_names(self):
        return [f"a{i}" for i in range(1, self.max_n + 1)]

    def b_names(self):
        return [f"b{i}" for i in range(1, self.max_n + 1)]

    def lines(self):
        out = []
        for n in range(1, self.max_n + 1):
            out.append(f"a{n} = {self.a_polys[n].to_str(self.b_names())}")
        for n in range(1, self.max_n + 1):
            out.append(f"b{n} = {self.b_polys[n].to_str(self.a_names())}")
        return out


def coordinate_change_polys(max_n):
    """Derive ``a_n(b)`` and ``b_n(a)`` symbolically by running both conversions in QQ[...]."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    var = lambda d: Poly.variable(max_n, d - 1)  # noqa: E731
    a = {}
    b = {}
    for n in range(1, max_n + 1):
        divs = divisors(n)
        # tom Dieck -> Witt: n a_n = sum_{d|n} d b_d - sum_{d|n,d<n} d a_d^(n/d)
        rest = Poly(max_n)
        for d in divs:
            rest = rest + var(d) * d
        for d in divs[:-1]:
            rest = rest - (a[d] ** (n // d)) * d
        a[n] = rest.scale_div(n)
        # Witt -> tom Dieck: n b_n = sum_{d|n} d a_d^(n/d) - sum_{d|n,d<n} d b_d
        rest = Poly(max_n)
        for d in divs:
            rest = rest + (var(d) ** (n // d)) * d
        for d in divs[:-1]:
            rest = rest - b[d] * d
        b[n] = rest.scale_div(n)
    pick = lambda t: (None,) + tuple(t[n] for n in range(1, max_n + 1))  # noqa: E731
    return CoordinateChangePolys(max_n, pick(a), pick(b))


def common_denominator(p):
    return lcm(*(Fraction(c).denominator for _, c in p.terms)) if p.terms else 1


def integer_valued_on_box(p, lo=-3, hi=3):
    """Whether ``p`` takes integer values at every integer point of ``[lo, hi]`` in the variables it uses.

    Works modulo the common denominator ``D``: ``p(x)`` is an integer iff
    ``D p(x) = 0 mod D``.  Returns ``(ok, first_bad_point_or_None)``.
    """
    import numpy as np

    D = common_denominator(p)
    if D == 1:
        return True, None
    used = p.variables_used()
    grid = np.arange(lo, hi + 1, dtype=np.int64) % D
    k = len(used)
    mesh = np.meshgrid(*([grid] * k), indexing="ij") if k else []
    cols = {v: m.ravel() for v, m in zip(used, mesh)}
    size = len(grid) ** k
    # D * p has integer coefficients; reduce them mod D as well
    total = np.zeros(size, dtype=np.int64)
    pow_cache = {}
    for e, c in p.terms:
        c_int = int(Fraction(c) * D) % D
        if not c_int:
            continue
        term = np.full(size, c_int, dtype=np.int64)
        for v in used:
            if e[v]:
                key = (v, e[v])
                if key not in pow_cache:
                    acc = np.ones(size, dtype=np.int64)
                    for _ in range(e[v]):
                        acc = (acc * cols[v]) % D
                    pow_cache[key] = acc
                term = (term * pow_cache[key]) % D
        total = (total + term) % D
    bad = np.nonzero(total)[0]
    if len(bad):
        idx = np.unravel_index(bad[0], (len(grid),) * k)
        point = {f"x{v + 1}": lo + int(i) for v, i in zip(used, idx)}
        return False, point
    return True, None


def witt_from_ints(values):
    a = list(values)
    return WittVector(ZZ, TruncationSet.interval(len(a)), a)
