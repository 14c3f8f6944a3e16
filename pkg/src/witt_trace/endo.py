"""Matrix endomorphisms, traces of iterates and the characteristic-polynomial trace.

For an endomorphism ``f`` of ``A^k`` the TR-trace class of ``[f]`` is the
Witt vector whose power series is ``det(1 - t f)``; its ghost coordinates
are ``(tr f, tr f^2, tr f^3, ...)``.  :func:`tr_trace` computes the Witt
vector through the series (no division), which is valid over every
supported ring.

Twisted endomorphisms ``f: P -> M (x) P`` with ``M = A_phi`` iterate as

    f^(phi, n) = phi^(n-1)(f) * ... * phi(f) * f

e.g. ``f^(phi, 2) = phi(f) @ f``.  Their traces live in twisted HH_0 and
are classed by :mod:`witt_trace.hh0`.
"""
from dataclasses import dataclass
from typing import Callable, Optional

from .linalg import Matrix, berkowitz_char_poly, block_matrix, direct_sum
from .rings import reduction_map
from .series import DEFAULT_ORDER, TruncatedSeries
from .witt import TruncationSet, WittVector, series_to_witt, witt_to_series


@dataclass(frozen=True)
class MatrixEndo:
    matrix: Matrix
    twist: Optional[Callable] = None

    def __post_init__(self):
        if not self.matrix.is_square():
            raise ValueError(f"endomorphism matrix must be square, got {self.matrix.shape}")

    @property
    def ring(self):
        return self.matrix.ring

    @property
    def size(self):
        return self.matrix.nrows

    def is_twisted(self):
        return self.twist is not None


def as_endo(f):
    return f if isinstance(f, MatrixEndo) else MatrixEndo(f)


def _untwisted(f, what):
    f = as_endo(f)
    if f.is_twisted():
        raise ValueError(f"{what} is only defined for untwisted endomorphisms; use witt_trace.hh0 for twisted ones")
    return f


def trace(f):
    """Sum of the diagonal entries."""
    return _untwisted(f, "trace").matrix.trace()


def twisted_iterate(f, n):
    """The ``n``-fold iterate ``phi^(n-1)(f) @ ... @ phi(f) @ f`` (plain power when untwisted)."""
    f = as_endo(f)
    if n < 1:
        raise ValueError("iterates start at n = 1")
    m = f.matrix
    if not f.is_twisted():
        return m ** n
    result = m
    shifted = m
    for _ in range(n - 1):
        shifted = shifted.map(f.twist)
        result = shifted @ result
    return result


def iterate_traces(f, N=DEFAULT_ORDER):
    """``(tr f, tr f^2, ..., tr f^N)``.

    For twisted ``f`` these are the diagonal sums of the twisted iterates;
    their classes in the ``phi^n``-twisted HH_0 are what
    :func:`witt_trace.hh0.reidemeister_series` reports.
    """
    f = as_endo(f)
    out = []
    if not f.is_twisted():
        p = f.matrix
        for _ in range(N):
            out.append(p.trace())
            p = p @ f.matrix
        return out
    for n in range(1, N + 1):
        out.append(twisted_iterate(f, n).trace())
    return out


def char_poly(f):
    """Coefficients of ``det(lambda I - f)``, leading coefficient first."""
    return berkowitz_char_poly(_untwisted(f, "char_poly").matrix)


def char_series(f, N=DEFAULT_ORDER):
    """``det(1 - t f)`` as a unit series mod ``t^(N+1)``.

    ``det(1 - t f) = t^k det(t^-1 - f)``, so its coefficients are those of
    the characteristic polynomial read from the top: ``1 + c_1 t + ... + c_k t^k``.
    """
    f = _untwisted(f, "char_series")
    return TruncatedSeries(f.ring, berkowitz_char_poly(f.matrix), N)


def tr_trace(f, N=DEFAULT_ORDER):
    """The TR-trace of ``[f]`` in Witt coordinates on ``{1..N}``."""
    return series_to_witt(char_series(f, N))


def reduced_class(f, N=DEFAULT_ORDER):
    """Image of ``[f]`` in reduced K_0 of endomorphisms, i.e. ``det(1 - t f)``."""
    return char_series(f, N)


def is_zero_section(f):
    """True when ``[f]`` vanishes in reduced K_0End (``f`` nilpotent: ``det(1 - t f) = 1``)."""
    cp = char_poly(f)
    return all(c.is_zero() for c in cp[1:])


def block_triangular(f, corner, g):
    """``[[f, corner], [0, g]]``; its class is ``[f] + [g]`` (additivity)."""
    f, g = as_endo(f).matrix, as_endo(g).matrix
    return block_matrix([[f, corner], [None, g]], f.ring)


def endo_direct_sum(*fs):
    return direct_sum(*(as_endo(f).matrix for f in fs))


def change_ring(f, ring, fn=None):
    """Push ``f`` along a ring map (default: the canonical reduction)."""
    f = as_endo(f)
    fn = fn or reduction_map(f.ring, ring)
    return f.matrix.map(fn, ring)


def almkvist_degree_ok(f, N=DEFAULT_ORDER):
    """The TR-trace series is a polynomial of degree at most the matrix size."""
    f = _untwisted(f, "almkvist_degree_ok")
    return witt_to_series(tr_trace(f, N)).degree() <= f.size


def zero_trace(ring, N=DEFAULT_ORDER):
    return WittVector.zero(ring, TruncationSet.interval(N))
