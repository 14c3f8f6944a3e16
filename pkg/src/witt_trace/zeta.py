"""Lefschetz numbers and Lefschetz zeta functions of graded endomorphisms.

Sign convention: ``zeta(t) = exp(sum_n L(g^n) t^n / n)``, hence
``-t d/dt log zeta = -sum_n L(g^n) t^n``.  The rational form is

    zeta = prod_{i odd} det(1 - t g_i) / prod_{i even} det(1 - t g_i).
"""
from dataclasses import dataclass, field

from .endo import char_series
from .linalg import Matrix
from .errors import RingMismatchError
from .rings import QQ, ZZ
from .series import DEFAULT_ORDER, TruncatedSeries, series_exp


@dataclass(frozen=True)
class GradedEndo:
    """Components ``g_0, g_1, ..., g_top`` acting in degrees ``0..top``."""

    components: tuple = field(default_factory=tuple)
    ring: object = None

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        rings = {c.ring for c in comps}
        if len(rings) > 1:
            raise RingMismatchError("graded components over different rings")
        ring = rings.pop() if rings else (self.ring or QQ)
        if ring not in (ZZ, QQ):
            raise ValueError(f"graded endomorphisms are supported over ZZ or QQ, not {ring}")
        object.__setattr__(self, "ring", ring)
        for i, c in enumerate(comps):
            if not c.is_square():
                raise ValueError(f"degree-{i} component is not square")

    @classmethod
    def from_ints(cls, blocks, ring=ZZ):
        return cls(tuple(Matrix(ring, b) for b in blocks), ring)

    @property
    def top(self):
        return len(self.components) - 1


def lefschetz_number(g, n=1):
    """``L(g^n) = sum_i (-1)^i tr(g_i^n)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    acc = g.ring.zero()
    for i, c in enumerate(g.components):
        t = (c ** n).trace() if c.nrows else g.ring.zero()
        acc = acc - t if i % 2 else acc + t
    return acc


def lefschetz_numbers(g, N=DEFAULT_ORDER):
    out = [g.ring.zero()] * N
    for i, c in enumerate(g.components):
        if not c.nrows:
            continue
        p = c
        for n in range(N):
            t = p.trace()
            out[n] = out[n] - t if i % 2 else out[n] + t
            p = p @ c
    return out


def zeta_from_lefschetz(numbers, N=None):
    """``exp(sum_n L_n t^n / n)`` over QQ from a list ``L_1, ..., L_N``."""
    numbers = list(numbers)
    N = len(numbers) if N is None else N
    coeffs = [0] + [QQ(v.value if hasattr(v, "value") else v).value / n
                    for n, v in enumerate(numbers[:N], start=1)]
    return series_exp(TruncatedSeries(QQ, coeffs, N))


def zeta_exp(g, N=DEFAULT_ORDER):
    return zeta_from_lefschetz(lefschetz_numbers(g, N), N)


def zeta_rational(g, N=DEFAULT_ORDER):
    """``(numerator, denominator)``: products of ``det(1 - t g_i)`` over odd / even ``i``."""
    num = TruncatedSeries.one(QQ, N)
    den = TruncatedSeries.one(QQ, N)
    for i, c in enumerate(g.components):
        cq = c.map(lambda v: QQ(v.value), QQ)
        s = char_series(cq, N)
        if i % 2:
            num = num * s
        else:
            den = den * s
    return num, den
