"""Truncated power series ``c_0 + c_1 t + ... + c_N t^N`` over a coefficient ring.

The unit series (constant term 1) form the group that the characteristic
polynomial trace lands in.  Everything except :func:`series_exp` and
:func:`series_log` is division-free and works over every supported ring.
"""
from fractions import Fraction

from .errors import NotDivisible, RingMismatchError
from .rings import Rationals, RingValue

DEFAULT_ORDER = 12


class TruncatedSeries:
    """A power series carried modulo ``t^(order+1)``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs, order=None):
        coeffs = [ring(c) for c in coeffs]
        if order is not None:
            if len(coeffs) > order + 1:
                coeffs = coeffs[: order + 1]
            coeffs += [ring.zero()] * (order + 1 - len(coeffs))
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, ring, order=DEFAULT_ORDER):
        return cls(ring, [1], order)

    @classmethod
    def zero(cls, ring, order=DEFAULT_ORDER):
        return cls(ring, [0], order)

    @classmethod
    def from_polynomial(cls, ring, coeffs, order=DEFAULT_ORDER):
        """Series of a polynomial given by its coefficient list (low degree first)."""
        return cls(ring, coeffs, order)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def is_unit(self):
        return self.coeffs[0] == 1

    def degree(self):
        """Largest index with a nonzero coefficient (``-1`` for the zero series)."""
        for n in range(self.order, -1, -1):
            if not self.coeffs[n].is_zero():
                return n
        return -1

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.ring != self.ring or other.order != self.order:
            raise RingMismatchError(
                f"series over {self.ring} mod t^{self.order + 1} and {other.ring} mod t^{other.order + 1}"
            )
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return TruncatedSeries(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return TruncatedSeries(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncatedSeries(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (RingValue, int)):
            return TruncatedSeries(self.ring, [a * other for a in self.coeffs])
        if self._check(other) is NotImplemented:
            return NotImplemented
        return TruncatedSeries(self.ring, _cauchy(self.coeffs, other.coeffs, self.order, self.ring.zero()))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def shift(self, k):
        """Multiply by ``t^k`` (truncating)."""
        z = self.ring.zero()
        return TruncatedSeries(self.ring, ([z] * k + list(self.coeffs))[: self.order + 1])

    def derivative(self):
        """Formal ``d/dt``; the result loses one order of precision and is zero-padded."""
        return TruncatedSeries(self.ring, [n * self.coeffs[n] for n in range(1, self.order + 1)], self.order)

    def change_ring(self, ring, fn=None):
        fn = fn or (lambda v: ring(v.value))
        return TruncatedSeries(ring, [fn(c) for c in self.coeffs])

    def truncate(self, order):
        return TruncatedSeries(self.ring, self.coeffs, order)

    def to_str(self, var="t"):
        parts = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            s = str(c)
            neg = s.startswith("-") and " " not in s
            mag = s[1:] if neg else s
            if (" " in mag or "/" in mag) and n > 0:
                mag = f"({mag})"
            mono = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
            if not mono:
                body = mag
            elif mag == "1":
                body = mono
            else:
                body = f"{mag}{mono}"
            parts.append(("-" if neg else "+", body))
        tail = f"O({var}^{self.order + 1})"
        if not parts:
            return f"0 + {tail}"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return f"{out} + {tail}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"TruncatedSeries[{self.ring}]({self.to_str()})"


def _cauchy(a, b, order, zero):
    out = []
    for n in range(order + 1):
        acc = zero
        for i in range(n + 1):
            acc = acc + a[i] * b[n - i]
        out.append(acc)
    return out


def _require_unit(a):
    if not a.is_unit():
        raise ValueError(f"expected a unit series (constant term 1), got {a}")


def series_add(a, b):
    return a + b


def series_sub(a, b):
    return a - b


def series_mul(a, b):
    return a * b


def series_inverse(a):
    """Inverse of a unit series: ``b_0 = 1``, ``b_n = -sum_{i=1..n} a_i b_{n-i}``."""
    _require_unit(a)
    ring = a.ring
    b = [ring.one()]
    for n in range(1, a.order + 1):
        acc = ring.zero()
        for i in range(1, n + 1):
            acc = acc + a.coeffs[i] * b[n - i]
        b.append(-acc)
    return TruncatedSeries(ring, b)


def neg_log_derivative(a):
    """``-t a'(t) / a(t)`` for a unit series, computed without ring division."""
    _require_unit(a)
    n_ap = TruncatedSeries(a.ring, [n * c for n, c in enumerate(a.coeffs)])  # t*a'(t)
    return -(n_ap * series_inverse(a))


def series_exp(a):
    """``exp(a)`` for ``a`` with zero constant term over QQ.

    Uses ``n b_n = sum_{k=1..n} k a_k b_{n-k}`` from ``b' = a' b``.
    """
    _require_rational(a, "exp")
    if not a.coeffs[0].is_zero():
        raise ValueError("exp needs a series with zero constant term")
    b = [Fraction(1)]
    c = [x.value for x in a.coeffs]
    for n in range(1, a.order + 1):
        b.append(sum(k * c[k] * b[n - k] for k in range(1, n + 1)) / n)
    return TruncatedSeries(a.ring, b)


def series_log(a):
    """``log(a)`` for a unit series over QQ (so that ``series_exp(series_log(a)) == a``)."""
    _require_rational(a, "log")
    _require_unit(a)
    # t * d/dt log a = t a' / a = -neg_log_derivative(a)
    d = neg_log_derivative(a)
    return TruncatedSeries(a.ring, [0] + [-d.coeffs[n].value / n for n in range(1, a.order + 1)])


def _require_rational(a, what):
    if not isinstance(a.ring, Rationals):
        raise NotDivisible(f"{what} needs rational coefficients; got a series over {a.ring}")


def from_ghost_sum(values, ring=None, order=None):
    """The series ``sum_{n>=1} values[n-1] t^n`` (constant term 0)."""
    values = list(values)
    ring = ring or values[0].ring
    order = len(values) if order is None else order
    return TruncatedSeries(ring, [ring.zero()] + values, order)

