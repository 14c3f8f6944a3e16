"""Sparse multivariate polynomials with exact coefficients.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
coefficients (``int`` or :class:`fractions.Fraction`).  Terms are kept in
graded lexicographic order, highest first, so two equal polynomials always
serialize identically.
"""
from collections import defaultdict
from fractions import Fraction
from functools import total_ordering


def grlex_key(exps):
    return (sum(exps), exps)


@total_ordering
class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=()):
        """Build from an iterable of ``(exps, coeff)`` pairs or a dict.

        Repeated exponents are summed and zero coefficients dropped.
        """
        if isinstance(terms, dict):
            terms = terms.items()
        acc = defaultdict(int)
        for exps, c in terms:
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} has wrong length for {nvars} variables")
            acc[exps] += c
        self.nvars = nvars
        self.terms = tuple(
            sorted(
                ((e, _simplify(c)) for e, c in acc.items() if c != 0),
                key=lambda t: grlex_key(t[0]),
                reverse=True,
            )
        )
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # terms already canonical
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, [((0,) * nvars, c)])

    @classmethod
    def variable(cls, nvars, i, coeff=1):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, [(tuple(e), coeff)])

    # -- inspection -------------------------------------------------------
    def as_dict(self):
        return dict(self.terms)

    def coefficient(self, exps):
        for e, c in self.terms:
            if e == tuple(exps):
                return c
        return 0

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e, _ in self.terms), default=-1)

    def variables_used(self):
        used = set()
        for e, _ in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return sorted(used)

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def has_integer_coefficients(self):
        return all(isinstance(c, int) for _, c in self.terms)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return Poly(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly(self.nvars)
            return Poly._raw(self.nvars, tuple((e, _simplify(c * other)) for e, c in self.terms))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = defaultdict(int)
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return Poly(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = Poly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale_div(self, n):
        """Divide every coefficient by ``n`` over the rationals."""
        return Poly._raw(self.nvars, tuple((e, _simplify(Fraction(c, 1) / n)) for e, c in self.terms))

    def exact_div(self, n):
        """Divide integer coefficients by ``n``; ``None`` if some coefficient is not divisible."""
        out = []
        for e, c in self.terms:
            q, r = divmod(c, n)
            if r:
                return None
            out.append((e, q))
        return Poly._raw(self.nvars, tuple(out))

    def map_coefficients(self, fn):
        return Poly(self.nvars, [(e, fn(c)) for e, c in self.terms])

    # -- evaluation -------------------------------------------------------
    def evaluate(self, values, one=1):
        """Evaluate at ``values`` (one per variable); works for any ring-like values."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        total = one * 0
        powers = {}
        for e, c in self.terms:
            term = one * c if not isinstance(c, Fraction) else c * one
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = values[i] ** k
                    term = term * powers[key]
            total = total + term
        return total

    def compile(self):
        """Sparse form ``[(coeff, ((var, exp), ...)), ...]`` for repeated evaluation."""
        return [(c, tuple((i, k) for i, k in enumerate(e) if k)) for e, c in self.terms]

    # -- comparison / display --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __lt__(self, other):
        return self.terms < other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.terms))
        return self._hash

    def to_str(self, names=None):
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.nvars}, {self.to_str()!r})"


def _simplify(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c
