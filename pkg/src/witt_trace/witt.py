"""Big and truncated Witt vectors ``W_S(A)``.

Coordinates ``a_n`` are indexed by a truncation set ``S`` (either the
interval ``{1..N}`` or the divisor set ``<n>``).  The ghost map is

    w_n(a) = sum_{d | n} d * a_d^(n/d)

and addition/multiplication are given by universal integer polynomials
derived once from the requirement that ``w`` be a ring homomorphism, then
cached.  Evaluating those polynomials (rather than round-tripping through
ghosts) is what makes the ring structure correct over Z/m, where the ghost
map is not injective.
"""
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    IntegralityViolation,
    InvalidTruncationSet,
    NotDivisible,
    NotIntegral,
    RingMismatchError,
)
from .poly import Poly
from .rings import ZZ, Ring, reduction_map
from .series import TruncatedSeries

CACHE_ENV = "WITT_TRACE_CACHE_DIR"


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


class TruncationSet:
    """A divisor-closed set of positive integers of one of the shapes ``{1..N}`` or ``<n>``."""

    __slots__ = ("elements", "kind", "n", "_index")

    def __init__(self, elements):
        elems = tuple(sorted(set(int(e) for e in elements)))
        if not elems:
            raise InvalidTruncationSet("the empty truncation set is not supported")
        if elems[0] < 1:
            raise InvalidTruncationSet("truncation sets contain positive integers only")
        members = set(elems)
        for e in elems:
            for d in divisors(e):
                if d not in members:
                    raise InvalidTruncationSet(f"{elems} is not divisor-closed ({d} | {e} missing)")
        top = elems[-1]
        if elems == tuple(range(1, top + 1)):
            kind = "interval"
        elif elems == tuple(divisors(top)):
            kind = "divisors"
        else:
            raise InvalidTruncationSet(
                f"{elems}: only intervals {{1..N}} and divisor sets <n> are supported"
            )
        self.elements = elems
        self.kind = kind
        self.n = top
        self._index = {e: i for i, e in enumerate(elems)}

    @classmethod
    def interval(cls, n):
        if n < 1:
            raise InvalidTruncationSet("interval {1..N} needs N >= 1")
        return cls(range(1, n + 1))

    @classmethod
    def divisors_of(cls, n):
        if n < 1:
            raise InvalidTruncationSet("<n> needs n >= 1")
        return cls(divisors(n))

    @classmethod
    def from_json(cls, obj):
        kind, n = obj["kind"], int(obj["n"])
        if kind == "interval":
            return cls.interval(n)
        if kind == "divisors":
            return cls.divisors_of(n)
        raise InvalidTruncationSet(f"unknown truncation set kind {kind!r}")

    def to_json(self):
        # <1> and <2> are also intervals; report them as such
        return {"kind": self.kind, "n": self.n}

    def index(self, e):
        return self._index[e]

    def __contains__(self, e):
        return e in self._index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, TruncationSet) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        if self.kind == "interval":
            return f"{{1..{self.n}}}"
        return f"<{self.n}>"

    def frobenius_target(self, r):
        """``S / r = {m : r m in S}``."""
        if self.kind == "interval":
            if self.n // r < 1:
                raise InvalidTruncationSet(f"{{1..{self.n}}} / {r} is empty")
            return TruncationSet.interval(self.n // r)
        if self.n % r:
            raise InvalidTruncationSet(f"<{self.n}> / {r} is empty")
        return TruncationSet.divisors_of(self.n // r)

    def verschiebung_target(self, r):
        if self.kind == "interval":
            return self
        return TruncationSet.divisors_of(r * self.n)


# -- universal polynomials -----------------------------------------------------

@dataclass(frozen=True)
class UniversalWittPolynomials:
    """Witt sum/product/negation polynomials ``S_n, P_n, N_n`` for ``n <= max_n``.

    Variables are ``x_1..x_max_n`` (indices ``0..max_n-1``) followed by
    ``y_1..y_max_n``.  ``sum_polys[n]`` etc.; index 0 is unused.
    """

    max_n: int
    sum_polys: tuple
    prod_polys: tuple
    neg_polys: tuple

    def variable_names(self):
        return [f"x{i}" for i in range(1, self.max_n + 1)] + [f"y{i}" for i in range(1, self.max_n + 1)]


def _ghost_poly(var, n):
    """``sum_{d | n} d * var(d)^(n/d)`` for polynomial-valued ``var``."""
    total = None
    for d in divisors(n):
        term = (var(d) ** (n // d)) * d
        total = term if total is None else total + term
    return total


def _solve_ghost_recursion(n, target, known, what):
    """Solve ``sum_{d|n} d * Q_d^(n/d) = target`` for ``Q_n`` over QQ, asserting integrality."""
    rest = target
    for d in divisors(n)[:-1]:
        rest = rest - (known[d] ** (n // d)) * d
    q = rest.scale_div(n)
    if not q.has_integer_coefficients():
        raise IntegralityViolation(f"{what}_{n} has non-integral coefficients: {q}")
    return q


class _UniversalCache:
    """Lazily derived universal polynomials; concurrent reads, serialized writes.

    Entries are keyed by the number of variables per side ``L`` (the largest
    index of the truncation set) and hold dicts ``{n: Poly}``.  A dict is
    never mutated after publication, so readers see either the old or the
    new complete table.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._tables = {}
        self._compiled = {}

    def _cache_file(self, name):
        root = os.environ.get(CACHE_ENV)
        if not root:
            return None
        return Path(root) / f"{name}.json"

    def _load(self, name, nvars):
        path = self._cache_file(name)
        if path is None or not path.exists():
            return None
        try:
            raw = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        return {kind: {int(n): Poly(nvars, [(e, int(c)) for c, e in terms]) for n, terms in table.items()}
                for kind, table in raw.items()}

    def _save(self, name, tables):
        path = self._cache_file(name)
        if path is None:
            return
        raw = {kind: {str(n): [[str(c), list(e)] for e, c in p.terms] for n, p in table.items()}
               for kind, table in tables.items()}
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(raw, sort_keys=True))
            tmp.replace(path)
        except OSError:
            pass

    def get(self, key, indices, nvars, derive):
        """Return ``{kind: {n: Poly}}`` covering ``indices``, deriving what is missing."""
        tables = self._tables.get(key)
        if tables is not None and all(all(i in t for i in indices) for t in tables.values()):
            return tables
        with self._lock:
            tables = self._tables.get(key)
            if tables is None:
                tables = self._load(_cache_name(key), nvars)
            if tables is None or not all(all(i in t for i in indices) for t in tables.values()):
                tables = derive(tables, indices)
                self._save(_cache_name(key), tables)
            self._tables[key] = tables
            return tables

    def compiled(self, key, kind, n, poly, decode):
        ck = (key, kind, n)
        c = self._compiled.get(ck)
        if c is None:
            c = [(coeff, tuple((decode(i), k) for i, k in mono)) for coeff, mono in poly.compile()]
            self._compiled[ck] = c
        return c


_CACHE = _UniversalCache()


def _cache_name(key):
    return "_".join(str(k) for k in key)


def _derive_witt_tables(L, existing, indices):
    nv = 2 * L
    x = lambda d: Poly.variable(nv, d - 1)  # noqa: E731
    y = lambda d: Poly.variable(nv, L + d - 1)  # noqa: E731
    S = dict(existing["sum"]) if existing else {}
    P = dict(existing["prod"]) if existing else {}
    N = dict(existing["neg"]) if existing else {}
    for n in sorted(indices):
        if n in S:
            continue
        gx, gy = _ghost_poly(x, n), _ghost_poly(y, n)
        S[n] = _solve_ghost_recursion(n, gx + gy, S, "S")
        P[n] = _solve_ghost_recursion(n, gx * gy, P, "P")
        N[n] = _solve_ghost_recursion(n, -gx, N, "N")
    return {"sum": S, "prod": P, "neg": N}


def _witt_tables(trunc):
    L = trunc.n
    return _CACHE.get(("witt", L), trunc.elements, 2 * L,
                      lambda existing, idx: _derive_witt_tables(L, existing, idx))


def derive_universal_polys(max_n):
    """Universal Witt sum and product polynomials for ``n = 1..max_n`` over ZZ.

    Each ``S_n`` solves ``n S_n = w_n(x) + w_n(y) - sum_{d|n, d<n} d S_d^(n/d)``
    in QQ[x, y] (and likewise ``P_n`` with ``w_n(x) w_n(y)``); an
    :class:`IntegralityViolation` is raised if a coefficient is not an integer.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    tables = _witt_tables(TruncationSet.interval(max_n))
    pick = lambda t: (None,) + tuple(t[n] for n in range(1, max_n + 1))  # noqa: E731
    return UniversalWittPolynomials(max_n, pick(tables["sum"]), pick(tables["prod"]), pick(tables["neg"]))


def _derive_frobenius_tables(r, M, existing, indices):
    nv = r * M
    x = lambda d: Poly.variable(nv, d - 1)  # noqa: E731
    F = dict(existing["frob"]) if existing else {}
    for m in sorted(indices):
        if m in F:
            continue
        F[m] = _solve_ghost_recursion(m, _ghost_poly(x, r * m), F, f"F{r}")
    return {"frob": F}


def frobenius_polys(r, max_m):
    """``F_{r,m}(x_1, ..., x_{r max_m})`` with ``w_m(F_r a) = w_{rm}(a)``, ``m = 1..max_m``."""
    tables = _CACHE.get(("frob", r, max_m), range(1, max_m + 1), r * max_m,
                        lambda existing, idx: _derive_frobenius_tables(r, max_m, existing, idx))
    return tables["frob"]


# -- vectors -------------------------------------------------------------------

class _Indexed:
    """Shared plumbing for Witt and ghost vectors: ring, truncation set, values tuple."""

    __slots__ = ("ring", "trunc", "_vals")

    def __init__(self, ring, trunc, values):
        if not isinstance(ring, Ring):
            raise TypeError("ring must be a ring descriptor")
        if isinstance(values, dict):
            keys = set(int(k) for k in values)
            if keys != set(trunc.elements):
                raise ValueError(f"coordinates {sorted(keys)} do not match truncation set {trunc}")
            values = [values[k] if k in values else values[str(k)] for k in trunc.elements]
        values = tuple(ring(v) for v in values)
        if len(values) != len(trunc):
            raise ValueError(f"expected {len(trunc)} coordinates for {trunc}, got {len(values)}")
        self.ring = ring
        self.trunc = trunc
        self._vals = values

    def __getitem__(self, n):
        try:
            return self._vals[self.trunc.index(n)]
        except KeyError:
            raise KeyError(f"index {n} not in truncation set {self.trunc}") from None

    def items(self):
        return zip(self.trunc.elements, self._vals)

    def values(self):
        return self._vals

    def as_dict(self):
        return dict(self.items())

    def _payloads(self):
        return {n: v.value for n, v in self.items()}

    def _same(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.ring != self.ring or other.trunc != self.trunc:
            raise RingMismatchError(
                f"{type(self).__name__}s over {self.ring} on {self.trunc} and {other.ring} on {other.trunc}"
            )
        return other

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.ring == other.ring and self.trunc == other.trunc and self._vals == other._vals

    def __hash__(self):
        return hash((type(self).__name__, self.ring, self.trunc, self._vals))

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "trunc": self.trunc.to_json(),
            "coords": {str(n): v.to_json() for n, v in self.items()},
        }

    def __repr__(self):
        body = ", ".join(str(v) for v in self._vals)
        return f"{type(self).__name__}[{self.ring}, {self.trunc}]({body})"


class GhostVector(_Indexed):
    """Ghost coordinates ``(w_n)_{n in S}``; the ring structure is componentwise."""

    __slots__ = ()

    def _zip(self, other, op):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return GhostVector(self.ring, self.trunc, [op(a, b) for a, b in zip(self._vals, other._vals)])

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    def __neg__(self):
        return GhostVector(self.ring, self.trunc, [-a for a in self._vals])

    def scale(self, k):
        return GhostVector(self.ring, self.trunc, [a * k for a in self._vals])


class WittVector(_Indexed):
    """An element of ``W_S(A)`` with Witt coordinates ``a_n``, ``n in S``."""

    __slots__ = ()

    @classmethod
    def zero(cls, ring, trunc):
        return cls(ring, trunc, [0] * len(trunc))

    @classmethod
    def one(cls, ring, trunc):
        return cls(ring, trunc, [1] + [0] * (len(trunc) - 1))

    @classmethod
    def from_int(cls, k, ring, trunc):
        """The image of the integer ``k`` under ``ZZ -> W_S(A)``."""
        w = GhostVector(ZZ, trunc, [k] * len(trunc))
        a = ghost_to_witt(w)
        to = reduction_map(ZZ, ring) if ring != ZZ else (lambda v: v)
        return cls(ring, trunc, [to(v) for v in a.values()])

    def _poly_op(self, other, kind):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return _apply_universal(self, other, kind)

    def __add__(self, other):
        return self._poly_op(other, "sum")

    def __mul__(self, other):
        return self._poly_op(other, "prod")

    def __neg__(self):
        return _apply_universal(self, None, "neg")

    def __sub__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def change_ring(self, ring, fn=None):
        """Apply a ring map coordinatewise (Witt vectors are functorial in the ring)."""
        fn = fn or reduction_map(self.ring, ring)
        return WittVector(ring, self.trunc, [fn(v) for v in self._vals])


def _evaluate(compiled, env):
    total = 0
    powers = {}
    for coeff, mono in compiled:
        term = coeff
        for key, k in mono:
            pk = (key, k)
            p = powers.get(pk)
            if p is None:
                p = env[key] if k == 1 else env[key] ** k
                powers[pk] = p
            term = term * p
        total = total + term
    return total


def _apply_universal(a, b, kind):
    trunc, ring = a.trunc, a.ring
    L = trunc.n
    tables = _witt_tables(trunc)
    decode = lambda i: ("x", i + 1) if i < L else ("y", i - L + 1)  # noqa: E731
    env = {("x", n): v for n, v in a._payloads().items()}
    if b is not None:
        env.update({("y", n): v for n, v in b._payloads().items()})
    out = []
    for n in trunc.elements:
        compiled = _CACHE.compiled(("witt", L), kind, n, tables[kind][n], decode)
        out.append(ring.wrap(_evaluate(compiled, env)))
    return WittVector(ring, trunc, out)


def witt_add(a, b):
    return a + b


def witt_mul(a, b):
    return a * b


def witt_neg(a):
    return -a


# -- ghost map and inverse --------------------------------------------------------

def ghost(a):
    """``w_n(a) = sum_{d | n} d * a_d^(n/d)`` for each ``n`` in the truncation set."""
    ring = a.ring
    out = []
    for n in a.trunc.elements:
        acc = ring.zero()
        for d in divisors(n):
            acc = acc + a[d] ** (n // d) * d
        out.append(acc)
    return GhostVector(ring, a.trunc, out)


def ghost_to_witt(w):
    """Invert the ghost map over a torsion-free ring.

    ``n a_n = w_n - sum_{d|n, d<n} d a_d^(n/d)``; raises :class:`NotIntegral`
    with the first index where the division fails.
    """
    ring = w.ring
    if not ring.torsion_free:
        raise ValueError(f"ghost coordinates can only be inverted over torsion-free rings, not {ring}")
    a = {}
    for n in w.trunc.elements:
        rest = w[n]
        for d in divisors(n)[:-1]:
            rest = rest - a[d] ** (n // d) * d
        try:
            a[n] = ring.exact_div(rest, n)
        except NotDivisible:
            raise NotIntegral(n, f"ghost vector is not in the image over {ring}: "
                                 f"{n} does not divide {rest} at index {n}") from None
    return WittVector(ring, w.trunc, a)


# -- power series ---------------------------------------------------------------

def _require_interval(trunc):
    if trunc.kind != "interval":
        raise InvalidTruncationSet(f"power series correspondence needs an interval truncation set, got {trunc}")


def witt_to_series(a):
    """``a -> prod_{n >= 1} (1 - a_n t^n)`` modulo ``t^(N+1)``."""
    _require_interval(a.trunc)
    ring, N = a.ring, a.trunc.n
    c = [ring.one()] + [ring.zero()] * N
    for n in range(1, N + 1):
        an = a[n]
        if an.is_zero():
            continue
        for i in range(N, n - 1, -1):
            c[i] = c[i] - an * c[i - n]
    return TruncatedSeries(ring, c)


def series_to_witt(u):
    """Inverse of :func:`witt_to_series`: peel off ``(1 - a_n t^n)`` factors one at a time."""
    if not u.is_unit():
        raise ValueError("series_to_witt needs a unit series")
    ring, N = u.ring, u.order
    c = list(u.coeffs)
    a = []
    for n in range(1, N + 1):
        an = -c[n]
        a.append(an)
        if an.is_zero():
            continue
        # multiply by 1 / (1 - a_n t^n)
        for i in range(n, N + 1):
            c[i] = c[i] + an * c[i - n]
    return WittVector(ring, TruncationSet.interval(N), a)


# -- Frobenius, Verschiebung, restriction ------------------------------------------

def frobenius(r, a):
    """``F_r : W_S(A) -> W_{S/r}(A)`` characterized by ``w_m(F_r a) = w_{rm}(a)``."""
    if r < 1:
        raise ValueError("r must be positive")
    target = a.trunc.frobenius_target(r)
    if r == 1:
        return a
    M = target.n
    polys = frobenius_polys(r, M)
    env = a._payloads()
    out = []
    for m in target.elements:
        compiled = _CACHE.compiled(("frob", r, M), "frob", m, polys[m], lambda i: i + 1)
        out.append(a.ring.wrap(_evaluate(compiled, env)))
    return WittVector(a.ring, target, out)


def verschiebung(r, a):
    """``(V_r a)_{rn} = a_n``, other coordinates zero.

    From ``<n>`` the target is ``<rn>``; on ``{1..N}`` the result is
    restricted back to ``{1..N}``.
    """
    if r < 1:
        raise ValueError("r must be positive")
    target = a.trunc.verschiebung_target(r)
    z = a.ring.zero()
    out = [a[k // r] if k % r == 0 and (k // r) in a.trunc else z for k in target.elements]
    return WittVector(a.ring, target, out)


def restriction(a, d):
    """Forget the coordinates outside ``<d>`` (``d`` must lie in the truncation set)."""
    if d not in a.trunc:
        raise InvalidTruncationSet(f"{d} is not in {a.trunc}")
    target = TruncationSet.divisors_of(d)
    return restrict(a, target)


def restrict(a, target):
    """Restrict to a smaller supported truncation set."""
    if not set(target.elements) <= set(a.trunc.elements):
        raise InvalidTruncationSet(f"{target} is not contained in {a.trunc}")
    cls = type(a)
    return cls(a.ring, target, [a[k] for k in target.elements])
