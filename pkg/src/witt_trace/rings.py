"""Exact commutative coefficient rings: ZZ, QQ, Z/m and Z[x_1, ..., x_k].

A ring descriptor (:class:`Ring` subclass) knows how to normalize a raw
payload (``int``, ``Fraction``, residue ``int`` or :class:`Poly`) and wraps
it into a :class:`RingValue`.  Payloads support the ordinary Python
operators, so hot loops may compute on payloads and normalize once at the
end; this is valid because every supported ring is a quotient of a
torsion-free lift (ZZ -> Z/m).
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotDivisible, RingMismatchError
from .poly import Poly


class Ring:
    """Base class for ring descriptors.  Subclasses are frozen dataclasses."""

    torsion_free = True
    kind = None

    # payload hooks
    def normalize(self, payload):
        raise NotImplementedError

    def coerce_payload(self, x):
        raise NotImplementedError

    def __call__(self, x):
        if isinstance(x, RingValue):
            if x.ring != self:
                raise RingMismatchError(f"{x.ring} element given where {self} expected")
            return x
        return RingValue(self, self.coerce_payload(x))

    def wrap(self, payload):
        """Normalize ``payload`` and wrap it; ``payload`` must already have the right type."""
        return RingValue(self, self.normalize(payload))

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def exact_div(self, a, n):
        """Return the unique ``b`` with ``n * b == a``; raise :class:`NotDivisible` otherwise."""
        a = self(a)
        if not isinstance(n, int) or n <= 0:
            raise ValueError("divisor must be a positive integer")
        return RingValue(self, self._exact_div(a.value, n))

    def _exact_div(self, payload, n):
        raise NotImplementedError

    def to_json(self):
        return {"kind": self.kind}

    def value_to_json(self, payload):
        raise NotImplementedError

    def value_from_json(self, obj):
        raise NotImplementedError

    @staticmethod
    def from_json(obj):
        if isinstance(obj, str):
            obj = {"kind": obj}
        kind = obj.get("kind")
        if kind in ("integers", "ZZ"):
            return ZZ
        if kind in ("rationals", "QQ"):
            return QQ
        if kind in ("integers-mod", "integers-mod-m", "Zmod"):
            return IntegersMod(int(obj["modulus"]))
        if kind in ("polynomial", "polynomial-ring"):
            base = obj.get("base", "integers")
            if base != "integers":
                raise ValueError("polynomial rings are only supported over the integers")
            return PolynomialRing(tuple(obj["variables"]))
        raise ValueError(f"unknown ring kind {kind!r}")


@dataclass(frozen=True)
class Integers(Ring):
    kind = "integers"

    def normalize(self, payload):
        return payload

    def coerce_payload(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            raise TypeError(f"cannot coerce {x!r} into ZZ")
        return x

    def _exact_div(self, payload, n):
        q, r = divmod(payload, n)
        if r:
            raise NotDivisible(f"{payload} is not divisible by {n} in ZZ")
        return q

    def value_to_json(self, payload):
        return str(payload)

    def value_from_json(self, obj):
        return self(int(obj))

    def __str__(self):
        return "ZZ"


@dataclass(frozen=True)
class Rationals(Ring):
    kind = "rationals"

    def normalize(self, payload):
        return Fraction(payload)

    def coerce_payload(self, x):
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def _exact_div(self, payload, n):
        return payload / n

    def value_to_json(self, payload):
        return {"num": str(payload.numerator), "den": str(payload.denominator)}

    def value_from_json(self, obj):
        if isinstance(obj, dict):
            return self(Fraction(int(obj["num"]), int(obj["den"])))
        return self(Fraction(obj))

    def __str__(self):
        return "QQ"


@dataclass(frozen=True)
class IntegersMod(Ring):
    modulus: int
    kind = "integers-mod"
    torsion_free = False

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise ValueError("modulus must be an integer >= 2")

    def normalize(self, payload):
        return payload % self.modulus

    def coerce_payload(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {x!r} into {self}")
        return x % self.modulus

    def _exact_div(self, payload, n):
        m = self.modulus
        if gcd(n, m) != 1:
            # n*x = a may have zero or several solutions; both are failures here.
            raise NotDivisible(f"{n} is not invertible mod {m}")
        return payload * pow(n, -1, m) % m

    def to_json(self):
        return {"kind": self.kind, "modulus": self.modulus}

    def value_to_json(self, payload):
        return {"val": str(payload), "mod": str(self.modulus)}

    def value_from_json(self, obj):
        if isinstance(obj, dict):
            if int(obj.get("mod", self.modulus)) != self.modulus:
                raise RingMismatchError("residue modulus does not match ring")
            return self(int(obj["val"]))
        return self(int(obj))

    def __str__(self):
        return f"Z/{self.modulus}"


@dataclass(frozen=True)
class PolynomialRing(Ring):
    """ZZ[variables], variables distinct, nonempty and sorted."""

    variables: tuple
    kind = "polynomial"

    def __post_init__(self):
        v = tuple(self.variables)
        object.__setattr__(self, "variables", v)
        if not v or any(not isinstance(s, str) or not s for s in v):
            raise ValueError("variable names must be nonempty strings")
        if len(set(v)) != len(v) or list(v) != sorted(v):
            raise ValueError("variable names must be distinct and lexicographically ordered")

    @property
    def nvars(self):
        return len(self.variables)

    def gen(self, name):
        return RingValue(self, Poly.variable(self.nvars, self.variables.index(name)))

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def normalize(self, payload):
        if isinstance(payload, int):
            return Poly.constant(self.nvars, payload)
        return payload

    def coerce_payload(self, x):
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return Poly.constant(self.nvars, x)
        if isinstance(x, Poly):
            if x.nvars != self.nvars or not x.has_integer_coefficients():
                raise TypeError(f"polynomial {x} does not belong to {self}")
            return x
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def _exact_div(self, payload, n):
        q = payload.exact_div(n)
        if q is None:
            raise NotDivisible(f"{payload.to_str(self.variables)} is not divisible by {n}")
        return q

    def to_json(self):
        return {"kind": self.kind, "base": "integers", "variables": list(self.variables)}

    def value_to_json(self, payload):
        return [{"coeff": str(c), "exps": list(e)} for e, c in payload.terms]

    def value_from_json(self, obj):
        if isinstance(obj, (int, str)):
            return self(int(obj))
        return self(Poly(self.nvars, [(t["exps"], int(t["coeff"])) for t in obj]))

    def __str__(self):
        return f"ZZ[{', '.join(self.variables)}]"


ZZ = Integers()
QQ = Rationals()


class RingValue:
    """An element of a :class:`Ring`.  Immutable; mixing rings raises :class:`RingMismatchError`."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("RingValue is immutable")

    def _other(self, other):
        if isinstance(other, RingValue):
            if other.ring != self.ring:
                raise RingMismatchError(f"cannot combine {self.ring} with {other.ring}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.coerce_payload(other)
        if isinstance(other, Fraction) and self.ring is QQ:
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.ring, self.ring.normalize(self.value + o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.ring, self.ring.normalize(self.value - o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.ring, self.ring.normalize(o - self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingValue(self.ring, self.ring.normalize(self.value * o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingValue(self.ring, self.ring.normalize(-self.value))

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        if isinstance(self.ring, IntegersMod):
            return RingValue(self.ring, pow(self.value, n, self.ring.modulus))
        return RingValue(self.ring, self.ring.normalize(self.value**n))

    def is_zero(self):
        v = self.value
        return v.is_zero() if isinstance(v, Poly) else v == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, RingValue):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.ring.coerce_payload(other)
            except TypeError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def to_json(self):
        return self.ring.value_to_json(self.value)

    def __str__(self):
        if isinstance(self.value, Poly):
            return self.value.to_str(self.ring.variables)
        return str(self.value)

    def __repr__(self):
        return f"{self.ring}({self})"


def exact_div(a, n):
    """Module-level convenience for ``a.ring.exact_div(a, n)``."""
    return a.ring.exact_div(a, n)


def common_ring(*values):
    rings = {v.ring for v in values}
    if len(rings) != 1:
        raise RingMismatchError(f"values from several rings: {sorted(map(str, rings))}")
    return rings.pop()


def reduction_map(source, target):
    """The canonical ring map ``source -> target`` (ZZ -> Z/m, ZZ -> QQ, identity)."""
    if source == target:
        return lambda v: v
    if source is ZZ and isinstance(target, (IntegersMod, Rationals)):
        return lambda v: target(v.value)
    if isinstance(source, IntegersMod) and isinstance(target, IntegersMod):
        if source.modulus % target.modulus:
            raise ValueError(f"no ring map {source} -> {target}")
        return lambda v: target(v.value)
    raise ValueError(f"no canonical ring map {source} -> {target}")
