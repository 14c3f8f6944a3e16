"""Twisted zeroth Hochschild homology of finite-rank ZZ-algebras and group rings.

For an algebra ``A`` with endomorphism ``phi``,

    HH_0(A; A_phi) = A / span{ phi(a) m - m a }

computed as the cokernel of an integer relation matrix via Smith normal
form.  For a group ring ``ZZ[G]`` with ``phi`` induced by a group
endomorphism the relations identify ``g`` with ``phi(k) g k^-1``, so the
free basis is the set of twisted conjugacy classes; each class is labelled
by its least element index.

The Hattori-Stallings trace of a matrix ``f`` over ``A`` is the class of
``sum_i f_ii``; the Reidemeister series of a twisted endomorphism is the
sequence of Hattori-Stallings traces of its twisted iterates.
"""
from itertools import permutations

from .endo import MatrixEndo, twisted_iterate
from .errors import NotAnEndomorphism, RingMismatchError
from .linalg import Matrix, snf_ints
from .rings import ZZ
from .series import DEFAULT_ORDER


# -- groups --------------------------------------------------------------------

class FiniteGroup:
    """A finite group given by its multiplication table on ``0..order-1``."""

    def __init__(self, table, identity=None, inverses=None, labels=None, check=True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(self.table)
        self.order = n
        if n == 0 or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table must be square and nonempty")
        if identity is None:
            identity = next((e for e in range(n) if all(self.table[e][x] == x for x in range(n))), None)
            if identity is None:
                raise ValueError("multiplication table has no identity element")
        self.identity = identity
        if inverses is None:
            inverses = [next((y for y in range(n) if self.table[x][y] == identity), None) for x in range(n)]
        self.inverses = tuple(inverses)
        self.labels = tuple(labels) if labels else tuple(f"g{i}" for i in range(n))
        if check:
            self._check_axioms()

    def _check_axioms(self):
        n, t, e = self.order, self.table, self.identity
        for row in t:
            if sorted(row) != list(range(n)):
                raise ValueError("multiplication table is not a Latin square")
        for x in range(n):
            if t[e][x] != x or t[x][e] != x:
                raise ValueError("identity law fails")
            inv = self.inverses[x]
            if inv is None or t[x][inv] != e or t[inv][x] != e:
                raise ValueError(f"element {x} has no inverse")
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise ValueError(f"associativity fails at ({a}, {b}, {c})")

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverses[a]

    def conjugacy_classes(self):
        return twisted_conjugacy_classes(self, GroupHom.identity(self))

    def to_json(self):
        return {"order": self.order, "table": [list(r) for r in self.table],
                "inverses": list(self.inverses), "labels": list(self.labels)}

    @classmethod
    def from_json(cls, obj):
        g = cls(obj["table"], inverses=obj.get("inverses"), labels=obj.get("labels"))
        if int(obj.get("order", g.order)) != g.order:
            raise ValueError("declared group order does not match table")
        return g

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def _group_from_elements(elements, mul, labels=None):
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, labels=labels)


def trivial_group():
    return FiniteGroup([[0]], labels=["1"])


def cyclic_group(n):
    labels = ["1"] + [f"s^{k}" if k > 1 else "s" for k in range(1, n)]
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], labels=labels)


def symmetric_group(n):
    """Permutations of ``0..n-1`` in lexicographic order (index 0 is the identity)."""
    elements = list(permutations(range(n)))
    compose = lambda p, q: tuple(p[q[i]] for i in range(n))  # noqa: E731  (p after q)
    labels = ["".join(str(i + 1) for i in p) for p in elements]
    return _group_from_elements(elements, compose, labels)


def dihedral_group(n):
    """Symmetries of the regular n-gon, order ``2n``; ``(k, 0)`` rotations, ``(k, 1)`` reflections."""
    elements = [(k, 0) for k in range(n)] + [(k, 1) for k in range(n)]

    def mul(a, b):
        (i, s), (j, t) = a, b
        return ((i + (j if s == 0 else -j)) % n, (s + t) % 2)

    labels = [f"r{k}" for k in range(n)] + [f"f{k}" for k in range(n)]
    return _group_from_elements(elements, mul, labels)


class GroupHom:
    """An endomorphism of a finite group, given by the images of ``0..order-1``."""

    def __init__(self, group, images, check=True):
        self.group = group
        self.images = tuple(int(x) for x in images)
        if len(self.images) != group.order or not all(0 <= x < group.order for x in self.images):
            raise NotAnEndomorphism("group map must send each element to an element of the group")
        if check:
            t, im = group.table, self.images
            for a in range(group.order):
                for b in range(group.order):
                    if im[t[a][b]] != t[im[a]][im[b]]:
                        raise NotAnEndomorphism(f"phi({a}*{b}) != phi({a})*phi({b})")

    @classmethod
    def identity(cls, group):
        return cls(group, range(group.order), check=False)

    def __call__(self, g):
        return self.images[g]

    def compose(self, other):
        """``self o other``."""
        return GroupHom(self.group, [self.images[other.images[g]] for g in range(self.group.order)], check=False)

    def power(self, n):
        result = GroupHom.identity(self.group)
        for _ in range(n):
            result = self.compose(result)
        return result

    def is_identity(self):
        return self.images == tuple(range(self.group.order))

    def __eq__(self, other):
        return isinstance(other, GroupHom) and self.group is other.group and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def to_json(self):
        return {"images": list(self.images)}

    def __repr__(self):
        return f"GroupHom{self.images}"


def inner_automorphism(group, h):
    """``g -> h g h^-1``."""
    hi = group.inv(h)
    return GroupHom(group, [group.mul(group.mul(h, g), hi) for g in range(group.order)], check=False)


def power_map(group, k):
    """``g -> g^k``; an automorphism of an abelian group when ``k`` is prime to its order."""
    images = []
    for g in range(group.order):
        x = group.identity
        for _ in range(k):
            x = group.mul(x, g)
        images.append(x)
    return GroupHom(group, images)


def twisted_conjugacy_classes(group, phi):
    """Orbits of ``g -> phi(k) g k^-1``, each sorted, ordered by least element."""
    n = group.order
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in range(n):
        pk, ki = phi(k), group.inv(k)
        for g in range(n):
            h = group.mul(group.mul(pk, g), ki)
            a, b = find(g), find(h)
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes = {}
    for g in range(n):
        classes.setdefault(find(g), []).append(g)
    return sorted(classes.values(), key=lambda c: c[0])


# -- algebras ------------------------------------------------------------------

class FiniteRankAlgebra:
    """A ZZ-algebra free of rank ``r`` with ``e_i e_j = sum_k c[i][j][k] e_k``."""

    def __init__(self, structure_constants, unit, labels=None, check=True):
        c = [[[int(x) for x in cell] for cell in row] for row in structure_constants]
        r = len(c)
        if r == 0 or any(len(row) != r or any(len(cell) != r for cell in row) for row in c):
            raise ValueError("structure constants must have shape rank x rank x rank")
        self.rank = r
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(r))
        # sparse products: _prod[i][j] = [(k, coeff), ...]
        self._prod = [[[(k, v) for k, v in enumerate(cell) if v] for cell in row] for row in c]
        self.structure_constants = c
        self.unit_vector = tuple(int(x) for x in unit)
        if len(self.unit_vector) != r:
            raise ValueError("unit has wrong length")
        if check:
            self._check_axioms()

    def _check_axioms(self):
        basis = [self.basis(i) for i in range(self.rank)]
        one = self.one()
        for x in basis:
            if one * x != x or x * one != x:
                raise ValueError("unit law fails")
        for x in basis:
            for y in basis:
                xy = x * y
                for z in basis:
                    if xy * z != x * (y * z):
                        raise ValueError("associativity fails on basis elements")

    def _mul_vectors(self, a, b):
        out = [0] * self.rank
        prod = self._prod
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = prod[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                s = ai * bj
                for k, v in row[j]:
                    out[k] += s * v
        return out

    def __call__(self, x):
        if isinstance(x, AlgebraElement):
            if x.algebra is not self:
                raise RingMismatchError("element of a different algebra")
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return AlgebraElement(self, [x * u for u in self.unit_vector])
        if hasattr(x, "ring") and x.ring == ZZ:
            return self(x.value)
        if isinstance(x, (list, tuple)):
            return AlgebraElement(self, x)
        raise TypeError(f"cannot coerce {x!r} into the algebra")

    def zero(self):
        return AlgebraElement(self, [0] * self.rank)

    def one(self):
        return AlgebraElement(self, self.unit_vector)

    def basis(self, i):
        v = [0] * self.rank
        v[i] = 1
        return AlgebraElement(self, v)

    def is_group_ring(self):
        return False

    def to_json(self):
        return {"rank": self.rank, "structure_constants": self.structure_constants,
                "unit": list(self.unit_vector), "labels": list(self.labels)}

    @classmethod
    def from_json(cls, obj):
        a = cls(obj["structure_constants"], obj["unit"], obj.get("labels"))
        if int(obj.get("rank", a.rank)) != a.rank:
            raise ValueError("declared rank does not match structure constants")
        return a

    def __repr__(self):
        return f"FiniteRankAlgebra(rank={self.rank})"


class GroupRing(FiniteRankAlgebra):
    """``ZZ[G]`` with basis the group elements."""

    def __init__(self, group):
        n = group.order
        self.group = group
        self.rank = n
        self.labels = group.labels
        self._prod = [[[(group.table[i][j], 1)] for j in range(n)] for i in range(n)]
        self.unit_vector = tuple(int(i == group.identity) for i in range(n))

    @property
    def structure_constants(self):
        n, t = self.rank, self.group.table
        return [[[int(t[i][j] == k) for k in range(n)] for j in range(n)] for i in range(n)]

    def _mul_vectors(self, a, b):
        out = [0] * self.rank
        t = self.group.table
        nz_b = [(j, bj) for j, bj in enumerate(b) if bj]
        for i, ai in enumerate(a):
            if ai:
                ti = t[i]
                for j, bj in nz_b:
                    out[ti[j]] += ai * bj
        return out

    def element(self, coeffs):
        """From a dict ``{group index: coefficient}`` or a full coefficient list."""
        if isinstance(coeffs, dict):
            v = [0] * self.rank
            for g, c in coeffs.items():
                v[int(g)] += c
            return AlgebraElement(self, v)
        return AlgebraElement(self, coeffs)

    def is_group_ring(self):
        return True

    def __repr__(self):
        return f"GroupRing(order={self.rank})"


class AlgebraElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != algebra.rank:
            raise ValueError("coefficient vector has wrong length")
        self.algebra = algebra
        self.coeffs = coeffs

    def _other(self, other):
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra:
                raise RingMismatchError("elements of different algebras")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.algebra(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return AlgebraElement(self.algebra, [a * other for a in self.coeffs])
        o = self._other(other)
        if o is NotImplemented:
            return o
        return AlgebraElement(self.algebra, self.algebra._mul_vectors(self.coeffs, o.coeffs))

    def __rmul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = self.algebra(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def __str__(self):
        terms = [(c, self.algebra.labels[i]) for i, c in enumerate(self.coeffs) if c]
        return _format_combination(terms)

    __repr__ = __str__


def _format_combination(terms):
    if not terms:
        return "0"
    out = ""
    for c, label in terms:
        sign = "-" if c < 0 else "+"
        body = f"[{label}]" if abs(c) == 1 else f"{abs(c)}*[{label}]"
        out = (("-" if sign == "-" else "") + body) if not out else f"{out} {sign} {body}"
    return out


def augmentation(x):
    """Sum of coefficients of a group-ring element (collapse ``G -> 1``)."""
    if not x.algebra.is_group_ring():
        raise ValueError("augmentation needs a group ring")
    return sum(x.coeffs)


def augment_matrix(f):
    f = f.matrix if isinstance(f, MatrixEndo) else f
    return Matrix(ZZ, [[augmentation(x) for x in row] for row in f.rows])


class AlgebraEndomorphism:
    """A ZZ-linear ring endomorphism, given by the images ``phi(e_i)`` as coefficient vectors."""

    def __init__(self, algebra, images, check=True, group_hom=None):
        self.algebra = algebra
        self.images = tuple(tuple(int(c) for c in row) for row in images)
        self.group_hom = group_hom
        if len(self.images) != algebra.rank or any(len(r) != algebra.rank for r in self.images):
            raise NotAnEndomorphism("images must form a rank x rank integer matrix")
        if check:
            basis = [algebra.basis(i) for i in range(algebra.rank)]
            if self(algebra.one()) != algebra.one():
                raise NotAnEndomorphism("phi(1) != 1")
            for x in basis:
                for y in basis:
                    if self(x * y) != self(x) * self(y):
                        raise NotAnEndomorphism("phi is not multiplicative on basis elements")

    @classmethod
    def identity(cls, algebra):
        r = algebra.rank
        gh = GroupHom.identity(algebra.group) if algebra.is_group_ring() else None
        return cls(algebra, [[int(i == j) for j in range(r)] for i in range(r)], check=False, group_hom=gh)

    @classmethod
    def from_group_hom(cls, ring, hom):
        if not ring.is_group_ring() or hom.group is not ring.group:
            raise NotAnEndomorphism("group endomorphism of a different group")
        n = ring.rank
        return cls(ring, [[int(hom(i) == k) for k in range(n)] for i in range(n)], check=False, group_hom=hom)

    def __call__(self, x):
        x = self.algebra(x)
        out = [0] * self.algebra.rank
        for i, c in enumerate(x.coeffs):
            if c:
                for k, v in enumerate(self.images[i]):
                    if v:
                        out[k] += c * v
        return AlgebraElement(self.algebra, out)

    def compose(self, other):
        """``self o other``."""
        imgs = [self(AlgebraElement(self.algebra, row)).coeffs for row in other.images]
        gh = None
        if self.group_hom is not None and other.group_hom is not None:
            gh = self.group_hom.compose(other.group_hom)
        return AlgebraEndomorphism(self.algebra, imgs, check=False, group_hom=gh)

    def power(self, n):
        result = AlgebraEndomorphism.identity(self.algebra)
        for _ in range(n):
            result = self.compose(result)
        return result

    def is_identity(self):
        r = self.algebra.rank
        return self.images == tuple(tuple(int(i == j) for j in range(r)) for i in range(r))

    def __eq__(self, other):
        return (isinstance(other, AlgebraEndomorphism) and self.algebra is other.algebra
                and self.images == other.images)

    def __hash__(self):
        return hash(self.images)

    def to_json(self):
        if self.group_hom is not None:
            return self.group_hom.to_json()
        return {"matrix": [list(r) for r in self.images]}


def as_twist(algebra, phi):
    """Normalize ``None`` / :class:`GroupHom` / :class:`AlgebraEndomorphism` to the latter."""
    if phi is None:
        return AlgebraEndomorphism.identity(algebra)
    if isinstance(phi, GroupHom):
        return AlgebraEndomorphism.from_group_hom(algebra, phi)
    if isinstance(phi, AlgebraEndomorphism):
        if phi.algebra is not algebra:
            raise NotAnEndomorphism("twist belongs to a different algebra")
        return phi
    raise TypeError(f"unsupported twist {phi!r}")


# -- HH_0 ----------------------------------------------------------------------

class TwistedHH0:
    """``HH_0(A; A_phi)`` presented as ``ZZ^rank (+) (+)_i ZZ/d_i``.

    Attributes of note: ``rank`` (free rank), ``torsion`` (the invariant
    factors ``d_i > 1``), ``basis_labels`` (for group rings, the twisted
    conjugacy class representatives) and ``diagonal`` (the Smith diagonal
    of the relation matrix).
    """

    def __init__(self, algebra, twist):
        self.algebra = algebra
        self.twist = twist
        r = algebra.rank
        basis = [algebra.basis(i) for i in range(r)]
        cols = set()
        for ei in basis:
            pei = twist(ei)
            for ej in basis:
                rel = (pei * ej - ej * ei).coeffs
                if any(rel):
                    cols.add(rel)
        cols = sorted(cols)
        rel_rows = [[c[i] for c in cols] for i in range(r)]
        D, U, _ = snf_ints(rel_rows, r, len(cols))
        diag = [D[i][i] if i < len(cols) else 0 for i in range(r)]
        self.diagonal = tuple(diag)
        self.relations = tuple(cols)
        self._U = U
        self._free_rows = [i for i, d in enumerate(diag) if d == 0]
        self._torsion_rows = [(i, d) for i, d in enumerate(diag) if d > 1]
        self.torsion = tuple(d for _, d in self._torsion_rows)
        self.rank = len(self._free_rows)
        self.classes = None
        if algebra.is_group_ring() and twist.group_hom is not None:
            self.classes = twisted_conjugacy_classes(algebra.group, twist.group_hom)
            if len(self.classes) != self.rank or self.torsion:
                raise AssertionError("group-ring HH_0 disagrees with twisted conjugacy classes")
            self.basis_labels = tuple(algebra.labels[c[0]] for c in self.classes)
            self._class_of = {g: i for i, c in enumerate(self.classes) for g in c}
        else:
            self.basis_labels = tuple(f"u{i}" for i in range(self.rank))

    def classify(self, x):
        """The class of an algebra element."""
        x = self.algebra(x)
        if self.classes is not None:
            free = [0] * self.rank
            for g, c in enumerate(x.coeffs):
                free[self._class_of[g]] += c
            return HH0Class(self, tuple(free), ())
        y = [sum(u * c for u, c in zip(row, x.coeffs)) for row in self._U]
        free = tuple(y[i] for i in self._free_rows)
        tors = tuple(y[i] % d for i, d in self._torsion_rows)
        return HH0Class(self, free, tors)

    def zero(self):
        return HH0Class(self, (0,) * self.rank, (0,) * len(self.torsion))

    def summary(self):
        parts = [f"Z^{self.rank}"] + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts)

    def to_json(self):
        out = {"rank": self.rank, "torsion": list(self.torsion), "basis": list(self.basis_labels),
               "smith_diagonal": list(self.diagonal)}
        if self.classes is not None:
            out["classes"] = [list(c) for c in self.classes]
        return out

    def __repr__(self):
        return f"TwistedHH0({self.summary()})"


class HH0Class:
    __slots__ = ("parent", "free", "torsion")

    def __init__(self, parent, free, torsion):
        self.parent = parent
        self.free = tuple(free)
        self.torsion = tuple(t % d for t, d in zip(torsion, parent.torsion))

    def __add__(self, other):
        if not isinstance(other, HH0Class) or other.parent is not self.parent:
            raise RingMismatchError("classes in different HH_0 groups")
        return HH0Class(self.parent, [a + b for a, b in zip(self.free, other.free)],
                        [a + b for a, b in zip(self.torsion, other.torsion)])

    def __eq__(self, other):
        if not isinstance(other, HH0Class):
            return NotImplemented
        return self.parent is other.parent and self.free == other.free and self.torsion == other.torsion

    def __hash__(self):
        return hash((self.free, self.torsion))

    def is_zero(self):
        return not any(self.free) and not any(self.torsion)

    def coefficient(self, label):
        return self.free[self.parent.basis_labels.index(label)]

    def to_json(self):
        out = {"free": {lab: c for lab, c in zip(self.parent.basis_labels, self.free) if c}}
        if self.parent.torsion:
            out["torsion"] = [{"order": d, "value": t} for d, t in zip(self.parent.torsion, self.torsion)]
        return out

    def __str__(self):
        s = _format_combination([(c, lab) for lab, c in zip(self.parent.basis_labels, self.free) if c])
        for d, t in zip(self.parent.torsion, self.torsion):
            if t:
                s += f" + {t} (mod {d})"
        return s

    __repr__ = __str__


def compute_hh0(algebra, phi=None):
    """Twisted HH_0 of ``algebra`` with coefficients twisted by ``phi`` (identity if ``None``)."""
    return TwistedHH0(algebra, as_twist(algebra, phi))


def hs_trace(f, target):
    """Hattori-Stallings trace: the class of ``sum_i f_ii`` in ``target``."""
    if not isinstance(f, MatrixEndo):
        f = MatrixEndo(f)
    if f.ring is not target.algebra:
        raise RingMismatchError("matrix and HH_0 target are over different algebras")
    twist = as_twist(target.algebra, f.twist)
    if twist != target.twist:
        raise RingMismatchError("the endomorphism's twist does not match the HH_0 target's twist")
    return target.classify(f.matrix.trace())


def twisted_endo(matrix, phi=None):
    """Wrap a matrix over an algebra as a (possibly) twisted endomorphism."""
    algebra = matrix.ring
    return MatrixEndo(matrix, None if phi is None else as_twist(algebra, phi))


def reidemeister_series(f, phi=None, N=DEFAULT_ORDER):
    """``(R(f), R(f^2), ..., R(f^N))``, the n-th in ``HH_0(ZZ[G]; ZZ[G]_{phi^n})``.

    ``f`` may be a :class:`MatrixEndo` carrying its twist, or a matrix plus
    ``phi``.  Each target group is computed afresh.
    """
    if isinstance(f, MatrixEndo):
        if phi is not None:
            raise ValueError("pass the twist either on the endomorphism or as phi, not both")
        endo = f
    else:
        endo = twisted_endo(f, phi)
    algebra = endo.ring
    twist = as_twist(algebra, endo.twist)
    out = []
    for n in range(1, N + 1):
        target = compute_hh0(algebra, twist.power(n))
        it = twisted_iterate(endo, n)
        out.append(target.classify(it.trace()))
    return out


def augment(c):
    """Augmentation of a group-ring HH_0 class: the sum of its coefficients."""
    if not c.parent.algebra.is_group_ring():
        raise ValueError("augmentation is only defined on HH_0 of a group ring")
    return sum(c.free)
