"""Dense matrices over a ring, Smith normal form over ZZ, and Berkowitz.

:class:`Matrix` only needs entries supporting ``+``, ``-`` and ``*`` and a
``ring`` object with ``zero()`` and ``one()``, so the same class carries
matrices over the commutative rings of :mod:`witt_trace.rings` and over the
(possibly noncommutative) finite-rank algebras of :mod:`witt_trace.hh0`.
"""
from .errors import RingMismatchError
from .rings import ZZ


class Matrix:
    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows):
        rows = tuple(tuple(ring(x) for x in row) for row in rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, ring, n):
        one, zero = ring.one(), ring.zero()
        return cls(ring, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError(f"matrices over {self.ring} and {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix(self.ring, [[-a for a in r] for r in self.rows])

    def __matmul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else []
        zero = self.ring.zero()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        if not cols:
            out = [[] for _ in self.rows]
        return Matrix(self.ring, out)

    def scale(self, s):
        return Matrix(self.ring, [[s * a for a in r] for r in self.rows])

    def __pow__(self, n):
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.ring, self.nrows)
        for _ in range(n):
            result = result @ self
        return result

    def transpose(self):
        return Matrix(self.ring, list(zip(*self.rows)) if self.rows else [])

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        acc = self.ring.zero()
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def map(self, fn, ring=None):
        """Apply ``fn`` entrywise, optionally landing in a new ring."""
        return Matrix(ring or self.ring, [[fn(a) for a in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash((self.ring, self.rows))

    def tolist(self):
        return [list(r) for r in self.rows]

    def to_ints(self):
        return [[a.value for a in r] for r in self.rows]

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix[{self.ring}]({body})"


def block_matrix(blocks, ring):
    """Assemble a matrix from a 2-D grid of blocks (``None`` for a zero block)."""
    heights = [next(b.nrows for b in row if b is not None) for row in blocks]
    widths = [next(blocks[i][j].ncols for i in range(len(blocks)) if blocks[i][j] is not None)
              for j in range(len(blocks[0]))]
    z = ring.zero()
    out = []
    for bi, row in enumerate(blocks):
        for i in range(heights[bi]):
            line = []
            for bj, b in enumerate(row):
                if b is None:
                    line.extend([z] * widths[bj])
                else:
                    line.extend(b.rows[i])
            out.append(line)
    return Matrix(ring, out)


def direct_sum(*mats):
    ring = mats[0].ring
    n = len(mats)
    return block_matrix([[m if i == j else None for j, m in enumerate(mats)] for i in range(n)], ring)


def berkowitz_char_poly(f):
    """Coefficients ``[1, c_1, ..., c_k]`` of ``det(lambda*I - f) = lambda^k + c_1 lambda^(k-1) + ...``.

    Division-free (Berkowitz/Samuelson recursion), so valid over any
    commutative ring including Z/m.
    """
    if not isinstance(f, Matrix) or not f.is_square():
        raise ValueError("characteristic polynomial needs a square matrix")
    ring = f.ring
    one, zero = ring.one(), ring.zero()
    a = f.rows
    p = [one]
    for k in range(1, f.nrows + 1):
        # split the leading k x k block as [[M, C], [R, d]]
        d = a[k - 1][k - 1]
        R = a[k - 1][: k - 1]
        C = [a[i][k - 1] for i in range(k - 1)]
        col = [one, -d]
        v = C
        for _ in range(k - 1):
            col.append(-_dot(R, v, zero))
            v = [_dot(a[i][: k - 1], v, zero) for i in range(k - 1)]
        # lower-triangular Toeplitz (k+1) x k with first column `col`, times p
        p = [_toeplitz_row(col, p, i, zero) for i in range(k + 1)]
    return p


def _toeplitz_row(col, p, i, zero):
    acc = zero
    for j in range(len(p)):
        if 0 <= i - j < len(col):
            acc = acc + col[i - j] * p[j]
    return acc


def _dot(u, v, zero):
    acc = zero
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def det(f):
    """Determinant via Berkowitz: ``(-1)^k * c_k``."""
    cp = berkowitz_char_poly(f)
    k = f.nrows
    return cp[k] if k % 2 == 0 else -cp[k]


# -- Smith normal form ------------------------------------------------------

def smith_normal_form(m):
    """Return ``(U, D, V)`` over ZZ with ``U @ m @ V == D``.

    ``D`` is diagonal with ``d_1 | d_2 | ...`` (nonnegative), ``U`` and
    ``V`` are unimodular.
    """
    if m.ring != ZZ:
        raise RingMismatchError("Smith normal form is only defined here over ZZ")
    D, U, V = snf_ints(m.to_ints(), m.nrows, m.ncols)
    return Matrix(ZZ, U), Matrix(ZZ, D), Matrix(ZZ, V)


def snf_ints(a, nrows, ncols):
    """Smith normal form of a list-of-lists integer matrix: ``(D, U, V)``."""
    A = [list(r) for r in a]
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        if k:
            A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        if k:
            for row in A:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    t = 0
    while t < min(nrows, ncols):
        # pivot: smallest nonzero |entry| in the remaining block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, nrows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, ncols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility: pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V
