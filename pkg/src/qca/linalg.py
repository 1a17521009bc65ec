"""Exact dense matrices over Q used for evaluated operators."""

from gmpy2 import mpq

from . import kernels

_Z = mpq(0)
_ONE = mpq(1)


class Mat:
    """Dense matrix of gmpy2.mpq, immutable by convention."""

    __slots__ = ("rows", "nr", "nc")

    def __init__(self, rows):
        self.rows = rows
        self.nr = len(rows)
        self.nc = len(rows[0]) if rows else 0

    @classmethod
    def zeros(cls, nr, nc=None):
        nc = nr if nc is None else nc
        return cls([[_Z] * nc for _ in range(nr)])

    @classmethod
    def identity(cls, n, c=_ONE):
        c = mpq(c)
        rows = [[_Z] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = c
        return cls(rows)

    @classmethod
    def from_entries(cls, n, entries, nc=None):
        """Build from a {(row, col): value} mapping."""
        m = cls.zeros(n, nc)
        for (i, j), v in entries.items():
            m.rows[i][j] = mpq(v)
        return m

    @property
    def shape(self):
        return (self.nr, self.nc)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other):
        return Mat(kernels.matmul(self.rows, other.rows))

    def __mul__(self, other):
        if isinstance(other, Mat):
            return self @ other
        c = mpq(other)
        if c == 0:
            return Mat.zeros(self.nr, self.nc)
        return Mat([[x * c if x else _Z for x in row] for row in self.rows])

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, Mat):
            return self + Mat.identity(self.nr, other)
        return Mat([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return self - Mat.identity(self.nr, other)
        return Mat([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Mat([[-x for x in row] for row in self.rows])

    def __eq__(self, other):
        if not isinstance(other, Mat):
            if self.nr != self.nc:
                return False
            return self == Mat.identity(self.nr, other)
        return self.rows == other.rows

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def first_difference(self, other):
        if not isinstance(other, Mat):
            other = Mat.identity(self.nr, other)
        for i, (r, s) in enumerate(zip(self.rows, other.rows)):
            if r != s:
                for j, (x, y) in enumerate(zip(r, s)):
                    if x != y:
                        return {"entry": (i, j), "lhs": x, "rhs": y}
        return None

    def is_zero(self):
        return all(not x for row in self.rows for x in row)

    def is_scalar(self):
        """The scalar c when self == c * identity, else None."""
        if self.nr != self.nc or not self.nr:
            return None
        c = self.rows[0][0]
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if x != (c if i == j else 0):
                    return None
        return c

    def T(self):
        return Mat([list(col) for col in zip(*self.rows)])

    def inverse(self):
        return Mat(kernels.inverse(self.rows))

    def solve(self, rhs):
        return Mat(kernels.solve(self.rows, rhs.rows))

    def det(self):
        return kernels.det(self.rows)

    def block(self, r0, r1, c0, c1):
        return Mat([row[c0:c1] for row in self.rows[r0:r1]])

    def nnz(self):
        return sum(1 for row in self.rows for x in row if x)

    def kron(self, other):
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append([x * y if x and y else _Z for x in r for y in s])
        return Mat(rows)

    def __repr__(self):
        return "Mat(%dx%d, nnz=%d)" % (self.nr, self.nc, self.nnz())


def block_matrix(blocks):
    """Assemble a matrix from a grid (list of lists) of equally sized Mats."""
    rows = []
    for brow in blocks:
        h = brow[0].nr
        for i in range(h):
            row = []
            for b in brow:
                row.extend(b.rows[i])
            rows.append(row)
    return Mat(rows)


class SparseMat:
    """Square sparse matrix over any exact ring ({(r, c): value})."""

    __slots__ = ("n", "entries", "zero")

    def __init__(self, n, entries=None, zero=0):
        self.n = n
        self.zero = zero
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def identity(cls, n, one, zero=0):
        return cls(n, {(i, i): one for i in range(n)}, zero)

    def __getitem__(self, rc):
        return self.entries.get(rc, self.zero)

    def _new(self, entries):
        return SparseMat(self.n, entries, self.zero)

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return self._new(out)

    def __neg__(self):
        return self._new({k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._new({k: v * c for k, v in self.entries.items()})

    def __matmul__(self, other):
        by_row = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, []).append((c, v))
        out = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                p = a * b
                out[(r, c)] = out[(r, c)] + p if (r, c) in out else p
        return self._new(out)

    def comm(self, other):
        return self @ other - other @ self

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, SparseMat) or self.n != other.n:
            return False
        return (self - other).is_zero()

    def first_difference(self, other):
        for k in sorted(set(self.entries) | set(other.entries)):
            a, b = self[k], other[k]
            if a != b:
                return {"entry": k, "lhs": a, "rhs": b}
        return None

    def __repr__(self):
        return "SparseMat(%d, nnz=%d)" % (self.n, len(self.entries))


def field_inverse(rows, one, zero):
    """Gauss-Jordan inverse of a small dense matrix over an exact field."""
    n = len(rows)
    a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = one / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
