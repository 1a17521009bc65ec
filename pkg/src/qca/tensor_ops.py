"""Operators on tensor products of sites.

Sites are ordered with auxiliary sites first (site 0 carries the label "1"
of L_1), module sites after.  Flat indices follow row-major site ordering:
the last site varies fastest.  User-facing multi-indices (matrix elements,
dumps) are 1-based, as in the matrix units e_ij; internal indices are 0-based.
"""

import itertools
from functools import lru_cache

from gmpy2 import mpq

from .exact_field import RatU
from .linalg import Mat


class IndexData:
    """Index conventions for C^{2n}: i' = 2n-i+1, signs eps_i, and bars."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("rank n must be at least 1")
        self.n = n
        self.N = 2 * n

    def prime(self, i):
        return self.N - i + 1

    def eps(self, i):
        return 1 if i <= self.n else -1

    def bar(self, i):
        return self.n - i + 1 if i <= self.n else self.n - i

    def bars(self):
        return [self.bar(i) for i in range(1, self.N + 1)]

    def __repr__(self):
        return "IndexData(n=%d)" % self.n


class SiteShape:
    def __init__(self, dims):
        dims = tuple(int(d) for d in dims)
        if any(d < 1 for d in dims):
            raise ValueError("site dimensions must be positive")
        self.dims = dims

    @property
    def total(self):
        t = 1
        for d in self.dims:
            t *= d
        return t

    def __len__(self):
        return len(self.dims)

    def __eq__(self, other):
        return isinstance(other, SiteShape) and self.dims == other.dims

    def __hash__(self):
        return hash(self.dims)

    def __repr__(self):
        return "SiteShape(%s)" % list(self.dims)

    def flat(self, multi):
        """0-based multi-index to flat index."""
        f = 0
        for i, d in zip(multi, self.dims):
            if not 0 <= i < d:
                raise IndexError("index %s out of range for %s" % (tuple(multi), self))
            f = f * d + i
        return f

    def multi(self, flat):
        out = []
        for d in reversed(self.dims):
            flat, r = divmod(flat, d)
            out.append(r)
        return tuple(reversed(out))


@lru_cache(maxsize=256)
def _embed_plan(dims, positions):
    """Offsets realising an operator on `positions` inside sites `dims`."""
    shape = SiteShape(dims)
    strides = []
    s = 1
    for d in reversed(dims):
        strides.append(s)
        s *= d
    strides = list(reversed(strides))
    sub_dims = [dims[p] for p in positions]
    sub_off = []
    for idx in itertools.product(*[range(d) for d in sub_dims]):
        sub_off.append(sum(i * strides[p] for i, p in zip(idx, positions)))
    rest = [k for k in range(len(dims)) if k not in positions]
    rest_off = []
    for idx in itertools.product(*[range(dims[k]) for k in rest]):
        rest_off.append(sum(i * strides[k] for i, k in zip(idx, rest)))
    return shape.total, tuple(sub_off), tuple(rest_off)


def _check_positions(positions, sub_dims, dims):
    if len(set(positions)) != len(positions):
        raise ValueError("repeated position in %s" % (positions,))
    for p, d in zip(positions, sub_dims):
        if not 0 <= p < len(dims):
            raise ValueError("position %d outside %d sites" % (p, len(dims)))
        if dims[p] != d:
            raise ValueError("dimension mismatch at position %d: %d vs %d" % (p, d, dims[p]))


def embed_entries(entries, sub_dims, positions, dims):
    """Embed a sparse {(r, c): v} operator on `positions` into `dims`."""
    positions = tuple(positions)
    _check_positions(positions, sub_dims, dims)
    total, sub_off, rest_off = _embed_plan(tuple(dims), positions)
    out = {}
    for (r, c), v in entries.items():
        a, b = sub_off[r], sub_off[c]
        for o in rest_off:
            out[(a + o, b + o)] = v
    return total, out


def embed_mat(m, sub_dims, positions, dims):
    """Numeric embedding of a Mat acting on `positions`."""
    positions = tuple(positions)
    _check_positions(positions, sub_dims, dims)
    total, sub_off, rest_off = _embed_plan(tuple(dims), positions)
    z = mpq(0)
    rows = [[z] * total for _ in range(total)]
    for r, row in enumerate(m.rows):
        a = sub_off[r]
        for c, v in enumerate(row):
            if not v:
                continue
            b = sub_off[c]
            for o in rest_off:
                rows[a + o][b + o] = v
    return Mat(rows)


def transpose_entries(entries, shape, site, index):
    """Partial transposition e_ij -> eps_i eps_j e_{j'i'} on one site."""
    dims = shape.dims
    if not 0 <= site < len(dims):
        raise ValueError("invalid site %d" % site)
    if dims[site] != index.N:
        raise ValueError("site %d has dimension %d, expected %d" % (site, dims[site], index.N))
    out = {}
    for (r, c), v in entries.items():
        mr, mc = list(shape.multi(r)), list(shape.multi(c))
        i, j = mr[site] + 1, mc[site] + 1
        sign = index.eps(i) * index.eps(j)
        mr[site], mc[site] = index.prime(j) - 1, index.prime(i) - 1
        out[(shape.flat(mr), shape.flat(mc))] = v if sign > 0 else -v
    return out


def trace_entries(entries, shape, site):
    dims = shape.dims
    if not 0 <= site < len(dims):
        raise ValueError("invalid site %d" % site)
    rest = SiteShape([d for k, d in enumerate(dims) if k != site]) if len(dims) > 1 else SiteShape([1])
    out = {}
    for (r, c), v in entries.items():
        mr, mc = shape.multi(r), shape.multi(c)
        if mr[site] != mc[site]:
            continue
        rr = mr[:site] + mr[site + 1:]
        cc = mc[:site] + mc[site + 1:]
        key = (rest.flat(rr) if rr else 0, rest.flat(cc) if cc else 0)
        out[key] = out[key] + v if key in out else v
    return rest, out


class TensorOperator:
    """Operator on a tensor product of sites with RatU entries."""

    def __init__(self, K, shape, entries=None):
        self.K = K
        self.shape = shape if isinstance(shape, SiteShape) else SiteShape(shape)
        self.entries = {}
        for key, v in (entries or {}).items():
            if not isinstance(v, RatU):
                v = RatU.const(K, v)
            if v:
                self.entries[key] = v
        self._spec = {}

    @classmethod
    def identity(cls, K, shape):
        shape = shape if isinstance(shape, SiteShape) else SiteShape(shape)
        return cls(K, shape, {(i, i): K.one for i in range(shape.total)})

    @property
    def dim(self):
        return self.shape.total

    def __getitem__(self, rc):
        r, c = rc
        return self.entries.get((r, c)) or RatU(self.K, ())

    def dense(self):
        """Dense list-of-rows view of the entries."""
        z = RatU(self.K, ())
        return [[self.entries.get((r, c), z) for c in range(self.dim)] for r in range(self.dim)]

    def _same(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s vs %s" % (self.shape, other.shape))

    def __add__(self, other):
        self._same(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return TensorOperator(self.K, self.shape, out)

    def __neg__(self):
        return TensorOperator(self.K, self.shape, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TensorOperator(self.K, self.shape, {k: v * c for k, v in self.entries.items()})

    def __matmul__(self, other):
        self._same(other)
        by_row = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, []).append((c, v))
        out = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                p = a * b
                out[(r, c)] = out[(r, c)] + p if (r, c) in out else p
        return TensorOperator(self.K, self.shape, out)

    __mul__ = __matmul__

    def __eq__(self, other):
        if not isinstance(other, TensorOperator) or self.shape != other.shape:
            return False
        keys = set(self.entries) | set(other.entries)
        return all(self[k] == other[k] for k in keys)

    def map(self, fn):
        return TensorOperator(self.K, self.shape, {k: fn(v) for k, v in self.entries.items()})

    def _specialized(self, q0):
        key = None if q0 is None else mpq(q0)
        spec = self._spec.get(key)
        if spec is None:
            spec = []
            for (r, c), v in self.entries.items():
                if self.K.symbolic:
                    num = tuple(self.K.at(x, q0) for x in v.num)
                    den = tuple(self.K.at(x, q0) for x in v.den)
                else:
                    num, den = v.num, v.den
                spec.append((r, c, num, den))
            if len(self._spec) > 8:
                self._spec.clear()
            self._spec[key] = spec
        return spec

    def at(self, u0, q0=None):
        """Exact numeric value at u = u0 (and q = q0 in symbolic mode)."""
        n = self.dim
        z = mpq(0)
        rows = [[z] * n for _ in range(n)]
        for r, c, num, den in self._specialized(q0):
            d = _peval(den, u0)
            if d == 0:
                raise ZeroDivisionError("pole of entry (%d, %d) at u = %s" % (r, c, u0))
            rows[r][c] = _peval(num, u0) / d
        return Mat(rows)

    def __repr__(self):
        return "TensorOperator(%s, nnz=%d)" % (self.shape, len(self.entries))


def _peval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return mpq(acc)


def embed_factor(op, positions, shape):
    """Operator acting as `op` on the given sites and as identity elsewhere."""
    shape = shape if isinstance(shape, SiteShape) else SiteShape(shape)
    positions = tuple(positions)
    if len(positions) != len(op.shape.dims):
        raise ValueError("need %d positions, got %d" % (len(op.shape.dims), len(positions)))
    _, out = embed_entries(op.entries, op.shape.dims, positions, shape.dims)
    return TensorOperator(op.K, shape, out)


def partial_transpose(X, site, index):
    return TensorOperator(X.K, X.shape, transpose_entries(X.entries, X.shape, site, index))


def partial_trace(X, site):
    rest, out = trace_entries(X.entries, X.shape, site)
    return TensorOperator(X.K, rest, out)


def matrix_element(X, bra, ket):
    """<bra|X|ket> for 1-based multi-indices."""
    if len(bra) != len(X.shape) or len(ket) != len(X.shape):
        raise IndexError("multi-index length must be %d" % len(X.shape))
    r = X.shape.flat([i - 1 for i in bra])
    c = X.shape.flat([i - 1 for i in ket])
    return X[(r, c)]


def mat_transpose(m, shape, site, index):
    entries = {(r, c): v for r, row in enumerate(m.rows) for c, v in enumerate(row) if v}
    return Mat.from_entries(m.nr, transpose_entries(entries, shape, site, index))


def mat_trace(m, shape, site):
    entries = {(r, c): v for r, row in enumerate(m.rows) for c, v in enumerate(row) if v}
    rest, out = trace_entries(entries, shape, site)
    return rest, Mat.from_entries(rest.total, out)


def dump(X):
    """Lines 'row-multiindex | col-multiindex | ratu-string' for nonzeros."""
    lines = []
    for (r, c) in sorted(X.entries):
        mr = ",".join(str(i + 1) for i in X.shape.multi(r))
        mc = ",".join(str(i + 1) for i in X.shape.multi(c))
        lines.append("%s | %s | %s" % (mr, mc, X.entries[(r, c)]))
    return "\n".join(lines)


def parse_dump(K, text, shape):
    shape = shape if isinstance(shape, SiteShape) else SiteShape(shape)
    entries = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        mr, mc, val = (s.strip() for s in line.split("|", 2))
        r = shape.flat([int(i) - 1 for i in mr.split(",")])
        c = shape.flat([int(i) - 1 for i in mc.split(",")])
        entries[(r, c)] = RatU.parse(K, val)
    return TensorOperator(K, shape, entries)
