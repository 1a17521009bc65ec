"""Fast exact rational functions of (u, q) and sparse operators over them.

Elements are reduced fractions of integer polynomials (python-flint
fmpz_mpoly).  With q pinned the polynomial ring has the single variable u
and q^k enters as a rational constant.  This layer carries the heavy
operator algebra (Gauss factors, quasideterminants, series modes); RatU
remains the exchange format for reports and dumps.
"""

from fractions import Fraction

import flint
from gmpy2 import mpq

from .exact_field import LaurentSeries, RatU, Scalar, normalize
from .linalg import Mat

_CTX2 = flint.fmpz_mpoly_ctx.get(("u", "q"), "lex")
_CTX1 = flint.fmpz_mpoly_ctx.get(("u",), "lex")


def _lcm(a, b):
    from math import gcd
    return a // gcd(a, b) * b


class BiField:
    """Fraction field Q(u, q), or Q(u) with q pinned to a rational."""

    def __init__(self, K):
        self.K = K
        self.symbolic = K.symbolic
        self.ctx = _CTX2 if K.symbolic else _CTX1
        self._one = self.ctx.from_dict({(0,) * self.ctx.nvars(): 1})
        self._zero = self.ctx.from_dict({})
        self.one = BiRat(self, self._one, self._one, False)
        self.zero = BiRat(self, self._zero, self._one, False)

    def __eq__(self, other):
        return isinstance(other, BiField) and self.K == other.K

    def __hash__(self):
        return hash(self.K)

    def poly(self, terms):
        """Integer polynomial from {(u-exp, q-exp): int}."""
        if self.symbolic:
            return self.ctx.from_dict({k: int(v) for k, v in terms.items() if v})
        out = {}
        for (a, b), v in terms.items():
            if b:
                raise ValueError("q-power in pinned mode")
            out[(a,)] = out.get((a,), 0) + int(v)
        return self.ctx.from_dict({k: v for k, v in out.items() if v})

    def const(self, c):
        if isinstance(c, BiRat):
            return c
        if isinstance(c, Scalar):
            return self.from_scalar(c)
        c = Fraction(int(mpq(c).numerator), int(mpq(c).denominator))
        return BiRat(self, self._one * c.numerator, self._one * c.denominator)

    def u(self, k=1):
        key = (k, 0) if self.symbolic else (k,)
        return BiRat(self, self.ctx.from_dict({key: 1}), self._one, False)

    def q(self, k=1):
        if not self.symbolic:
            return self.const(self.K.pinned ** k)
        if k >= 0:
            return BiRat(self, self.ctx.from_dict({(0, k): 1}), self._one, False)
        return BiRat(self, self._one, self.ctx.from_dict({(0, -k): 1}), False)

    def _qpoly(self, coeffs):
        """Integer-scaled polynomial in q and the scaling denominator."""
        den = 1
        for c in coeffs:
            den = _lcm(den, int(mpq(c).denominator))
        terms = {}
        for k, c in enumerate(coeffs):
            if c != 0:
                terms[(0, k)] = int(mpq(c) * den)
        return self.ctx.from_dict(terms), den

    def from_scalar(self, s):
        if not self.symbolic:
            return self.const(self.K(s))
        n, dn = self._qpoly(s.num)
        d, dd = self._qpoly(s.den)
        return BiRat(self, n * dd, d * dn)

    def from_ratu(self, r):
        """Convert a RatU in u over the coefficient field."""
        out = []
        for poly in (r.num, r.den):
            acc = self.zero
            for k, c in enumerate(poly):
                if c != 0:
                    acc = acc + self.const(c) * self.u(k)
            out.append(acc)
        return out[0] / out[1]

    def to_ratu(self, x):
        """RatU with coefficients in the QField of this context."""
        K = self.K
        parts = []
        for p in (x.num, x.den):
            by_u = {}
            for key, c in p.to_dict().items():
                a = int(key[0])
                b = int(key[1]) if self.symbolic else 0
                by_u.setdefault(a, {})[b] = int(c)
            top = max(by_u) if by_u else -1
            coeffs = []
            for a in range(top + 1):
                t = by_u.get(a, {})
                if self.symbolic:
                    m = max(t) if t else -1
                    coeffs.append(normalize(tuple(mpq(t.get(j, 0)) for j in range(m + 1)),
                                            (mpq(1),)) if t else Scalar(0))
                else:
                    coeffs.append(mpq(sum(t.values())))
            parts.append(coeffs)
        return RatU(K, parts[0], parts[1])


class BiRat:
    """Reduced fraction num/den of integer polynomials; den has positive
    leading coefficient."""

    __slots__ = ("F", "num", "den", "_terms")

    def __init__(self, F, num, den, reduce=True):
        self.F = F
        self._terms = None
        if den.is_zero():
            raise ZeroDivisionError("division by zero")
        if num.is_zero():
            self.num, self.den = F._zero, F._one
            return
        if reduce:
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        self.num, self.den = num, den

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _lift(self, other):
        if isinstance(other, BiRat):
            return other
        return self.F.const(other)

    def __add__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return BiRat(self.F, self.num + o.num, self.den)
        if o.den.is_one():
            return BiRat(self.F, self.num + o.num * self.den, self.den, False)
        if self.den.is_one():
            return BiRat(self.F, o.num + self.num * o.den, o.den, False)
        g = self.den.gcd(o.den)
        if g.is_one():
            return BiRat(self.F, self.num * o.den + o.num * self.den, self.den * o.den)
        a, b = o.den / g, self.den / g
        return BiRat(self.F, self.num * a + o.num * b, self.den * a)

    __radd__ = __add__

    def __neg__(self):
        return BiRat(self.F, -self.num, self.den, False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if self.num.is_zero() or o.num.is_zero():
            return self.F.zero
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 / g, d2 / g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 / g, d1 / g
        num, den = n1 * n2, d1 * d2
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return BiRat(self.F, num, den, False)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return BiRat(self.F, num, den, False)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return BiRat(self.F, self.num ** k, self.den ** k, False)

    def __eq__(self, other):
        if not isinstance(other, BiRat):
            if isinstance(other, (int, type(mpq(0)), Fraction)):
                other = self.F.const(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    # -- structure in u -------------------------------------------------

    def _by_u(self, p):
        """{u-exponent: integer polynomial in q (as a BiRat constant)}."""
        F = self.F
        by_u = {}
        for key, c in p.to_dict().items():
            a = int(key[0])
            mono = (0, int(key[1])) if F.symbolic else (0, 0)
            by_u.setdefault(a, {})[mono] = by_u.get(a, {}).get(mono, 0) + int(c)
        return {a: BiRat(F, F.poly(t), F._one, False) for a, t in by_u.items()}

    def u_coeffs(self):
        """(numerator, denominator) as {u-exponent: constant BiRat}."""
        return self._by_u(self.num), self._by_u(self.den)

    def is_const(self):
        return self.num.degrees()[0] == 0 and self.den.degrees()[0] == 0

    def scale_arg(self, c):
        """r(c u) for a constant c."""
        c = self._lift(c)
        F = self.F
        cn, cd = c.num, c.den
        D = max(self.num.degrees()[0], self.den.degrees()[0])
        pw = [cn ** i * cd ** (D - i) for i in range(D + 1)]
        out = []
        for p in (self.num, self.den):
            acc = F._zero
            for a, t in self._by_u(p).items():
                acc = acc + t.num * pw[a] * F.u(a).num
            out.append(acc)
        return BiRat(F, out[0], out[1])

    def invert_arg(self):
        """r(1/u)."""
        F = self.F
        D = max(self.num.degrees()[0], self.den.degrees()[0])
        out = []
        for p in (self.num, self.den):
            acc = F._zero
            for a, t in self._by_u(p).items():
                acc = acc + t.num * F.u(D - a).num
            out.append(acc)
        return BiRat(F, out[0], out[1])

    def _terms_cache(self):
        if self._terms is None:
            self._terms = tuple([(tuple(int(e) for e in k), int(c)) for k, c in p.to_dict().items()]
                                for p in (self.num, self.den))
        return self._terms

    def at(self, u0, q0=None):
        """Exact value at u = u0 (q = q0 when q is symbolic)."""
        nt, dt = self._terms_cache()
        u0 = mpq(u0)
        if self.F.symbolic:
            q0 = mpq(q0)
            d = sum(mpq(c) * u0 ** k[0] * q0 ** k[1] for k, c in dt)
            if d == 0:
                raise ZeroDivisionError("pole at u = %s, q = %s" % (u0, q0))
            return sum(mpq(c) * u0 ** k[0] * q0 ** k[1] for k, c in nt) / d
        d = sum(mpq(c) * u0 ** k[0] for k, c in dt)
        if d == 0:
            raise ZeroDivisionError("pole at u = %s" % u0)
        return sum(mpq(c) * u0 ** k[0] for k, c in nt) / d

    def expand(self, point, window):
        """Truncated Laurent expansion in u at 0 ('+') or infinity ('-')."""
        lo, hi = window
        F = self.F
        if self.num.is_zero():
            return LaurentSeries(lo, hi, {}, "+" if point in ("zero", "+") else "-", F.zero)
        n, d = self.u_coeffs()
        if point in ("zero", "+", 0):
            s = min(d)
            t = min(n)
            if t - s < lo:
                raise ValueError("pole of order %d at u = 0 reaches below window %d" % (s - t, lo))
            num = [n.get(k, F.zero) for k in range(max(n) + 1)]
            den = [d.get(k, F.zero) for k in range(s, max(d) + 1)]
            count = hi + s + 1
            coeffs = _quotient_series(num, den, count, F) if count > 0 else []
            table = {k - s: c for k, c in enumerate(coeffs) if lo <= k - s <= hi and c}
            return LaurentSeries(lo, hi, table, "+", F.zero)
        dn, dd = max(n), max(d)
        e = dn - dd
        if e > hi:
            raise ValueError("pole of order %d at u = infinity exceeds window %d" % (e, hi))
        rn = [n.get(dn - k, F.zero) for k in range(dn + 1)]
        rd = [d.get(dd - k, F.zero) for k in range(dd + 1)]
        count = e - lo + 1
        coeffs = _quotient_series(rn, rd, count, F) if count > 0 else []
        table = {e - k: c for k, c in enumerate(coeffs) if lo <= e - k <= hi and c}
        return LaurentSeries(lo, hi, table, "-", F.zero)

    def __str__(self):
        return str(self.F.to_ratu(self))

    def __repr__(self):
        return "BiRat(%s)" % self


def _quotient_series(num, den, count, F):
    inv = den[0].inverse()
    out = []
    for k in range(count):
        acc = num[k] if k < len(num) else F.zero
        for j in range(1, min(k, len(den) - 1) + 1):
            if den[j] and out[k - j]:
                acc = acc - den[j] * out[k - j]
        out.append(acc * inv)
    return out


# ---------------------------------------------------------------------------
# sparse operators over BiRat
# ---------------------------------------------------------------------------

class FOp:
    """Sparse square operator {(row, col): BiRat}."""

    __slots__ = ("F", "dim", "entries")

    def __init__(self, F, dim, entries=None):
        self.F, self.dim = F, dim
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def identity(cls, F, dim, c=None):
        c = F.one if c is None else F.const(c)
        return cls(F, dim, {(i, i): c for i in range(dim)})

    @classmethod
    def zero(cls, F, dim):
        return cls(F, dim, {})

    @classmethod
    def from_tensor(cls, F, op):
        """Convert a TensorOperator over RatU."""
        return cls(F, op.dim, {k: F.from_ratu(v) for k, v in op.entries.items()})

    def __getitem__(self, rc):
        return self.entries.get(rc, self.F.zero)

    def _new(self, entries):
        return FOp(self.F, self.dim, entries)

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
        c = self.F.const(c)
        return self._new({k: v * c for k, v in self.entries.items()})

    def __matmul__(self, other):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch %d vs %d" % (self.dim, other.dim))
        by_row = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, []).append((c, v))
        acc = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                acc.setdefault((r, c), []).append(a * b)
        out = {}
        for key, terms in acc.items():
            s = terms[0]
            for t in terms[1:]:
                s = s + t
            out[key] = s
        return self._new(out)

    def comm(self, other):
        return self @ other - other @ self

    def map(self, fn):
        return self._new({k: fn(v) for k, v in self.entries.items()})

    def scale_arg(self, c):
        return self.map(lambda v: v.scale_arg(c))

    def is_zero(self):
        return not self.entries

    def is_scalar(self):
        """The scalar c when self == c * 1, else None."""
        if any(r != c for r, c in self.entries):
            return None
        if not self.entries:
            return self.F.zero
        vals = [self.entries.get((i, i)) for i in range(self.dim)]
        if any(v is None for v in vals) or any(v != vals[0] for v in vals[1:]):
            return None
        return vals[0]

    def __eq__(self, other):
        if not isinstance(other, FOp) or self.dim != other.dim:
            return False
        keys = set(self.entries) | set(other.entries)
        return all(self[k] == other[k] for k in keys)

    def first_difference(self, other):
        keys = sorted(set(self.entries) | set(other.entries))
        for k in keys:
            if self[k] != other[k]:
                return {"entry": k, "lhs": self[k], "rhs": other[k]}
        return None

    def at(self, u0, q0=None):
        rows = [[mpq(0)] * self.dim for _ in range(self.dim)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v.at(u0, q0)
        return Mat(rows)

    def components(self):
        """Index blocks on which the operator is block diagonal."""
        parent = list(range(self.dim))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for r, c in self.entries:
            a, b = find(r), find(c)
            if a != b:
                parent[a] = b
        groups = {}
        for i in range(self.dim):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def inverse(self, label="operator"):
        """Exact inverse, block by block."""
        F = self.F
        out = {}
        for comp in self.components():
            k = len(comp)
            pos = {g: i for i, g in enumerate(comp)}
            a = [[F.zero] * k + [F.one if i == j else F.zero for j in range(k)] for i in range(k)]
            for (r, c), v in self.entries.items():
                if r in pos:
                    a[pos[r]][pos[c]] = v
            for col in range(k):
                piv = next((r for r in range(col, k) if a[r][col]), None)
                if piv is None:
                    raise ZeroDivisionError("%s is singular (block %s)" % (label, comp))
                a[col], a[piv] = a[piv], a[col]
                inv = a[col][col].inverse()
                a[col] = [x * inv if x else x for x in a[col]]
                for r in range(k):
                    f = a[r][col]
                    if r != col and f:
                        a[r] = [x - f * y if y else x for x, y in zip(a[r], a[col])]
            for i in range(k):
                for j in range(k):
                    v = a[i][k + j]
                    if v:
                        out[(comp[i], comp[j])] = v
        return self._new(out)

    def expand(self, point, window):
        """{(row, col): LaurentSeries}."""
        return {k: v.expand(point, window) for k, v in self.entries.items()}

    def __repr__(self):
        return "FOp(dim=%d, nnz=%d)" % (self.dim, len(self.entries))
