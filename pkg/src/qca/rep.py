"""Cartan data, the vector representation, and fused evaluation L-operators."""

import math
import time
from fractions import Fraction

from gmpy2 import mpq

from .exact_field import CheckResult, QField, RatU, Span, pdivmod, peval, pmul, verify_identity
from .linalg import Mat, SparseMat, field_inverse
from .report import CheckReport, witness_text
from .rmatrix import _run, build_param
from .tensor_ops import IndexData, SiteShape, TensorOperator, _embed_plan, embed_factor


# ---------------------------------------------------------------------------
# Cartan data
# ---------------------------------------------------------------------------

def _root_form(n):
    """Gram matrix (alpha_i, alpha_j) for alpha_i = e_i - e_{i+1}, alpha_n = 2 e_n."""
    def vec(i):
        v = [0] * n
        if i < n:
            v[i - 1], v[i] = 1, -1
        else:
            v[n - 1] = 2
        return v
    roots = [vec(i) for i in range(1, n + 1)]
    return [[sum(a * b for a, b in zip(x, y)) for y in roots] for x in roots]


def btilde_closed(n, i, j):
    """Closed form of the (i, j) entry of B^-1, 1-based."""
    if i < j:
        i, j = j, i
    if i == j == n:
        return mpq(n, 4)
    if i == n:
        return mpq(j, 2)
    return mpq(j)


def btilde_qk_closed(n, i, j, k, K):
    """Closed form of the (i, j) entry of B(q^k)^-1."""
    if i < j:
        i, j = j, i
    x = K.q(k)

    def br(m, e):
        return K.qint(m, base=K.q(e))

    two_top = br(2, k * (n + 1))
    if i == j == n:
        return K.qint(n, base=x) / (K.qint(2, base=x) * two_top)
    if i == n:
        return K.qint(j, base=x) / two_top
    return br(2, k * (n + 1 - i)) * K.qint(j, base=x) / two_top


class CartanData:
    """Cartan matrix A, r_i, B = CA and B^-1 for the symplectic algebra of rank n."""

    def __init__(self, n, K=None):
        if n < 1:
            raise ValueError("rank n must be at least 1")
        self.n = n
        self.K = K or QField()
        G = _root_form(n)
        self.B = G
        self.r = [G[i][i] // 2 for i in range(n)]
        self.A = [[2 * G[i][j] // G[i][i] for j in range(n)] for i in range(n)]
        self.Btilde = field_inverse([[mpq(x) for x in row] for row in G], mpq(1), mpq(0))

    def q_i(self, i):
        """q_i = q^{r_i}, 1-based."""
        return self.K.q(self.r[i - 1])

    def serre_r(self, i, j):
        return 1 - self.A[i - 1][j - 1]

    def B_qk(self, k):
        K = self.K
        return [[K.qint(b, base=K.q(k)) for b in row] for row in self.B]

    def Btilde_qk(self, k):
        K = self.K
        return field_inverse(self.B_qk(k), K.one, K.zero)


def cartan_data(n, kmax=3, K=None):
    data = CartanData(n, K)
    data.kmax = kmax
    return data


def _matprod(a, b, zero):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = zero
            for k in range(n):
                s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(row)
    return out


def _first_mismatch(got, want):
    for i, (r, s) in enumerate(zip(got, want)):
        for j, (x, y) in enumerate(zip(r, s)):
            if x != y:
                return {"entry": (i + 1, j + 1), "lhs": x, "rhs": y}
    return None


def check_cartan(n, kmax=3, K=None, perturb=False, report=None):
    K = K or QField()
    report = report or CheckReport("cartan", {"n": n, "kmax": kmax, "q_mode": K.mode})
    cd = cartan_data(n, kmax, K)

    def wrap(w):
        return CheckResult(w is None, 1, w)

    def inverse():
        I = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
        return wrap(_first_mismatch(_matprod(cd.Btilde, [[mpq(x) for x in r] for r in cd.B], mpq(0)), I))

    def closed():
        want = [[btilde_closed(n, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
        if perturb:
            want[0][0] += 1
        return wrap(_first_mismatch(cd.Btilde, want))

    _run(report, "cartan/n=%d/Btilde-B" % n, "Btilde B = 1", inverse)
    _run(report, "cartan/n=%d/Btilde-closed" % n, "Btilde closed form", closed)
    for k in range(1, kmax + 1):
        def qinv(k=k):
            I = [[K.one if i == j else K.zero for j in range(n)] for i in range(n)]
            return wrap(_first_mismatch(_matprod(cd.Btilde_qk(k), cd.B_qk(k), K.zero), I))

        def qclosed(k=k):
            want = [[btilde_qk_closed(n, i, j, k, K) for j in range(1, n + 1)]
                    for i in range(1, n + 1)]
            return wrap(_first_mismatch(cd.Btilde_qk(k), want))

        _run(report, "cartan/n=%d/Btilde(q^%d)-B(q^%d)" % (n, k, k), "Btilde(q^k) B(q^k) = 1", qinv)
        _run(report, "cartan/n=%d/Btilde(q^%d)-closed" % (n, k), "Btilde(q^k) closed form", qclosed)
    return report


# ---------------------------------------------------------------------------
# the vector representation
# ---------------------------------------------------------------------------

class PiV:
    """Images of the Drinfeld generators in End C^{2n} at level zero."""

    def __init__(self, n, K=None):
        self.n = n
        self.K = K or QField()
        self.N = 2 * n
        self.ix = IndexData(n)
        self.cartan = CartanData(n, self.K)

    def _mat(self, terms):
        out = {}
        for (i, j), v in terms:
            key = (i - 1, j - 1)
            out[key] = out[key] + v if key in out else v
        return SparseMat(self.N, out, self.K.zero)

    def xp(self, i, k):
        n, q, p = self.n, self.K.q, self.ix.prime
        if i == n:
            return self._mat([((n + 1, n), -q(-(n + 1) * k))])
        return self._mat([((i + 1, i), -q(-i * k)), ((p(i), p(i + 1)), q(-(2 * n + 2 - i) * k))])

    def xm(self, i, k):
        n, q, p = self.n, self.K.q, self.ix.prime
        if i == n:
            return self._mat([((n, n + 1), -q(-(n + 1) * k))])
        return self._mat([((i, i + 1), -q(-i * k)), ((p(i + 1), p(i)), q(-(2 * n + 2 - i) * k))])

    def x(self, sign, i, k):
        return self.xp(i, k) if sign > 0 else self.xm(i, k)

    def a(self, i, k):
        if k == 0:
            raise ValueError("a_{i,0} is not a generator")
        n, K, q, p = self.n, self.K, self.K.q, self.ix.prime
        c = K.qint(k, base=self.cartan.q_i(i)) / k
        if i == n:
            s = q(-(n + 1) * k)
            return self._mat([((n + 1, n + 1), c * s * q(-2 * k)), ((n, n), -c * s * q(2 * k))])
        s, t = q(-i * k), q(-(2 * n + 2 - i) * k)
        return self._mat([((i + 1, i + 1), c * s * q(-k)), ((i, i), -c * s * q(k)),
                          ((p(i), p(i)), c * t * q(-k)), ((p(i + 1), p(i + 1)), -c * t * q(k))])

    def k(self, i, power=1):
        n, q, p = self.n, self.K.q, self.ix.prime
        if i == n:
            special = {n + 1: q(2 * power), n: q(-2 * power)}
        else:
            special = {i + 1: q(power), p(i): q(power), i: q(-power), p(i + 1): q(-power)}
        return self._mat([((j, j), special.get(j, self.K.one)) for j in range(1, self.N + 1)])


def pi_v(n, K=None):
    return PiV(n, K)


def check_piv(n, window=3, K=None, perturb=False, report=None):
    """Spot checks of the level-zero Drinfeld relations on the mode tables."""
    K = K or QField()
    report = report or CheckReport("cartan", {"n": n, "q_mode": K.mode})
    P = PiV(n, K)
    cd = P.cartan
    rng = range(-window, window + 1)
    idx = range(1, n + 1)

    def first_bad(pairs):
        count = 0
        for label, lhs, rhs in pairs:
            count += 1
            d = lhs.first_difference(rhs)
            if d is not None:
                d["relation"] = label
                d["entry"] = (d["entry"][0] + 1, d["entry"][1] + 1)
                return CheckResult(False, count, d)
        return CheckResult(True, count)

    def kconj():
        def gen():
            for i in idx:
                for j in idx:
                    for s in (1, -1):
                        c = cd.q_i(i) ** (s * cd.A[i - 1][j - 1])
                        if perturb and i == j:
                            c = c * K.q()
                        for m in rng:
                            x = P.x(s, j, m)
                            yield ("k_%d x%s_%d,%d" % (i, "+-"[s < 0], j, m),
                                   P.k(i) @ x @ P.k(i, -1), x.scale(c))
        return first_bad(gen())

    def ax():
        def gen():
            for i in idx:
                for j in idx:
                    qi = cd.q_i(i)
                    for s in (1, -1):
                        for m in rng:
                            if m == 0:
                                continue
                            c = K.qint(m * cd.A[i - 1][j - 1], base=qi) / m * s
                            for l in rng:
                                yield ("[a_%d,%d, x%s_%d,%d]" % (i, m, "+-"[s < 0], j, l),
                                       P.a(i, m).comm(P.x(s, j, l)), P.x(s, j, m + l).scale(c))
        return first_bad(gen())

    def xx():
        def gen():
            for i in idx:
                for j in idx:
                    for s in (1, -1):
                        c = cd.q_i(i) ** (s * cd.A[i - 1][j - 1])
                        for m in rng:
                            for l in rng:
                                x = lambda a, b: P.x(s, a, b)
                                lhs = x(i, m + 1) @ x(j, l) - (x(j, l) @ x(i, m + 1)).scale(c)
                                rhs = (x(i, m) @ x(j, l + 1)).scale(c) - x(j, l + 1) @ x(i, m)
                                yield ("x%s_%d,%d x%s_%d,%d" % ("+-"[s < 0], i, m, "+-"[s < 0], j, l),
                                       lhs, rhs)
        return first_bad(gen())

    _run(report, "piv/n=%d/k-conjugation" % n, "representation pi_V: k_i x_j k_i^-1", kconj)
    _run(report, "piv/n=%d/a-x" % n, "representation pi_V: [a_i,m, x_j,l]", ax)
    _run(report, "piv/n=%d/x-x" % n, "representation pi_V: x-x quadratic relation", xx)
    return report


# ---------------------------------------------------------------------------
# integer-cleared operator products
# ---------------------------------------------------------------------------

class Arg:
    """Spectral argument coef * prod(num) / prod(den) over named variables."""

    def __init__(self, coef=1, num=(), den=()):
        self.coef = mpq(coef)
        self.num, self.den = tuple(num), tuple(den)

    def value(self, assign):
        x = self.coef
        for v in self.num:
            x = x * assign[v]
        for v in self.den:
            x = x / assign[v]
        return x

    def span(self, dmax):
        s = Span()
        for v in self.num + self.den:
            s = s * Span({v: (0, dmax)})
        return s


class ClearedFactor:
    """Entries of a parametric R-matrix times the lcm of their denominators,
    as integer tables {(x-power, shifted q-power): coefficient}."""

    def __init__(self, Rm):
        K = self.K = Rm.K
        delta, _, _ = Rm.cleared()
        self.delta = delta.num
        self.dims = Rm.op.shape.dims
        raw = {}
        for key, v in Rm.op.entries.items():
            num, rem = pdivmod(pmul(v.num, self.delta), v.den)
            if rem:
                raise ArithmeticError("denominator does not divide the common denominator")
            terms = {}
            for kx, c in enumerate(num):
                if c == 0:
                    continue
                if K.symbolic:
                    lau = c.laurent()
                    if lau is None:
                        raise ValueError("coefficient %s is not a Laurent polynomial in q" % c)
                    for e, cc in lau.items():
                        terms[(kx, e)] = mpq(cc)
                else:
                    terms[(kx, 0)] = mpq(c)
            raw[key] = terms
        dens = [c.denominator for t in raw.values() for c in t.values()]
        self.dint = math.lcm(*[int(d) for d in dens]) if dens else 1
        es = [e for t in raw.values() for (_, e) in t]
        kxs = [kx for t in raw.values() for (kx, _) in t]
        self.emin = min(es) if es else 0
        self.etop = (max(es) if es else 0) - self.emin
        self.dmax = max(kxs + [len(self.delta) - 1])
        self.table = {key: [(kx, e - self.emin, int(c * self.dint)) for (kx, e), c in t.items()]
                      for key, t in raw.items()}

    def values(self, xn, xd, qn, qd):
        """Integer entries D * xd^dmax * q^-emin * numerator(xn/xd) at q = qn/qd
        (homogenized by qd^etop)."""
        xp = [xn ** k * xd ** (self.dmax - k) for k in range(self.dmax + 1)]
        qp = [qn ** e * qd ** (self.etop - e) for e in range(self.etop + 1)]
        return {key: sum(c * xp[kx] * qp[e] for kx, e, c in t) for key, t in self.table.items()}

    def l1(self, xn, xd):
        best = 0
        for t in self.table.values():
            by_e = {}
            for kx, e, c in t:
                by_e[e] = by_e.get(e, 0) + c * xn ** kx * xd ** (self.dmax - kx)
            best = max(best, sum(abs(v) for v in by_e.values()))
        return best

    def scale(self, xn, xd, q0):
        """Factor turning the integer entries back into entry values."""
        K = self.K
        delta = [K.at(c, q0) for c in self.delta] if K.symbolic else list(self.delta)
        d = peval(delta, mpq(xn, xd))
        qpart = mpq(q0) ** (-self.emin) * mpq(q0.denominator) ** self.etop if K.symbolic else 1
        return self.dint * mpq(xd) ** self.dmax * qpart * d


def _split(x):
    f = Fraction(int(x.numerator), int(x.denominator))
    return f.numerator, f.denominator


def _embed_rows(vals, sub_dims, positions, dims):
    total, sub_off, rest_off = _embed_plan(tuple(dims), tuple(positions))
    rows = [dict() for _ in range(total)]
    for (r, c), v in vals.items():
        if not v:
            continue
        a, b = sub_off[r], sub_off[c]
        for o in rest_off:
            rows[a + o][b + o] = v
    return rows


def _spmul(A, B):
    out = []
    for arow in A:
        acc = {}
        for k, a in arow.items():
            for j, b in B[k].items():
                acc[j] = acc.get(j, 0) + a * b
        out.append({j: x for j, x in acc.items() if x})
    return out


def _product(mats):
    M = mats[-1]
    for F in reversed(mats[:-1]):
        M = _spmul(F, M)
    return M


class ProductIdentity:
    """Certificate for prod(lhs factors) == prod(rhs factors), each factor a
    parametric R-matrix on some sites evaluated at a monomial argument.

    Both sides contain the same factors, so clearing denominators multiplies
    them by the same scalar.  At a grid point the cleared entries are integer
    polynomials in q; when q is symbolic they are compared at one integer
    q = Q exceeding twice the coefficient bound, where a nonzero integer
    polynomial cannot vanish."""

    def __init__(self, lhs, rhs, dims, K):
        self.lhs, self.rhs, self.dims, self.K = lhs, rhs, tuple(dims), K
        key = lambda f: (id(f[0]), tuple(f[1]), f[2].coef, f[2].num, f[2].den)
        if sorted(map(key, lhs)) != sorted(map(key, rhs)):
            raise ValueError("both sides must consist of the same factors")
        self.total = 1
        for d in dims:
            self.total *= d

    def span(self):
        s = Span()
        for cf, _, arg in self.lhs:
            s = s * arg.span(cf.dmax)
        return s

    def _side(self, factors, assign, qn, qd, cache):
        mats = []
        for cf, pos, arg in factors:
            xn, xd = _split(arg.value(assign))
            k = (id(cf), tuple(pos), xn, xd)
            if k not in cache:
                cache[k] = _embed_rows(cf.values(xn, xd, qn, qd), cf.dims, pos, self.dims)
            mats.append(cache[k])
        return _product(mats)

    def _q_point(self, assign):
        if not self.K.symbolic:
            return 1, 1
        bound = 2 * self.total ** (len(self.lhs) - 1)
        for cf, _, arg in self.lhs:
            xn, xd = _split(arg.value(assign))
            bound *= cf.l1(xn, xd)
        return 1 << (2 * bound + 2).bit_length(), 1

    def evaluate(self, assign):
        qn, qd = self._q_point(assign)
        cache = {}
        return (self._side(self.lhs, assign, qn, qd, cache),
                self._side(self.rhs, assign, qn, qd, cache), qn)

    def rational_witness(self, assign):
        """Entry values of both sides at a small q where they differ."""
        K = self.K
        qs = [K.pinned] if not K.symbolic else [mpq(c) for c in range(2, 66)]
        for q0 in qs:
            qn, qd = (1, 1) if not K.symbolic else _split(q0)
            try:
                scale = mpq(1)
                for cf, _, arg in self.lhs:
                    xn, xd = _split(arg.value(assign))
                    s = cf.scale(xn, xd, q0)
                    if s == 0:
                        raise ZeroDivisionError
                    scale *= s
            except ZeroDivisionError:
                continue
            cache = {}
            L = self._side(self.lhs, assign, qn, qd, cache)
            R = self._side(self.rhs, assign, qn, qd, cache)
            for r, (a, b) in enumerate(zip(L, R)):
                if a != b:
                    c = min(k for k in set(a) | set(b) if a.get(k, 0) != b.get(k, 0))
                    shape = SiteShape(self.dims)
                    out = {"entry": (",".join(str(i + 1) for i in shape.multi(r)),
                                     ",".join(str(i + 1) for i in shape.multi(c))),
                           "lhs": mpq(a.get(c, 0)) / scale, "rhs": mpq(b.get(c, 0)) / scale}
                    if K.symbolic:
                        out["q"] = str(q0)
                    return out
        return {"reason": "cleared products differ at q = Q"}

    def verify(self, vars, fixed=None):
        fixed = dict(fixed or {})
        bounds = self.span().bounds(vars)
        memo = {}

        def lhs(p):
            a = dict(fixed)
            a.update(p)
            L, R, Q = self.evaluate(a)
            memo["last"] = (a, R)
            return _Side(self, a, L, R)

        def rhs(p):
            return memo["last"][1]

        return verify_identity(lhs, rhs, vars, bounds)


class _Side:
    def __init__(self, ident, assign, L, R):
        self.ident, self.assign, self.L, self.R = ident, assign, L, R

    def first_difference(self, other):
        if self.L == other:
            return None
        w = self.ident.rational_witness(self.assign)
        w.pop("assignment", None)
        return w


# ---------------------------------------------------------------------------
# fused L-operators
# ---------------------------------------------------------------------------

def parse_params(text):
    """'a1,a2' or '3,1/2' -> list of names or rationals."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(mpq(tok))
        except ValueError:
            if not tok.isidentifier():
                raise ValueError("invalid evaluation parameter %r" % tok)
            out.append(tok)
    return out


class LOperator:
    """L(u) = Rbar_{0,1}(u/a_1) ... Rbar_{0,m}(u/a_m) on aux (x) W at level zero.

    Parameters are nonzero rationals or names of indeterminates.  The sign
    tag only selects the expansion direction: '+' at u = 0, '-' at infinity.
    """

    level = 0

    def __init__(self, n, params, sign="+", K=None, perturb=False):
        if sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")
        self.n, self.K, self.sign = n, K or QField(), sign
        self.params = list(params)
        for a in self.params:
            if not isinstance(a, str) and a == 0:
                raise ValueError("evaluation parameters must be nonzero")
        keys = [a if isinstance(a, str) else mpq(a) for a in self.params]
        if len(set(map(str, keys))) != len(keys):
            raise ValueError("evaluation parameters must be distinct")
        self.m = len(self.params)
        self.N = 2 * n
        self.shape = SiteShape([self.N] * (self.m + 1))
        self.wshape = SiteShape([self.N] * self.m) if self.m else SiteShape([1])
        self.R = build_param(n, "bar", self.K, perturb=perturb)
        self._op = None
        self._cf = None

    @property
    def names(self):
        return [a for a in self.params if isinstance(a, str)]

    @property
    def concrete(self):
        return not self.names

    def cleared_factor(self):
        if self._cf is None:
            self._cf = ClearedFactor(self.R)
        return self._cf

    def factor_args(self, var="u"):
        out = []
        for a in self.params:
            out.append(Arg(1, (var,), (a,)) if isinstance(a, str) else Arg(1 / mpq(a), (var,)))
        return out

    def operator(self):
        """L(u) as a TensorOperator over RatU in u (concrete parameters only)."""
        if not self.concrete:
            raise ValueError("operator() needs numeric evaluation parameters")
        if self._op is None:
            K = self.K
            op = TensorOperator.identity(K, self.shape)
            for j, a in enumerate(self.params):
                f = self.R.op.map(lambda v, a=a: v.scale_arg(K.one / K(a)))
                op = op @ embed_factor(f, (0, j + 1), self.shape)
            self._op = op
        return self._op

    def at(self, u0, q0=None, values=None):
        """Exact numeric matrix at u = u0; symbolic parameters from ``values``."""
        values = values or {}
        dims = self.shape.dims
        out = Mat.identity(self.shape.total)
        from .tensor_ops import embed_mat
        for j, a in enumerate(self.params):
            a0 = mpq(values[a]) if isinstance(a, str) else mpq(a)
            out = out @ embed_mat(self.R.at(u0 / a0, q0), (self.N, self.N), (0, j + 1), dims)
        return out

    def entry(self, i, j):
        """<i| L(u) |j> on the aux site as a TensorOperator on W, 1-based."""
        op = self.operator()
        W = self.wshape.total
        out = {}
        for (r, c), v in op.entries.items():
            a, w = divmod(r, W)
            b, x = divmod(c, W)
            if a == i - 1 and b == j - 1:
                out[(w, x)] = v
        return TensorOperator(self.K, self.wshape, out)

    def expansion(self, window):
        """Entry expansions in the direction of the sign tag."""
        point = "zero" if self.sign == "+" else "infinity"
        return {k: v.expand_at(point, window) for k, v in self.operator().entries.items()}

    def __repr__(self):
        return "LOperator(n=%d, params=%s, sign=%s)" % (self.n, [str(a) for a in self.params],
                                                         self.sign)


def fused_L(n, eval_params, sign="+", K=None, perturb=False):
    return LOperator(n, eval_params, sign, K, perturb)


def default_params(m, K, seed=0):
    """Fresh indeterminates in symbolic mode, distinct primes when q is pinned."""
    if K.symbolic:
        return ["a%d" % (j + 1) for j in range(m)]
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    start = seed % 4
    return [mpq(p) for p in primes[start:start + m]]


def rll_identity(L, exchange=None):
    """ProductIdentity for Rbar(u/v) L_1(u) L_2(v) = L_2(v) L_1(u) Rbar(u/v)."""
    N, m = L.N, L.m
    dims = (N, N) + (N,) * m
    cfL = L.cleared_factor()
    cfR = exchange or cfL
    R12 = (cfR, (0, 1), Arg(1, ("u",), ("v",)))
    L1 = [(cfL, (0, j + 2), a) for j, a in enumerate(L.factor_args("u"))]
    L2 = [(cfL, (1, j + 2), a) for j, a in enumerate(L.factor_args("v"))]
    return ProductIdentity([R12] + L1 + L2, L2 + L1 + [R12], dims, L.K)


def check_rll(L, variant="bar", perturb=False, report=None):
    K = L.K
    report = report or CheckReport("rll", {"n": L.n, "m": L.m, "q_mode": K.mode})
    if variant not in ("bar", "hat"):
        raise ValueError("RLL exchange matrix must be the bar or hat variant")
    exchange = ClearedFactor(build_param(L.n, variant, K, perturb=perturb)) if perturb \
        or variant != "bar" else None
    names = L.names
    fixed = {}
    note = None
    if names and len(names) == len(L.params):
        # the identity is homogeneous in (u, v, a_1, ..., a_m)
        fixed[names[0]] = mpq(1)
        note = "homogeneity: %s = 1" % names[0]
    vars = ["u", "v"] + [a for a in names if a not in fixed]
    if K.symbolic:
        extra = "q certified by one integer point above the coefficient bound"
        note = extra if note is None else note + "; " + extra
    ident = rll_identity(L, exchange)
    params = ",".join(str(a) for a in L.params) or "-"
    _run(report, "rll/n=%d/m=%d/%s" % (L.n, L.m, params),
         "RLL: Rbar(u/v)L1(u)L2(v) = L2(v)L1(u)Rbar(u/v)",
         lambda: ident.verify(vars, fixed), note)
    return report
