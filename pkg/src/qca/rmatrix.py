"""Constant and parametric R-matrices of type C and their intrinsic identities."""

import time

from gmpy2 import mpq

from .exact_field import (CheckResult, LaurentSeries, QField, RatU, Span, expand_at, pgcd, pdivmod,
                          pmul, upoly_span, verify_identity)
from .linalg import Mat
from .report import CheckReport, witness_text
from .tensor_ops import IndexData, TensorOperator, embed_mat, mat_transpose


class RMatrixSet:
    """P, Q, R and D for C^{2n} (x) C^{2n}."""

    def __init__(self, n, K, index, P, Q, R, D):
        self.n, self.K, self.index = n, K, index
        self.P, self.Q, self.R, self.D = P, Q, R, D
        self.xi = K.q(-2 * n - 2)

    def D_mat(self, q0=None, inverse=False):
        vals = [self.K.at(d, q0) if self.K.symbolic else d for d in self.D]
        if inverse:
            vals = [1 / v for v in vals]
        return Mat.from_entries(len(vals), {(i, i): v for i, v in enumerate(vals)})


def _unit_pair(N, i, j, k, l):
    """Flat (row, col) of e_ij (x) e_kl with 1-based indices."""
    return ((i - 1) * N + (k - 1), (j - 1) * N + (l - 1))


def build_constants(n, K=None):
    if n < 1:
        raise ValueError("rank n must be at least 1")
    K = K or QField()
    ix = IndexData(n)
    N = ix.N
    q = K.q()
    P, Q, R = {}, {}, {}

    def add(d, key, v):
        d[key] = d[key] + v if key in d else v

    for i in range(1, N + 1):
        for j in range(1, N + 1):
            add(P, _unit_pair(N, i, j, j, i), K.one)
            sign = ix.eps(i) * ix.eps(j)
            add(Q, _unit_pair(N, ix.prime(i), ix.prime(j), i, j),
                sign * K.q(ix.bar(i) - ix.bar(j)))
            # R
            if i == j:
                add(R, _unit_pair(N, i, i, i, i), q)
            elif j != ix.prime(i):
                add(R, _unit_pair(N, i, i, j, j), K.one)
            else:
                add(R, _unit_pair(N, i, i, j, j), 1 / q)
            if i < j:
                add(R, _unit_pair(N, i, j, j, i), q - 1 / q)
            if i > j:
                add(R, _unit_pair(N, ix.prime(i), ix.prime(j), i, j),
                    -(q - 1 / q) * sign * K.q(ix.bar(i) - ix.bar(j)))
    shape = [N, N]
    D = [K.q(ix.bar(i)) for i in range(1, N + 1)]
    return RMatrixSet(n, K, ix, TensorOperator(K, shape, P), TensorOperator(K, shape, Q),
                      TensorOperator(K, shape, R), D)


# ---------------------------------------------------------------------------
# the scalar function f(u)
# ---------------------------------------------------------------------------

def _rhs_coefficients(K, xi, trunc):
    """Power-series coefficients of 1/((1-uq^-2)(1-uq^2)(1-u xi)(1-u/xi))."""
    q = K.q()
    out = [K.one] + [K.zero] * trunc
    for z in (q ** -2, q ** 2, xi, 1 / xi):
        # multiply by the geometric series of z
        acc = [K.zero] * (trunc + 1)
        for k in range(trunc + 1):
            s = K.zero
            p = K.one
            for j in range(k, -1, -1):
                s = s + out[j] * p
                p = p * z
            acc[k] = s
        out = acc
    return out


def scalar_f(n, trunc, method="recursion", K=None):
    """Coefficients f_0..f_trunc of f(u) as a LaurentSeries on [0, trunc]."""
    K = K or QField()
    if trunc < 0:
        raise ValueError("truncation must be non-negative")
    q = K.q()
    xi = K.q(-2 * n - 2)
    if method == "recursion":
        c = _rhs_coefficients(K, xi, trunc)
        f = [K.one]
        for k in range(1, trunc + 1):
            s = c[k]
            for j in range(1, k):
                s = s - f[j] * f[k - j] * xi ** (k - j)
            f.append(s / (1 + xi ** k))
    elif method == "product":
        # log f = sum_k u^k/k * S_k/(1 - xi^(2k)), the product over r summed
        # as geometric series in xi^2
        L = [K.zero]
        for k in range(1, trunc + 1):
            S = (xi ** -k + xi ** k + q ** (2 * k) + q ** (-2 * k)
                 - (1 + q ** (-2 * k) * xi ** k + q ** (2 * k) * xi ** k + xi ** (2 * k)))
            L.append(S / (1 - xi ** (2 * k)) / k)
        f = [K.one]
        for k in range(1, trunc + 1):
            s = K.zero
            for j in range(1, k + 1):
                s = s + j * L[j] * f[k - j]
            f.append(s / k)
    else:
        raise ValueError("method must be 'recursion' or 'product'")
    return LaurentSeries(0, trunc, dict(enumerate(f)), "+", K.zero)


def g_series(n, trunc, K=None, f=None):
    """g(u) = f(u)(u - q^-2)(u - xi) truncated on [0, trunc]."""
    K = K or QField()
    f = f or scalar_f(n, trunc, K=K)
    xi = K.q(-2 * n - 2)
    poly = LaurentSeries(0, 2, {0: K.q(-2) * xi, 1: -(K.q(-2) + xi), 2: K.one}, None, K.zero)
    return (f * poly).restrict(0, trunc)


# ---------------------------------------------------------------------------
# parametric R-matrices
# ---------------------------------------------------------------------------

VARIANTS = ("full", "bar", "hat", "typeA")


class ParamRMatrix:
    """Parametric R-matrix.  For the full variant ``op`` holds the exact bar
    matrix and ``scalar_factor`` the truncated g(u), so that R(u) = g(u) op."""

    def __init__(self, variant, n, K, op, scalar_factor=None):
        self.variant, self.n, self.K = variant, n, K
        self.op = op
        self.scalar_factor = scalar_factor
        self._cleared = None

    @property
    def dim(self):
        return self.op.shape.dims[0]

    def at(self, x0, q0=None):
        return self.op.at(x0, q0)

    def cleared(self, var="x"):
        """(Delta, span of Delta*op, span of Delta) with Delta the monic lcm
        of entry denominators."""
        if self._cleared is None:
            K = self.K
            den = (K.one,)
            for v in self.op.entries.values():
                g = pgcd(den, v.den)
                den = pmul(den, pdivmod(v.den, g)[0])
            span = Span()
            first = True
            for v in self.op.entries.values():
                num, rem = pdivmod(pmul(v.num, den), v.den)
                assert not rem
                s = upoly_span(num, K, var)
                span = s if first else span | s
                first = False
            self._cleared = (RatU(K, den), span, upoly_span(den, K, var))
        return self._cleared


def rbar_operator(n, K, perturb=False):
    """R-bar(u) as a TensorOperator over RatU in u."""
    C = build_constants(n, K)
    q = K.q()
    u = RatU.u(K)
    one = RatU.const(K, K.one)
    D = u * q - 1 / q
    a = (u - 1) / D
    b = one * (q - 1 / q) / D
    c = -(q - 1 / q) * (u - 1) * C.xi / (D * (u - C.xi))
    op = C.R.scale(a) + C.P.scale(b) + C.Q.scale(c)
    if perturb:
        op = _perturbed(op)
    return op


def _perturbed(op):
    entries = dict(op.entries)
    entries[(0, 0)] = op[(0, 0)] + 1
    return TensorOperator(op.K, op.shape, entries)


def typeA_operator(n, K, perturb=False):
    """R_A(u) on C^n (x) C^n."""
    q = K.q()
    u = RatU.u(K)
    D = q * u - 1 / q
    d = (u - 1) / D
    lo = RatU.const(K, q - 1 / q) / D
    hi = (q - 1 / q) * u / D
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                entries[_unit_pair(n, i, i, i, i)] = RatU.const(K, K.one)
            else:
                entries[_unit_pair(n, i, i, j, j)] = d
                entries[_unit_pair(n, i, j, j, i)] = lo if i > j else hi
    op = TensorOperator(K, [n, n], entries)
    return _perturbed(op) if perturb else op


def build_param(n, variant, K=None, trunc=8, perturb=False):
    K = K or QField()
    if variant not in VARIANTS:
        raise ValueError("invalid variant %r; expected one of %s" % (variant, ", ".join(VARIANTS)))
    if variant == "typeA":
        return ParamRMatrix(variant, n, K, typeA_operator(n, K, perturb))
    bar = rbar_operator(n, K, perturb)
    if variant == "bar":
        return ParamRMatrix(variant, n, K, bar)
    q = K.q()
    u = RatU.u(K)
    if variant == "hat":
        return ParamRMatrix(variant, n, K, bar.scale((u * q - 1 / q) / (u - 1)))
    return ParamRMatrix(variant, n, K, bar, g_series(n, trunc, K))


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def _vars(K, *names):
    return (["q"] if K.symbolic else []) + list(names)


def _q0(K, p):
    return p["q"] if K.symbolic else K.pinned


def _run(report, item_id, anchor, fn, note=None):
    t = time.perf_counter()
    try:
        res = fn()
    except Exception as exc:  # reported, never swallowed silently
        report.add(item_id, anchor, "ERROR", {"error": "%s: %s" % (type(exc).__name__, exc)},
                   (time.perf_counter() - t) * 1000, note)
        return None
    ms = (time.perf_counter() - t) * 1000
    if isinstance(res, tuple):
        res, extra = res
        note = extra if note is None else "%s; %s" % (note, extra)
    report.add(item_id, anchor, res.status, witness_text(res.witness) if res.witness else None,
               ms, note)
    return res


def ybe_identity(Rm):
    """(lhs, rhs, vars, bounds) for R12(u)R13(uv)R23(v) = R23(v)R13(uv)R12(u)."""
    K = Rm.K
    N = Rm.dim
    dims = (N, N, N)
    _, span, _ = Rm.cleared()

    def ops(p):
        q0 = _q0(K, p)
        u, v = p["u"], p["v"]
        R12 = embed_mat(Rm.at(u, q0), (N, N), (0, 1), dims)
        R13 = embed_mat(Rm.at(u * v, q0), (N, N), (0, 2), dims)
        R23 = embed_mat(Rm.at(v, q0), (N, N), (1, 2), dims)
        return R12, R13, R23

    def lhs(p):
        R12, R13, R23 = ops(p)
        return R12 @ (R13 @ R23)

    def rhs(p):
        R12, R13, R23 = ops(p)
        return R23 @ (R13 @ R12)

    total = span.subst("x", {"u": 1}) * span.subst("x", {"u": 1, "v": 1}) * span.subst("x", {"v": 1})
    vars = _vars(K, "u", "v")
    return lhs, rhs, vars, total.bounds(vars)


def check_ybe(variant, n, K=None, perturb=False, report=None):
    K = K or QField()
    report = report or CheckReport("ybe", {"n": n, "variant": variant, "q_mode": K.mode})
    Rm = build_param(n, variant, K, perturb=perturb)
    note = None
    if variant == "full":
        note = "inherited via scalar factor: checked on the exact bar matrix"
    lhs, rhs, vars, bounds = ybe_identity(Rm)
    _run(report, "ybe/%s/n=%d" % (variant, n), "ybe: R12(u)R13(uv)R23(v) = R23(v)R13(uv)R12(u)",
         lambda: verify_identity(lhs, rhs, vars, bounds), note)
    return report


def check_unitarity(n, K=None, perturb=False, report=None, variant="bar", trunc=8):
    K = K or QField()
    report = report or CheckReport("unitarity", {"n": n, "q_mode": K.mode})
    Rm = build_param(n, "bar", K, perturb=perturb)
    N = Rm.dim
    P = Mat.from_entries(N * N, {(i * N + j, j * N + i): 1 for i in range(N) for j in range(N)})
    Delta, span, dspan = Rm.cleared()

    def lhs(p):
        q0 = _q0(K, p)
        u = p["u"]
        return Rm.at(u, q0) @ (P @ Rm.at(1 / u, q0) @ P)

    def rhs(p):
        return mpq(1)

    num = span * span.subst("x", {"u": -1})
    den = dspan * dspan.subst("x", {"u": -1})
    vars = _vars(K, "u")
    _run(report, "unitarity/bar/n=%d" % n, "unitarity: R12(u)R21(1/u) = 1",
         lambda: verify_identity(lhs, rhs, vars, (num | den).bounds(vars)))
    if variant == "full":
        # R = g R-bar, so the full product is the scalar g(u)g(1/u); it mixes
        # expansions at 0 and at infinity and is reported, not expanded
        _run(report, "unitarity/full/n=%d" % n, "unitarity: R12(u)R21(1/u) = g(u)g(1/u)",
             lambda: verify_identity(lhs, rhs, vars, (num | den).bounds(vars)),
             "scalar g(u)g(u^-1) times identity, inherited from the bar identity")
    return report


def crossing_scalar(n, K):
    """(u - q^2)(u xi - 1)/((1 - u)(1 - u xi q^2)) as a RatU."""
    q = K.q()
    xi = K.q(-2 * n - 2)
    u = RatU.u(K)
    return (u - q ** 2) * (u * xi - 1) / ((1 - u) * (1 - u * xi * q ** 2))


def check_crossing(variant, n, K=None, perturb=False, report=None, trunc=8, use_D=True):
    K = K or QField()
    report = report or CheckReport("crossing", {"n": n, "variant": variant, "q_mode": K.mode})
    C = build_constants(n, K)
    Rm = build_param(n, "bar", K, perturb=perturb)
    N = Rm.dim
    shape = _shape2(N)
    ix = C.index
    c = crossing_scalar(n, K)
    _, span, dspan = Rm.cleared()
    xi_exp = -2 * n - 2

    def D1(q0, inv=False):
        d = C.D_mat(q0, inverse=inv) if use_D else Mat.identity(N)
        return embed_mat(d, (N,), (0,), (N, N))

    def lhs(p):
        q0 = _q0(K, p)
        u = p["u"]
        xi = q0 ** xi_exp
        T = mat_transpose(Rm.at(u * xi, q0), shape, 0, ix)
        return Rm.at(u, q0) @ D1(q0) @ T @ D1(q0, True)

    def rhs(p):
        return c.at(p["u"], _q0(K, p))

    sub = {"u": 1, "q": xi_exp} if K.symbolic else {"u": 1}
    dq = Span({"q": (-n, n)}) if K.symbolic else Span()
    num = span * span.subst("x", sub) * dq * dq
    cden = upoly_span(c.den, K, "u")
    cnum = upoly_span(c.num, K, "u")
    den = dspan * dspan.subst("x", sub)
    total = (num * cden) | (cnum * den)
    vars = _vars(K, "u")
    scalar_text = str(c)
    res = _run(report, "crossing/bar/n=%d" % n,
               "crossing: R(u)D1R(u xi)^t1 D1^-1 = (u-q^2)(u xi-1)/((1-u)(1-u xi q^2))",
               lambda: verify_identity(lhs, rhs, vars, total.bounds(vars)),
               "scalar " + scalar_text)
    if variant == "full":
        def series_check():
            g = build_param(n, "full", K, trunc).scalar_factor
            xi = C.xi
            g_xi = LaurentSeries(0, trunc, {k: v * xi ** k for k, v in g.items()}, "+", K.zero)
            cs = expand_at(c, "zero", (0, trunc))
            prod = (g * g_xi * cs).restrict(0, trunc)
            target = xi ** 2 * K.q(-2)
            bad = [k for k in range(0, trunc + 1) if prod[k] != (target if k == 0 else 0)]
            w = None
            if bad:
                w = {"entry": ("u^%d" % bad[0],), "lhs": prod[bad[0]],
                     "rhs": target if bad[0] == 0 else 0}
            elif res is None or not res.ok:
                w = {"reason": "matrix part of the crossing identity failed"}
            return CheckResult(w is None, trunc + 1, w), \
                "scalar xi^2 q^-2 = %s through order %d" % (K.fmt(target), trunc)
        _run(report, "crossing/full/n=%d" % n, "crossing: xi^2 q^-2", series_check)
    return report


def _shape2(N):
    from .tensor_ops import SiteShape
    return SiteShape([N, N])


def check_scalar_f(n, K=None, trunc=12, perturb=False, report=None):
    """The recursion and the product formula give the same f(u) through u^trunc."""
    K = K or QField()
    report = report or CheckReport("scalar-f", {"n": n, "q_mode": K.mode, "trunc": trunc})
    q = K.q()
    xi = K.q(-2 * n - 2)

    def agree():
        a = scalar_f(n, trunc, "recursion", K)
        b = scalar_f(n, trunc, "product", K)
        if perturb:
            b = LaurentSeries(0, trunc, {k: b[k] * (q if k == trunc else 1) for k in range(trunc + 1)},
                              "+", K.zero)
        for k in range(trunc + 1):
            if a[k] != b[k]:
                return CheckResult(False, k + 1, {"entry": ("u^%d" % k,), "lhs": a[k], "rhs": b[k]})
        return CheckResult(True, trunc + 1)

    def first():
        f1 = scalar_f(n, 1, "product", K)[1]
        lhs = f1 * (1 + xi)
        rhs = q ** 2 + q ** -2 + xi + xi ** -1
        if perturb:
            rhs = rhs * q
        if lhs != rhs:
            return CheckResult(False, 1, {"entry": ("f_1(1+xi)",), "lhs": lhs, "rhs": rhs})
        return CheckResult(True, 1)

    _run(report, "scalar-f/n=%d/recursion-product" % n, "f(u): recursion = product formula",
         agree, "through order %d" % trunc)
    _run(report, "scalar-f/n=%d/f1" % n, "f_1(1+xi) = q^2+q^-2+xi+xi^-1", first)
    return report
