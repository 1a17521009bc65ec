"""Drinfeld-type series from Gauss data, the central series z(u), and the
relation suites of the extended algebra at level zero.

Series conventions: a mode table maps k to the coefficient of u^{-k}.  For a
rational operator A(u), A^+ is its expansion at u = 0 and A^- its expansion
at u = infinity; X^+_i(u) = e^+_{i,i+1}(u) - e^-_{i,i+1}(u) and
X^-_i(u) = f^+_{i+1,i}(u) - f^-_{i+1,i}(u).
"""

import itertools

from .birat import FOp
from .exact_field import CheckResult
from .gauss import (_Memo, _Stack, fop_at, gauss_decompose, l_matrix, u_degree,
                    verify_in_v)
from .rep import CartanData
from .report import CheckReport
from .rmatrix import _run, build_constants
from .tensor_ops import IndexData, SiteShape, transpose_entries

__all__ = ["CheckReport", "DrinfeldSeries", "CentralSeries", "extract_drinfeld", "z_series",
           "check_center", "check_extended_relations", "check_main_theorem_map", "series_modes",
           "delta_modes"]


def series_modes(op, point, kmin, kmax):
    """{k: coefficient of u^{-k}} of the expansion of an operator at 0 or infinity."""
    F = op.F
    table = {k: {} for k in range(kmin, kmax + 1)}
    for key, v in op.entries.items():
        s = v.expand(point, (-kmax, -kmin))
        for e, c in s.items():
            if c:
                table[-e][key] = c
    return {k: FOp(F, op.dim, t) for k, t in table.items()}


def delta_modes(op, kmin, kmax):
    """Modes of A^+(u) - A^-(u): the formal delta-function part of A."""
    plus = series_modes(op, "zero", kmin, kmax)
    minus = series_modes(op, "infinity", kmin, kmax)
    return {k: plus[k] - minus[k] for k in range(kmin, kmax + 1)}


class DrinfeldSeries:
    """h_j(u) as rational W-operators and X^{+-}_i mode tables on [-K, K]."""

    def __init__(self, n, h, e, f, K):
        self.n, self.K = n, K
        self.h, self.e, self.f = h, e, f
        self.F = h[1].F
        self.dimW = h[1].dim
        self.Xp = {i: delta_modes(e[i], -K, K) for i in range(1, n + 1)}
        self.Xm = {i: delta_modes(f[i], -K, K) for i in range(1, n + 1)}
        for j, hj in h.items():
            c = series_modes(hj, "zero", 0, 0)[0]
            try:
                c.inverse("h_%d[0]" % j)
            except ZeroDivisionError:
                raise ZeroDivisionError("constant term of h_%d(u) is not invertible" % j)

    def X(self, sign, i):
        return self.Xp[i] if sign > 0 else self.Xm[i]

    def ratio(self, i):
        """G_i(u) = h_i(u)^{-1} h_{i+1}(u)."""
        return self.h[i].inverse("h_%d" % i) @ self.h[i + 1]


def extract_drinfeld(G, n, K=4):
    h = {j: G.h(j) for j in range(1, G.size + 1)}
    e = {i: G.e(i, i + 1) for i in range(1, n + 1)}
    f = {i: G.f(i + 1, i) for i in range(1, n + 1)}
    return DrinfeldSeries(n, h, e, f, K)


def shift_exponent(n, i):
    """Exponent s of the argument shift u q^s attached to row i."""
    return n + 1 if i == n else i


# ---------------------------------------------------------------------------
# central series
# ---------------------------------------------------------------------------

class CentralSeries:
    def __init__(self, right, left, product):
        self.right, self.left, self.product = right, left, product

    @property
    def scalar(self):
        return self.right.is_scalar()


def _aux_transpose(flat, N, W, n):
    shape = SiteShape([N, W])
    return FOp(flat.F, flat.dim, transpose_entries(flat.entries, shape, 0, IndexData(n)))


def _aux_diag(F, vals, W):
    out = {}
    for a, v in enumerate(vals):
        for w in range(W):
            out[(a * W + w, a * W + w)] = v
    return FOp(F, len(vals) * W, out)


def z_series(G, M, n):
    """z(u) from L(u) D L(u xi)^t D^-1, from D L(u xi)^t D^-1 L(u), and from
    the product of the h_i."""
    F = M.F
    N, W = M.nrows, M.dimW
    C = build_constants(n, F.K)
    xi = F.q(-2 * n - 2)
    D = _aux_diag(F, [F.const(d) for d in C.D], W)
    Dinv = _aux_diag(F, [F.const(d).inverse() for d in C.D], W)
    Lf = M.flat()
    T = _aux_transpose(Lf.scale_arg(xi), N, W, n)
    right = Lf @ D @ T @ Dinv
    left = D @ T @ Dinv @ Lf
    prod = FOp.identity(F, W)
    for i in range(1, n):
        prod = prod @ G.h(i).scale_arg(xi * F.q(2 * i)).inverse("h_%d" % i)
    for i in range(1, n + 1):
        prod = prod @ G.h(i).scale_arg(xi * F.q(2 * i - 2))
    prod = prod @ G.h(n + 1)
    return CentralSeries(right, left, prod)


def _first(pairs):
    count = 0
    for label, lhs, rhs in pairs:
        count += 1
        d = lhs.first_difference(rhs)
        if d is not None:
            d["relation"] = label
            return CheckResult(False, count, d)
    return CheckResult(True, count)


def check_center(L, perturb=False, report=None, M=None, G=None):
    K = L.K
    n = L.n
    report = report or CheckReport("center", {"n": n, "m": L.m, "q_mode": K.mode,
                                              "params": ",".join(str(a) for a in L.params)})
    M = M or l_matrix(L)
    F = M.F
    G = G or gauss_decompose(M)
    N, W = M.nrows, M.dimW
    tag = "n=%d/m=%d" % (n, L.m)
    ix = IndexData(n)
    xi = F.q(-2 * n - 2)
    state = {}

    def scalar():
        Z = z_series(G, M, n)
        state["Z"] = Z
        c = Z.right.is_scalar()
        if c is None:
            ident = FOp.identity(F, Z.right.dim).scale(Z.right[(0, 0)])
            return CheckResult(False, 1, dict(Z.right.first_difference(ident), reason="not scalar"))
        state["z"] = c
        d = Z.left.first_difference(Z.right)
        if d is not None:
            d["reason"] = "left and right products differ"
            return CheckResult(False, 2, d)
        return CheckResult(True, 2), "z(u) = %s" % c

    def product():
        zW = FOp.identity(F, W).scale(state["z"])
        return _first([("h-product", state["Z"].product, zW)])

    def central():
        zW = FOp.identity(F, W).scale(state["z"])
        ops = [M[(a, b)] for a in range(N) for b in range(N)]

        def build(v0):
            lhs, rhs = [], []
            for op in ops:
                ov = fop_at(op, v0)
                lhs.append(zW @ ov)
                rhs.append(ov @ zW)
            return _Stack(lhs), _Stack(rhs)
        return verify_in_v(_Memo(build), u_degree(ops))

    def reflection():
        shift = xi * F.q() if perturb else xi

        def gen():
            for i in range(1, n):
                s = shift * F.q(2 * i)
                yield ("e_(%d+1)',%d'" % (i, i), G.e(ix.prime(i + 1), ix.prime(i)),
                       -G.e(i, i + 1).scale_arg(s))
                yield ("f_%d',(%d+1)'" % (i, i), G.f(ix.prime(i), ix.prime(i + 1)),
                       -G.f(i + 1, i).scale_arg(s))
        return _first(gen())

    def h1():
        zW = FOp.identity(F, W).scale(state["z"])
        lhs = G.h(1).scale_arg(xi)
        rhs = G.h(ix.prime(1)).inverse("h_1'") @ zW
        return _first([("h_1(u xi) = h_1'(u)^-1 z(u)", lhs, rhs)])

    _run(report, "center/%s/z-scalar" % tag, "center: L(u) D L(u xi)^t D^-1 = z(u) 1",
         scalar)
    if "z" in state:
        _run(report, "center/%s/z-product" % tag, "center: z(u) as a product of h_i", product)
        _run(report, "center/%s/z-central" % tag, "center: [z(u), l_ij(v)] = 0", central)
        _run(report, "center/%s/h1-h1prime" % tag, "h_1(u xi) = h_1'(u)^-1 z(u)", h1)
    _run(report, "center/%s/reflection" % tag, "center: e_(i+1)'i'(u) = -e_i,i+1(u xi q^2i)",
         reflection, None if n > 1 else "no index i < n at n = 1")
    return report


# ---------------------------------------------------------------------------
# relations between the Gaussian generators at c = 0
# ---------------------------------------------------------------------------

def _eps_alpha(n, i, j):
    """(eps_i, alpha_j) for i <= n."""
    if j < n:
        return int(i == j) - int(i == j + 1)
    return 2 * int(i == n)


def _hx_pairs(D, i, j, sign, a, b, c, d, inverse_conj=False):
    """Mode identities of (a u + b v) h(u) X(v) = (c u + d v) X(v) h(u) with
    a, b, c, d constants; returns generator of (label, lhs, rhs)."""
    h = D.h[i]
    X = D.X(sign, j)
    F = D.F
    u = F.u()
    for k in range(-D.K, D.K):
        Xk = X[k]
        Xk1 = X[k + 1]
        lhs = (h @ Xk).scale(u * a) + (h @ Xk1).scale(b)
        rhs = (Xk @ h).scale(u * c) + (Xk1 @ h).scale(d)
        yield ("h_%d X%s_%d mode %d" % (i, "+-"[sign < 0], j, k), lhs, rhs)


def check_extended_relations(D, perturb=False, report=None, params=None):
    n = D.n
    F = D.F
    q = F.q
    report = report or CheckReport("drinfeld", params or {"n": n})
    tag = "n=%d" % n
    cd = CartanData(n, F.K)
    hs = list(range(1, n + 2))

    def hh(pairs):
        def fn():
            ops = {j: D.h[j] for j in hs}
            bound = u_degree(list(ops.values()))

            def build(v0):
                lhs, rhs = [], []
                for i, j in pairs:
                    hv = fop_at(ops[j], v0)
                    lhs.append(ops[i] @ hv)
                    rhs.append(hv @ ops[i])
                return _Stack(lhs), _Stack(rhs)
            return verify_in_v(_Memo(build), bound)
        return fn

    same = [(i, j) for i in hs for j in hs]
    mixed = [(i, j) for i in hs for j in hs if i < j and i != n]
    c0 = "c = 0: the twist prefactors coincide and the relation is a commutator"
    _run(report, "drinfeld/%s/h-h/same-sign" % tag, "h_i(u) h_j(v) = h_j(v) h_i(u)", hh(same))
    _run(report, "drinfeld/%s/h-h/mixed-sign" % tag,
         "(u-v)/(qu-q^-1v) h_i(u) h_j(v) = (u-v)/(qu-q^-1v) h_j(v) h_i(u)", hh(mixed), c0)
    _run(report, "drinfeld/%s/h-h/long-root" % tag,
         "(u-v)/(q^2u-q^-2v) h_n(u) h_n+1(v) = ... h_n+1(v) h_n(u)", hh([(n, n + 1)]), c0)
    _run(report, "drinfeld/%s/h-h/normalization" % tag, "h_i0+ h_i0- = 1, h_n0+ h_n+1,0+ = 1",
         lambda: _normalization(D), "checked up to central scalar: constant terms invertible")

    def hx():
        def gen():
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    e = _eps_alpha(n, i, j)
                    # (q^e u - q^-e v) h X+ = (u - v) X+ h
                    yield from _hx_pairs(D, i, j, 1, q(e), -q(-e), F.one, -F.one)
                    # (u - v) h X- = (q^e u - q^-e v) X- h
                    yield from _hx_pairs(D, i, j, -1, F.one, -F.one, q(e), -q(-e))
        return _first(gen())

    def hx_long():
        def gen():
            # (q^-2 u - q^2 v) h_n+1 X+_n = (u - v) X+_n h_n+1
            yield from _hx_pairs(D, n + 1, n, 1, q(-2), -q(2), F.one, -F.one)
            # (u - v) h_n+1 X-_n = (q^-2 u - q^2 v) X-_n h_n+1
            yield from _hx_pairs(D, n + 1, n, -1, F.one, -F.one, q(-2), -q(2))
        return _first(gen())

    def hx_conj():
        h = D.h[n + 1]
        hinv = h.inverse("h_n+1")
        u = F.u()

        def gen():
            for k in range(-D.K, D.K):
                for sign in (1, -1):
                    X = D.X(sign, n - 1)
                    if sign > 0:
                        A = lambda Y: hinv @ Y @ h
                    else:
                        A = lambda Y: h @ Y @ hinv
                    # (q^-2 u - q^2 v) A(X) = (q^-1 u - q v) X, mode by mode
                    lhs = A(X[k]).scale(u * q(-2)) + A(X[k + 1]).scale(-q(2))
                    rhs = X[k].scale(u * q(-1)) + X[k + 1].scale(-q(1))
                    yield ("h_n+1 X%s_n-1 mode %d" % ("+-"[sign < 0], k), lhs, rhs)
        return _first(gen())

    def hx_far():
        def gen():
            for i in range(1, n - 1):
                for sign in (1, -1):
                    for k in range(-D.K, D.K + 1):
                        X = D.X(sign, i)[k]
                        yield ("h_n+1 X%s_%d mode %d" % ("+-"[sign < 0], i, k),
                               D.h[n + 1] @ X, X @ D.h[n + 1])
        return _first(gen())

    _run(report, "drinfeld/%s/h-X" % tag, "h_i(u) X_j(v) dilation relations, i <= n", hx)
    _run(report, "drinfeld/%s/h-X/h_n+1-X_n" % tag, "h_n+1(u) X_n(v) with (u-v)/(q^-2u-q^2v)", hx_long)
    if n >= 2:
        _run(report, "drinfeld/%s/h-X/h_n+1-X_n-1" % tag,
             "h_n+1(u)^-1 X_n-1(v) h_n+1(u) = (q^-1u-qv)/(q^-2u-q^2v) X_n-1(v)", hx_conj)
    _run(report, "drinfeld/%s/h-X/h_n+1-X_i" % tag, "h_n+1(u) X_i(v) = X_i(v) h_n+1(u), i <= n-2",
         hx_far, "empty family for n <= 2" if n <= 2 else None)

    def xx():
        def shift(i):
            s = shift_exponent(n, i)
            return s + 1 if perturb and i < n else s

        def gen():
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    si, sj = (0, 0) if i == j == n else (shift(i), shift(j))
                    for sign in (1, -1):
                        c = q(sign * cd.B[i - 1][j - 1])
                        Xi, Xj = D.X(sign, i), D.X(sign, j)
                        Y = lambda X, s, k: X[k].scale(q(-s * k))
                        for a in range(-D.K, D.K):
                            for b in range(-D.K, D.K):
                                lhs = Y(Xi, si, a + 1) @ Y(Xj, sj, b) - \
                                    (Y(Xi, si, a) @ Y(Xj, sj, b + 1)).scale(c)
                                rhs = (Y(Xj, sj, b) @ Y(Xi, si, a + 1)).scale(c) - \
                                    Y(Xj, sj, b + 1) @ Y(Xi, si, a)
                                yield ("X%s_%d X%s_%d modes (%d,%d)" % ("+-"[sign < 0], i,
                                                                       "+-"[sign < 0], j, a, b),
                                       lhs, rhs)
        return _first(gen())

    def commutator():
        def gen():
            G = {i: D.ratio(i) for i in range(1, n + 1)}
            Gm = {i: series_modes(G[i], "infinity", -2 * D.K, 2 * D.K) for i in G}
            Gp = {i: series_modes(G[i], "zero", -2 * D.K, 2 * D.K) for i in G}
            for i in range(1, n + 1):
                qi = F.const(cd.q_i(i))
                for j in range(1, n + 1):
                    for a in range(-D.K, D.K + 1):
                        for b in range(-D.K, D.K + 1):
                            lhs = D.Xp[i][a].comm(D.Xm[j][b])
                            if i == j:
                                rhs = (Gm[i][a + b] - Gp[i][a + b]).scale(qi - qi.inverse())
                            else:
                                rhs = FOp.zero(F, D.dimW)
                            yield ("[X+_%d,%d, X-_%d,%d]" % (i, a, j, b), lhs, rhs)
        return _first(gen())

    def serre_x():
        return _serre(D, lambda sign, i, k: D.X(sign, i)[k], 3 if D.K >= 3 else D.K, perturb=False)

    _run(report, "drinfeld/%s/X-X" % tag,
         "(u-q^(ai,aj)v) X_i(uq^i) X_j(vq^j) = (q^(ai,aj)u-v) X_j(vq^j) X_i(uq^i)", xx)
    _run(report, "drinfeld/%s/X+X-" % tag,
         "[X+_i(u), X-_j(v)] = d_ij (q_i-q_i^-1)(d(u/v) G_i^-(v) - d(u/v) G_i^+(u))", commutator)
    _run(report, "drinfeld/%s/serre" % tag, "Serre relations for X_i", serre_x,
         "mode tuples within window %d" % min(3, D.K))
    return report


def _normalization(D):
    count = 0
    for j, h in D.h.items():
        count += 1
        for point in ("zero", "infinity"):
            c = series_modes(h, point, 0, 0)[0]
            try:
                c.inverse()
            except ZeroDivisionError:
                return CheckResult(False, count, {"entry": None, "lhs": "h_%d constant term" % j,
                                                  "rhs": "invertible"})
    return CheckResult(True, count)


def _serre(D, mode, window, perturb=False, qscale=None):
    """Sum over S_r and l of (-1)^l [r, l]_{q_i} x_i...x_j...x_i for every
    adjacent pair and every multiset of modes in the window."""
    n = D.n
    F = D.F
    cd = CartanData(n, F.K)
    rng = range(-window, window + 1)
    count = 0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j or cd.A[i - 1][j - 1] == 0:
                continue
            r = cd.serre_r(i, j)
            coef = [F.K.qbinom(r, l, base=cd.q_i(i)) for l in range(r + 1)]
            coef = [F.const(c) * (-1) ** l for l, c in enumerate(coef)]
            if perturb:
                coef[0] = coef[0] * F.q()
            for sign in (1, -1):
                for s in itertools.combinations_with_replacement(rng, r):
                    arrangements = sorted(set(itertools.permutations(s)))
                    for m in rng:
                        xj = mode(sign, j, m)
                        total = FOp.zero(F, D.dimW)
                        for arr in arrangements:
                            xs = [mode(sign, i, k) for k in arr]
                            for l in range(r + 1):
                                prod = FOp.identity(F, D.dimW)
                                for x in xs[:l]:
                                    prod = prod @ x
                                prod = prod @ xj
                                for x in xs[l:]:
                                    prod = prod @ x
                                total = total + prod.scale(coef[l])
                        count += 1
                        if not total.is_zero():
                            d = total.first_difference(FOp.zero(F, D.dimW))
                            d["relation"] = "Serre (%d,%d) r=%d sign %s modes %s, %d" % (
                                i, j, r, "+-"[sign < 0], s, m)
                            return CheckResult(False, count, d)
    return CheckResult(True, count)


def check_main_theorem_map(D, window=None, serre_window=3, perturb=False, report=None, params=None):
    """Commutators of the images of x^{+-}_{i,m} and truncated Serre relations."""
    n = D.n
    F = D.F
    cd = CartanData(n, F.K)
    window = D.K if window is None else window
    if window > D.K or serre_window > D.K:
        raise ValueError("window %d exceeds the extracted modes (K = %d)" % (max(window, serre_window), D.K))
    report = report or CheckReport("main-map", params or {"n": n})
    tag = "n=%d" % n

    def x(sign, i, k):
        s = shift_exponent(n, i)
        qi = F.const(cd.q_i(i))
        return D.X(sign, i)[k].scale(F.q(-s * k) / (qi - qi.inverse()))

    psi, phi = {}, {}
    for i in range(1, n + 1):
        s = shift_exponent(n, i)
        G = D.ratio(i).scale_arg(F.q(s))
        psi[i] = series_modes(G, "infinity", -2 * window, 2 * window)
        phi[i] = series_modes(G, "zero", -2 * window, 2 * window)

    def series():
        count = 0
        for i in range(1, n + 1):
            for k in range(-2 * window, 0):
                count += 2
                if not psi[i][k].is_zero():
                    return CheckResult(False, count, dict(psi[i][k].first_difference(
                        FOp.zero(F, D.dimW)), relation="psi_%d,%d = 0" % (i, k)))
                if not phi[i][-k].is_zero():
                    return CheckResult(False, count, dict(phi[i][-k].first_difference(
                        FOp.zero(F, D.dimW)), relation="phi_%d,%d = 0" % (i, -k)))
        return CheckResult(True, count), "psi_i,m = phi_i,-m = 0 for m < 0; " \
            "constant terms checked up to central scalar"

    def commutators():
        def gen():
            for i in range(1, n + 1):
                qi = F.const(cd.q_i(i))
                for j in range(1, n + 1):
                    for a in range(-window, window + 1):
                        for b in range(-window, window + 1):
                            lhs = x(1, i, a).comm(x(-1, j, b))
                            if i == j:
                                rhs = (psi[i][a + b] - phi[i][a + b]).scale(
                                    (qi - qi.inverse()).inverse())
                                if perturb:
                                    rhs = rhs.scale(F.q())
                            else:
                                rhs = FOp.zero(F, D.dimW)
                            yield ("[x+_%d,%d, x-_%d,%d]" % (i, a, j, b), lhs, rhs)
        return _first(gen())

    _run(report, "main-map/%s/psi-phi-series" % tag, "psi_i(u), phi_i(u) from h-ratios", series)
    _run(report, "main-map/%s/commutator" % tag,
         "main map: [x+_i,m, x-_j,l] = d_ij (psi_i,m+l - phi_i,m+l)/(q_i - q_i^-1)",
         commutators, "all |m|, |l| <= %d" % window)
    _run(report, "main-map/%s/serre" % tag, "main map: Serre relations",
         lambda: _serre(D, x, serre_window, perturb), "mode tuples within window %d" % serre_window)
    return report
