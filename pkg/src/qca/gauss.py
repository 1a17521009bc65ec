"""Quasideterminants of operator matrices, Gauss decomposition L = FHE,
quantum minors and the embedding maps psi_m."""

import itertools

from gmpy2 import mpq

from .birat import BiField, FOp
from .exact_field import CheckResult, verify_identity
from .report import CheckReport
from .rmatrix import _run, build_constants, build_param
from .tensor_ops import IndexData, SiteShape, embed_entries, transpose_entries


class NCMatrix:
    """Matrix whose entries are operators on W (FOp of size dimW).

    Rows and columns are 0-based internally; ``entry`` takes 1-based
    indices as in the matrix elements l_ij.
    """

    def __init__(self, F, nrows, ncols, dimW, entries=None):
        self.F, self.nrows, self.ncols, self.dimW = F, nrows, ncols, dimW
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}

    @property
    def size(self):
        return self.nrows

    @classmethod
    def identity(cls, F, size, dimW):
        return cls(F, size, size, dimW, {(i, i): FOp.identity(F, dimW) for i in range(size)})

    @classmethod
    def from_flat(cls, flat, nrows, ncols, dimW):
        """Split an operator on aux (x) W (aux index major) into blocks."""
        blocks = {}
        for (r, c), v in flat.entries.items():
            a, w = divmod(r, dimW)
            b, x = divmod(c, dimW)
            blocks.setdefault((a, b), {})[(w, x)] = v
        return cls(flat.F, nrows, ncols, dimW,
                   {k: FOp(flat.F, dimW, e) for k, e in blocks.items()})

    def flat(self):
        if self.nrows != self.ncols:
            raise ValueError("only square operator matrices flatten to operators")
        W = self.dimW
        out = {}
        for (a, b), op in self.entries.items():
            for (w, x), v in op.entries.items():
                out[(a * W + w, b * W + x)] = v
        return FOp(self.F, self.nrows * W, out)

    def __getitem__(self, ij):
        return self.entries.get(ij) or FOp.zero(self.F, self.dimW)

    def entry(self, i, j):
        return self[(i - 1, j - 1)]

    def sub(self, rows, cols):
        return NCMatrix(self.F, len(rows), len(cols), self.dimW,
                        {(a, b): self.entries[(r, c)] for a, r in enumerate(rows)
                         for b, c in enumerate(cols) if (r, c) in self.entries})

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        by_row = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, []).append((c, v))
        out = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                p = a @ b
                out[(r, c)] = out[(r, c)] + p if (r, c) in out else p
        return NCMatrix(self.F, self.nrows, other.ncols, self.dimW, out)

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return NCMatrix(self.F, self.nrows, self.ncols, self.dimW, out)

    def __neg__(self):
        return NCMatrix(self.F, self.nrows, self.ncols, self.dimW,
                        {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def map(self, fn):
        return NCMatrix(self.F, self.nrows, self.ncols, self.dimW,
                        {k: fn(v) for k, v in self.entries.items()})

    def scale_arg(self, c):
        return self.map(lambda v: v.scale_arg(c))

    def __eq__(self, other):
        return self.first_difference(other) is None

    def first_difference(self, other):
        if (self.nrows, self.ncols, self.dimW) != (other.nrows, other.ncols, other.dimW):
            return {"entry": None, "lhs": "shape", "rhs": "shape"}
        for k in sorted(set(self.entries) | set(other.entries)):
            d = self[k].first_difference(other[k])
            if d is not None:
                return {"entry": (k[0] + 1, k[1] + 1, d["entry"][0] + 1, d["entry"][1] + 1),
                        "lhs": d["lhs"], "rhs": d["rhs"]}
        return None

    def inverse(self, label="matrix"):
        return NCMatrix.from_flat(self.flat().inverse(label), self.nrows, self.ncols, self.dimW)

    def __repr__(self):
        return "NCMatrix(%dx%d, dimW=%d)" % (self.nrows, self.ncols, self.dimW)


class SingularMinor(ZeroDivisionError):
    pass


def quasideterminant(M, i, j):
    """|M|_ij = m_ij - r (M^{ij})^{-1} c, with 1-based i, j."""
    N = M.nrows
    if M.ncols != N:
        raise ValueError("quasideterminants need a square matrix")
    i0, j0 = i - 1, j - 1
    if N == 1:
        return M[(0, 0)]
    rows = [r for r in range(N) if r != i0]
    cols = [c for c in range(N) if c != j0]
    A = M.sub(rows, cols)
    try:
        Ainv = A.inverse()
    except ZeroDivisionError as exc:
        raise SingularMinor("minor M^{%d%d} (rows %s, cols %s) is singular: %s"
                            % (i, j, [r + 1 for r in rows], [c + 1 for c in cols], exc))
    r = M.sub([i0], cols)
    c = M.sub(rows, [j0])
    return M[(i0, j0)] - (r @ Ainv @ c)[(0, 0)]


def scalar_ncmatrix(F, rows):
    """Operator matrix with 1x1 entries from a list of lists of constants."""
    N = len(rows)
    return NCMatrix(F, N, N, 1, {(i, j): FOp(F, 1, {(0, 0): F.const(v)})
                                 for i, row in enumerate(rows) for j, v in enumerate(row) if v})


# ---------------------------------------------------------------------------
# L-operators as operator matrices
# ---------------------------------------------------------------------------

def bar_fop(n, F, variant="bar", perturb=False):
    return FOp.from_tensor(F, build_param(n, variant, F.K, perturb=perturb).op)


def l_matrix(L, F=None):
    """The fused L(u) of an LOperator as an operator matrix (numeric parameters)."""
    if not L.concrete:
        raise ValueError("operator matrices need numeric evaluation parameters")
    F = F or BiField(L.K)
    cache = L.__dict__.setdefault("_ncm", {})
    if F.K not in cache:
        dims = L.shape.dims
        R = FOp.from_tensor(F, L.R.op)
        total = L.shape.total
        op = FOp.identity(F, total)
        for j, a in enumerate(L.params):
            f = R.scale_arg(F.const(1 / mpq(a)))
            _, e = embed_entries(f.entries, (L.N, L.N), (0, j + 1), dims)
            op = op @ FOp(F, total, e)
        cache[F.K] = NCMatrix.from_flat(op, L.N, L.N, L.wshape.total)
    return cache[F.K]


# ---------------------------------------------------------------------------
# Gauss decomposition
# ---------------------------------------------------------------------------

class GaussData:
    """L = F H E with F lower unipotent, H diagonal, E upper unipotent."""

    def __init__(self, F, H, E):
        self.F, self.H, self.E = F, H, E
        self.size = H.nrows

    def h(self, i):
        return self.H.entry(i, i)

    def e(self, i, j):
        return self.E.entry(i, j)

    def f(self, j, i):
        return self.F.entry(j, i)

    def product(self):
        return self.F @ self.H @ self.E


def gauss_decompose(M):
    """Block elimination of an operator matrix (or LOperator)."""
    if not isinstance(M, NCMatrix):
        M = l_matrix(M)
    N, W, Fd = M.nrows, M.dimW, M.F
    one = FOp.identity(Fd, W)
    Fm, Hm, Em = {}, {}, {}
    Hinv = {}
    for k in range(N):
        def reduced(a, b):
            acc = M[(a, b)]
            for j in range(k):
                fa, eb = Fm.get((a, j)), Em.get((j, b))
                if fa is not None and eb is not None:
                    acc = acc - fa @ Hm[j] @ eb
            return acc
        Hm[k] = reduced(k, k)
        try:
            Hinv[k] = Hm[k].inverse("h_%d" % (k + 1))
        except ZeroDivisionError as exc:
            raise SingularMinor("leading minor of size %d is singular: %s" % (k + 1, exc))
        for l in range(k + 1, N):
            e = Hinv[k] @ reduced(k, l)
            if not e.is_zero():
                Em[(k, l)] = e
            f = reduced(l, k) @ Hinv[k]
            if not f.is_zero():
                Fm[(l, k)] = f
    for k in range(N):
        Fm[(k, k)] = one
        Em[(k, k)] = one
    return GaussData(NCMatrix(Fd, N, N, W, Fm), NCMatrix(Fd, N, N, W, {(k, k): Hm[k] for k in range(N)}),
                     NCMatrix(Fd, N, N, W, Em))


def h_display(M, i):
    rows = list(range(i))
    return quasideterminant(M.sub(rows, rows), i, i)


def e_display(M, i, j, h=None):
    rows = list(range(i))
    cols = list(range(i - 1)) + [j - 1]
    h = h if h is not None else h_display(M, i)
    return h.inverse("h_%d" % i) @ quasideterminant(M.sub(rows, cols), i, i)


def f_display(M, j, i, h=None):
    rows = list(range(i - 1)) + [j - 1]
    cols = list(range(i))
    h = h if h is not None else h_display(M, i)
    return quasideterminant(M.sub(rows, cols), i, i) @ h.inverse("h_%d" % i)


# ---------------------------------------------------------------------------
# quantum minors
# ---------------------------------------------------------------------------

def _subs_u(F, x, c):
    """Value of a BiRat at u = c (a constant)."""
    y = x.scale_arg(c)
    n, d = y.u_coeffs()
    num = F.zero
    for v in n.values():
        num = num + v
    den = F.zero
    for v in d.values():
        den = den + v
    return num / den


class MinorCalculator:
    """Quantum minors of an operator matrix L(u) with rational entries in u."""

    def __init__(self, M, n, perturb=False):
        self.M, self.n, self.F = M, n, M.F
        self.N = 2 * n
        self.perturb = perturb
        self._rhat = None
        self._shifted = {}

    def rhat(self):
        """Entries of Rhat(q^-2) on C^N (x) C^N as {(r, c): BiRat}."""
        if self._rhat is None:
            F = self.F
            R = FOp.from_tensor(F, build_param(self.n, "hat", F.K).op)
            x = F.q(-2)
            self._rhat = {k: _subs_u(F, v, x) for k, v in R.entries.items()}
            self._rhat = {k: v for k, v in self._rhat.items() if v}
        return self._rhat

    def l(self, i, j, shift=0):
        """l_ij(u q^{2 shift}) (1-based)."""
        key = (i, j, shift)
        if key not in self._shifted:
            op = self.M.entry(i, j)
            self._shifted[key] = op.scale_arg(self.F.q(2 * shift)) if shift else op
        return self._shifted[key]

    def typeC2(self, a1, a2, b1, b2):
        """<a1,a2| Rhat(q^-2) L_1(u) L_2(uq^2) |b1,b2>."""
        N = self.N
        row = (a1 - 1) * N + (a2 - 1)
        acc = FOp.zero(self.F, self.M.dimW)
        for (r, c), coef in self.rhat().items():
            if r != row:
                continue
            c1, c2 = divmod(c, N)
            acc = acc + (self.l(c1 + 1, b1) @ self.l(c2 + 1, b2, 1)).scale(coef)
        return acc

    def typeA(self, rows, cols):
        k = len(rows)
        ix = IndexData(self.n)
        if k != len(cols) or k == 0:
            raise ValueError("type A minors need index lists of equal positive length")
        for seq in (rows, cols):
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise ValueError("indices must be strictly increasing: %s" % (seq,))
            if any(ix.prime(a) == b for a in seq for b in seq):
                raise ValueError("indices %s contain a pair i, i'" % (seq,))
        F = self.F
        acc = FOp.zero(F, self.M.dimW)
        for perm in itertools.permutations(range(k)):
            inv = sum(1 for x in range(k) for y in range(x + 1, k) if perm[x] > perm[y])
            term = FOp.identity(F, self.M.dimW)
            for s in range(k):
                term = term @ self.l(rows[perm[s]], cols[s], s)
            acc = acc + term.scale((-F.q()) ** (-inv) if inv else F.one)
        return acc


def quantum_minor(L, rows, cols, kind="typeC2", M=None):
    """Quantum minor of an LOperator (or operator matrix M) as a W-operator."""
    M = M or l_matrix(L)
    calc = MinorCalculator(M, M.nrows // 2)
    if kind == "typeC2":
        if len(rows) != 2 or len(cols) != 2:
            raise ValueError("typeC2 minors take two row and two column indices")
        return calc.typeC2(rows[0], rows[1], cols[0], cols[1])
    if kind == "typeA":
        return calc.typeA(list(rows), list(cols))
    raise ValueError("kind must be typeC2 or typeA")


# ---------------------------------------------------------------------------
# embedding maps psi_m
# ---------------------------------------------------------------------------

def psi_image(M, m):
    """Matrix of boxed quasideterminants |L_{1..m i, 1..m j}|_{ij} for
    m+1 <= i, j <= (m+1)'; psi_0 is the identity."""
    if not isinstance(M, NCMatrix):
        M = l_matrix(M)
    N = M.nrows
    if not 0 <= m < N // 2:
        raise ValueError("need 0 <= m < n")
    if m == 0:
        return M
    lead = list(range(m))
    rest = list(range(m, N - m))
    try:
        Ainv = M.sub(lead, lead).inverse("leading %dx%d block" % (m, m))
    except ZeroDivisionError as exc:
        raise SingularMinor(str(exc))
    return M.sub(rest, rest) - M.sub(rest, lead) @ Ainv @ M.sub(lead, rest)


def gauss_block(G, m):
    """F^[n-m] H^[n-m] E^[n-m] from the index window m+1..(m+1)'."""
    N = G.size
    idx = list(range(m, N - m))
    return G.F.sub(idx, idx) @ G.H.sub(idx, idx) @ G.E.sub(idx, idx)


# ---------------------------------------------------------------------------
# two-variable identities by exact partial evaluation
# ---------------------------------------------------------------------------

def _plcm(a, b):
    g = a.gcd(b)
    return a * (b / g)


def u_degree(ops):
    """Degree in u of the numerators after clearing the common denominator
    of all entries of the given operators."""
    ops = list(ops)
    if not ops:
        return 0
    F = ops[0].F
    den = F._one
    for op in ops:
        for v in op.entries.values():
            den = _plcm(den, v.den)
    dd = den.degrees()[0]
    top = dd
    for op in ops:
        for v in op.entries.values():
            top = max(top, v.num.degrees()[0] - v.den.degrees()[0] + dd)
    return top


def verify_in_v(build, bound):
    """Certify an identity in (u, v): for each sampled v0, build(v0) returns
    two exact operators in u that must agree; ``bound`` is the v-degree of
    the cleared identity."""
    return verify_identity(lambda p: build(p["v"])[0], lambda p: build(p["v"])[1],
                           ["v"], {"v": bound}, cross_check=True)


class _Memo:
    """Caches build(v0) so the tree evaluates each side once."""

    def __init__(self, fn):
        self.fn, self.key, self.val = fn, None, None

    def __call__(self, v0):
        if self.key != v0:
            self.key, self.val = v0, self.fn(v0)
        return self.val


def const_at(F, x, v0):
    """An operator entry x(u) evaluated at u = v0, as a constant in u."""
    return _subs_u(F, x, F.const(v0))


def fop_at(op, v0):
    F = op.F
    return op.map(lambda x: const_at(F, x, v0))


def ncm_at(M, v0):
    return M.map(lambda op: fop_at(op, v0))


def rll_ncm_identity(M, k, perturb=False):
    """Build function and v-bound for Rbar^[k](u/v) M_1(u) M_2(v) = M_2(v) M_1(u) Rbar^[k](u/v)."""
    F = M.F
    N = 2 * k
    W = M.dimW
    R = bar_fop(k, F, perturb=perturb)
    dims = (N, N, W)
    total = N * N * W
    flat = M.flat()

    def embed(op, sub, pos):
        _, e = embed_entries(op.entries, sub, pos, dims)
        return FOp(F, total, e)

    M1 = embed(flat, (N, W), (0, 2))

    def build(v0):
        Rv = embed(R.scale_arg(F.const(1 / mpq(v0))), (N, N), (0, 1))
        M2 = embed(fop_at(flat, v0), (N, W), (1, 2))
        return Rv @ M1 @ M2, M2 @ M1 @ Rv

    return _Memo(build), u_degree([flat]) + 2


# ---------------------------------------------------------------------------
# report-level checks
# ---------------------------------------------------------------------------

def _eq(a, b, points=1):
    d = a.first_difference(b)
    return CheckResult(d is None, points, d)


def check_gauss(L, perturb=False, report=None):
    K = L.K
    report = report or CheckReport("gauss", {"n": L.n, "m": L.m, "q_mode": K.mode,
                                             "params": ",".join(str(a) for a in L.params)})
    M = l_matrix(L)
    tag = "n=%d/m=%d" % (L.n, L.m)
    state = {}

    def decompose():
        G = gauss_decompose(M)
        state["G"] = G
        P = G.product()
        if perturb:
            P = P + NCMatrix.identity(M.F, M.nrows, M.dimW)
        return _eq(P, M), "h_1..h_%d invertible over the fraction field" % M.nrows

    _run(report, "gauss/%s/FHE" % tag, "Gauss decomposition: F H E = L", decompose)
    G = state.get("G")
    if G is None:
        return report

    def idempotent():
        G2 = gauss_decompose(G.product())
        for a, b in ((G2.F, G.F), (G2.H, G.H), (G2.E, G.E)):
            d = a.first_difference(b)
            if d is not None:
                return CheckResult(False, 1, d)
        return CheckResult(True, 1)

    def displays():
        N = M.nrows
        count = 0
        for i in range(1, N + 1):
            h = h_display(M, i)
            count += 1
            if h != G.h(i):
                return CheckResult(False, count, dict(G.h(i).first_difference(h), display="h_%d" % i))
            for j in range(i + 1, N + 1):
                count += 2
                e = e_display(M, i, j, h)
                if e != G.e(i, j):
                    return CheckResult(False, count, dict(G.e(i, j).first_difference(e),
                                                          display="e_%d%d" % (i, j)))
                f = f_display(M, j, i, h)
                if f != G.f(j, i):
                    return CheckResult(False, count, dict(G.f(j, i).first_difference(f),
                                                          display="f_%d%d" % (j, i)))
        return CheckResult(True, count)

    _run(report, "gauss/%s/idempotent" % tag, "gauss: decomposition of F H E is idempotent",
         idempotent)
    _run(report, "gauss/%s/quasideterminant-displays" % tag,
         "gauss: h, e, f as quasideterminants of L", displays)
    return report


def _labels(key):
    return "%s" % (key,)


def check_minor_relations(L, perturb=False, report=None):
    K = L.K
    n = L.n
    report = report or CheckReport("minors", {"n": n, "m": L.m, "q_mode": K.mode,
                                              "params": ",".join(str(a) for a in L.params)})
    M = l_matrix(L)
    F = M.F
    calc = MinorCalculator(M, n)
    ix = IndexData(n)
    N = 2 * n
    tag = "n=%d/m=%d" % (n, L.m)
    q = F.q()

    def skew_rows():
        c = -q.inverse() if not perturb else F.one
        count = 0
        for a1 in range(1, N + 1):
            for a2 in range(a1 + 1, N + 1):
                if a1 == ix.prime(a2):
                    continue
                for b1 in range(1, N + 1):
                    for b2 in range(1, N + 1):
                        count += 1
                        lhs = calc.typeC2(a1, a2, b1, b2)
                        rhs = calc.typeC2(a2, a1, b1, b2).scale(c)
                        d = lhs.first_difference(rhs)
                        if d is not None:
                            d["minor"] = "l^{%d%d}_{%d%d}" % (a1, a2, b1, b2)
                            return CheckResult(False, count, d)
        return CheckResult(True, count)

    def skew_cols():
        count = 0
        for b1 in range(1, N + 1):
            for b2 in range(b1 + 1, N + 1):
                if b1 == ix.prime(b2):
                    continue
                for a1 in range(1, N + 1):
                    for a2 in range(1, N + 1):
                        count += 1
                        lhs = calc.typeC2(a1, a2, b1, b2)
                        rhs = calc.typeC2(a1, a2, b2, b1).scale(-q)
                        d = lhs.first_difference(rhs)
                        if d is not None:
                            d["minor"] = "l^{%d%d}_{%d%d}" % (a1, a2, b1, b2)
                            return CheckResult(False, count, d)
        return CheckResult(True, count)

    inner = range(2, N)

    def s_factor():
        count = 0
        shift = F.q(-2)
        l11 = M.entry(1, 1).scale_arg(shift)
        l11inv = l11.inverse("l_11(uq^-2)")
        for i in inner:
            for j in inner:
                count += 1
                s = quasideterminant(M.sub([0, i - 1], [0, j - 1]), 2, 2)
                rhs = l11inv @ calc.typeC2(1, i, 1, j).scale_arg(shift)
                d = s.first_difference(rhs)
                if d is not None:
                    d["index"] = "s_%d%d" % (i, j)
                    return CheckResult(False, count, d)
        return CheckResult(True, count)

    def l11_comm():
        l11 = M.entry(1, 1)
        minors = {(i, j): calc.typeC2(1, i, 1, j) for i in inner for j in inner}
        bound = u_degree(list(minors.values()))

        def build(v0):
            lhs, rhs = [], []
            for key in sorted(minors):
                mv = fop_at(minors[key], v0)
                lhs.append(l11 @ mv)
                rhs.append(mv @ l11)
            return _Stack(lhs), _Stack(rhs)

        return verify_in_v(_Memo(build), bound), \
            "same-sign commutator; the mixed-sign relation has equal prefactors at c = 0"

    _run(report, "minors/%s/skew-rows" % tag, "symmetry properties are straightforward (i)", skew_rows)
    _run(report, "minors/%s/skew-cols" % tag, "symmetry properties are straightforward (ii)", skew_cols)
    _run(report, "minors/%s/s-factorization" % tag,
         "By the definition of quantum minors: s_ij(u) = l11(uq^-2)^-1 l^{1i}_{1j}(uq^-2)", s_factor)
    _run(report, "minors/%s/l11-commutation" % tag, "[l11(u), l^{1i}_{1j}(v)] = 0", l11_comm)
    return report


class _Stack:
    """A list of operators compared entrywise, with the list position in witnesses."""

    def __init__(self, ops):
        self.ops = ops

    def first_difference(self, other):
        for k, (a, b) in enumerate(zip(self.ops, other.ops)):
            d = a.first_difference(b)
            if d is not None:
                d["item"] = k
                return d
        return None


def check_embedding(L, perturb=False, report=None, L3=None):
    """psi_1 image RLL, Gauss-block consistency, Sylvester consistency,
    commutation with the leading block, and psi_1 psi_1 = psi_2 when an
    n >= 3 operator is supplied."""
    K = L.K
    n = L.n
    report = report or CheckReport("embedding", {"n": n, "m": L.m, "q_mode": K.mode})
    M = l_matrix(L)
    F = M.F
    tag = "n=%d/m=%d" % (n, L.m)
    if n >= 2:
        P1 = psi_image(M, 1)

        def rll():
            build, bound = rll_ncm_identity(P1, n - 1, perturb)
            return verify_in_v(build, bound), "rank %d relations" % (n - 1)

        def consist():
            G = gauss_decompose(M)
            return _eq(psi_image(M, 1), gauss_block(G, 1))

        def sylvester():
            calc = MinorCalculator(M, n)
            shift = F.q(-2)
            lead = calc.typeA([1], [1]).scale_arg(shift).inverse("l_11(uq^-2)")
            count = 0
            for i in range(2, 2 * n):
                for j in range(2, 2 * n):
                    count += 1
                    rhs = lead @ calc.typeA([1, i], [1, j]).scale_arg(shift)
                    d = P1.entry(i - 1, j - 1).first_difference(rhs)
                    if d is not None:
                        return CheckResult(False, count, d)
            return CheckResult(True, count)

        def commute():
            l11 = M.entry(1, 1)
            ops = [P1[(a, b)] for a in range(P1.nrows) for b in range(P1.ncols)]
            bound = u_degree(ops)

            def build(v0):
                lhs, rhs = [], []
                for op in ops:
                    ov = fop_at(op, v0)
                    lhs.append(l11 @ ov)
                    rhs.append(ov @ l11)
                return _Stack(lhs), _Stack(rhs)
            return verify_in_v(_Memo(build), bound)

        _run(report, "embedding/%s/psi1-rll" % tag,
             "define a homomorphism U(Rbar^[n-1]) -> U(Rbar^[n])", rll)
        _run(report, "embedding/%s/gauss-consistency" % tag,
             "coincides with the image of: psi_1(l) = F^[n-1] H^[n-1] E^[n-1]", consist)
        _run(report, "embedding/%s/sylvester" % tag,
             "relations between the quasideterminants and quantum minors", sylvester)
        _run(report, "embedding/%s/commutation" % tag,
             "[l_ab(u), psi_m(l_ij(v))] = 0 for a, b <= m", commute)
    if L3 is not None:
        M3 = l_matrix(L3)
        tag3 = "n=%d/m=%d" % (L3.n, L3.m)

        def compose():
            lhs = psi_image(psi_image(M3, 1), 1)
            rhs = psi_image(M3, 2)
            if perturb:
                rhs = psi_image(M3, 1).sub(list(range(1, M3.nrows - 3)), list(range(1, M3.nrows - 3)))
            return _eq(lhs, rhs)

        _run(report, "embedding/%s/psi1-psi1=psi2" % tag3, "equality of maps", compose)
    return report
