"""Independent oracle values for the test suite, computed with sympy from the
closed-form R-matrix.  The printed literals are frozen in tests/oracles.py;
this script is not imported by the package or the tests.

    python3 tools/gen_oracles.py
"""

import sympy as sp
from sympy import Rational as Q


def units(N):
    def e(i, j):
        m = sp.zeros(N, N)
        m[i - 1, j - 1] = 1
        return m
    return e


def rbar(n, u, q):
    N = 2 * n
    e = units(N)
    eps = lambda i: 1 if i <= n else -1
    bar = lambda i: n - i + 1 if i <= n else n - i
    pr = lambda i: N - i + 1
    kp = sp.kronecker_product
    P = sp.zeros(N * N)
    Qm = sp.zeros(N * N)
    R = sp.zeros(N * N)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            P += kp(e(i, j), e(j, i))
            Qm += q ** (bar(i) - bar(j)) * eps(i) * eps(j) * kp(e(pr(i), pr(j)), e(i, j))
            if i == j:
                R += q * kp(e(i, i), e(i, i))
            elif j != pr(i):
                R += kp(e(i, i), e(j, j))
            else:
                R += q ** -1 * kp(e(i, i), e(j, j))
            if i < j:
                R += (q - 1 / q) * kp(e(i, j), e(j, i))
            if i > j:
                R -= (q - 1 / q) * q ** (bar(i) - bar(j)) * eps(i) * eps(j) * kp(e(pr(i), pr(j)), e(i, j))
    xi = q ** (-2 * n - 2)
    D = u * q - 1 / q
    return (u - 1) / D * R + (q - 1 / q) / D * P - (q - 1 / q) * (u - 1) * xi / (D * (u - xi)) * Qm


def fused(n, params, u, q):
    """L(u) = Rbar_01(u/a1) Rbar_02(u/a2) on aux (x) W, W = C^N (x) C^N."""
    N = 2 * n
    m = len(params)
    total = N ** (m + 1)
    L = sp.eye(total)
    for j, a in enumerate(params):
        r = rbar(n, u / a, q)
        # place the factor on sites (0, j+1) via a permutation of tensor legs
        op = sp.zeros(total)
        for row in range(N * N):
            for col in range(N * N):
                c = r[row, col]
                if c == 0:
                    continue
                i0, i1 = divmod(row, N)
                j0, j1 = divmod(col, N)
                for rest in range(N ** (m - 1)):
                    digits = []
                    x = rest
                    for _ in range(m - 1):
                        digits.append(x % N)
                        x //= N
                    digits = digits[::-1]

                    def flat(a0, aj):
                        legs = [a0] + digits[:j] + [aj] + digits[j:]
                        f = 0
                        for d in legs:
                            f = f * N + d
                        return f
                    op[flat(i0, i1), flat(j0, j1)] += c
        L = L * op
    return L


def block(L, N, W, i, j):
    return L[(i - 1) * W:i * W, (j - 1) * W:j * W]


def main():
    n, params, q = 2, [Q(3), Q(7)], Q(2)
    N, W = 4, 16
    Lu = fused(n, params, Q(2), q)
    Lv = fused(n, params, Q(5), q)
    c = block(Lu, N, W, 1, 2) * block(Lv, N, W, 2, 1) - block(Lv, N, W, 2, 1) * block(Lu, N, W, 1, 2)
    nz = [(r, s, c[r, s]) for r in range(W) for s in range(W) if c[r, s] != 0]
    print("COMM_L12_2_L21_5 =", len(nz), nz[0])
    # central series at u = 2
    xi = q ** (-2 * n - 2)
    Lx = fused(n, params, Q(2) * xi, q)
    bar = [n - i + 1 if i <= n else n - i for i in range(1, N + 1)]
    eps = [1 if i <= n else -1 for i in range(1, N + 1)]
    T = sp.zeros(N * W)
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            blk = block(Lx, N, W, N - b + 1, N - a + 1) * eps[a - 1] * eps[b - 1]
            T[(a - 1) * W:a * W, (b - 1) * W:b * W] = blk
    D = sp.diag(*[q ** b for b in bar])
    Dfull = sp.kronecker_product(D, sp.eye(W))
    Z = Lu * Dfull * T * Dfull.inv()
    print("Z_AT_2 =", Z[0, 0], "scalar:", Z == Z[0, 0] * sp.eye(N * W))
    l11 = block(Lu, N, W, 1, 1)
    h2 = block(Lu, N, W, 2, 2) - block(Lu, N, W, 2, 1) * l11.inv() * block(Lu, N, W, 1, 2)
    print("TRACE_H1_AT_2 =", l11.trace())
    print("TRACE_H2_AT_2 =", h2.trace())
    print("DET_H2_AT_2 =", h2.det())


if __name__ == "__main__":
    main()
