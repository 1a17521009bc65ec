"""Pure-Python exact matrix kernels on lists of rows of gmpy2.mpq."""

from gmpy2 import mpq

_Z = mpq(0)


def matmul(a, b):
    """Product of two dense matrices, skipping zero entries of a and b."""
    if not a:
        return []
    p = len(b[0]) if b else 0
    # sparse view of b rows
    brows = [[(j, x) for j, x in enumerate(row) if x] for row in b]
    out = []
    for row in a:
        acc = [_Z] * p
        for k, x in enumerate(row):
            if not x:
                continue
            for j, y in brows[k]:
                acc[j] += x * y
        out.append(acc)
    return out


def solve(a, b):
    """X with a X = b by Gauss-Jordan elimination; raises ZeroDivisionError
    when a is singular."""
    n = len(a)
    m = len(b[0]) if b else 0
    rows = [list(a[i]) + list(b[i]) for i in range(n)]
    width = n + m
    for col in range(n):
        piv = None
        for r in range(col, n):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("singular matrix (column %d)" % col)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
        prow = rows[col]
        inv = 1 / prow[col]
        nz = [j for j in range(col, width) if prow[j]]
        for j in nz:
            prow[j] *= inv
        for r in range(n):
            if r == col:
                continue
            row = rows[r]
            f = row[col]
            if not f:
                continue
            for j in nz:
                row[j] -= f * prow[j]
    return [row[n:] for row in rows]


def inverse(a):
    n = len(a)
    eye = [[mpq(1) if i == j else _Z for j in range(n)] for i in range(n)]
    return solve(a, eye)


def det(a):
    n = len(a)
    rows = [list(r) for r in a]
    d = mpq(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            return _Z
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            d = -d
        prow = rows[col]
        d *= prow[col]
        inv = 1 / prow[col]
        for r in range(col + 1, n):
            f = rows[r][col]
            if not f:
                continue
            f *= inv
            row = rows[r]
            for j in range(col, n):
                if prow[j]:
                    row[j] -= f * prow[j]
    return d
