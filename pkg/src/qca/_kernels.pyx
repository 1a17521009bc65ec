# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact matrix kernels: GMP rationals through the gmpy2 C-API."""

from libc.stdlib cimport malloc, free
from gmpy2 cimport *

cdef extern from "gmp.h":
    void mpq_init(mpq_t x)
    void mpq_clear(mpq_t x)
    void mpq_add(mpq_t rop, const mpq_t a, const mpq_t b)
    void mpq_sub(mpq_t rop, const mpq_t a, const mpq_t b)
    void mpq_mul(mpq_t rop, const mpq_t a, const mpq_t b)
    void mpq_div(mpq_t rop, const mpq_t a, const mpq_t b)
    void mpq_neg(mpq_t rop, const mpq_t a)
    void mpq_swap(mpq_t a, mpq_t b)
    void mpq_set_ui(mpq_t rop, unsigned long a, unsigned long b)
    int mpq_sgn(const mpq_t op)

import_gmpy2()


cdef inline mpq _wrap(mpq_srcptr x):
    cdef mpq r = GMPy_MPQ_New(NULL)
    mpq_set(MPQ(r), x)
    return r


cdef mpq _ZERO = GMPy_MPQ_New(NULL)


def matmul(a, b):
    """Product of two dense matrices of mpq, skipping zero entries."""
    cdef Py_ssize_t n = len(a)
    if n == 0:
        return []
    cdef Py_ssize_t kk = len(b)
    cdef Py_ssize_t p = len(b[0]) if kk else 0
    cdef Py_ssize_t i, j, k, t, cnt
    cdef int *bcnt = <int *> malloc(kk * sizeof(int))
    cdef int *bidx = <int *> malloc(kk * p * sizeof(int) + 1)
    cdef mpq_ptr *bval = <mpq_ptr *> malloc(kk * p * sizeof(mpq_ptr) + 1)
    cdef __mpq_struct *acc = <__mpq_struct *> malloc(p * sizeof(__mpq_struct) + 1)
    cdef mpq_t tmp
    cdef mpq x
    cdef mpq_ptr av
    cdef list row, out, orow
    for k in range(kk):
        row = b[k]
        cnt = 0
        for j in range(p):
            x = <mpq> row[j]
            if mpq_sgn(MPQ(x)) != 0:
                bidx[k * p + cnt] = j
                bval[k * p + cnt] = MPQ(x)
                cnt += 1
        bcnt[k] = cnt
    for j in range(p):
        mpq_init(&acc[j])
    mpq_init(tmp)
    out = []
    try:
        for i in range(n):
            row = a[i]
            for k in range(kk):
                x = <mpq> row[k]
                av = MPQ(x)
                if mpq_sgn(av) == 0:
                    continue
                for t in range(bcnt[k]):
                    j = bidx[k * p + t]
                    mpq_mul(tmp, av, bval[k * p + t])
                    mpq_add(&acc[j], &acc[j], tmp)
            orow = [None] * p
            for j in range(p):
                if mpq_sgn(&acc[j]) == 0:
                    orow[j] = _ZERO
                else:
                    orow[j] = _wrap(&acc[j])
                    mpq_set_ui(&acc[j], 0, 1)
            out.append(orow)
    finally:
        for j in range(p):
            mpq_clear(&acc[j])
        mpq_clear(tmp)
        free(bcnt)
        free(bidx)
        free(bval)
        free(acc)
    return out


def solve(a, b):
    """X with a X = b by Gauss-Jordan elimination; raises ZeroDivisionError
    when a is singular."""
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t m = len(b[0]) if (n and len(b)) else 0
    cdef Py_ssize_t w = n + m
    cdef Py_ssize_t i, j, r, col, piv
    cdef __mpq_struct *M = <__mpq_struct *> malloc(n * w * sizeof(__mpq_struct) + 1)
    cdef int *nz = <int *> malloc(w * sizeof(int) + 1)
    cdef int nnz, t
    cdef mpq_t inv, f, tmp
    cdef list out, orow, row
    cdef mpq x
    for i in range(n * w):
        mpq_init(&M[i])
    mpq_init(inv)
    mpq_init(f)
    mpq_init(tmp)
    try:
        for i in range(n):
            row = a[i]
            for j in range(n):
                x = <mpq> row[j]
                mpq_set(&M[i * w + j], MPQ(x))
            row = b[i]
            for j in range(m):
                x = <mpq> row[j]
                mpq_set(&M[i * w + n + j], MPQ(x))
        for col in range(n):
            piv = -1
            for r in range(col, n):
                if mpq_sgn(&M[r * w + col]) != 0:
                    piv = r
                    break
            if piv < 0:
                raise ZeroDivisionError("singular matrix (column %d)" % col)
            if piv != col:
                for j in range(w):
                    mpq_swap(&M[piv * w + j], &M[col * w + j])
            mpq_set_ui(inv, 1, 1)
            mpq_div(inv, inv, &M[col * w + col])
            nnz = 0
            for j in range(col, w):
                if mpq_sgn(&M[col * w + j]) != 0:
                    mpq_mul(&M[col * w + j], &M[col * w + j], inv)
                    nz[nnz] = j
                    nnz += 1
            for r in range(n):
                if r == col or mpq_sgn(&M[r * w + col]) == 0:
                    continue
                mpq_set(f, &M[r * w + col])
                for t in range(nnz):
                    j = nz[t]
                    mpq_mul(tmp, f, &M[col * w + j])
                    mpq_sub(&M[r * w + j], &M[r * w + j], tmp)
        out = []
        for i in range(n):
            orow = [None] * m
            for j in range(m):
                if mpq_sgn(&M[i * w + n + j]) == 0:
                    orow[j] = _ZERO
                else:
                    orow[j] = _wrap(&M[i * w + n + j])
            out.append(orow)
    finally:
        for i in range(n * w):
            mpq_clear(&M[i])
        mpq_clear(inv)
        mpq_clear(f)
        mpq_clear(tmp)
        free(M)
        free(nz)
    return out


def inverse(a):
    cdef Py_ssize_t n = len(a)
    one = GMPy_MPQ_New(NULL)
    mpq_set_ui(MPQ(one), 1, 1)
    eye = [[one if i == j else _ZERO for j in range(n)] for i in range(n)]
    return solve(a, eye)


def det(a):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i, j, r, col, piv
    cdef __mpq_struct *M = <__mpq_struct *> malloc(n * n * sizeof(__mpq_struct) + 1)
    cdef mpq_t d, f, tmp
    cdef mpq x
    cdef list row
    cdef int sign = 1
    for i in range(n * n):
        mpq_init(&M[i])
    mpq_init(d)
    mpq_init(f)
    mpq_init(tmp)
    try:
        for i in range(n):
            row = a[i]
            for j in range(n):
                x = <mpq> row[j]
                mpq_set(&M[i * n + j], MPQ(x))
        mpq_set_ui(d, 1, 1)
        for col in range(n):
            piv = -1
            for r in range(col, n):
                if mpq_sgn(&M[r * n + col]) != 0:
                    piv = r
                    break
            if piv < 0:
                return _ZERO
            if piv != col:
                for j in range(n):
                    mpq_swap(&M[piv * n + j], &M[col * n + j])
                sign = -sign
            mpq_mul(d, d, &M[col * n + col])
            for r in range(col + 1, n):
                if mpq_sgn(&M[r * n + col]) == 0:
                    continue
                mpq_div(f, &M[r * n + col], &M[col * n + col])
                for j in range(col, n):
                    if mpq_sgn(&M[col * n + j]) != 0:
                        mpq_mul(tmp, f, &M[col * n + j])
                        mpq_sub(&M[r * n + j], &M[r * n + j], tmp)
        if sign < 0:
            mpq_neg(d, d)
        return _wrap(d)
    finally:
        for i in range(n * n):
            mpq_clear(&M[i])
        mpq_clear(d)
        mpq_clear(f)
        mpq_clear(tmp)
        free(M)
