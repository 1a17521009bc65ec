import random

from gmpy2 import mpq
import pytest

from qca import _kernels_py, kernels
from qca.linalg import Mat

compiled = pytest.importorskip("qca._kernels")


def rand_rows(rng, n):
    return [[mpq(rng.randint(-6, 6), rng.randint(1, 4)) + (5 if i == j else 0) for j in range(n)]
            for i in range(n)]


def test_backends_agree():
    rng = random.Random(7)
    for n in (1, 3, 8):
        a, b = rand_rows(rng, n), rand_rows(rng, n)
        assert compiled.matmul(a, b) == _kernels_py.matmul(a, b)
        assert compiled.inverse(a) == _kernels_py.inverse(a)
        assert compiled.det(a) == _kernels_py.det(a)
        assert compiled.solve(a, b) == _kernels_py.solve(a, b)


def test_singular_matrix_raises_in_both():
    a = [[mpq(1), mpq(2)], [mpq(2), mpq(4)]]
    for impl in (compiled, _kernels_py):
        with pytest.raises(ZeroDivisionError):
            impl.inverse(a)
        assert impl.det(a) == 0


def test_selected_backend():
    assert kernels.BACKEND in ("compiled", "python")


def test_mat_round_trip():
    m = Mat([[mpq(2), mpq(1)], [mpq(1), mpq(1)]])
    assert m @ m.inverse() == Mat.identity(2)
    assert m.det() == 1
