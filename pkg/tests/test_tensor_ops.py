import random

from gmpy2 import mpq

from qca.exact_field import QField, RatU
from qca.rmatrix import build_constants, build_param
from qca.tensor_ops import (IndexData, SiteShape, TensorOperator, dump, embed_factor,
                            matrix_element, parse_dump, partial_trace, partial_transpose)

K = QField()


def op_from_rows(rows):
    n = len(rows)
    return TensorOperator(K, [n], {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})


def test_embed_single_site():
    X = op_from_rows([[1, 2], [3, 4]])
    E = embed_factor(X, (0,), [2, 2])
    for i in range(2):
        for j in range(2):
            for k in range(2):
                assert matrix_element(E, (i + 1, k + 1), (j + 1, k + 1)) == X[(i, j)]
            assert matrix_element(E, (i + 1, 1), (j + 1, 2)) == 0


def test_embed_permutation_on_outer_sites():
    C = build_constants(1, K)
    P13 = embed_factor(C.P, (0, 2), [2, 2, 2])
    for i in (1, 2):
        for k in (1, 2):
            for j in (1, 2):
                assert matrix_element(P13, (j, k, i), (i, k, j)) == 1


def test_disjoint_embeddings_commute():
    A = op_from_rows([[1, 2], [0, 5]])
    B = op_from_rows([[0, 1], [7, 3]])
    a = embed_factor(A, (0,), [2, 2])
    b = embed_factor(B, (1,), [2, 2])
    assert a @ b == b @ a


def test_transpose_rule_n1():
    ix = IndexData(1)
    e11 = TensorOperator(K, [2], {(0, 0): 1})
    t = partial_transpose(e11, 0, ix)
    assert t.entries.keys() == {(1, 1)}
    assert t[(1, 1)] == 1


def test_transpose_is_involution():
    rng = random.Random(4)
    ix = IndexData(2)
    shape = SiteShape([4, 4])
    X = TensorOperator(K, shape, {(rng.randrange(16), rng.randrange(16)): mpq(rng.randint(-5, 5))
                                  for _ in range(40)})
    assert partial_transpose(partial_transpose(X, 0, ix), 0, ix) == X
    assert partial_transpose(partial_transpose(X, 1, ix), 1, ix) == X


def test_q_is_conjugated_transposed_p():
    C = build_constants(2, K)
    shape = SiteShape([4, 4])
    D1 = embed_factor(TensorOperator(K, [4], {(i, i): d for i, d in enumerate(C.D)}), (0,), shape)
    D1inv = embed_factor(TensorOperator(K, [4], {(i, i): 1 / d for i, d in enumerate(C.D)}),
                         (0,), shape)
    Pt = partial_transpose(C.P, 0, C.index)
    assert D1inv @ Pt @ D1 == C.Q


def test_trace_of_permutation_is_identity():
    C = build_constants(2, K)
    assert partial_trace(C.P, 0) == TensorOperator.identity(K, [4])


def test_trace_of_product():
    A = op_from_rows([[1, 2], [3, 4]])
    B = op_from_rows([[0, 1], [1, 7]])
    AB = embed_factor(A, (0,), [2, 2]) @ embed_factor(B, (1,), [2, 2])
    assert partial_trace(AB, 0) == B.scale(RatU.const(K, 5))


def test_trace_extracts_scalar_n1():
    # tr_1(P^t1 z P^t1) = 2n z for the rank-one operator P^t1
    C = build_constants(1, K)
    z = (RatU.u(K) - K.q(2)) / (RatU.u(K) + 3)
    Pt = partial_transpose(C.P, 0, C.index)
    out = partial_trace(Pt @ Pt.scale(z), 0)
    assert out == TensorOperator.identity(K, [2]).scale(z * 2)


def test_matrix_elements():
    C = build_constants(2, K)
    assert matrix_element(C.P, (2, 1), (1, 2)) == 1
    for n in (1, 2, 3):
        Rb = build_param(n, "bar", K).op
        assert matrix_element(Rb, (1, 1), (1, 1)) == 1


def test_dump_round_trip():
    Rb = build_param(1, "bar", K).op
    assert parse_dump(K, dump(Rb), Rb.shape) == Rb
