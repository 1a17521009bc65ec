from gmpy2 import mpq
import pytest

from qca.birat import BiField, FOp
from qca.exact_field import QField
from qca.gauss import (MinorCalculator, NCMatrix, SingularMinor, check_embedding, check_gauss,
                       check_minor_relations, gauss_block, gauss_decompose, l_matrix, psi_image,
                       quantum_minor, quasideterminant, scalar_ncmatrix)
from qca.rep import LOperator

K = QField()
F = BiField(K)

# Frozen from tools/gen_oracles.py (sympy, closed-form Rbar, n = 2, params 3, 7, q = 2).
COMM_NONZERO = 30
COMM_FIRST = (0, 0, mpq(900, 221))
TRACE_H1_AT_2 = mpq(-25191, 75625)
TRACE_H2_AT_2 = mpq(-28512, 725)
DET_H2_AT_2 = mpq(479174066176, 442050625)


@pytest.fixture(scope="module")
def fused22():
    L = LOperator(2, [3, 7], "+", K)
    M = l_matrix(L)
    return L, M, gauss_decompose(M)


def value(op):
    return op[(0, 0)]


def test_quasideterminant_2x2_scalar():
    M = scalar_ncmatrix(F, [[2, 3], [5, 7]])
    # det/a11 = (14 - 15)/2
    assert value(quasideterminant(M, 2, 2)) == F.const(mpq(-1, 2))
    assert value(quasideterminant(M, 1, 1)) == F.const(mpq(-1, 7))


def test_quasideterminant_of_identity():
    M = scalar_ncmatrix(F, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    for i in (1, 2, 3):
        assert value(quasideterminant(M, i, i)) == F.one


def test_singular_minor_is_reported():
    M = scalar_ncmatrix(F, [[0, 1], [1, 0]])
    with pytest.raises(SingularMinor):
        quasideterminant(M, 2, 2)
    with pytest.raises(SingularMinor):
        gauss_decompose(M)


def test_gauss_of_identity():
    M = scalar_ncmatrix(F, [[1, 0], [0, 1]])
    G = gauss_decompose(M)
    assert G.F == M and G.H == M and G.E == M


def test_gauss_generic_2x2_noncommutative():
    # 2x2 operator entries that do not commute
    a = FOp(F, 2, {(0, 0): F.u() + 2, (1, 1): F.const(3), (0, 1): F.one})
    b = FOp(F, 2, {(1, 0): F.q(), (0, 0): F.one})
    c = FOp(F, 2, {(0, 1): F.u(), (1, 1): F.one})
    d = FOp(F, 2, {(0, 0): F.const(5), (1, 1): F.u() * F.q(2)})
    M = NCMatrix(F, 2, 2, 2, {(0, 0): a, (0, 1): b, (1, 0): c, (1, 1): d})
    G = gauss_decompose(M)
    ai = a.inverse()
    assert G.h(1) == a
    assert G.e(1, 2) == ai @ b
    assert G.f(2, 1) == c @ ai
    assert G.h(2) == d - c @ ai @ b
    assert G.product() == M


def test_fused_entries_match_oracle(fused22):
    _, M, G = fused22
    x = M[(0, 1)].at(2, 2)
    y = M[(1, 0)].at(5, 2)
    comm = x @ y - y @ x
    nz = [(r, s, comm[r, s]) for r in range(16) for s in range(16) if comm[r, s] != 0]
    assert len(nz) == COMM_NONZERO
    assert nz[0] == COMM_FIRST
    h1, h2 = G.h(1).at(2, 2), G.h(2).at(2, 2)
    assert sum(h1[i, i] for i in range(16)) == TRACE_H1_AT_2
    assert sum(h2[i, i] for i in range(16)) == TRACE_H2_AT_2
    assert h2.det() == DET_H2_AT_2


def test_reassembly(fused22):
    _, M, G = fused22
    assert G.product() == M


def test_check_gauss(fused22):
    L, _, _ = fused22
    r = check_gauss(L)
    assert r.ok, r.to_text()
    assert not check_gauss(L, perturb=True).ok


def test_minor_type_a_order_one(fused22):
    L, M, _ = fused22
    assert quantum_minor(L, [2], [3], "typeA", M) == M.entry(2, 3)
    with pytest.raises(ValueError):
        quantum_minor(L, [1, 4], [1, 2], "typeA", M)
    with pytest.raises(ValueError):
        quantum_minor(L, [2, 1], [1, 2], "typeA", M)


def test_minor_first_row_formula(fused22):
    _, M, _ = fused22
    calc = MinorCalculator(M, 2)
    for i in (2, 3):
        for j in (1, 2, 3, 4):
            lhs = calc.typeC2(1, i, 1, j)
            rhs = calc.l(1, 1) @ calc.l(i, j, 1) - (calc.l(i, 1) @ calc.l(1, j, 1)).scale(F.q(-1))
            assert lhs == rhs


def test_minor_relations(fused22):
    L, _, _ = fused22
    r = check_minor_relations(L)
    assert r.ok, r.to_text()
    bad = check_minor_relations(L, perturb=True)
    assert not bad.ok


def test_psi_zero_and_block(fused22):
    _, M, G = fused22
    assert psi_image(M, 0) == M
    assert psi_image(M, 1) == gauss_block(G, 1)
    with pytest.raises(ValueError):
        psi_image(M, 2)


def test_embedding_n2(fused22):
    L, _, _ = fused22
    r = check_embedding(L)
    assert r.ok, r.to_text()
    assert not check_embedding(L, perturb=True).ok


def test_embedding_composition_n3_pinned():
    P = QField(mpq(3, 5))
    L = LOperator(3, [2, 5], "+", P)
    r = check_embedding(L, L3=L)
    assert r.ok, r.to_text()
    assert any("psi1-psi1" in it["id"] for it in r.items)


def test_l_matrix_requires_numbers():
    with pytest.raises(ValueError):
        l_matrix(LOperator(1, ["a1"], "+", K))
