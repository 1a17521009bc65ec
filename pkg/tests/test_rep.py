from gmpy2 import mpq
import pytest

from qca.exact_field import QField, Scalar
from qca.linalg import Mat
from qca.rep import (LOperator, btilde_closed, btilde_qk_closed, cartan_data, check_cartan,
                     check_piv, check_rll, default_params, fused_L, parse_params, pi_v)

K = QField()
q = Scalar.q()


def test_cartan_n2():
    C = cartan_data(2, 3, K)
    assert C.B == [[2, -2], [-2, 4]]
    assert C.Btilde == [[1, mpq(1, 2)], [mpq(1, 2), mpq(1, 2)]]
    assert C.A == [[2, -2], [-1, 2]]
    assert C.serre_r(1, 2) == 3 and C.serre_r(2, 1) == 2
    assert C.q_i(1) == q and C.q_i(2) == q ** 2


def test_btilde_closed_forms():
    assert btilde_closed(3, 2, 1) == 1
    for k in (1, 2, 3):
        b2 = K.qint(2, base=q ** k)
        b6 = K.qint(2, base=q ** (3 * k))
        assert btilde_qk_closed(2, 2, 2, k, K) == b2 / (b2 * b6)


def test_check_cartan_small_ranks():
    for n in (1, 2, 3):
        assert check_cartan(n, 2, K).ok
    assert not check_cartan(2, 1, K, perturb=True).ok


def test_piv_images():
    pv = pi_v(2, K)
    k2 = pv.k(2)
    assert [k2[(j, j)] for j in range(4)] == [1, q ** -2, q ** 2, 1]
    for k in (-2, 0, 3):
        x = pv.xp(2, k)
        assert x.entries == {(2, 1): -q ** (-3 * k)}


def test_piv_a_x_commutator():
    pv = pi_v(2, K)
    lhs = pv.a(1, 1).comm(pv.xp(1, 0))
    assert lhs == pv.xp(1, 1).scale(q + 1 / q)


def test_check_piv():
    for n in (1, 2, 3):
        assert check_piv(n, 2, K).ok
    assert not check_piv(2, 2, K, perturb=True).ok


def test_parse_params():
    assert parse_params("3, 1/2") == [3, mpq(1, 2)]
    assert parse_params("a1,b") == ["a1", "b"]
    with pytest.raises(ValueError):
        parse_params("3,x-y")


def test_loperator_validation():
    with pytest.raises(ValueError):
        LOperator(2, [3, 3], "+", K)
    with pytest.raises(ValueError):
        LOperator(2, [0], "+", K)
    with pytest.raises(ValueError):
        LOperator(2, [3], "0", K)


def test_default_params():
    assert default_params(2, K) == ["a1", "a2"]
    assert default_params(2, QField(mpq(3, 5))) == [2, 3]


def test_empty_fusion_is_identity():
    L = fused_L(1, [], "+", K)
    assert L.at(mpq(5), mpq(2)) == Mat.identity(2)


def test_rll_small_cases():
    for n, m in ((1, 1), (1, 2), (2, 1)):
        L = LOperator(n, default_params(m, K), "+", K)
        r = check_rll(L)
        assert r.ok, r.to_text()


def test_rll_numeric_and_reversed_params():
    a = LOperator(1, [2, 5], "+", K)
    b = LOperator(1, [5, 2], "+", K)
    assert check_rll(a).ok and check_rll(b).ok


def test_rll_pinned():
    P = QField(mpq(3, 5))
    assert check_rll(LOperator(1, default_params(2, P), "+", P)).ok


def test_rll_perturbed_fails_with_witness():
    r = check_rll(LOperator(1, ["a1"], "+", K), perturb=True)
    assert not r.ok
    assert "witness" in r.items[0]


def test_rll_rejects_unknown_exchange():
    with pytest.raises(ValueError):
        check_rll(LOperator(1, [2], "+", K), variant="typeA")
