from gmpy2 import mpq
import pytest

from qca.exact_field import QField, RatU, Scalar
from qca.linalg import Mat
from qca.rmatrix import (build_constants, build_param, check_crossing, check_scalar_f, check_unitarity,
                         check_ybe, crossing_scalar, g_series, scalar_f)
from qca.tensor_ops import matrix_element

K = QField()
q = Scalar.q()


def test_d_matrix_n2():
    C = build_constants(2, K)
    assert C.D == [q ** 2, q, q ** -1, q ** -2]


def test_p_and_q_on_basis_vectors():
    C = build_constants(2, K)
    assert matrix_element(C.P, (2, 1), (1, 2)) == 1
    # Q|1,2> = 0 because 2' = 3 differs from 1
    assert all(matrix_element(C.Q, (a, b), (1, 2)) == 0 for a in range(1, 5) for b in range(1, 5))
    # Q|4,1> = |4,1> + q^-1 |3,2> - q^-3 |2,3> - q^-4 |1,4>
    expected = {(4, 1): Scalar(1), (3, 2): q ** -1, (2, 3): -q ** -3, (1, 4): -q ** -4}
    for a in range(1, 5):
        for b in range(1, 5):
            v = matrix_element(C.Q, (a, b), (4, 1))
            assert v == RatU.const(K, expected.get((a, b), Scalar(0)))


def test_scalar_f_leading_terms():
    for n in (1, 2):
        xi = q ** (-2 * n - 2)
        f = scalar_f(n, 2, K=K)
        assert f[0] == 1
        assert f[1] * (1 + xi) == q ** 2 + q ** -2 + xi + 1 / xi


def test_scalar_f_methods_agree_small():
    assert scalar_f(1, 5, "recursion", K) == scalar_f(1, 5, "product", K)
    with pytest.raises(ValueError):
        scalar_f(1, 3, "guess", K)


def test_scalar_f_check_and_negative_control():
    assert check_scalar_f(1, K, trunc=4).ok
    assert not check_scalar_f(1, K, trunc=4, perturb=True).ok


def test_g_series_prefactor():
    n = 1
    g = g_series(n, 3, K)
    xi = q ** -4
    assert g[0] == q ** -2 * xi


def test_rbar_at_one_is_permutation():
    for n in (1, 2):
        Rb = build_param(n, "bar", K)
        C = build_constants(n, K)
        assert Rb.at(1, 3) == C.P.at(1, 3)


def test_type_a_entry():
    RA = build_param(2, "typeA", K).op
    u = RatU.u(K)
    assert matrix_element(RA, (1, 2), (1, 2)) == (u - 1) / (q * u - 1 / q)
    assert matrix_element(RA, (1, 1), (1, 1)) == 1


def test_invalid_variant():
    with pytest.raises(ValueError):
        build_param(1, "cyclic", K)


def test_ybe_bar_and_full():
    for n in (1, 2):
        r = check_ybe("bar", n, K)
        assert r.ok, r.to_text()
    r = check_ybe("full", 1, K)
    assert r.ok and "inherited" in r.items[0]["note"]


def test_ybe_perturbed_has_witness():
    r = check_ybe("bar", 1, K, perturb=True)
    assert not r.ok
    w = r.items[0]["witness"]
    assert set(w["assignment"]) == {"u", "v", "q"}
    assert w["lhs"] != w["rhs"]


def test_unitarity():
    for n in (1, 2):
        assert check_unitarity(n, K).ok
    assert not check_unitarity(1, K, perturb=True).ok


def test_crossing_bar_scalar():
    r = check_crossing("bar", 1, K)
    assert r.ok
    u = RatU.u(K)
    xi = q ** -4
    assert crossing_scalar(1, K) == (u - q ** 2) * (u * xi - 1) / ((1 - u) * (1 - u * xi * q ** 2))


def test_crossing_full_scalar_n2():
    r = check_crossing("full", 2, K, trunc=4)
    assert r.ok
    full = [it for it in r.items if it["id"] == "crossing/full/n=2"][0]
    assert "xi^2 q^-2" in full["note"]


def test_crossing_without_d_fails():
    assert not check_crossing("bar", 1, K, use_D=False).ok


def test_pinned_mode_matches_symbolic_values():
    P = QField("3/5")
    a = build_param(2, "bar", K).at(mpq(2), mpq(3, 5))
    b = build_param(2, "bar", P).at(mpq(2))
    assert isinstance(a, Mat) and a == b
