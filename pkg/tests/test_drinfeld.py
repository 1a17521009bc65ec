import flint
from gmpy2 import mpq
import pytest

from qca.birat import BiField, FOp
from qca.drinfeld import (check_center, check_extended_relations, check_main_theorem_map,
                          delta_modes, extract_drinfeld, series_modes, z_series)
from qca.exact_field import QField, expand_at
from qca.gauss import gauss_decompose, l_matrix, scalar_ncmatrix
from qca.rep import LOperator
from qca.rmatrix import crossing_scalar, g_series

K = QField()
F = BiField(K)

# Frozen from tools/gen_oracles.py: z(2) for n = 2, params 3, 7, q = 2.
Z_AT_2 = mpq(55081, 1012)


def statuses(report):
    return {it["id"]: it["status"] for it in report.items}


def test_toy_delta_modes():
    a = 3
    e = FOp(F, 1, {(0, 0): F.const(a) / (F.const(a) - F.u())})
    modes = delta_modes(e, -4, 4)
    for k in range(-4, 5):
        assert modes[k][(0, 0)] == F.const(mpq(a) ** k)


def test_identity_l_has_trivial_series():
    M = scalar_ncmatrix(F, [[1, 0], [0, 1]])
    D = extract_drinfeld(gauss_decompose(M), 1, 3)
    assert all(x.is_zero() for x in D.Xp[1].values())
    assert all(x.is_zero() for x in D.Xm[1].values())
    assert D.h[1] == FOp.identity(F, 1) and D.h[2] == FOp.identity(F, 1)


def test_fused_modes_nonzero_finite_rank():
    L = LOperator(2, [3, 7], "+", K)
    D = extract_drinfeld(gauss_decompose(l_matrix(L)), 2, 4)
    nonzero = [k for k, x in D.Xp[1].items() if not x.is_zero()]
    assert nonzero
    def rank(m):
        return flint.fmpq_mat([[flint.fmpq(int(x.numerator), int(x.denominator)) for x in r]
                               for r in m.rows]).rank()
    ranks = {k: rank(D.Xp[1][k].at(1, 2)) for k in nonzero}
    assert all(0 < r < 16 for r in ranks.values())


def test_z_bar_single_factor():
    for a in (1, 3):
        L = LOperator(2, [a], "+", K)
        M = l_matrix(L)
        Z = z_series(gauss_decompose(M), M, 2)
        want = crossing_scalar(2, K).scale_arg(K.one / a)
        assert F.to_ratu(Z.right.is_scalar()) == want


def test_z_full_single_factor_is_constant():
    n, trunc = 1, 6
    L = LOperator(n, [1], "+", K)
    M = l_matrix(L)
    z = F.to_ratu(z_series(gauss_decompose(M), M, n).right.is_scalar())
    xi = K.q(-2 * n - 2)
    g = g_series(n, trunc, K)
    gxi = g.__class__(0, trunc, {k: v * xi ** k for k, v in g.items()}, "+", K.zero)
    prod = (g * gxi * expand_at(z, "zero", (0, trunc))).restrict(0, trunc)
    assert prod[0] == xi ** 2 * K.q(-2)
    assert all(prod[k] == 0 for k in range(1, trunc + 1))


def test_z_fused_matches_product_and_oracle():
    L = LOperator(2, [3, 7], "+", K)
    M = l_matrix(L)
    Z = z_series(gauss_decompose(M), M, 2)
    z = Z.right.is_scalar()
    assert z is not None and Z.left == Z.right
    c = crossing_scalar(2, K)
    assert F.to_ratu(z) == c.scale_arg(K.one / 3) * c.scale_arg(K.one / 7)
    assert z.at(2, 2) == Z_AT_2
    assert Z.product == FOp.identity(F, 16).scale(z)


def test_center_checks():
    L = LOperator(2, [3, 7], "+", K)
    r = check_center(L)
    assert r.ok, r.to_text()
    assert len(r.items) == 5
    bad = statuses(check_center(L, perturb=True))
    assert bad["center/n=2/m=2/reflection"] == "FAIL"
    assert bad["center/n=2/m=2/z-scalar"] == "PASS"


def test_center_commutative_case():
    assert check_center(LOperator(1, [2], "+", K)).ok


def test_extended_relations_rank_one():
    L = LOperator(1, [2, 5], "+", K)
    D = extract_drinfeld(gauss_decompose(l_matrix(L)), 1, 3)
    r = check_extended_relations(D)
    assert r.ok, r.to_text()
    assert "drinfeld/n=1/h-h/long-root" in statuses(r)


def test_extended_relations_wrong_shift_fails():
    L = LOperator(2, [3], "+", K)
    D = extract_drinfeld(gauss_decompose(l_matrix(L)), 2, 3)
    good = statuses(check_extended_relations(D))
    assert set(good.values()) == {"PASS"}
    bad = statuses(check_extended_relations(D, perturb=True))
    assert bad["drinfeld/n=2/X-X"] == "FAIL"


def test_main_map_single_factor():
    L = LOperator(2, [3], "+", K)
    D = extract_drinfeld(gauss_decompose(l_matrix(L)), 2, 4)
    r = check_main_theorem_map(D, 4, 2)
    assert r.ok, r.to_text()
    assert not check_main_theorem_map(D, 4, 2, perturb=True).ok
    with pytest.raises(ValueError):
        check_main_theorem_map(D, 5)


def test_series_modes_window():
    x = FOp(F, 1, {(0, 0): F.u() / (F.u() - 2)})
    plus = series_modes(x, "zero", -3, 0)
    assert plus[0].is_zero() and plus[-1][(0, 0)] == F.const(mpq(-1, 2))
    minus = series_modes(x, "infinity", 0, 2)
    assert minus[0][(0, 0)] == F.one and minus[2][(0, 0)] == F.const(4)
