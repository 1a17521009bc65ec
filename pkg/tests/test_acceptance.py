"""The thirteen acceptance criteria, all exact (zero tolerance).

Each test records its outcome in conftest.ACCEPTANCE; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import json
import time

from gmpy2 import mpq
import pytest

from conftest import ACCEPTANCE
from qca.cli import SUITES, main
from qca.drinfeld import (check_center, check_extended_relations, check_main_theorem_map,
                          extract_drinfeld, z_series)
from qca.birat import FOp
from qca.exact_field import QField, RatU
from qca.gauss import (check_embedding, check_gauss, check_minor_relations, gauss_decompose,
                       l_matrix)
from qca.rep import LOperator, check_cartan, check_rll, default_params
from qca.rmatrix import (check_crossing, check_scalar_f, check_unitarity, check_ybe,
                         crossing_scalar)

K = QField()


@pytest.fixture
def criterion(request):
    """Record the outcome of the calling test under its criterion number."""
    num, name = request.param
    ACCEPTANCE[num] = (name, False)
    yield
    rep = getattr(request.node, "rep_call", None)
    ACCEPTANCE[num] = (name, rep is not None and rep.passed)


def crit(num, name):
    return pytest.mark.parametrize("criterion", [(num, name)], indirect=True, ids=["c%02d" % num])


def all_pass(report):
    bad = [it for it in report.items if it["status"] != "PASS"]
    assert not bad, report.to_text()
    assert report.items


@pytest.fixture(scope="module")
def fused22():
    L = LOperator(2, [3, 7], "+", K)
    M = l_matrix(L)
    return L, M, gauss_decompose(M)


@crit(1, "Yang-Baxter equation for Rbar, n = 1, 2, 3, symbolic q")
def test_c01_ybe(criterion):
    for n in (1, 2, 3):
        t = time.perf_counter()
        all_pass(check_ybe("bar", n, K))
        assert time.perf_counter() - t < (60 if n <= 2 else 600)


@crit(2, "unitarity and crossing scalars, n = 1, 2")
def test_c02_unitarity_crossing(criterion):
    u = RatU.u(K)
    for n in (1, 2):
        all_pass(check_unitarity(n, K))
        r = check_crossing("full", n, K, trunc=6)
        all_pass(r)
        q, xi = K.q(), K.q(-2 * n - 2)
        assert crossing_scalar(n, K) == (u - q ** 2) * (u * xi - 1) / ((1 - u) * (1 - u * xi * q ** 2))
        full = [it for it in r.items if it["id"].startswith("crossing/full")][0]
        assert "xi^2 q^-2 = %s" % (xi ** 2 * q ** -2) in full["note"]


@crit(3, "scalar function f(u): recursion = product through order 12, n = 1, 2, 3")
def test_c03_scalar_f(criterion):
    for n in (1, 2, 3):
        all_pass(check_scalar_f(n, K, trunc=12))


@crit(4, "RLL relation for fused L, (n, m) in {(1,1), (1,2), (2,1), (2,2)}")
def test_c04_rll(criterion):
    for n, m in ((1, 1), (1, 2), (2, 1), (2, 2)):
        t = time.perf_counter()
        all_pass(check_rll(LOperator(n, default_params(m, K), "+", K)))
        assert time.perf_counter() - t < 300


@crit(5, "Gauss decomposition at (2, 2): F H E = L, idempotence, quasideterminants")
def test_c05_gauss(criterion, fused22):
    L, M, G = fused22
    all_pass(check_gauss(L))
    assert G.product() == M


@crit(6, "quantum minor relations at (2, 2)")
def test_c06_minors(criterion, fused22):
    r = check_minor_relations(fused22[0])
    all_pass(r)
    ids = {it["id"].rsplit("/", 1)[-1] for it in r.items}
    assert {"skew-rows", "skew-cols", "s-factorization", "l11-commutation"} <= ids


@crit(7, "embedding: psi_1 image RLL at n = 2, psi_1 psi_1 = psi_2 at n = 3 pinned")
def test_c07_embedding(criterion, fused22):
    all_pass(check_embedding(fused22[0]))
    P = QField(mpq(3, 5))
    L3 = LOperator(3, [2, 5], "+", P)
    r = check_embedding(L3, L3=L3)
    all_pass(r)
    assert any("psi1-psi1" in it["id"] for it in r.items)


@crit(8, "central series z(u) at (2, 2)")
def test_c08_center(criterion, fused22):
    L, M, G = fused22
    r = check_center(L, M=M, G=G)
    all_pass(r)
    assert len(r.items) == 5
    Z = z_series(G, M, 2)
    z = Z.right.is_scalar()
    assert z is not None
    F = M.F
    assert Z.product == FOp.identity(F, M.dimW).scale(z)
    assert Z.left == Z.right


@crit(9, "relations between Gaussian generators at c = 0, n = 2, m = 2")
def test_c09_drinfeld(criterion, fused22):
    D = extract_drinfeld(fused22[2], 2, 4)
    r = check_extended_relations(D)
    all_pass(r)
    ids = {it["id"] for it in r.items}
    for fam in ("h-h/same-sign", "h-h/mixed-sign", "h-h/long-root", "h-X", "h-X/h_n+1-X_n",
                "h-X/h_n+1-X_n-1", "h-X/h_n+1-X_i", "X-X", "X+X-", "serre"):
        assert "drinfeld/n=2/" + fam in ids


@crit(10, "main map: commutators |m|,|l| <= 4 and Serre within window 3, n = 2")
def test_c10_main_map(criterion, fused22):
    D = extract_drinfeld(fused22[2], 2, 4)
    all_pass(check_main_theorem_map(D, 4, 3))


@crit(11, "Cartan data: Btilde B = 1 and Btilde(q^k) B(q^k) = 1, n <= 6, k <= 3")
def test_c11_cartan(criterion):
    for n in range(1, 7):
        all_pass(check_cartan(n, 3, K))


@crit(12, "negative controls: every suite fails under --perturb; exit codes")
def test_c12_negative_controls(criterion, capsys):
    base = ["--n", "2", "--fusion", "1", "--q-mode", "pinned:3/5", "--trunc", "3",
            "--format", "json"]
    for suite in SUITES:
        assert main(["--suite", suite, "--perturb"] + base) == 1, suite
        d = json.loads(capsys.readouterr().out)
        assert any("witness" in it for it in d["items"] if it["status"] == "FAIL"), suite
    assert main(["--suite", "ybe"] + base) == 0
    assert main(["--suite", "ybe", "--n", "0"]) == 2


@crit(13, "determinism: two suite=all runs give byte-identical JSON")
def test_c13_determinism(criterion, capsys):
    args = ["--suite", "all", "--n", "2", "--fusion", "2", "--trunc", "4",
            "--q-mode", "pinned:3/5", "--format", "json", "--no-timing", "--workers", "4"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["summary"]["status"] == "PASS"
