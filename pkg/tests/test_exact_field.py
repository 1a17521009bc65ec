from gmpy2 import mpq
import pytest

from qca.exact_field import (QField, RatU, Scalar, delta_truncation, expand_at, normalize,
                             verify_identity)
from qca.rep import btilde_qk_closed

K = QField()
q = Scalar.q()


def test_normalize_cancels_common_factor():
    # (q^2 - 1)/(q - 1)
    s = normalize((mpq(-1), mpq(0), mpq(1)), (mpq(-1), mpq(1)))
    assert s == q + 1
    assert s.den == (mpq(1),)


def test_normalize_q_integer():
    # (q^2 - q^-2)/(q - q^-1) after clearing q^2: (q^4 - 1)/(q^3 - q)
    s = normalize((mpq(-1), 0, 0, 0, mpq(1)), (0, mpq(-1), 0, mpq(1)))
    assert s == q + 1 / q
    assert s == K.qint(2)


def test_normalize_zero_and_pole():
    assert normalize((), (0, 0, 0, mpq(1))) == 0
    with pytest.raises(ZeroDivisionError):
        normalize((mpq(1),), ())


def test_scalar_field_axioms():
    a = (q ** 2 - 3) / (q + 5)
    b = q / (2 * q - 1)
    assert (a + b) * a == a * a + b * a
    assert a / a == 1
    assert (a * b).inverse() == a.inverse() * b.inverse()
    assert hash(a + b) == hash(b + a)


def test_pinned_field_evaluates():
    P = QField("3/5")
    assert P.q(2) == mpq(9, 25)
    assert P.qint(2) == mpq(3, 5) + mpq(5, 3)
    with pytest.raises(ValueError):
        QField(1)
    with pytest.raises(ValueError):
        QField.from_mode("pinned")


def test_expand_geometric_at_zero():
    r = 1 / (1 - RatU.u(K))
    s = expand_at(r, "zero", (0, 3))
    assert [s[k] for k in range(4)] == [1, 1, 1, 1]


def test_expand_at_infinity():
    a = mpq(3)
    u = RatU.u(K)
    r = a / (a - u)
    s = expand_at(r, "infinity", (-3, -1))
    assert [s[k] for k in (-1, -2, -3)] == [-3, -9, -27]


def test_delta_truncation_is_geometric_both_ways():
    a = mpq(3)
    u = RatU.u(K)
    d = delta_truncation(a / (a - u), 4)
    for k in range(-4, 5):
        assert d[k] == (1 / a) ** k


def test_expand_pole_outside_window_raises():
    u = RatU.u(K)
    with pytest.raises(ValueError):
        expand_at(1 / u ** 2, "zero", (-1, 2))


def test_ratu_round_trip():
    u = RatU.u(K)
    r = (u * q - 1 / q) / (u - q ** -6)
    assert RatU.parse(K, str(r)) == r


def test_verify_identity_pass_and_witness():
    res = verify_identity(lambda p: (p["u"] - 1) * (p["u"] + 1), lambda p: p["u"] ** 2 - 1,
                          ["u"], {"u": 2})
    assert res.ok
    bad = verify_identity(lambda p: p["u"] * p["u"], lambda p: p["u"], ["u"], {"u": 2})
    assert not bad.ok
    assert "u" in bad.witness["assignment"]


def test_verify_identity_commutative_base():
    res = verify_identity(lambda p: p["q"] * p["u"], lambda p: p["u"] * p["q"], ["u", "q"],
                          {"u": 1, "q": 1})
    assert res.ok


def test_verify_identity_btilde_qk():
    # [2]_q [2]_{q^3} Btilde_22(q) = [2]_q for n = 2
    def lhs(p):
        P = QField(p["q"])
        return P.qint(2) * P.qint(2, base=P.q(3)) * btilde_qk_closed(2, 2, 2, 1, P)

    res = verify_identity(lhs, lambda p: QField(p["q"]).qint(2), ["q"], {"q": 16})
    assert res.ok
