from gmpy2 import mpq
import pytest

from qca.birat import BiField, FOp
from qca.exact_field import QField, RatU, expand_at

K = QField()
F = BiField(K)
u, q = F.u(), F.q()


def test_reduced_form():
    x = (u * u - 1) / (u - 1)
    assert x == u + 1
    assert x.den == F.one.den
    y = (u * q - q) / (q * q)
    assert y == (u - 1) / q


def test_field_operations():
    a = (u + q) / (u - 3)
    b = q / (u * q - 1)
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a ** -2 * a ** 2 == F.one
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()
    assert hash(a * b) == hash(b * a)


def test_argument_operations():
    a = (u - 2) / (u + q)
    assert a.scale_arg(F.const(3)) == (u * 3 - 2) / (u * 3 + q)
    assert a.invert_arg() == (1 - u * 2) / (1 + u * q)
    assert a.at(5, 2) == mpq(3, 7)


def test_constants_and_coefficients():
    c = (q ** 2 - 1) / (q + 1)
    assert c.is_const() and c == q - 1
    num, den = ((u * q + 3) / (u + 1)).u_coeffs()
    assert num[1] == q and num[0] == F.const(3) and den[0] == F.one


def test_matches_ratu_expansion():
    x = (u * q - 1 / q) / ((u - 2) * (u * q + 5))
    r = F.to_ratu(x)
    assert F.from_ratu(r) == x
    for point, window in (("zero", (0, 5)), ("infinity", (-6, -1))):
        got = x.expand(point, window)
        want = expand_at(r, point, window)
        for k in range(window[0], window[1] + 1):
            assert F.to_ratu(got[k]) == RatU.const(K, want[k])


def test_pinned_context():
    P = BiField(QField(mpq(3, 5)))
    x = (P.u() - P.q()) / (P.u() + P.q(2))
    assert x.at(1) == (1 - mpq(3, 5)) / (1 + mpq(9, 25))
    assert P.q(-1) == P.const(mpq(5, 3))


def test_fop_inverse_by_blocks():
    A = FOp(F, 4, {(0, 0): u, (0, 1): F.one, (1, 1): q, (2, 2): u + 1, (3, 3): F.const(2),
                   (2, 3): u})
    assert len(A.components()) == 2
    Ai = A.inverse()
    assert A @ Ai == FOp.identity(F, 4)
    S = FOp(F, 2, {(0, 1): F.one})
    with pytest.raises(ZeroDivisionError):
        S.inverse("S")


def test_fop_scalar_detection():
    z = (u + 1) / (u - q)
    assert FOp.identity(F, 3).scale(z).is_scalar() == z
    assert FOp(F, 2, {(0, 0): z}).is_scalar() is None
