"""Exact arithmetic: polynomials and rational functions in q, rational
functions and truncated Laurent series in u, q-numbers, and a deterministic
identity verifier working by exact evaluation on sample grids.

Two base modes are supported.  In symbolic mode the scalars are elements of
Q(q) (class ``Scalar``); in pinned mode q is a fixed rational and scalars are
plain ``gmpy2.mpq`` values.  ``QField`` hides the difference.
"""

import re
from fractions import Fraction

from gmpy2 import mpq, mpz, lcm as _ilcm, gcd as _igcd

ZERO = mpq(0)
ONE = mpq(1)


# ---------------------------------------------------------------------------
# dense univariate polynomials, coefficient tuples low -> high
# ---------------------------------------------------------------------------

def ptrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return ptrim(out)


def pneg(a):
    return tuple(-c for c in a)


def psub(a, b):
    return padd(a, pneg(b))


def pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return ptrim(out)


def pdivmod(a, b):
    """Division with remainder over a field."""
    if not b:
        raise ZeroDivisionError("division by zero")
    r = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    qt = [0] * max(len(a) - db, 0)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = c * inv
        qt[k - db] = c
        for j in range(db + 1):
            r[k - db + j] = r[k - db + j] - c * b[j]
    return ptrim(qt), ptrim(r[:db])


def pmonic(a):
    if not a:
        return a
    lc = a[-1]
    if lc == 1:
        return a
    inv = 1 / lc
    return tuple(c * inv for c in a[:-1]) + (a[-1] * inv,)


def pgcd(a, b):
    """Monic gcd over a field by plain Euclid."""
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def peval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def ppow(a, k):
    out = (1,)
    for _ in range(k):
        out = pmul(out, a)
    return out


# integer-coefficient helpers used for fast gcd over Q

def _to_primitive(a):
    """Scale a rational polynomial to a primitive integer one."""
    den = mpz(1)
    for c in a:
        den = _ilcm(den, mpq(c).denominator)
    ints = [mpz(mpq(c) * den) for c in a]
    g = mpz(0)
    for c in ints:
        g = _igcd(g, c)
        if g == 1:
            break
    if g != 1:
        ints = [c // g for c in ints]
    if ints and ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _iprimitive(r):
    g = mpz(0)
    for c in r:
        g = _igcd(g, c)
        if g == 1:
            return r
    if g == 0:
        return []
    return [c // g for c in r]


def _iprem(a, b):
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        c = r[-1]
        k = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[k + j] -= c * b[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def qpoly_gcd(a, b):
    """Monic gcd of polynomials with rational coefficients."""
    if not a:
        return pmonic(tuple(mpq(c) for c in b))
    if not b:
        return pmonic(tuple(mpq(c) for c in a))
    if len(a) == 1 or len(b) == 1:
        return (ONE,)
    # strip common powers of the variable first; cheap and frequent for q
    sa = next(i for i, c in enumerate(a) if c != 0)
    sb = next(i for i, c in enumerate(b) if c != 0)
    s = min(sa, sb)
    x, y = _to_primitive(a[sa:]), _to_primitive(b[sb:])
    if len(x) < len(y):
        x, y = y, x
    while len(y) > 1:
        r = _iprimitive(_iprem(x, y))
        x, y = y, r
        if not y:
            break
    if y and len(y) == 1:
        g = (ONE,)
    else:
        g = pmonic(tuple(mpq(c) for c in x))
    return (ZERO,) * s + g


def _exact_quo(a, b):
    qt, r = pdivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return qt


# ---------------------------------------------------------------------------
# Scalar: element of Q(q)
# ---------------------------------------------------------------------------

def _qpoly_str(p, var="q"):
    if not p:
        return "0"
    terms = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        elif k == 1:
            terms.append("%s*%s" % (c, var))
        else:
            terms.append("%s*%s^%d" % (c, var, k))
    return " + ".join(terms)


def normalize(num, den):
    """Reduced Scalar num/den with monic denominator."""
    num = ptrim(mpq(c) for c in num)
    den = ptrim(mpq(c) for c in den)
    if not den:
        raise ZeroDivisionError("division by zero")
    if not num:
        return Scalar._make((), (ONE,))
    if len(den) > 1:
        g = qpoly_gcd(num, den)
        if len(g) > 1:
            num = _exact_quo(num, g)
            den = _exact_quo(den, g)
    lc = den[-1]
    if lc != 1:
        inv = 1 / lc
        num = tuple(c * inv for c in num)
        den = tuple(c * inv for c in den)
    return Scalar._make(num, den)


class Scalar:
    """Reduced rational function in q with rational coefficients."""

    __slots__ = ("num", "den", "_hash")

    @classmethod
    def _make(cls, num, den):
        s = object.__new__(cls)
        s.num = num
        s.den = den
        s._hash = None
        return s

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self.num, self.den = value.num, value.den
        else:
            v = mpq(value)
            self.num = (v,) if v != 0 else ()
            self.den = (ONE,)
        self._hash = None

    @classmethod
    def q(cls, k=1):
        if k >= 0:
            return cls._make((ZERO,) * k + (ONE,), (ONE,))
        return cls._make((ONE,), (ZERO,) * (-k) + (ONE,))

    @staticmethod
    def _coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, type(ONE), Fraction, type(mpz(1)))):
            return Scalar(x)
        return None

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return normalize(padd(self.num, o.num), self.den)
        if len(o.den) == 1:
            return Scalar._make(padd(self.num, pmul(o.num, self.den)), self.den)
        if len(self.den) == 1:
            return Scalar._make(padd(o.num, pmul(self.num, o.den)), o.den)
        g = qpoly_gcd(self.den, o.den)
        a = _exact_quo(o.den, g) if len(g) > 1 else o.den
        b = _exact_quo(self.den, g) if len(g) > 1 else self.den
        return normalize(padd(pmul(self.num, a), pmul(o.num, b)), pmul(self.den, a))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(pneg(self.num), self.den)

    def __sub__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return Scalar._make((), (ONE,))
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if len(d2) > 1 and len(n1) > 1:
            g = qpoly_gcd(n1, d2)
            if len(g) > 1:
                n1, d2 = _exact_quo(n1, g), _exact_quo(d2, g)
        if len(d1) > 1 and len(n2) > 1:
            g = qpoly_gcd(n2, d1)
            if len(g) > 1:
                n2, d1 = _exact_quo(n2, g), _exact_quo(d1, g)
        num, den = pmul(n1, n2), pmul(d1, d2)
        lc = den[-1]
        if lc != 1:
            inv = 1 / lc
            num = tuple(c * inv for c in num)
            den = tuple(c * inv for c in den)
        return Scalar._make(num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by zero")
        lc = self.num[-1]
        inv = 1 / lc
        return Scalar._make(tuple(c * inv for c in self.den), tuple(c * inv for c in self.num))

    def __truediv__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        if len(self.den) == 1 and len(self.num) == self._lowest() + 1:
            # monomial fast path
            s = self._lowest()
            c = self.num[s] ** k
            return Scalar._make((ZERO,) * (s * k) + (c,), (ONE,))
        out = Scalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _lowest(self):
        for i, c in enumerate(self.num):
            if c != 0:
                return i
        return -1

    def __eq__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            if len(self.den) == 1 and len(self.num) <= 1:
                self._hash = hash(self.num[0] if self.num else 0)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __call__(self, q0):
        return self.evaluate(q0)

    def evaluate(self, q0):
        d = peval(self.den, q0)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at q = %s" % q0)
        return peval(self.num, q0) / d

    def laurent(self):
        """{exponent: coeff} when the denominator is a monomial, else None."""
        if len(self.den) != self._den_low() + 1:
            return None
        s = self._den_low()
        c = self.den[s]
        return {k - s: v / c for k, v in enumerate(self.num) if v != 0}

    def _den_low(self):
        for i, c in enumerate(self.den):
            if c != 0:
                return i
        return 0

    def __str__(self):
        return "(%s)/(%s)" % (_qpoly_str(self.num), _qpoly_str(self.den))

    def __repr__(self):
        return "Scalar(%s)" % self


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------

_TERM = re.compile(r"^\s*([-+]?\d+(?:/\d+)?)(?:\*(\w)(?:\^(\d+))?)?\s*$")


def _parse_poly(text, var):
    text = text.strip()
    if text == "0":
        return ()
    coeffs = {}
    for part in text.split(" + "):
        m = _TERM.match(part)
        if not m or (m.group(2) and m.group(2) != var):
            raise ValueError("cannot parse polynomial term %r" % part)
        c = mpq(m.group(1))
        k = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[k] = coeffs.get(k, ZERO) + c
    top = max(coeffs)
    return ptrim(coeffs.get(k, ZERO) for k in range(top + 1))


def _split_fraction(text, open_, close):
    """Split '<open>A<close>/<open>B<close>' at the top-level slash."""
    text = text.strip()
    depth = 0
    for i, ch in enumerate(text):
        if ch == open_:
            depth += 1
        elif ch == close:
            depth -= 1
        elif ch == "/" and depth == 0:
            a, b = text[:i].strip(), text[i + 1:].strip()
            if a[0] != open_ or a[-1] != close or b[0] != open_ or b[-1] != close:
                break
            return a[1:-1], b[1:-1]
    raise ValueError("malformed fraction %r" % text)


class QField:
    """Coefficient field: Q(q) when symbolic, Q with q pinned otherwise."""

    def __init__(self, pinned=None):
        self.pinned = None if pinned is None else mpq(pinned)
        if self.pinned is not None and self.pinned in (0, 1, -1):
            raise ValueError("q must not be 0 or a root of unity")

    @classmethod
    def from_mode(cls, mode):
        if mode in (None, "symbolic"):
            return cls()
        if mode.startswith("pinned:"):
            return cls(mpq(mode[len("pinned:"):]))
        raise ValueError("unknown q-mode %r" % mode)

    @property
    def symbolic(self):
        return self.pinned is None

    @property
    def mode(self):
        return "symbolic" if self.symbolic else "pinned:%s" % self.pinned

    def __eq__(self, other):
        return isinstance(other, QField) and self.pinned == other.pinned

    def __hash__(self):
        return hash(self.pinned)

    def __repr__(self):
        return "QField(%s)" % self.mode

    def __call__(self, x):
        if self.symbolic:
            return x if isinstance(x, Scalar) else Scalar(x)
        if isinstance(x, Scalar):
            return x.evaluate(self.pinned)
        return mpq(x)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def q(self, k=1):
        if self.symbolic:
            return Scalar.q(k)
        return self.pinned ** k

    def at(self, x, q0):
        """Value of a scalar at q = q0 (pinned scalars are returned as is)."""
        if isinstance(x, Scalar):
            return x.evaluate(q0)
        return mpq(x)

    def qint(self, k, base=None):
        """[k]_x = (x^k - x^-k)/(x - x^-1) with x = base (default q)."""
        x = self.q() if base is None else self(base)
        if k == 0:
            return self.zero
        if k < 0:
            return -self.qint(-k, base)
        # x^(k-1) + x^(k-3) + ... + x^(1-k)
        out = self.zero
        for j in range(k):
            out = out + x ** (k - 1 - 2 * j)
        return out

    def qfact(self, k, base=None):
        out = self.one
        for j in range(1, k + 1):
            out = out * self.qint(j, base)
        return out

    def qbinom(self, k, r, base=None):
        if r < 0 or r > k:
            return self.zero
        return self.qfact(k, base) / (self.qfact(r, base) * self.qfact(k - r, base))

    def fmt(self, x):
        if self.symbolic:
            return str(self(x))
        return str(mpq(x))

    def parse(self, text):
        text = text.strip()
        if self.symbolic:
            a, b = _split_fraction(text, "(", ")")
            return normalize(_parse_poly(a, "q"), _parse_poly(b, "q"))
        return mpq(text)


def qint(k):
    """Symbolic q-integer [k]_q."""
    return QField().qint(k)


def qbinom(k, r):
    return QField().qbinom(k, r)


# ---------------------------------------------------------------------------
# RatU: rational functions of u over the field
# ---------------------------------------------------------------------------

class RatU:
    """Reduced rational function in u; denominator monic."""

    __slots__ = ("K", "num", "den")

    def __init__(self, K, num, den=None, reduce=True):
        self.K = K
        num = ptrim(K(c) for c in num)
        den = (K.one,) if den is None else ptrim(K(c) for c in den)
        if not den:
            raise ZeroDivisionError("division by zero")
        if not num:
            self.num, self.den = (), (K.one,)
            return
        if reduce and len(den) > 1:
            g = pgcd(num, den)
            if len(g) > 1:
                num = _exact_quo(num, g)
                den = _exact_quo(den, g)
        lc = den[-1]
        if lc != 1:
            inv = 1 / lc
            num = tuple(K(c * inv) for c in num)
            den = tuple(K(c * inv) for c in den)
        else:
            num = tuple(K(c) for c in num)
            den = tuple(K(c) for c in den)
        self.num, self.den = num, den

    @classmethod
    def const(cls, K, c):
        return cls(K, (c,))

    @classmethod
    def u(cls, K):
        return cls(K, (K.zero, K.one))

    @classmethod
    def poly(cls, K, coeffs):
        return cls(K, coeffs)

    def _lift(self, other):
        if isinstance(other, RatU):
            return other
        return RatU(self.K, (other,))

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = self._lift(other)
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatU(self.K, padd(self.num, o.num), self.den)
        return RatU(self.K, padd(pmul(self.num, o.den), pmul(o.num, self.den)),
                    pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatU(self.K, pneg(self.num), self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if not self.num or not o.num:
            return RatU(self.K, ())
        return RatU(self.K, pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if not o.num:
            raise ZeroDivisionError("division by zero")
        return RatU(self.K, pmul(self.num, o.den), pmul(self.den, o.num))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k):
        if k < 0:
            return RatU(self.K, (self.K.one,)) / (self ** (-k))
        return RatU(self.K, ppow(self.num, k), ppow(self.den, k))

    def __eq__(self, other):
        o = self._lift(other)
        return self.num == o.num and self.den == o.den

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, u0):
        return self.evaluate(u0)

    def evaluate(self, u0):
        d = peval(self.den, u0)
        if d == 0:
            raise ZeroDivisionError("pole at u = %s" % u0)
        return peval(self.num, u0) / d

    def at(self, u0, q0=None):
        """Exact rational value at (u0, q0); q0 is ignored in pinned mode."""
        if self.K.symbolic:
            num = tuple(self.K.at(c, q0) for c in self.num)
            den = tuple(self.K.at(c, q0) for c in self.den)
        else:
            num, den = self.num, self.den
        d = peval(den, u0)
        if d == 0:
            raise ZeroDivisionError("pole at u = %s" % u0)
        return peval(num, u0) / d

    def scale_arg(self, c):
        """r(c*u)."""
        c = self.K(c)
        num = tuple(x * c ** k for k, x in enumerate(self.num))
        den = tuple(x * c ** k for k, x in enumerate(self.den))
        return RatU(self.K, num, den)

    def invert_arg(self):
        """r(1/u)."""
        dn, dd = len(self.num) - 1, len(self.den) - 1
        num, den = tuple(reversed(self.num)), tuple(reversed(self.den))
        if dn < dd:
            num = (self.K.zero,) * (dd - dn) + num
        elif dd < dn:
            den = (self.K.zero,) * (dn - dd) + den
        return RatU(self.K, num, den)

    def expand_at(self, point, window):
        return expand_at(self, point, window)

    def __str__(self):
        return "[%s]/[%s]" % (self._pstr(self.num), self._pstr(self.den))

    def _pstr(self, p):
        if not p:
            return "0"
        terms = []
        for k, c in enumerate(p):
            if c == 0:
                continue
            s = "{%s}" % self.K.fmt(c)
            if k == 1:
                s += "*u"
            elif k > 1:
                s += "*u^%d" % k
            terms.append(s)
        return " + ".join(terms)

    def __repr__(self):
        return "RatU(%s)" % self

    @classmethod
    def parse(cls, K, text):
        a, b = _split_fraction(text, "[", "]")
        return cls(K, cls._pparse(K, a), cls._pparse(K, b))

    @staticmethod
    def _pparse(K, text):
        text = text.strip()
        if text == "0":
            return ()
        coeffs = {}
        for m in re.finditer(r"\{([^{}]*)\}(?:\*u(?:\^(\d+))?)?", text):
            k = 0
            if m.group(0).endswith("u") or "*u" in m.group(0):
                k = int(m.group(2) or 1)
            coeffs[k] = coeffs.get(k, K.zero) + K.parse(m.group(1))
        top = max(coeffs)
        return tuple(coeffs.get(k, K.zero) for k in range(top + 1))


# ---------------------------------------------------------------------------
# truncated Laurent series
# ---------------------------------------------------------------------------

class LaurentSeries:
    """Coefficient table on an exponent window [lo, hi].

    ``direction`` records which coefficients are exact: '+' for a series
    expanded at u = 0 (all terms below lo vanish, terms above hi are cut),
    '-' for a series expanded at u = infinity, None for a finite Laurent
    polynomial known on the whole window.
    """

    def __init__(self, lo, hi, coeffs=None, direction=None, zero=0):
        if lo > hi + 1:
            raise ValueError("empty window [%d, %d]" % (lo, hi))
        self.lo, self.hi = lo, hi
        self.direction = direction
        self.zero = zero
        self.coeffs = {}
        for k, c in (coeffs or {}).items():
            if not lo <= k <= hi:
                raise ValueError("exponent %d outside window [%d, %d]" % (k, lo, hi))
            if not _is_zero(c):
                self.coeffs[k] = c

    def __getitem__(self, k):
        if not self.lo <= k <= self.hi:
            raise KeyError("exponent %d outside window [%d, %d]" % (k, self.lo, self.hi))
        return self.coeffs.get(k, self.zero)

    def items(self):
        return sorted(self.coeffs.items())

    def restrict(self, lo, hi):
        lo, hi = max(lo, self.lo), min(hi, self.hi)
        cut = [k for k in self.coeffs if k < lo] if self.direction == "+" else \
            [k for k in self.coeffs if k > hi] if self.direction == "-" else []
        if cut:
            raise ValueError("restriction would drop the principal term u^%d" % cut[0])
        return LaurentSeries(lo, hi, {k: c for k, c in self.coeffs.items() if lo <= k <= hi},
                             self.direction, self.zero)

    def _combine_dir(self, other):
        if self.direction == other.direction:
            return self.direction
        if self.direction is None:
            return other.direction
        if other.direction is None:
            return self.direction
        raise ValueError("cannot combine expansions at 0 and at infinity")

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries(0, 0, {0: other}, None, self.zero)
            lo, hi = self.lo, self.hi
        else:
            lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
            if self.direction == "+" or other.direction == "+":
                lo = min(self.lo, other.lo)
            if self.direction == "-" or other.direction == "-":
                hi = max(self.hi, other.hi)
        d = self._combine_dir(other)
        out = {}
        for s in (self, other):
            for k, c in s.coeffs.items():
                if lo <= k <= hi:
                    out[k] = out[k] + c if k in out else c
        return LaurentSeries(lo, hi, out, d, self.zero)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.lo, self.hi, {k: -c for k, c in self.coeffs.items()},
                             self.direction, self.zero)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c, left=True):
        return LaurentSeries(self.lo, self.hi,
                             {k: (c * v if left else v * c) for k, v in self.coeffs.items()},
                             self.direction, self.zero)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other, left=False)
        d = self._combine_dir(other)
        lo, hi = self.lo + other.lo, self.hi + other.hi
        # a finite Laurent polynomial is exact beyond its window; a series
        # is only known up to its cut
        if d == "+":
            hi = min([s.hi + t.lo for s, t in ((self, other), (other, self))
                      if s.direction == "+"])
        elif d == "-":
            lo = max([s.lo + t.hi for s, t in ((self, other), (other, self))
                      if s.direction == "-"])
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                if lo <= k <= hi:
                    p = a * b
                    out[k] = out[k] + p if k in out else p
        return LaurentSeries(lo, hi, out, d, self.zero)

    def __rmul__(self, c):
        return self.scale(c, left=True)

    def shift(self, s):
        """Multiply by u^s."""
        return LaurentSeries(self.lo + s, self.hi + s,
                             {k + s: c for k, c in self.coeffs.items()},
                             self.direction, self.zero)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return all(self.coeffs.get(k, self.zero) == other.coeffs.get(k, other.zero)
                   for k in range(lo, hi + 1))

    def __repr__(self):
        return "LaurentSeries[%d,%d]%s(%s)" % (
            self.lo, self.hi, self.direction or "", ", ".join(
                "%d: %s" % kv for kv in self.items()))


def _is_zero(c):
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


def _series_of_quotient(num, den, count):
    """First ``count`` power-series coefficients of num/den, den[0] != 0."""
    inv = 1 / den[0]
    out = []
    for k in range(count):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv)
    return out


def expand_at(r, point, window):
    """Truncated Laurent expansion of a RatU at u = 0 or u = infinity."""
    lo, hi = window
    K = r.K
    if point in ("zero", 0, "0", "+"):
        num, den = r.num, r.den
        s = next(i for i, c in enumerate(den) if c != 0)
        den = den[s:]
        # r = u^(-s) num/den', den'(0) != 0
        if not num:
            return LaurentSeries(lo, hi, {}, "+", K.zero)
        t = next(i for i, c in enumerate(num) if c != 0)
        first = t - s
        if first < lo:
            raise ValueError("pole of order %d at u = 0 (factor u^%d) reaches below window %d"
                             % (s, s, lo))
        count = hi + s + 1
        coeffs = _series_of_quotient(num, den, max(count, 0)) if count > 0 else []
        table = {k - s: c for k, c in enumerate(coeffs) if lo <= k - s <= hi}
        return LaurentSeries(lo, hi, table, "+", K.zero)
    if point in ("infinity", "inf", "-"):
        # r(u) = u^(dn-dd) * rev(num)(1/u) / rev(den)(1/u)
        if not r.num:
            return LaurentSeries(lo, hi, {}, "-", K.zero)
        dn, dd = len(r.num) - 1, len(r.den) - 1
        rn, rd = tuple(reversed(r.num)), tuple(reversed(r.den))
        e = dn - dd
        if e > hi:
            raise ValueError("pole of order %d at u = infinity (factor u^%d) exceeds window %d"
                             % (e, e, hi))
        count = e - lo + 1
        coeffs = _series_of_quotient(rn, rd, max(count, 0)) if count > 0 else []
        table = {e - k: c for k, c in enumerate(coeffs) if lo <= e - k <= hi}
        return LaurentSeries(lo, hi, table, "-", K.zero)
    raise ValueError("expansion point must be zero or infinity")


def delta_truncation(r, K_window):
    """Expansion at 0 minus expansion at infinity on [-K, K]."""
    a = expand_at(r, "zero", (-K_window, K_window))
    b = expand_at(r, "infinity", (-K_window, K_window))
    table = {}
    for k in range(-K_window, K_window + 1):
        c = a[k] - b[k]
        if not _is_zero(c):
            table[k] = c
    return LaurentSeries(-K_window, K_window, table, None, r.K.zero)


# ---------------------------------------------------------------------------
# deterministic identity verification
# ---------------------------------------------------------------------------

class BoundTooSmall(ArithmeticError):
    pass


class SampleExhausted(ArithmeticError):
    pass


class CheckResult:
    """Outcome of verify_identity."""

    def __init__(self, ok, points, witness=None):
        self.ok = ok
        self.points = points
        self.witness = witness

    @property
    def status(self):
        return "PASS" if self.ok else "FAIL"

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "CheckResult(%s, points=%d%s)" % (
            self.status, self.points, "" if self.witness is None else ", witness=%r" % (self.witness,))


def _difference(a, b):
    """None if a == b, else a description of the first differing entry."""
    if hasattr(a, "first_difference"):
        return a.first_difference(b)
    if a == b:
        return None
    return {"entry": None, "lhs": a, "rhs": b}


class _Tree:
    def __init__(self, lhs, rhs, names, bounds, start, slack):
        self.lhs, self.rhs = lhs, rhs
        self.names, self.bounds = names, bounds
        self.start, self.slack = start, slack
        self.points = 0

    def run(self, assign, depth):
        """Returns None (identity holds on the subtree), a witness dict,
        or raises SampleExhausted."""
        if depth == len(self.names):
            lv = self.lhs(assign)
            rv = self.rhs(assign)
            self.points += 1
            d = _difference(lv, rv)
            if d is None:
                return None
            d = dict(d)
            d["assignment"] = dict(assign)
            return d
        name = self.names[depth]
        need = self.bounds[depth] + 1
        got = 0
        cand = self.start
        misses = 0
        while got < need:
            assign[name] = mpq(cand)
            cand += 1
            try:
                w = self.run(assign, depth + 1)
            except (ZeroDivisionError, SampleExhausted):
                misses += 1
                if misses > self.slack:
                    del assign[name]
                    raise SampleExhausted("no admissible sample points for %s" % name)
                continue
            if w is not None:
                del assign[name]
                return w
            got += 1
        del assign[name]
        return None


def verify_identity(lhs, rhs, vars, degree_bounds, start=2, slack=64, cross_check=True):
    """Certify lhs == rhs as rational functions by exact evaluation.

    ``lhs`` and ``rhs`` map an assignment {name: mpq} to exact values
    (rationals or matrices supporting ==); they raise ZeroDivisionError at
    poles, which are skipped.  ``degree_bounds`` gives, per variable, the
    width of the exponent range of the cleared identity.  Points for each
    variable are 2, 3, 4, ... chosen branch by branch, so a vanishing on
    (bound+1) points per variable is an iterated-interpolation certificate.
    """
    names = list(vars)
    if isinstance(degree_bounds, dict):
        bounds = [int(degree_bounds[v]) for v in names]
    else:
        bounds = [int(b) for b in degree_bounds]
    tree = _Tree(lhs, rhs, names, bounds, start, slack)
    w = tree.run({}, 0)
    if w is not None:
        return CheckResult(False, tree.points, w)
    if cross_check and names:
        # one point beyond every grid, as a guard against an undersized bound
        base = start + max(bounds) + 1
        for attempt in range(slack):
            assign = {v: mpq(base + attempt + 7 * i) for i, v in enumerate(names)}
            try:
                lv, rv = lhs(assign), rhs(assign)
            except ZeroDivisionError:
                continue
            tree.points += 1
            d = _difference(lv, rv)
            if d is not None:
                raise BoundTooSmall("bound too small: identity holds on the grid but "
                                    "fails at %s" % {k: str(v) for k, v in assign.items()})
            break
    return CheckResult(True, tree.points)


# ---------------------------------------------------------------------------
# exponent spans: bookkeeping for degree bounds of cleared identities
# ---------------------------------------------------------------------------

class Span:
    """Per-variable exponent ranges {var: (lo, hi)} of a Laurent polynomial.

    A product of two polynomials has the sum of their spans; a sum lies in
    the hull.  ``width`` is the degree bound handed to verify_identity.
    """

    def __init__(self, ranges=None):
        self.r = {k: (int(a), int(b)) for k, (a, b) in (ranges or {}).items()}

    def __getitem__(self, var):
        return self.r.get(var, (0, 0))

    def width(self, var):
        lo, hi = self[var]
        return hi - lo

    def __mul__(self, other):
        keys = set(self.r) | set(other.r)
        return Span({k: (self[k][0] + other[k][0], self[k][1] + other[k][1]) for k in keys})

    def __or__(self, other):
        keys = set(self.r) | set(other.r)
        return Span({k: (min(self[k][0], other[k][0]), max(self[k][1], other[k][1]))
                     for k in keys})

    def __pow__(self, k):
        out = Span()
        for _ in range(k):
            out = out * self
        return out

    def subst(self, var, monomial):
        """Span after substituting var -> prod(w^e for w, e in monomial)."""
        lo, hi = self[var]
        out = {k: v for k, v in self.r.items() if k != var}
        for w, e in monomial.items():
            a, b = sorted((e * lo, e * hi))
            c, d = out.get(w, (0, 0))
            out[w] = (c + a, d + b)
        return Span(out)

    def bounds(self, vars):
        return {v: self.width(v) for v in vars}

    def __eq__(self, other):
        return isinstance(other, Span) and all(self[k] == other[k] for k in set(self.r) | set(other.r))

    def __repr__(self):
        return "Span(%s)" % ", ".join("%s:[%d,%d]" % (k, a, b) for k, (a, b) in sorted(self.r.items()))


def scalar_span(x, K, qvar="q"):
    """Span in q of a Laurent-polynomial scalar (empty in pinned mode)."""
    if not K.symbolic or x == 0:
        return Span()
    lau = x.laurent()
    if lau is None:
        raise ValueError("scalar %s is not a Laurent polynomial in q" % x)
    return Span({qvar: (min(lau), max(lau))})


def upoly_span(coeffs, K, uvar="u", qvar="q"):
    """Span of a polynomial in u whose coefficients are Laurent in q."""
    out = None
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        s = scalar_span(c, K, qvar) * Span({uvar: (k, k)})
        out = s if out is None else out | s
    return out or Span()
