"""Exact arithmetic in the real quadratic fields Q(sqrt d), d in {1, 2, 5}.

A value is stored as ``(p + q*sqrt(d)) / n`` with integers p, q, n, n > 0 and
gcd(p, q, n) = 1.  Values with q = 0 always carry d = 1, so rationals mix
freely with either irrational field, while sqrt(2) and sqrt(5) never meet.

>>> phi = QuadScalar(Fraction(1, 2), Fraction(1, 2), 5)
>>> phi * phi == phi + 1
True
>>> str(phi)
'1/2+1/2*sqrt(5)'
"""

from fractions import Fraction
from math import gcd
import re

from .errors import DivisionByZero, MixedRadicand

RADICANDS = (1, 2, 5)


def _common_d(d1, d2):
    if d1 == d2 or d2 == 1:
        return d1
    if d1 == 1:
        return d2
    raise MixedRadicand(f"cannot combine sqrt({d1}) and sqrt({d2})")


class QuadScalar:
    __slots__ = ("_p", "_q", "_n", "_d", "_hash")

    def __init__(self, a=0, b=0, d=1):
        if d not in RADICANDS:
            raise ValueError(f"radicand must be one of {RADICANDS}, got {d}")
        a = Fraction(a)
        b = Fraction(b)
        if d == 1:
            a, b = a + b, Fraction(0)
        n = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (n // a.denominator), b.numerator * (n // b.denominator), n, d)

    def _set(self, p, q, n, d):
        if q == 0:
            d = 1
        g = gcd(gcd(p, q), n)
        if g != 1:
            p //= g
            q //= g
            n //= g
        self._p, self._q, self._n, self._d = p, q, n, d
        self._hash = None

    @classmethod
    def _raw(cls, p, q, n, d):
        obj = cls.__new__(cls)
        if n < 0:
            p, q, n = -p, -q, -n
        obj._set(p, q, n, d)
        return obj

    @classmethod
    def sqrt(cls, d):
        """Return sqrt(d) for d in {1, 2, 5}."""
        return cls._raw(0, 1, 1, d) if d != 1 else cls._raw(1, 0, 1, 1)

    # -- field views ---------------------------------------------------------
    @property
    def a(self):
        return Fraction(self._p, self._n)

    @property
    def b(self):
        return Fraction(self._q, self._n)

    @property
    def d(self):
        return self._d

    def is_rational(self):
        return self._q == 0

    def key(self):
        """Canonical tuple (a.num, a.den, b.num, b.den, d) used for hashing."""
        a, b = self.a, self.b
        return (a.numerator, a.denominator, b.numerator, b.denominator, self._d)

    # -- arithmetic ----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, QuadScalar):
            return other
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return QuadScalar._raw(f.numerator, 0, f.denominator, 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = _common_d(self._d, o._d)
        n1, n2 = self._n, o._n
        return QuadScalar._raw(self._p * n2 + o._p * n1, self._q * n2 + o._q * n1, n1 * n2, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar._raw(-self._p, -self._q, self._n, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = _common_d(self._d, o._d)
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        return QuadScalar._raw(p1 * p2 + d * q1 * q2, p1 * q2 + q1 * p2, self._n * o._n, d)

    __rmul__ = __mul__

    def conjugate(self):
        """Galois conjugate a - b*sqrt(d)."""
        return QuadScalar._raw(self._p, -self._q, self._n, self._d)

    def inv(self):
        # (p + q r)/n inverted is n (p - q r) / (p^2 - d q^2)
        p, q, d = self._p, self._q, self._d
        norm = p * p - d * q * q
        if norm == 0:
            raise DivisionByZero("inverse of zero")
        return QuadScalar._raw(self._n * p, -self._n * q, norm, d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inv()
        result = QuadScalar._raw(1, 0, 1, 1)
        e = abs(e)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- order ---------------------------------------------------------------
    def sign(self):
        """Exact sign of p + q*sqrt(d) (the denominator is positive)."""
        p, q = self._p, self._q
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sp == sq or sq == 0:
            return sp
        if sp == 0:
            return sq
        return sp * ((p * p > self._d * q * q) - (p * p < self._d * q * q))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self._p, self._q, self._n, self._d) == (o._p, o._q, o._n, o._d)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def _cmp(self, other):
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self):
        return self._p != 0 or self._q != 0

    def __float__(self):
        # approximate; for human-readable reports only
        return (self._p + self._q * self._d ** 0.5) / self._n

    # -- text ----------------------------------------------------------------
    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        rad = f"sqrt({self._d})" if abs(b) == 1 else f"{abs(b)}*sqrt({self._d})"
        if a == 0:
            return ("-" if b < 0 else "") + rad
        return f"{a}{'-' if b < 0 else '+'}{rad}"

    def __repr__(self):
        return f"QuadScalar('{self}')"

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``: accepts 'p/q', 'r/s*sqrt(d)', 'p/q+r/s*sqrt(d)'."""
        s = text.replace(" ", "")
        m = _TEXT_RE.fullmatch(s)
        if not m:
            raise ValueError(f"not a QuadScalar encoding: {text!r}")
        rat, sign, coeff, rad = m.group("rat", "sign", "coeff", "rad")
        rat = rat or m.group("rat2")
        if rad is None:
            return cls(Fraction(rat))
        a = Fraction(rat) if rat else Fraction(0)
        b = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            b = -b
        return cls(a, b, int(rad))


_RAT = r"\d+(?:/\d+)?"
_TEXT_RE = re.compile(
    rf"(?P<rat>-?{_RAT})"
    rf"|(?:(?P<rat2>-?{_RAT})(?=[+-]))?(?P<sign>[+-])?(?:(?P<coeff>{_RAT})\*)?sqrt\((?P<rad>[125])\)"
)

ZERO = QuadScalar(0)
ONE = QuadScalar(1)
SQRT2 = QuadScalar.sqrt(2)
SQRT5 = QuadScalar.sqrt(5)
PHI = QuadScalar(Fraction(1, 2), Fraction(1, 2), 5)


def add(x, y):
    return x + y


def mul(x, y):
    return x * y


def neg(x):
    return -x


def inv(x):
    return x.inv()


def sign(x):
    return x.sign()
