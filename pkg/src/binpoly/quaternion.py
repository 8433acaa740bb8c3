"""Hamilton quaternions with QuadScalar coefficients."""

from fractions import Fraction

from .errors import DivisionByZero
from .scalars import ONE, ZERO, QuadScalar


class Quaternion:
    """w + x i + y j + z k, with ij = k, jk = i, ki = j."""

    __slots__ = ("w", "x", "y", "z", "_hash")

    def __init__(self, w=0, x=0, y=0, z=0):
        self.w, self.x, self.y, self.z = (_scalar(c) for c in (w, x, y, z))
        self._hash = None

    @property
    def coords(self):
        return (self.w, self.x, self.y, self.z)

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            s = QuadScalar._coerce(other)
            if s is None:
                return NotImplemented
            return Quaternion(self.w * s, self.x * s, self.y * s, self.z * s)
        a1, b1, c1, d1 = self.coords
        a2, b2, c2, d2 = other.coords
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        s = QuadScalar._coerce(other)
        if s is None:
            return NotImplemented
        return self * s

    def __add__(self, other):
        return Quaternion(*(p + q for p, q in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Quaternion(*(p - q for p, q in zip(self.coords, other.coords)))

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def conj(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self):
        """Reduced norm w^2 + x^2 + y^2 + z^2."""
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def inv(self):
        n = self.norm()
        if not n:
            raise DivisionByZero("inverse of the zero quaternion")
        if n == ONE:
            return self.conj()
        return self.conj() * n.inv()

    def __pow__(self, e):
        base = self if e >= 0 else self.inv()
        result = Quaternion(1)
        for _ in range(abs(e)):
            result = result * base
        return result

    def dot(self, other):
        """Euclidean inner product in R^4."""
        return self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(c.key() for c in self.coords))
        return self._hash

    def encode(self):
        return [str(c) for c in self.coords]

    @classmethod
    def decode(cls, parts):
        return cls(*(QuadScalar.parse(p) for p in parts))

    def __repr__(self):
        return f"Quaternion({', '.join(self.encode())})"


def _scalar(c):
    if isinstance(c, QuadScalar):
        return c
    if isinstance(c, (int, Fraction)):
        return QuadScalar(c) if c else ZERO
    raise TypeError(f"quaternion coefficient must be a QuadScalar or rational, got {c!r}")


def qmul(p, q):
    return p * q


def qinv(q):
    return q.inv()


def qconj(q):
    return q.conj()


def qnorm(q):
    return q.norm()


I_UNIT = Quaternion(0, 1, 0, 0)
J_UNIT = Quaternion(0, 0, 1, 0)
K_UNIT = Quaternion(0, 0, 0, 1)
