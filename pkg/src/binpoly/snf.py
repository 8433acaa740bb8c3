"""Certified Smith normal form over the integers.

Elimination runs on dense numpy arrays in int64 and switches to Python-int
object arrays as soon as an update could overflow.  Every result is checked
by re-multiplying: U @ A @ V == D, U @ U_inv == I and V @ V_inv == I, the
last two proving |det U| = |det V| = 1.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np

_SAFE = 2 ** 62
_FLOAT_EXACT = 2 ** 52


@dataclass
class SNFResult:
    diagonal: list  # nonzero elementary divisors d_1 | d_2 | ... (positive)
    rank: int
    shape: tuple
    U: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray

    @property
    def torsion(self):
        return [d for d in self.diagonal if d > 1]

    def diagonal_matrix(self):
        m, n = self.shape
        d = np.zeros((m, n), dtype=object)
        for i, v in enumerate(self.diagonal):
            d[i, i] = v
        return d


class CertificationError(AssertionError):
    pass


def _maxabs(a):
    if a.size == 0:
        return 0
    return int(np.max(np.abs(a)))


class _Work:
    """The matrix and its four transforms, with on-demand promotion."""

    def __init__(self, a):
        m, n = a.shape
        self.obj = False
        self.A = np.array(a, dtype=np.int64)
        self.U = np.eye(m, dtype=np.int64)
        self.Ui = np.eye(m, dtype=np.int64)
        self.V = np.eye(n, dtype=np.int64)
        self.Vi = np.eye(n, dtype=np.int64)

    def promote(self):
        if not self.obj:
            for name in ("A", "U", "Ui", "V", "Vi"):
                setattr(self, name, getattr(self, name).astype(object))
            self.obj = True

    def guard(self, coeff_max, *arrays):
        # promote if |x| + |q| * |y| may leave the int64 range
        if self.obj:
            return
        big = max(_maxabs(x) for x in arrays)
        if big + coeff_max * big >= _SAFE:
            self.promote()

    # elementary operations, each applied to A and mirrored on the transforms
    def swap_rows(self, i, j):
        if i != j:
            self.A[[i, j]] = self.A[[j, i]]
            self.U[[i, j]] = self.U[[j, i]]
            self.Ui[:, [i, j]] = self.Ui[:, [j, i]]

    def swap_cols(self, i, j):
        if i != j:
            self.A[:, [i, j]] = self.A[:, [j, i]]
            self.V[:, [i, j]] = self.V[:, [j, i]]
            self.Vi[[i, j]] = self.Vi[[j, i]]

    def clear_col(self, t):
        """Row t is subtracted from rows below so that A[i, t] becomes A[i, t] mod p."""
        p = self.A[t, t]
        col = self.A[t + 1:, t]
        q = col // p
        nz = np.nonzero(q)[0]
        if nz.size == 0:
            return
        rows = nz + t + 1
        q = q[nz]
        qm = _maxabs(q)
        self.guard(qm, self.A[t], self.U[t], self.Ui[:, rows])
        if self.obj:
            q = q.astype(object)
        self.A[rows] -= np.outer(q, self.A[t])
        self.U[rows] -= np.outer(q, self.U[t])
        self.Ui[:, t] += self.Ui[:, rows] @ q

    def clear_row(self, t):
        p = self.A[t, t]
        row = self.A[t, t + 1:]
        r = row // p
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return
        cols = nz + t + 1
        r = r[nz]
        rm = _maxabs(r)
        self.guard(rm, self.A[:, t], self.V[:, t], self.Vi[cols])
        if self.obj:
            r = r.astype(object)
        self.A[:, cols] -= np.outer(self.A[:, t], r)
        self.V[:, cols] -= np.outer(self.V[:, t], r)
        self.Vi[t] += r @ self.Vi[cols]

    def negate_row(self, i):
        self.A[i] = -self.A[i]
        self.U[i] = -self.U[i]
        self.Ui[:, i] = -self.Ui[:, i]

    def fix_pair(self, i, j):
        """Replace diag(a, b) at positions i, j by diag(gcd, lcm)."""
        self.promote()
        a, b = int(self.A[i, i]), int(self.A[j, j])
        g, x, y = _xgcd(a, b)
        ag, bg = a // g, b // g
        L = np.array([[x, y], [-bg, ag]], dtype=object)
        Li = np.array([[ag, -y], [bg, x]], dtype=object)
        R = np.array([[1, -y * bg], [1, x * ag]], dtype=object)
        Ri = np.array([[x * ag, y * bg], [-1, 1]], dtype=object)
        idx = [i, j]
        self.A[idx] = L @ self.A[idx]
        self.A[:, idx] = self.A[:, idx] @ R
        self.U[idx] = L @ self.U[idx]
        self.Ui[:, idx] = self.Ui[:, idx] @ Li
        self.V[:, idx] = self.V[:, idx] @ R
        self.Vi[idx] = Ri @ self.Vi[idx]


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _matmul(a, b):
    """Exact integer product, via BLAS when every partial sum fits a double."""
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    bound = _maxabs(a) * _maxabs(b) * a.shape[1]
    if bound < _FLOAT_EXACT:
        return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    if bound < _SAFE and a.dtype != object and b.dtype != object:
        return a.astype(np.int64) @ b.astype(np.int64)
    return a.astype(object) @ b.astype(object)


def _equal(x, y):
    return x.shape == y.shape and bool(np.all(x == y))


def smith_normal_form(a, certify=True):
    """Smith normal form D = U @ A @ V of an integer matrix A.

    >>> smith_normal_form([[2, 0], [0, 3]]).diagonal
    [1, 6]
    """
    a = np.array(a, dtype=object) if not isinstance(a, np.ndarray) else a
    if a.ndim != 2:
        a = a.reshape(len(a), -1)
    m, n = a.shape
    orig = a
    if a.dtype == object:
        big = _maxabs(a) if a.size else 0
        w = _Work(np.zeros((m, n), dtype=np.int64))
        if big >= 2 ** 31:
            w.promote()
            w.A = a.copy()
        else:
            w.A = a.astype(np.int64)
    else:
        w = _Work(a)

    t = 0
    while t < min(m, n):
        sub = w.A[t:, t:]
        nzmask = sub != 0
        if not nzmask.any():
            break
        if w.obj:
            # object arrays: locate the minimum by hand
            vals = [(abs(int(v)), k) for k, v in enumerate(sub.ravel()) if v != 0]
            k = min(vals)[1]
        else:
            k = int(np.argmin(np.where(nzmask, np.abs(sub), np.iinfo(np.int64).max)))
        i, j = divmod(k, sub.shape[1])
        w.swap_rows(t, t + i)
        w.swap_cols(t, t + j)
        while True:
            w.clear_col(t)
            w.clear_row(t)
            col = w.A[t + 1:, t]
            row = w.A[t, t + 1:]
            cnz = np.nonzero(col)[0]
            rnz = np.nonzero(row)[0]
            if cnz.size == 0 and rnz.size == 0:
                break
            # a remainder is smaller than the pivot: move the smallest in
            best = None
            if cnz.size:
                ci = cnz[np.argmin(np.abs(col[cnz].astype(object)))]
                best = (abs(int(col[ci])), "r", ci + t + 1)
            if rnz.size:
                rj = rnz[np.argmin(np.abs(row[rnz].astype(object)))]
                cand = (abs(int(row[rj])), "c", rj + t + 1)
                if best is None or cand[0] < best[0]:
                    best = cand
            if best[1] == "r":
                w.swap_rows(t, best[2])
            else:
                w.swap_cols(t, best[2])
        if w.A[t, t] < 0:
            w.negate_row(t)
        t += 1
    r = t

    # divisibility chain
    for i in range(r):
        for j in range(i + 1, r):
            ai, aj = int(w.A[i, i]), int(w.A[j, j])
            if aj % ai != 0:
                w.fix_pair(i, j)
                if w.A[i, i] < 0:
                    w.negate_row(i)
                if w.A[j, j] < 0:
                    w.negate_row(j)

    diag = [int(w.A[i, i]) for i in range(r)]
    res = SNFResult(diag, r, (m, n), w.U, w.V, w.Ui, w.Vi)
    if certify:
        certify_snf(orig, res)
    return res


def certify_snf(a, res):
    """Re-multiply and check; raises CertificationError on any failure."""
    a = np.asarray(a)
    m, n = res.shape
    d = res.diagonal
    for x, y in zip(d, d[1:]):
        if x <= 0 or y % x:
            raise CertificationError(f"divisibility chain broken: {d}")
    if any(x <= 0 for x in d):
        raise CertificationError("nonpositive divisor")
    lhs = _matmul(_matmul(res.U, a), res.V)
    if not _equal(lhs, res.diagonal_matrix()):
        raise CertificationError("U A V != D")
    if not _equal(_matmul(res.U, res.U_inv), np.eye(m, dtype=np.int64)):
        raise CertificationError("U is not unimodular")
    if not _equal(_matmul(res.V, res.V_inv), np.eye(n, dtype=np.int64)):
        raise CertificationError("V is not unimodular")
    return True


def elementary_divisors(a):
    return smith_normal_form(a).diagonal


def rank_mod2(a):
    """Rank over F_2, rows packed into Python ints."""
    a = np.asarray(a)
    if a.size == 0:
        return 0
    bits = (a.astype(object) % 2).astype(np.uint8)
    rows = [int("".join(map(str, row)), 2) for row in bits]
    return _xor_rank(rows)


def _xor_rank(rows):
    pivots = {}
    rank = 0
    for v in rows:
        while v:
            h = v.bit_length() - 1
            if h in pivots:
                v ^= pivots[h]
            else:
                pivots[h] = v
                rank += 1
                break
    return rank


def determinant(a):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [[int(x) for x in row] for row in np.asarray(a, dtype=object)]
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def gcd_list(xs):
    g = 0
    for x in xs:
        g = gcd(g, int(x))
    return g
