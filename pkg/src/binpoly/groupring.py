"""Integral group rings Z[G] and small matrices over them.

Elements are sparse ``{group index: coefficient}`` maps.  A matrix carries a
side tag: ``"left"`` for complexes of left modules, where chains are row
vectors and a boundary acts by ``v -> v @ M``, and ``"right"`` for right
modules, where chains are columns and ``v -> M @ v``.  In both cases
``mat_mul`` is the plain product with ring multiplication in written order.
"""

import re

import numpy as np

from .errors import DimensionMismatch, GroupMismatch, SideMismatch

SIDES = ("left", "right")


class GroupRingElement:
    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs=None):
        self.group = group
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    # constructors
    @classmethod
    def zero(cls, group):
        return cls(group)

    @classmethod
    def one(cls, group):
        return cls(group, {0: 1})

    @classmethod
    def basis(cls, group, g, coeff=1):
        return cls(group, {g: coeff})

    @classmethod
    def norm_element(cls, group):
        """N = sum of all group elements."""
        return cls(group, {g: 1 for g in range(group.order)})

    # arithmetic
    def _check(self, other):
        if self.group is not other.group:
            raise GroupMismatch(f"{self.group.name} vs {other.group.name}")

    def _lift(self, other):
        if isinstance(other, GroupRingElement):
            self._check(other)
            return other
        if isinstance(other, int):
            return GroupRingElement(self.group, {0: other})
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        c = dict(self.coeffs)
        for k, v in o.coeffs.items():
            c[k] = c.get(k, 0) + v
        return GroupRingElement(self.group, c)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.group, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, {k: v * other for k, v in self.coeffs.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        t = self.group.table
        c = {}
        for a, x in self.coeffs.items():
            row = t[a]
            for b, y in o.coeffs.items():
                k = row[b]
                c[k] = c.get(k, 0) + x * y
        return GroupRingElement(self.group, c)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def augment(self):
        return sum(self.coeffs.values())

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement(self.group, {0: other})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group is other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.group.name, frozenset(self.coeffs.items())))

    def to_json(self):
        return [[self.coeffs[k], k] for k in sorted(self.coeffs)]

    @classmethod
    def from_json(cls, group, data):
        return cls(group, {int(k): int(c) for c, k in data})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            name = element_label(self.group, k)
            if name == "1":
                body = str(abs(c))
            else:
                body = name if abs(c) == 1 else f"{abs(c)}*{name}"
            parts.append(("-" if c < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s

    def __repr__(self):
        return f"<{self.group.name}: {self}>"


def gr_add(x, y):
    x._check(y)
    return x + y


def gr_mul(x, y):
    x._check(y)
    return x * y


def augment(x):
    return x.augment()


def element_label(group, g):
    return group.label(g)


# -- a tiny expression language for typing matrices in -----------------------

_TOKENS = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^-?\d+)|([-+*()]))")


def parse_element(group, text, env=None):
    """Parse e.g. ``"1 + T*U - U"`` or ``"U^-2*(T - 1)"`` into Z[G].

    Symbols are looked up in ``env`` (name -> index) and then among the
    group's named elements.  Juxtaposition is not multiplication; use ``*``.
    """
    env = env or {}
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {pos}")
        num, sym, exp, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif sym is not None:
            toks.append(("sym", sym))
        elif exp is not None:
            toks.append(("exp", int(exp[1:])))
        else:
            toks.append(("op", op))
        pos = m.end()
    toks.append(("end", None))
    state = {"i": 0}

    def peek():
        return toks[state["i"]]

    def take():
        t = toks[state["i"]]
        state["i"] += 1
        return t

    def lookup(sym):
        if sym in env:
            return env[sym]
        return group[sym]

    def factor():
        kind, val = take()
        if kind == "num":
            out = GroupRingElement(group, {0: val})
        elif kind == "sym":
            out = GroupRingElement.basis(group, lookup(val))
            if peek()[0] == "exp":
                e = take()[1]
                out = GroupRingElement.basis(group, group.power(lookup(val), e))
        elif (kind, val) == ("op", "("):
            out = expr()
            if take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
        else:
            raise ValueError(f"unexpected token {val!r} in {text!r}")
        return out

    def term():
        out = factor()
        while peek() == ("op", "*"):
            take()
            out = out * factor()
        return out

    def expr():
        sign = 1
        if peek() in (("op", "-"), ("op", "+")):
            sign = -1 if take()[1] == "-" else 1
        out = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            s = take()[1]
            t = term()
            out = out + t if s == "+" else out - t
        return out

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return result


# -- matrices -----------------------------------------------------------------

class GroupRingMatrix:
    def __init__(self, group, entries, side="left"):
        if side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")
        self.group = group
        self.side = side
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged matrix")
            for x in row:
                if x.group is not group:
                    raise GroupMismatch("matrix entries from different groups")

    @classmethod
    def parse(cls, group, rows, side="left", env=None):
        """Build from nested lists of expression strings (or ints)."""
        return cls(group, [[parse_element(group, str(x), env) for x in row] for row in rows], side)

    @classmethod
    def identity(cls, group, n, side="left"):
        return cls(group, [[GroupRingElement(group, {0: 1} if i == j else None) for j in range(n)] for i in range(n)], side)

    @classmethod
    def zeros(cls, group, rows, cols, side="left"):
        return cls(group, [[GroupRingElement(group) for _ in range(cols)] for _ in range(rows)], side)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_zero(self):
        return all(x.is_zero() for row in self.entries for x in row)

    def __eq__(self, other):
        if not isinstance(other, GroupRingMatrix):
            return NotImplemented
        return (self.group is other.group and self.side == other.side
                and self.shape == other.shape and self.entries == other.entries)

    def _same(self, other):
        if self.group is not other.group:
            raise GroupMismatch(f"{self.group.name} vs {other.group.name}")
        if self.side != other.side:
            raise SideMismatch(f"{self.side}-module matrix with {other.side}-module matrix")

    def __add__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return GroupRingMatrix(self.group, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.side)

    def __neg__(self):
        return GroupRingMatrix(self.group, [[-a for a in r] for r in self.entries], self.side)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def scale_left(self, x):
        """x * M entrywise, x a ring element."""
        return GroupRingMatrix(self.group, [[x * a for a in r] for r in self.entries], self.side)

    def scale_right(self, x):
        return GroupRingMatrix(self.group, [[a * x for a in r] for r in self.entries], self.side)

    def transpose(self):
        return GroupRingMatrix(self.group, [list(c) for c in zip(*self.entries)] if self.rows else [], self.side)

    def with_side(self, side):
        return GroupRingMatrix(self.group, self.entries, side)

    def nonzero_entries(self):
        return [(i, j) for i in range(self.rows) for j in range(self.cols) if not self.entries[i][j].is_zero()]

    def to_json(self):
        return {
            "group": self.group.name,
            "rows": self.rows,
            "cols": self.cols,
            "side": self.side,
            "entries": [[x.to_json() for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, group, data):
        if data["group"] != group.name:
            raise GroupMismatch(f"matrix is over {data['group']}, not {group.name}")
        m = cls(group, [[GroupRingElement.from_json(group, x) for x in row] for row in data["entries"]], data["side"])
        if m.shape != (data["rows"], data["cols"]):
            raise DimensionMismatch("declared shape does not match entries")
        return m

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.entries) + "]"

    def __repr__(self):
        return f"<{self.side} {self.rows}x{self.cols} over {self.group.name}: {self}>"


def mat_mul(a, b):
    a._same(b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    g = a.group
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = GroupRingElement(g)
            for k in range(a.cols):
                x, y = a.entries[i][k], b.entries[k][j]
                if x.coeffs and y.coeffs:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return GroupRingMatrix(g, out, a.side)


def augment_matrix(m):
    """Entrywise augmentation, as a numpy object array of Python ints."""
    out = np.zeros((m.rows, m.cols), dtype=object)
    for i in range(m.rows):
        for j in range(m.cols):
            out[i, j] = m.entries[i][j].augment()
    return out


def regular_representation(m):
    """The Z-linear map of M on Z[G]-bases, as an int64 array.

    Left side (row vectors): rows are indexed by (i, g), columns by (j, h),
    and the entry is the coefficient of h in g*M[i,j], so that
    ``R(A @ B) == R(A) @ R(B)`` acting on integer row vectors.
    Right side (column vectors): rows (i, h), columns (j, g), entry is the
    coefficient of h in M[i,j]*g, again with ``R(A @ B) == R(A) @ R(B)``.
    """
    g = m.group
    n = g.order
    t = np.asarray(g.table, dtype=np.int64)
    ar = np.arange(n)
    out = np.zeros((m.rows * n, m.cols * n), dtype=np.int64)
    for i in range(m.rows):
        for j in range(m.cols):
            block = out[i * n:(i + 1) * n, j * n:(j + 1) * n]
            for a, c in m.entries[i][j].coeffs.items():
                if m.side == "left":
                    block[ar, t[:, a]] += c
                else:
                    block[t[a, :], ar] += c
    return out


def apply_antihom(m, hom=None, invert=False, transpose=False):
    """Push entries along ``hom`` (g -> hom(g^-1) when ``invert``).

    With both ``invert`` and ``transpose`` the side tag flips, which turns a
    complex of left modules into one of right modules.
    """
    src = m.group
    if hom is not None and hom.source is not src:
        raise GroupMismatch(f"map is defined on {hom.source.name}, matrix is over {src.name}")
    tgt = hom.target if hom is not None else src
    push = hom.images if hom is not None else list(range(src.order))
    entries = []
    for row in m.entries:
        new = []
        for x in row:
            c = {}
            for a, v in x.coeffs.items():
                k = push[src.inverse[a] if invert else a]
                c[k] = c.get(k, 0) + v
            new.append(GroupRingElement(tgt, c))
        entries.append(new)
    side = m.side
    if invert and transpose:
        side = "right" if side == "left" else "left"
    out = GroupRingMatrix(tgt, entries, side)
    return out.transpose() if transpose else out
