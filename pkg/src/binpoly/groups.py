"""Finite groups as indexed multiplication tables.

The binary tetrahedral, octahedral and icosahedral groups are generated as
unit quaternions; S3 is built abstractly.  After construction everything
downstream addresses elements by their index (index 0 is the identity).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import re

import numpy as np

from .errors import (
    BoundExceeded,
    ElementNotInGroup,
    NotAHomomorphism,
    NotUnitNorm,
    UnboundSymbol,
)
from .quaternion import I_UNIT, J_UNIT, K_UNIT, Quaternion
from .scalars import ONE, PHI, SQRT2

HALF = Fraction(1, 2)


class Group:
    """A finite group given by its element list and multiplication table.

    ``table[a][b]`` is the index of ``elements[a] * elements[b]``.
    """

    def __init__(self, name, elements, table, named=None):
        self.name = name
        self.elements = list(elements)
        self.table = [list(row) for row in table]
        self.order = len(self.elements)
        self.index = {e: n for n, e in enumerate(self.elements)}
        if len(self.index) != self.order:
            raise ValueError("duplicate group elements")
        self.inverse = [row.index(0) for row in self.table]
        self.named = dict(named or {})

    def __repr__(self):
        return f"<Group {self.name} of order {self.order}>"

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def power(self, a, e):
        if e < 0:
            a, e = self.inverse[a], -e
        r = 0
        for _ in range(e):
            r = self.table[r][a]
        return r

    def element_order(self, a):
        n, r = 1, a
        while r != 0:
            r = self.table[r][a]
            n += 1
        return n

    def prod(self, *indices):
        r = 0
        for a in indices:
            r = self.table[r][a]
        return r

    def __getitem__(self, symbol):
        """Index of a named element, e.g. ``O['tau_i']``."""
        try:
            return self.named[symbol]
        except KeyError:
            raise ElementNotInGroup(f"{symbol!r} is not a named element of {self.name}") from None

    def label(self, a):
        """Preferred name of an element (``g<index>`` if unnamed)."""
        if not hasattr(self, "_labels"):
            labels = {}
            for sym, idx in sorted(self.named.items(), key=_name_rank):
                labels.setdefault(idx, sym)
            labels[0] = "1"
            self._labels = labels
        return self._labels.get(a, f"g{a}")

    def index_of(self, element):
        try:
            return self.index[element]
        except KeyError:
            raise ElementNotInGroup(f"{element!r} is not in {self.name}") from None

    def left_translate(self, g, indices):
        row = self.table[g]
        return frozenset(row[v] for v in indices)

    def is_quaternionic(self):
        return isinstance(self.elements[0], Quaternion)

    def check_axioms(self):
        """Exhaustive check of identity, inverses, closure and associativity."""
        t = np.asarray(self.table, dtype=np.int64)
        n = self.order
        ar = np.arange(n)
        if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
            return False
        if not ((t[0] == ar).all() and (t[:, 0] == ar).all()):
            return False
        inv = np.asarray(self.inverse)
        if not ((t[ar, inv] == 0).all() and (t[inv, ar] == 0).all()):
            return False
        # every row and column of a group table is a permutation
        if not ((np.sort(t, axis=1) == ar).all() and (np.sort(t, axis=0) == ar[:, None]).all()):
            return False
        lhs = t[t[:, :, None], ar[None, None, :]]
        rhs = t[ar[:, None, None], t[None, :, :]]
        return bool((lhs == rhs).all())

    def check_table_against_elements(self):
        """Recompute every product from the quaternions themselves."""
        els = self.elements
        for a, x in enumerate(els):
            row = self.table[a]
            for b, y in enumerate(els):
                if els[row[b]] != x * y:
                    return False
        return True

    def center(self):
        return [z for z in range(self.order) if all(self.table[z][g] == self.table[g][z] for g in range(self.order))]

    def to_json(self):
        return {
            "name": self.name,
            "order": self.order,
            "elements": [e.encode() if isinstance(e, Quaternion) else str(e) for e in self.elements],
            "named": dict(sorted(self.named.items())),
        }


_ALIASES = ("varpi", "gamma", "sigma")


def _name_rank(item):
    sym = item[0]
    return (sym in _ALIASES, len(sym), sym)


def generate_group(generators, bound=240, name="G", named_elements=None):
    """Breadth-first closure of ``generators`` under right multiplication.

    The identity comes first, then elements in discovery order.  The
    multiplication table is assembled from the right-translation by each
    generator, so only |G| * len(generators) quaternion products are needed.
    """
    gens = list(generators)
    for g in gens:
        if g.norm() != ONE:
            raise NotUnitNorm(f"generator {g!r} does not have unit norm")
    identity = Quaternion(1)
    elements = [identity]
    index = {identity: 0}
    parent = [None]
    right = [[] for _ in gens]
    pos = 0
    while pos < len(elements):
        x = elements[pos]
        for gi, g in enumerate(gens):
            y = x * g
            j = index.get(y)
            if j is None:
                j = len(elements)
                if j >= bound:
                    raise BoundExceeded(f"closure exceeded {bound} elements")
                index[y] = j
                elements.append(y)
                parent.append((pos, gi))
            right[gi].append(j)
        pos += 1

    n = len(elements)
    # column b of the table is the right translation a -> a*b
    cols = [list(range(n))]
    for b in range(1, n):
        x, gi = parent[b]
        rg = right[gi]
        cols.append([rg[c] for c in cols[x]])
    table = [list(row) for row in zip(*cols)]

    named = {}
    for sym, q in (named_elements or {}).items():
        if q not in index:
            raise ElementNotInGroup(f"named element {sym} = {q!r} is not in the generated group")
        named[sym] = index[q]
    return Group(name, elements, table, named)


def _q(w=0, x=0, y=0, z=0):
    return Quaternion(w, x, y, z)


def _half(w, x, y, z):
    return Quaternion(*(HALF * c for c in (w, x, y, z)))


_ONE_Q = Quaternion(1)
VARPI = _half(-1, 1, 1, 1)
GAMMA = Quaternion(1, 1) * SQRT2.inv()
PHI_INV = PHI.inv()
SIGMA = Quaternion(PHI_INV * HALF, HALF, PHI * HALF, 0)

_BASIC = {"1": _ONE_Q, "-1": -_ONE_Q, "i": I_UNIT, "j": J_UNIT, "k": K_UNIT,
          "-i": -I_UNIT, "-j": -J_UNIT, "-k": -K_UNIT}

_OMEGAS = {
    "omega_0": _half(1, 1, 1, 1),
    "omega_i": _half(1, -1, 1, 1),
    "omega_j": _half(1, 1, -1, 1),
    "omega_k": _half(1, 1, 1, -1),
}
_TAUS = {
    "tau_i": Quaternion(1, 1) * SQRT2.inv(),
    "tau_j": Quaternion(1, 0, 1) * SQRT2.inv(),
    "tau_k": Quaternion(1, 0, 0, 1) * SQRT2.inv(),
}


def _sig(w, x, y, z):
    return Quaternion(*(c * HALF for c in (w, x, y, z)))


_SIGMAS = {
    "sigma_i+": _sig(PHI, PHI_INV, ONE, 0),
    "sigma_i-": _sig(PHI, PHI_INV, -ONE, 0),
    "sigma_j+": _sig(PHI, 0, PHI_INV, -ONE),
    "sigma_j-": _sig(PHI, 0, -PHI_INV, -ONE),
    "sigma_k+": _sig(PHI, ONE, 0, PHI_INV),
    "sigma_k-": _sig(PHI, ONE, 0, -PHI_INV),
}

GROUP_TAGS = ("Q8", "T", "O", "I", "S3")

# Coxeter-Moser data: (l, m, n), how s and t are obtained, and the words
# expressing the named elements in s and t.
PRESENTATIONS = {
    "O": {
        "lmn": (2, 3, 4),
        "t": "tau_i",
        "s": "omega_0",
        "words": {
            "omega_0": "s",
            "omega_i": "t^-1 s t^-1",
            "omega_j": "s^-1 t^2",
            "omega_k": "t^-1 s t",
            "tau_i": "t",
            "tau_j": "t^-1 s",
            "tau_k": "s t^-1",
        },
    },
    "T": {
        "lmn": (2, 3, 3),
        "t": "omega_k",
        "s": "omega_0",
        "words": {
            "omega_i": "t^-1 s",
            "omega_j": "s t^-1",
            "omega_k": "t",
            "omega_0": "s",
            "omega_ij": "t^-1",
        },
    },
    "I": {
        "lmn": (2, 3, 5),
        "t": "sigma_i+",
        # s is recovered from sigma_i- = s t^-2
        "s": ("sigma_i-", "t^2"),
        "words": {
            "sigma_i+": "t",
            "sigma_i-": "s t^-2",
            "sigma_j+": "t s^-1 t",
            "sigma_j-": "s^-1 t",
            "sigma_k+": "s t^-1",
            "sigma_k-": "s^-1 t^2",
        },
    },
}


@lru_cache(maxsize=None)
def get_group(tag):
    """Build (once) and return the group with the given tag."""
    if tag == "Q8":
        return generate_group([I_UNIT, J_UNIT], name="Q8", named_elements=_BASIC)
    if tag == "T":
        named = dict(_BASIC, varpi=VARPI, **_OMEGAS)
        named["omega_ij"] = _half(1, -1, -1, 1)
        return generate_group([I_UNIT, VARPI], name="T", named_elements=named)
    if tag == "O":
        named = dict(_BASIC, varpi=VARPI, gamma=GAMMA, **_OMEGAS, **_TAUS)
        named["omega_ij"] = _half(1, -1, -1, 1)
        return generate_group([VARPI, GAMMA], name="O", named_elements=named)
    if tag == "I":
        named = dict(_BASIC, sigma=SIGMA, **_SIGMAS)
        return generate_group([I_UNIT, SIGMA], name="I", named_elements=named)
    if tag == "S3":
        return build_s3()
    raise ValueError(f"unknown group tag {tag!r}; expected one of {GROUP_TAGS}")


def subgroup_check(h, g):
    """True iff every element of h occurs in g."""
    return all(e in g.index for e in h.elements)


# -- words -------------------------------------------------------------------

_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_+\-]*?)(?:\^(-?\d+))?$")


def parse_word(text):
    """'t^-1 s t^-1' -> [('t', -1), ('s', 1), ('t', -1)]."""
    word = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        word.append((m.group(1), int(m.group(2) or 1)))
    return word


def word_eval(g, assignment, word):
    """Left-to-right product of powers; ``word`` is a list or a string."""
    if isinstance(word, str):
        word = parse_word(word)
    r = 0
    for sym, e in word:
        try:
            a = assignment[sym]
        except KeyError:
            raise UnboundSymbol(f"symbol {sym!r} is not assigned") from None
        r = g.table[r][g.power(a, e)]
    return r


@dataclass
class PresentationReport:
    group: str
    lmn: tuple
    r: int
    s: int
    t: int
    powers: dict = field(default_factory=dict)
    all_equal: bool = False
    common_value: int = None

    def to_json(self, g):
        enc = (lambda a: g.elements[a].encode()) if g.is_quaternionic() else str
        return {
            "group": self.group,
            "lmn": list(self.lmn),
            "r": self.r,
            "s": self.s,
            "t": self.t,
            "powers": {k: v for k, v in self.powers.items()},
            "all_equal": self.all_equal,
            "common_value": enc(self.common_value) if self.all_equal else None,
        }


def check_presentation(g, s, t, lmn):
    """Evaluate r^l, s^m, t^n and rst with r := s t."""
    s = _as_index(g, s)
    t = _as_index(g, t)
    l, m, n = lmn
    r = g.mul(s, t)
    powers = {
        "r^l": g.power(r, l),
        "s^m": g.power(s, m),
        "t^n": g.power(t, n),
        "rst": g.prod(r, s, t),
    }
    vals = set(powers.values())
    equal = len(vals) == 1
    return PresentationReport(g.name, tuple(lmn), r, s, t, powers, equal, vals.pop() if equal else None)


def _as_index(g, x):
    if isinstance(x, int):
        if not 0 <= x < g.order:
            raise ElementNotInGroup(f"index {x} out of range for {g.name}")
        return x
    if isinstance(x, str):
        return g[x]
    return g.index_of(x)


def presentation_generators(g):
    """(s, t) indices for the Coxeter-Moser presentation of T, O or I."""
    data = PRESENTATIONS[g.name]
    t = g[data["t"]]
    s_def = data["s"]
    if isinstance(s_def, tuple):
        base, w = s_def
        s = g.mul(g[base], word_eval(g, {"t": t}, w))
    else:
        s = g[s_def]
    return s, t


def standard_presentation(g):
    s, t = presentation_generators(g)
    return check_presentation(g, s, t, PRESENTATIONS[g.name]["lmn"])


# -- S3 ----------------------------------------------------------------------

S3_NAMES = ("1", "s_alpha", "s_beta", "s_alpha s_beta", "s_beta s_alpha", "w0")
_S3_WORDS = {"1": (), "s_alpha": ("a",), "s_beta": ("b",), "s_alpha s_beta": ("a", "b"),
             "s_beta s_alpha": ("b", "a"), "w0": ("a", "b", "a")}


def _s3_normal_form(word):
    # reduce a word in a, b using a^2 = b^2 = 1 and aba = bab; every element of
    # S3 has a unique reduced word among those listed in _S3_WORDS
    w = list(word)
    changed = True
    while changed:
        changed = False
        for n in range(len(w) - 1):
            if w[n] == w[n + 1]:
                del w[n:n + 2]
                changed = True
                break
        else:
            for n in range(len(w) - 2):
                if w[n:n + 3] == ["b", "a", "b"]:
                    w[n:n + 3] = ["a", "b", "a"]
                    changed = True
                    break
    return tuple(w)


def build_s3():
    """Abstract S3 = <s_alpha, s_beta | s^2 = 1, aba = bab> by normal forms."""
    words = [_S3_WORDS[nm] for nm in S3_NAMES]
    lookup = {w: n for n, w in enumerate(words)}
    table = [[lookup[_s3_normal_form(x + y)] for y in words] for x in words]
    named = {nm: n for n, nm in enumerate(S3_NAMES)}
    return Group("S3", list(S3_NAMES), table, named)


# -- homomorphisms -------------------------------------------------------------

class GroupHom:
    """A map between two stored groups, given by element images."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = list(images)

    def __call__(self, a):
        return self.images[a]

    def is_homomorphism(self):
        im, ts, tt = self.images, self.source.table, self.target.table
        n = self.source.order
        return all(im[ts[a][b]] == tt[im[a]][im[b]] for a in range(n) for b in range(n))

    def kernel(self):
        return [a for a, x in enumerate(self.images) if x == 0]

    @classmethod
    def identity(cls, g):
        return cls(g, g, range(g.order))


def quotient_map_O_to_S3():
    """The projection O -> O/Q8 = S3 with tau_i -> s_beta, tau_k -> s_alpha."""
    o = get_group("O")
    s3 = get_group("S3")
    gens = [(o["tau_i"], s3["s_beta"]), (o["tau_k"], s3["s_alpha"])]
    images = [None] * o.order
    images[0] = 0
    queue = [0]
    while queue:
        x = queue.pop(0)
        for g, sg in gens:
            y = o.mul(x, g)
            val = s3.mul(images[x], sg)
            if images[y] is None:
                images[y] = val
                queue.append(y)
            elif images[y] != val:
                raise NotAHomomorphism(f"inconsistent image for element {y}")
    if any(v is None for v in images):
        raise NotAHomomorphism("tau_i and tau_k do not generate O")
    hom = GroupHom(o, s3, images)
    if not hom.is_homomorphism():
        raise NotAHomomorphism("projection O -> S3 is not multiplicative")
    q8 = get_group("Q8")
    if sorted(hom.kernel()) != sorted(o.index_of(e) for e in q8.elements):
        raise NotAHomomorphism("kernel of O -> S3 is not Q8")
    return hom


# -- abelianization ------------------------------------------------------------

def derived_subgroup(g):
    """Commutator subgroup [G, G] as a sorted list of indices."""
    n, t, inv = g.order, g.table, g.inverse
    comms = {t[t[a][b]][t[inv[a]][inv[b]]] for a in range(n) for b in range(n)}
    sub = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for c in comms:
            y = t[x][c]
            if y not in sub:
                sub.add(y)
                frontier.append(y)
    return sorted(sub)


def abelianization_invariants(g):
    """Invariant factors (each dividing the next, all > 1) of G/[G, G]."""
    d = set(derived_subgroup(g))
    n = g.order
    coset_of = {}
    reps = []
    for a in range(n):
        if a in coset_of:
            continue
        c = len(reps)
        reps.append(a)
        for h in d:
            coset_of[g.mul(a, h)] = c
    m = len(reps)
    qt = [[coset_of[g.mul(x, y)] for y in reps] for x in reps]
    e = coset_of[0]

    def order(x):
        k, r = 1, x
        while r != e:
            r = qt[r][x]
            k += 1
        return k

    orders = [order(x) for x in range(m)]
    return _invariants_from_orders(orders)


def _invariants_from_orders(orders):
    # for a finite abelian group, the number of elements killed by p^k
    # determines the p-primary partition
    total = len(orders)
    factors = []
    for p in _prime_divisors(total):
        counts = [1]
        k = 1
        while True:
            c = sum(1 for o in orders if (p ** k) % o == 0)
            counts.append(c)
            if c == counts[-2] and k > 1:
                break
            k += 1
        # log_p(|A[p^k]| / |A[p^(k-1)]|) = number of cyclic factors of order >= p^k
        ge = []
        for k in range(1, len(counts)):
            ratio = counts[k] // counts[k - 1]
            r = 0
            while ratio > 1:
                ratio //= p
                r += 1
            ge.append(r)
        parts = []
        for k in range(len(ge)):
            nxt = ge[k + 1] if k + 1 < len(ge) else 0
            parts += [p ** (k + 1)] * (ge[k] - nxt)
        factors.append(sorted(parts, reverse=True))
    width = max((len(f) for f in factors), default=0)
    inv = []
    for col in range(width):
        v = 1
        for f in factors:
            if col < len(f):
                v *= f[col]
        inv.append(v)
    return sorted(inv)


def _prime_divisors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out
