"""Orbit polytopes conv(G . 1) and certified fundamental domains.

Facet normals are produced as orbits of a few seed vectors under signed
even permutations of coordinates; each normal v is certified by checking
<v, x> <= 1 on every vertex with equality on an affinely 3-dimensional set.
``brute_force_facets`` is an independent exhaustive oracle that works over
scaled integer coordinates in Z[sqrt d] with numpy.
"""

from dataclasses import dataclass, field
from itertools import combinations, islice, permutations, product
from math import comb, lcm

import numpy as np

from .errors import (
    CriterionFailed,
    InvalidSeedNormal,
    NonTriangleTwoFace,
    NotAFacet,
)
from .groups import get_group
from .scalars import ONE, PHI, SQRT2, ZERO, QuadScalar

# -- seeds ------------------------------------------------------------------------

_PHI_INV = PHI.inv()

SEEDS = {
    "O": [
        (3 - 2 * SQRT2, SQRT2 - 1, SQRT2 - 1, ONE),
        (2 - SQRT2, 2 - SQRT2, 2 * SQRT2 - 2, ZERO),
    ],
    "I": [
        (4 - 2 * PHI, 4 - 2 * PHI, ZERO, ZERO),
        (2 - PHI, 2 - 3 * _PHI_INV, ONE, ZERO),
        (2 * PHI - 3, 3 * _PHI_INV - 1, PHI - 1, ZERO),
        (2 * PHI - 3, 2 * PHI - 3, 2 * PHI - 3, ONE),
        (PHI - 1, PHI - 1, PHI - 1, 2 - 3 * _PHI_INV),
        (2 - PHI, 2 - PHI, 2 - PHI, 3 * _PHI_INV - 1),
        (2 * PHI - 3, 2 - PHI, PHI - 1, 4 - 2 * PHI),
    ],
    # read off the brute-force oracle: the 24 facets of the 24-cell are
    # the signed arrangements of (1, 1, 0, 0)
    "T": [
        (ONE, ONE, ZERO, ZERO),
    ],
}

FUNDAMENTAL_DOMAINS = {
    "O": [
        ["1", "tau_i", "tau_j", "omega_0"],
        ["1", "tau_j", "tau_k", "omega_0"],
        ["1", "tau_k", "tau_i", "omega_0"],
        ["1", "tau_i", "omega_k", "tau_j"],
        ["1", "tau_j", "omega_i", "tau_k"],
        ["1", "tau_i", "omega_j", "tau_k"],
    ],
    "I": [
        ["1", "sigma_k-", "sigma_k+", "sigma_i+"],
        ["1", "sigma_k-", "sigma_i+", "sigma_j+"],
        ["1", "sigma_k-", "sigma_j+", "sigma_j-"],
        ["1", "sigma_k-", "sigma_j-", "sigma_i-"],
        ["1", "sigma_k-", "sigma_i-", "sigma_k+"],
    ],
    "T": [
        ["1", "omega_0", "omega_j", "omega_i", "omega_ij", "k"],
    ],
}

# vertex sets as listed alongside the domains; O omits omega_0, which the
# first facet contains, so its certificate carries a note
LISTED_VERTICES = {
    "O": ["1", "tau_i", "tau_j", "tau_k", "omega_i", "omega_j", "omega_k"],
}

EXPECTED_F_VECTORS = {"T": (24, 96, 96, 24), "O": (48, 336, 576, 288), "I": (120, 720, 1200, 600)}


def signed_even_permutations():
    """The 192 maps v -> (e_0 v_p(0), ..., e_3 v_p(3)), p even, e in {+-1}^4."""
    out = []
    for p in permutations(range(4)):
        inversions = sum(1 for a in range(4) for b in range(a + 1, 4) if p[a] > p[b])
        if inversions % 2:
            continue
        for signs in product((1, -1), repeat=4):
            out.append((p, signs))
    return out


def _apply(op, v):
    p, signs = op
    return tuple(v[p[i]] if signs[i] == 1 else -v[p[i]] for i in range(4))


def _dot(v, q):
    w, x, y, z = q.coords
    return v[0] * w + v[1] * x + v[2] * y + v[3] * z


def exact_rank(vectors):
    """Rank of a list of QuadScalar vectors by Gaussian elimination."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][c].inv()
        for r in range(rank + 1, len(rows)):
            if rows[r][c]:
                f = rows[r][c] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def affine_dimension(points):
    """Affine dimension of a set of points (here, on a hyperplane missing 0)."""
    if not points:
        return -1
    base = points[0]
    return exact_rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


@dataclass
class Facet:
    normal: tuple
    vertices: tuple  # sorted group indices

    def to_json(self):
        return {"normal": [str(c) for c in self.normal], "vertices": list(self.vertices)}


class Polytope:
    def __init__(self, group, facets, orbit_sizes=None):
        self.group = group
        self.vertices = group.elements
        self.facets = sorted(facets, key=lambda f: f.vertices)
        self.orbit_sizes = orbit_sizes or []
        self.by_vertices = {frozenset(f.vertices): n for n, f in enumerate(self.facets)}
        self._fv = None

    def __repr__(self):
        return f"<Polytope conv({self.group.name}) with {len(self.facets)} facets>"

    def facet_index(self, vertex_set):
        try:
            return self.by_vertices[frozenset(vertex_set)]
        except KeyError:
            raise NotAFacet(f"{sorted(vertex_set)} is not the vertex set of a facet") from None

    def point(self, v):
        return self.vertices[v].coords

    def two_faces(self):
        """Vertex sets of the 2-faces: facet intersections of affine dimension 2."""
        seen = set()
        fs = [frozenset(f.vertices) for f in self.facets]
        incident = {}
        for n, f in enumerate(fs):
            for v in f:
                incident.setdefault(v, []).append(n)
        for a, fa in enumerate(fs):
            # only facets sharing a vertex can meet in a 2-face
            cands = {b for v in fa for b in incident[v] if b > a}
            for b in cands:
                inter = fa & fs[b]
                if len(inter) < 3 or inter in seen:
                    continue
                if len(inter) > 3:
                    dim = affine_dimension([self.point(v) for v in sorted(inter)])
                    if dim == 2:
                        raise NonTriangleTwoFace(f"2-face with vertices {sorted(inter)}")
                    continue
                seen.add(inter)
        return sorted(tuple(sorted(t)) for t in seen)

    def f_vector(self):
        if self._fv is None:
            tri = self.two_faces()
            edges = {e for t in tri for e in combinations(t, 2)}
            self._fv = (len(self.vertices), len(edges), len(tri), len(self.facets))
        return self._fv

    def to_json(self, include_facets=False):
        out = {
            "group": self.group.name,
            "f_vector": list(self.f_vector()),
            "facet_orbit_sizes": list(self.orbit_sizes),
        }
        if include_facets:
            out["facets"] = [f.to_json() for f in self.facets]
        return out


def certify_normal(group, v):
    """Equality set of <v, x> <= 1 over the group, or None if v is invalid."""
    eq = []
    for n, q in enumerate(group.elements):
        s = _dot(v, q)
        if s > 1:
            return None
        if s == 1:
            eq.append(n)
    if len(eq) < 4 or exact_rank([group.elements[n].coords for n in eq]) != 4:
        return None
    return tuple(eq)


def build_orbit_polytope(group, seeds=None):
    """Facets of conv(G) from the seed normals for T, O or I."""
    tag = group.name
    seeds = SEEDS[tag] if seeds is None else seeds
    ops = signed_even_permutations()
    facets = {}
    sizes = []
    for seed in seeds:
        if certify_normal(group, seed) is None:
            raise InvalidSeedNormal(f"seed {[str(c) for c in seed]} is not a facet normal of conv({tag})")
        orbit = {_apply(op, seed) for op in ops}
        sizes.append(len(orbit))
        for v in orbit:
            if v in facets:
                raise InvalidSeedNormal("seed orbits overlap")
            eq = certify_normal(group, v)
            if eq is None:
                raise InvalidSeedNormal(f"orbit image {[str(c) for c in v]} is not a facet normal")
            facets[v] = eq
    return Polytope(group, [Facet(v, eq) for v, eq in facets.items()], sizes)


# -- brute-force oracle ------------------------------------------------------------

def _integer_coordinates(group):
    """(A, B, s, d) with element coordinates equal to (A + B sqrt d) / s."""
    coords = [q.coords for q in group.elements]
    ds = {c.d for row in coords for c in row} - {1}
    d = ds.pop() if ds else 1
    s = 1
    for row in coords:
        for c in row:
            s = lcm(s, c.a.denominator, c.b.denominator)
    A = np.array([[int(c.a * s) for c in row] for row in coords], dtype=np.int64)
    B = np.array([[int(c.b * s) for c in row] for row in coords], dtype=np.int64)
    return A, B, s, d


class _ZD:
    """Vectorized arithmetic in Z[sqrt d] on pairs of int64 arrays."""

    def __init__(self, d):
        self.d = d

    def mul(self, x, y):
        return (x[0] * y[0] + self.d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    @staticmethod
    def add(x, y):
        return (x[0] + y[0], x[1] + y[1])

    @staticmethod
    def sub(x, y):
        return (x[0] - y[0], x[1] - y[1])

    def sign(self, x):
        a, b = x
        sa, sb = np.sign(a), np.sign(b)
        mixed = np.sign(a * a - self.d * b * b)
        return np.where(sb == 0, sa, np.where(sa == 0, sb, np.where(sa == sb, sa, sa * mixed)))

    def det3(self, m):
        # m[r][c] pairs; cofactor expansion along the first row
        mul, sub, add = self.mul, self.sub, self.add
        t0 = mul(m[0][0], sub(mul(m[1][1], m[2][2]), mul(m[1][2], m[2][1])))
        t1 = mul(m[0][1], sub(mul(m[1][0], m[2][2]), mul(m[1][2], m[2][0])))
        t2 = mul(m[0][2], sub(mul(m[1][0], m[2][1]), mul(m[1][1], m[2][0])))
        return add(sub(t0, t1), t2)


def _combination_chunks(n, k, size):
    it = combinations(range(n), k)
    while True:
        flat = np.fromiter((i for c in islice(it, size) for i in c), dtype=np.int64)
        if flat.size == 0:
            return
        yield flat.reshape(-1, k)


def brute_force_facets(group, chunk=20000, progress=None):
    """All facets of conv(G) by testing every 4-subset of vertices.

    Returns ``{vertex tuple: normal}`` with normals as QuadScalar 4-tuples
    scaled so that <v, x> <= 1 with equality on the facet.
    """
    A, B, s, d = _integer_coordinates(group)
    n = len(A)
    zd = _ZD(d)
    sample = np.linspace(0, n - 1, min(n, 16)).astype(np.int64)
    found = {}
    total = comb(n, 4)
    done = 0
    for idx in _combination_chunks(n, 4, chunk):
        pa = [A[idx[:, r]] for r in range(4)]
        pb = [B[idx[:, r]] for r in range(4)]
        diffs = [(pa[r] - pa[0], pb[r] - pb[0]) for r in (1, 2, 3)]
        normal = []
        for col in range(4):
            keep = [c for c in range(4) if c != col]
            minor = [[(diffs[r][0][:, c], diffs[r][1][:, c]) for c in keep] for r in range(3)]
            det = zd.det3(minor)
            if col % 2:
                det = (-det[0], -det[1])
            normal.append(det)
        nz = np.zeros(len(idx), dtype=bool)
        for a, b in normal:
            nz |= (a != 0) | (b != 0)
        cval = (np.zeros(len(idx), dtype=np.int64), np.zeros(len(idx), dtype=np.int64))
        for c in range(4):
            cval = zd.add(cval, zd.mul(normal[c], (pa[0][:, c], pb[0][:, c])))
        csign = zd.sign(cval)
        ok = nz & (csign != 0)
        # orient so that the origin lies on the negative side: c > 0
        normal = [(a * csign, b * csign) for a, b in normal]
        cval = (cval[0] * csign, cval[1] * csign)

        def violates(rows, cand):
            bad = np.zeros(len(cand), dtype=bool)
            for x in rows:
                acc = (np.zeros(len(cand), dtype=np.int64), np.zeros(len(cand), dtype=np.int64))
                for c in range(4):
                    acc = zd.add(acc, zd.mul((normal[c][0][cand], normal[c][1][cand]), (A[x, c], B[x, c])))
                diff = zd.sub(acc, (cval[0][cand], cval[1][cand]))
                bad |= zd.sign(diff) > 0
            return bad

        cand = np.nonzero(ok)[0]
        cand = cand[~violates(sample, cand)]
        if cand.size:
            cand = cand[~violates(range(n), cand)]
        for m in cand:
            nv = [(int(normal[c][0][m]), int(normal[c][1][m])) for c in range(4)]
            cv = (int(cval[0][m]), int(cval[1][m]))
            eq = _equality_set(A, B, d, nv, cv)
            if eq not in found:
                cq = QuadScalar(cv[0], cv[1], d) if cv[1] else QuadScalar(cv[0])
                found[eq] = tuple((QuadScalar(a, b, d) if b else QuadScalar(a)) * s / cq for a, b in nv)
        done += len(idx)
        if progress is not None:
            progress(done, total)
    return found


def _equality_set(A, B, d, nv, cv):
    na = np.array([x[0] for x in nv], dtype=np.int64)
    nb = np.array([x[1] for x in nv], dtype=np.int64)
    ra = A @ na + d * (B @ nb)
    rb = A @ nb + B @ na
    return tuple(int(i) for i in np.nonzero((ra == cv[0]) & (rb == cv[1]))[0])


def oracle_agrees(polytope, oracle):
    mine = {f.vertices: f.normal for f in polytope.facets}
    return mine == oracle


# -- actions and fundamental domains -------------------------------------------------

def translate(group, g, vertex_set):
    row = group.table[g]
    return frozenset(row[v] for v in vertex_set)


def free_facet_action_check(p):
    """g F != F for every facet F and g != 1, and likewise g v != v."""
    g = p.group
    for f in p.facets:
        fs = frozenset(f.vertices)
        for a in range(1, g.order):
            if translate(g, a, fs) == fs:
                return False
    return all(g.table[a][v] != v for a in range(1, g.order) for v in range(g.order))


def is_g_stable(p):
    g = p.group
    return all(translate(g, a, f.vertices) in p.by_vertices for f in p.facets for a in range(g.order))


def facet_orbits(p):
    """Partition of the facet indices into G-orbits."""
    g = p.group
    seen = set()
    orbits = []
    for n, f in enumerate(p.facets):
        if n in seen:
            continue
        orb = sorted({p.by_vertices[translate(g, a, f.vertices)] for a in range(g.order)})
        seen.update(orb)
        orbits.append(orb)
    return orbits


@dataclass
class FundamentalDomainCertificate:
    group: str
    facets: list  # facet indices
    vertex_set: list  # group indices of the union
    vertex_names: list
    contains_identity: bool
    v_cap_vinv_trivial: bool
    count_matches: bool
    connected: bool
    orbits_distinct: bool
    free_action: bool = True
    notes: list = field(default_factory=list)

    @property
    def valid(self):
        return all((self.contains_identity, self.v_cap_vinv_trivial, self.count_matches,
                    self.connected, self.orbits_distinct, self.free_action))

    def to_json(self):
        return {
            "group": self.group,
            "facets": self.facets,
            "r": len(self.facets),
            "vertex_set": self.vertex_set,
            "vertex_names": self.vertex_names,
            "contains_identity": self.contains_identity,
            "v_cap_vinv_trivial": self.v_cap_vinv_trivial,
            "count_matches": self.count_matches,
            "connected": self.connected,
            "orbits_distinct": self.orbits_distinct,
            "free_action": self.free_action,
            "valid": self.valid,
            "notes": self.notes,
        }


def verify_fundamental_domain(p, facet_lists=None, raise_on_failure=True, check_free_action=True):
    """Certify that the listed facets form a fundamental domain.

    ``facet_lists`` is a list of vertex lists given as element names or
    indices; by default the stored domain for the group is used.
    """
    g = p.group
    chosen = FUNDAMENTAL_DOMAINS[g.name] if facet_lists is None else facet_lists
    sets = [frozenset(g[v] if isinstance(v, str) else v for v in vs) for vs in chosen]
    idx = [p.facet_index(s) for s in sets]
    union = sorted(set().union(*sets))
    contains = all(0 in s for s in sets)
    inv = {g.inverse[v] for v in union}
    vcap = inv & set(union) == {0}
    count = len(sets) * g.order == len(p.facets)

    # ridge graph among the chosen facets
    adj = {a: set() for a in range(len(sets))}
    for a in range(len(sets)):
        for b in range(a + 1, len(sets)):
            inter = sorted(sets[a] & sets[b])
            if len(inter) >= 3 and affine_dimension([p.point(v) for v in inter]) == 2:
                adj[a].add(b)
                adj[b].add(a)
    reach, stack = {0}, [0]
    while stack:
        for b in adj[stack.pop()]:
            if b not in reach:
                reach.add(b)
                stack.append(b)
    connected = len(reach) == len(sets)

    distinct = True
    for a in range(len(sets)):
        for b in range(len(sets)):
            if a != b and any(translate(g, h, sets[a]) == sets[b] for h in range(g.order)):
                distinct = False
    free = free_facet_action_check(p) if check_free_action else True
    cert = FundamentalDomainCertificate(
        g.name, idx, union, [g.label(v) for v in union],
        contains, vcap, count, connected, distinct, free,
    )
    listed = LISTED_VERTICES.get(g.name) if facet_lists is None else None
    if listed is not None:
        extra = sorted(set(cert.vertex_names) - set(listed))
        missing = sorted(set(listed) - set(cert.vertex_names))
        if extra or missing:
            cert.notes.append(f"vertex set differs from the listed one: extra {extra}, missing {missing}")
    if raise_on_failure and not cert.valid:
        raise CriterionFailed(f"fundamental domain for {g.name} fails", cert)
    return cert


_CACHE = {}


def get_polytope(tag):
    if tag not in _CACHE:
        _CACHE[tag] = build_orbit_polytope(get_group(tag))
    return _CACHE[tag]
