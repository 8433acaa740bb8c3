"""Integral homology and cohomology of equivariant chain complexes.

A complex over Z[G] is first realized as a complex of free abelian groups:
either through the regular representation (the complex itself, e.g. the
cellular chains of the sphere) or through the augmentation (the complex
tensored down to Z, i.e. chains of the quotient space).  Boundaries are then
integer matrices D_k of shape (n_{k-1}, n_k) acting on column vectors, and
homology follows from their Smith normal forms.
"""

from dataclasses import dataclass, field

import numpy as np

from .catalog import (
    build_K,
    build_K_S3,
    extend_periodic,
    h1_generators_flag,
    truncate,
)
from .errors import SizeLimitExceeded
from .groupring import augment_matrix, regular_representation
from .groups import abelianization_invariants, get_group
from .snf import determinant, rank_mod2, smith_normal_form

DEFAULT_SIZE_LIMIT = 5000
REALIZATIONS = ("regular_rep", "augment")


@dataclass
class HomologyResult:
    """Per degree: free rank and torsion coefficients (each dividing the next)."""

    betti: list
    torsion: list
    cohomological: bool = False
    label: str = ""

    def __len__(self):
        return len(self.betti)

    def degree(self, k):
        return self.betti[k], self.torsion[k]

    def group_text(self, k):
        return render_group(self.betti[k], self.torsion[k])

    def euler_characteristic(self):
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def to_json(self):
        return {"degrees": [{"betti": b, "torsion": list(t)} for b, t in zip(self.betti, self.torsion)]}

    def table(self):
        h = "H^" if self.cohomological else "H_"
        return "\n".join(f"{h}{k} = {self.group_text(k)}" for k in range(len(self)))

    def __eq__(self, other):
        if not isinstance(other, HomologyResult):
            return NotImplemented
        return self.betti == other.betti and self.torsion == other.torsion


def render_group(betti, torsion):
    """(1, [2, 2]) -> 'Z ⊕ (Z/2)^2'."""
    parts = []
    if betti == 1:
        parts.append("Z")
    elif betti > 1:
        parts.append(f"Z^{betti}")
    counts = {}
    for t in torsion:
        counts[t] = counts.get(t, 0) + 1
    for t in sorted(counts):
        c = counts[t]
        parts.append(f"Z/{t}" if c == 1 else f"(Z/{t})^{c}")
    return " ⊕ ".join(parts) if parts else "0"


def parse_group_text(text):
    """Inverse of render_group for the forms it produces."""
    text = text.strip()
    if text == "0":
        return 0, []
    betti, torsion = 0, []
    for part in text.split("⊕"):
        part = part.strip()
        if part == "Z":
            betti += 1
        elif part.startswith("Z^"):
            betti += int(part[2:])
        elif part.startswith("(Z/"):
            base, exp = part[3:].split(")^")
            torsion += [int(base)] * int(exp)
        elif part.startswith("Z/"):
            torsion.append(int(part[2:]))
        else:
            raise ValueError(f"cannot read {part!r}")
    return betti, sorted(torsion)


# -- realization ---------------------------------------------------------------

def realize(c, realization="regular_rep", size_limit=DEFAULT_SIZE_LIMIT):
    """Chain dimensions n_k and column-convention integer boundaries D_k."""
    if realization not in REALIZATIONS:
        raise ValueError(f"realization must be one of {REALIZATIONS}")
    order = c.group.order if realization == "regular_rep" else 1
    dims = [r * order for r in c.ranks]
    if size_limit is not None and max(dims) > size_limit:
        raise SizeLimitExceeded(f"chain rank {max(dims)} exceeds the size limit {size_limit}")
    mats = []
    for d in c.boundaries:
        m = regular_representation(d) if realization == "regular_rep" else augment_matrix(d).astype(np.int64)
        # left modules act on row vectors; transpose to act on columns
        mats.append(m.T.copy() if c.side == "left" else m)
    return dims, mats


def homology_from_matrices(dims, mats, label=""):
    """H_k = ker D_k / im D_{k+1} with D_0 = D_{N+1} = 0."""
    snfs = [smith_normal_form(m) for m in mats]
    ranks = [0] + [s.rank for s in snfs] + [0]
    betti, torsion = [], []
    for k, n in enumerate(dims):
        betti.append(n - ranks[k] - ranks[k + 1])
        torsion.append(snfs[k].torsion if k < len(snfs) else [])
    res = HomologyResult(betti, torsion, label=label)
    _check_euler(dims, res)
    return res


def cohomology_from_matrices(dims, mats, label=""):
    """H^k = ker D_{k+1}^T / im D_k^T.  Torsion of H^k comes from D_k."""
    snfs = [smith_normal_form(m.T) for m in mats]
    ranks = [0] + [s.rank for s in snfs] + [0]
    betti, torsion = [], []
    for k, n in enumerate(dims):
        betti.append(n - ranks[k] - ranks[k + 1])
        torsion.append(snfs[k - 1].torsion if k >= 1 else [])
    res = HomologyResult(betti, torsion, cohomological=True, label=label)
    _check_euler(dims, res)
    return res


def _check_euler(dims, res):
    chi = sum((-1) ** k * n for k, n in enumerate(dims))
    if chi != res.euler_characteristic():
        raise AssertionError(f"Euler characteristic mismatch: chains {chi}, homology {res.euler_characteristic()}")


def euler_characteristic_consistent(dims, res):
    return sum((-1) ** k * n for k, n in enumerate(dims)) == res.euler_characteristic()


def integral_homology(c, realization="regular_rep", size_limit=DEFAULT_SIZE_LIMIT):
    dims, mats = realize(c, realization, size_limit)
    return homology_from_matrices(dims, mats, label=f"{c.label}:{realization}")


def integral_cohomology(c, realization="augment", size_limit=DEFAULT_SIZE_LIMIT):
    dims, mats = realize(c, realization, size_limit)
    return cohomology_from_matrices(dims, mats, label=f"{c.label}:{realization}")


def mod2_betti(c, realization="regular_rep", size_limit=DEFAULT_SIZE_LIMIT):
    dims, mats = realize(c, realization, size_limit)
    ranks = [0] + [rank_mod2(m) for m in mats] + [0]
    return [n - ranks[k] - ranks[k + 1] for k, n in enumerate(dims)]


# -- named computations ----------------------------------------------------------

def sphere_homology(tag, n=1, size_limit=DEFAULT_SIZE_LIMIT):
    """Homology of the periodic complex for S^(4n-1) with its free G-action."""
    base = build_K(tag)
    a = max(base.ranks)
    if size_limit is not None and a * base.group.order * 4 * n > size_limit:
        raise SizeLimitExceeded(
            f"{tag} at n={n} needs rank*|G|*4n = {a * base.group.order * 4 * n} > {size_limit}"
        )
    return integral_homology(extend_periodic(base, n), "regular_rep", None)


def quotient_homology(tag):
    return integral_homology(build_K(tag), "augment")


def poincare_determinant_check(tag="I"):
    """det of the augmented middle boundary."""
    d2 = build_K(tag).boundary(2)
    return determinant(augment_matrix(d2))


def abelianization_matches(tag):
    h = quotient_homology(tag)
    return h.betti[1] == 0 and h.torsion[1] == abelianization_invariants(get_group(tag))


def group_cohomology_table(tag, qmax=12):
    """H^q(G, Z) for q <= qmax from the 4-periodic resolution.

    The resolution is truncated in degree qmax + 1, tensored down to Z and
    dualized; entries beyond qmax are dropped.
    """
    if qmax < 4:
        raise ValueError("qmax must be at least 4")
    base = build_K(tag)
    n = (qmax + 2) // 4 + 1
    res = truncate(extend_periodic(base, n), qmax + 1)
    dims, mats = realize(res, "augment")
    full = cohomology_from_matrices(dims, mats)
    return HomologyResult(full.betti[:qmax + 1], full.torsion[:qmax + 1], True, f"H^*({tag}, Z)")


def expected_group_cohomology(tag, qmax=12):
    """The closed form H^0 = Z, H^4k = Z/|G|, H^(4k+2) = G^ab (k >= 0)."""
    order = get_group(tag).order
    ab = {"T": [3], "O": [2], "I": []}[tag]
    betti, torsion = [], []
    for q in range(qmax + 1):
        betti.append(1 if q == 0 else 0)
        if q > 0 and q % 4 == 0:
            torsion.append([order])
        elif q % 4 == 2:
            torsion.append(list(ab))
        else:
            torsion.append([])
    return HomologyResult(betti, torsion, True)


# -- the flag manifold ------------------------------------------------------------

def _column(vec):
    """A right-module column vector over Z[G] -> coordinates (i, h) in Z^(r |G|)."""
    n = vec.group.order
    out = np.zeros(vec.rows * n, dtype=np.int64)
    for i in range(vec.rows):
        for h, c in vec.entries[i][0].coeffs.items():
            out[i * n + h] += c
    return out


def _act(vec, w):
    from .groupring import GroupRingElement

    return vec.scale_right(GroupRingElement.basis(vec.group, w))


def _solve_mod2(columns, target):
    """Coefficients c with sum c_i columns_i = target over F_2, or None."""
    m = np.array(columns, dtype=np.int64).T % 2
    t = np.asarray(target, dtype=np.int64) % 2
    rows, cols = m.shape
    aug = np.concatenate([m, t[:, None]], axis=1).astype(np.uint8)
    piv_cols = []
    r = 0
    for c in range(cols):
        hits = np.nonzero(aug[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        aug[[r, p]] = aug[[p, r]]
        mask = aug[:, c].astype(bool)
        mask[r] = False
        aug[mask] ^= aug[r]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    if aug[r:, cols].any():
        return None
    sol = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i, cols]
    return sol


def h1_action_matrices_mod2(k, x, y):
    """Matrices (rows = images) of s_alpha, s_beta on H_1 mod 2 in basis {x, y}.

    S3 acts on chains of the right-module complex by right multiplication,
    which commutes with the boundary.  Each x*w and y*w is written as
    a x + b y + (boundary) over F_2.
    """
    s3 = k.group
    _, mats = realize(k, "regular_rep")
    d2 = mats[1]
    basis = [_column(x), _column(y)]
    # {x, y} must be independent modulo boundaries for the matrices to be defined
    for pair in ([1, 0], [0, 1], [1, 1]):
        comb = (pair[0] * basis[0] + pair[1] * basis[1]) % 2
        if _solve_mod2(list(d2.T), comb) is not None:
            raise ValueError("x and y are dependent modulo boundaries")
    out = {}
    for name in ("s_alpha", "s_beta"):
        w = s3[name]
        mat = []
        for v in (x, y):
            image = _column(_act(v, w))
            sol = _solve_mod2(basis + list(d2.T), image)
            if sol is None:
                raise ValueError(f"{name} image does not lie in the span of x, y")
            mat.append([int(sol[0]), int(sol[1])])
        out[name] = mat
    return out


@dataclass
class FlagReport:
    integral: HomologyResult
    mod2: list
    actions: dict
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())

    def to_json(self):
        return {
            "integral": self.integral.to_json(),
            "mod2_betti": self.mod2,
            "actions": self.actions,
            "checks": self.checks,
            "ok": self.ok,
        }


def flag_homology_report():
    """Homology of F(R) = S^3/Q8 with its S3-action, from K_S3.

    The chains of F(R) are the regular realization of K_S3 (a free
    Z[S3]-complex); the augmentation would give the further quotient by S3.
    """
    k = build_K_S3("literal", check=False)
    integral = integral_homology(k, "regular_rep")
    mod2 = mod2_betti(k, "regular_rep")
    gens = h1_generators_flag(raise_on_failure=False)
    rep = FlagReport(integral, mod2, gens.matrices, dict(gens.checks))
    rep.checks["H_* = (Z, (Z/2)^2, 0, Z)"] = (integral.betti == [1, 0, 0, 1]
                                              and integral.torsion == [[], [2, 2], [], []])
    rep.checks["mod 2 Betti numbers (1, 2, 2, 1)"] = mod2 == [1, 2, 2, 1]
    rep.checks["total mod 2 dimension = |S3|"] = sum(mod2) == s3_order()
    return rep


def s3_order():
    return get_group("S3").order
