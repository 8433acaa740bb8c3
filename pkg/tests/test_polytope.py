import pytest

from binpoly.errors import InvalidSeedNormal, NotAFacet
from binpoly.groups import get_group
from binpoly.polytope import (
    EXPECTED_F_VECTORS,
    brute_force_facets,
    build_orbit_polytope,
    exact_rank,
    facet_orbits,
    free_facet_action_check,
    get_polytope,
    is_g_stable,
    oracle_agrees,
    signed_even_permutations,
    verify_fundamental_domain,
)
from binpoly.scalars import ONE, ZERO


def test_signed_even_permutations():
    ops = signed_even_permutations()
    assert len(ops) == 192
    assert len(set(ops)) == 192


@pytest.mark.parametrize("tag", ["T", "O", "I"])
def test_f_vector(tag):
    fv = get_polytope(tag).f_vector()
    assert fv == EXPECTED_F_VECTORS[tag]
    f0, f1, f2, f3 = fv
    assert f0 - f1 + f2 - f3 == 0


@pytest.mark.parametrize("tag,sizes", [("T", [24]), ("O", [192, 96]), ("I", [24, 96, 96, 64, 64, 64, 192])])
def test_orbit_sizes(tag, sizes):
    assert get_polytope(tag).orbit_sizes == sizes


@pytest.mark.parametrize("tag", ["T", "O", "I"])
def test_facets_are_tetrahedra_and_normals_valid(tag):
    p = get_polytope(tag)
    g = p.group
    for f in p.facets:
        pts = [g.elements[v].coords for v in f.vertices]
        assert exact_rank(pts) == 4
        # every vertex satisfies <n, x> <= 1 with equality exactly on the facet
        for n, q in enumerate(g.elements):
            s = sum((a * b for a, b in zip(f.normal, q.coords)), ZERO)
            assert s <= ONE and ((s == ONE) == (n in f.vertices))


@pytest.mark.parametrize("tag", ["T", "O"])
def test_brute_force_oracle(tag):
    p = get_polytope(tag)
    assert oracle_agrees(p, brute_force_facets(p.group))


@pytest.mark.parametrize("tag,r", [("T", 1), ("O", 6), ("I", 5)])
def test_fundamental_domain(tag, r):
    cert = verify_fundamental_domain(get_polytope(tag))
    assert cert.valid
    assert len(cert.facets) == r
    assert cert.to_json()["valid"]


def test_o_domain_vertices():
    cert = verify_fundamental_domain(get_polytope("O"), check_free_action=False)
    assert set(cert.vertex_names) == {"1", "tau_i", "tau_j", "tau_k", "omega_0", "omega_i", "omega_j", "omega_k"}
    assert cert.notes == ["vertex set differs from the listed one: extra ['omega_0'], missing []"]
    assert cert.valid


@pytest.mark.parametrize("tag", ["T", "O", "I"])
def test_action(tag):
    p = get_polytope(tag)
    assert is_g_stable(p)
    assert free_facet_action_check(p)
    assert len(facet_orbits(p)) == len(p.facets) // p.group.order


def test_domain_rejects_translates_of_one_facet():
    p = get_polytope("O")
    g = p.group
    f = p.facets[0].vertices
    twin = sorted(g.table[g["tau_i"]][v] for v in f)
    chosen = [list(f), twin] + [list(x.vertices) for x in p.facets[1:5]]
    cert = verify_fundamental_domain(p, chosen, raise_on_failure=False, check_free_action=False)
    assert not cert.orbits_distinct
    assert not cert.valid


def test_not_a_facet():
    p = get_polytope("O")
    with pytest.raises(NotAFacet):
        verify_fundamental_domain(p, [["1", "tau_i", "tau_j", "tau_k"]])


def test_invalid_seed():
    with pytest.raises(InvalidSeedNormal):
        build_orbit_polytope(get_group("O"), seeds=[(ONE, ZERO, ZERO, ZERO)])
