import numpy as np
import pytest

from binpoly.errors import BoundExceeded, ElementNotInGroup, NotUnitNorm, UnboundSymbol
from binpoly.groups import (
    Group,
    abelianization_invariants,
    check_presentation,
    derived_subgroup,
    generate_group,
    get_group,
    parse_word,
    quotient_map_O_to_S3,
    standard_presentation,
    subgroup_check,
    word_eval,
)
from binpoly.quaternion import I_UNIT, J_UNIT, Quaternion
from binpoly.scalars import QuadScalar

HALF = QuadScalar(1) / 2


@pytest.mark.parametrize("tag,order", [("Q8", 8), ("T", 24), ("O", 48), ("I", 120), ("S3", 6)])
def test_orders_and_axioms(tag, order):
    g = get_group(tag)
    assert g.order == order
    assert g.check_axioms()


@pytest.mark.parametrize("tag", ["T", "O", "I"])
def test_table_matches_quaternion_products(tag):
    assert get_group(tag).check_table_against_elements()


@pytest.mark.parametrize("tag,lmn", [("T", (2, 3, 3)), ("O", (2, 3, 4)), ("I", (2, 3, 5))])
def test_presentations(tag, lmn):
    g = get_group(tag)
    rep = standard_presentation(g)
    assert rep.lmn == lmn
    assert rep.all_equal
    assert g.elements[rep.common_value] == Quaternion(-1)
    # the relations do not hold with the exponents shifted
    l, m, n = lmn
    assert not check_presentation(g, rep.s, rep.t, (l, m, n + 1)).all_equal


def test_subgroups():
    q8, t, o, i = (get_group(x) for x in ("Q8", "T", "O", "I"))
    assert subgroup_check(q8, t)
    assert subgroup_check(t, o)
    assert subgroup_check(t, i)
    assert not subgroup_check(o, i)


def test_t_has_sixteen_half_integer_elements():
    t = get_group("T")
    halves = [q for q in t.elements if all(c in (HALF, -HALF) for c in q.coords)]
    assert len(halves) == 16


def test_o_minus_t_is_the_tau_coset():
    t, o = get_group("T"), get_group("O")
    rest = [q for q in o.elements if q not in t.index]
    assert len(rest) == 24
    tau_i = o.elements[o["tau_i"]]
    assert {tau_i * q for q in t.elements} == set(rest)


def test_center_is_plus_minus_one():
    for tag in ("T", "O", "I"):
        g = get_group(tag)
        assert sorted(g.center()) == sorted([0, g["-1"]])


def test_named_elements():
    o = get_group("O")
    assert o.mul(o["omega_i"], o["tau_i"]) == o["tau_j"]
    assert o.element_order(o["tau_i"]) == 8
    assert o.label(o["tau_i"]) == "tau_i"
    i = get_group("I")
    assert i.element_order(i["sigma"]) == 5
    with pytest.raises(ElementNotInGroup):
        o["nope"]


def test_words():
    o = get_group("O")
    assert parse_word("t^-1 s t^2") == [("t", -1), ("s", 1), ("t", 2)]
    t = o["tau_i"]
    assert word_eval(o, {"t": t}, "t^8") == 0
    assert word_eval(o, {"t": t}, "t^4") == o["-1"]
    with pytest.raises(UnboundSymbol):
        word_eval(o, {"t": t}, "t u")


def test_projection_to_s3():
    hom = quotient_map_O_to_S3()
    assert hom.is_homomorphism()
    counts = np.bincount(hom.images, minlength=6)
    assert counts.tolist() == [8] * 6
    o, s3 = hom.source, hom.target
    assert hom(o["tau_i"]) == s3["s_beta"]
    assert hom(o["tau_k"]) == s3["s_alpha"]


def test_s3_relations():
    s3 = get_group("S3")
    a, b = s3["s_alpha"], s3["s_beta"]
    assert s3.mul(a, a) == s3.mul(b, b) == 0
    assert s3.prod(a, b, a) == s3.prod(b, a, b) == s3["w0"]


@pytest.mark.parametrize("tag,inv", [("T", [3]), ("O", [2]), ("I", []), ("Q8", [2, 2]), ("S3", [2])])
def test_abelianization(tag, inv):
    assert abelianization_invariants(get_group(tag)) == inv


def test_abelianization_of_abstract_table():
    # Z/4 x Z/2 given only as a table
    elems = [(a, b) for a in range(4) for b in range(2)]
    idx = {e: n for n, e in enumerate(elems)}
    table = [[idx[((x[0] + y[0]) % 4, (x[1] + y[1]) % 2)] for y in elems] for x in elems]
    g = Group("Z4xZ2", elems, table)
    assert g.check_axioms()
    assert derived_subgroup(g) == [0]
    assert abelianization_invariants(g) == [2, 4]


def test_generation_errors():
    with pytest.raises(NotUnitNorm):
        generate_group([Quaternion(1, 1, 0, 0)])
    with pytest.raises(BoundExceeded):
        generate_group([I_UNIT, J_UNIT], bound=5)
    with pytest.raises(ElementNotInGroup):
        generate_group([I_UNIT], named_elements={"j": J_UNIT})
