import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binpoly.errors import DimensionMismatch, GroupMismatch, SideMismatch
from binpoly.groupring import (
    GroupRingElement,
    GroupRingMatrix,
    apply_antihom,
    augment_matrix,
    mat_mul,
    parse_element,
    regular_representation,
)
from binpoly.groups import get_group, quotient_map_O_to_S3

O = get_group("O")
T = get_group("T")


def elements(group, max_terms=4):
    return st.dictionaries(st.integers(0, group.order - 1), st.integers(-3, 3), max_size=max_terms).map(
        lambda c: GroupRingElement(group, c))


def matrices(group, rows, cols, side):
    return st.lists(st.lists(elements(group), min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda e: GroupRingMatrix(group, e, side))


def test_norm_element_absorbs():
    n = GroupRingElement.norm_element(O)
    x = parse_element(O, "tau_i - 1")
    assert (x * n).is_zero()
    assert (n * x).is_zero()
    assert n * n == n * O.order
    assert n.augment() == 48


def test_parse_element():
    x = parse_element(O, "2*omega_i*tau_i - (1 - tau_j) + tau_k^2")
    assert x == GroupRingElement(O, {O["tau_j"]: 3, 0: -1, O.power(O["tau_k"], 2): 1})
    assert x.augment() == 3
    with pytest.raises(Exception):
        parse_element(O, "tau_q + 1")


def test_ring_axioms_sampled():
    a = parse_element(O, "tau_i + 2*omega_j")
    b = parse_element(O, "1 - gamma")
    c = parse_element(O, "3*tau_k - omega_0")
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b != b * a
    assert (a * b).augment() == a.augment() * b.augment()


def test_json_round_trip():
    x = parse_element(O, "2*tau_i - omega_k + 5")
    assert GroupRingElement.from_json(O, x.to_json()) == x
    m = GroupRingMatrix.parse(O, [["tau_i - 1", "0"], ["1", "omega_j"]])
    assert GroupRingMatrix.from_json(O, m.to_json()) == m


@settings(max_examples=25, deadline=None)
@given(matrices(T, 2, 3, "left"), matrices(T, 3, 2, "left"))
def test_regular_rep_is_multiplicative_left(a, b):
    assert np.array_equal(regular_representation(mat_mul(a, b)),
                          regular_representation(a) @ regular_representation(b))


@settings(max_examples=25, deadline=None)
@given(matrices(T, 2, 3, "right"), matrices(T, 3, 2, "right"))
def test_regular_rep_is_multiplicative_right(a, b):
    assert np.array_equal(regular_representation(mat_mul(a, b)),
                          regular_representation(a) @ regular_representation(b))


@settings(max_examples=25, deadline=None)
@given(matrices(T, 2, 3, "left"), matrices(T, 3, 2, "left"))
def test_augmentation_is_multiplicative(a, b):
    assert np.array_equal(augment_matrix(mat_mul(a, b)), augment_matrix(a).dot(augment_matrix(b)))


def test_regular_rep_of_basis_element_is_permutation():
    g = O["tau_i"]
    r = regular_representation(GroupRingMatrix(O, [[GroupRingElement.basis(O, g)]]))
    assert (r.sum(axis=0) == 1).all() and (r.sum(axis=1) == 1).all()
    # row vector e_x maps to e_{x g}
    for x in range(O.order):
        assert r[x, O.mul(x, g)] == 1


def test_regular_rep_of_norm_is_all_ones():
    r = regular_representation(GroupRingMatrix(O, [[GroupRingElement.norm_element(O)]]))
    assert (r == 1).all()


def test_antihom_twice_is_identity():
    m = GroupRingMatrix.parse(O, [["tau_i - 1", "omega_j"], ["2", "gamma*tau_k"]])
    back = apply_antihom(apply_antihom(m, invert=True, transpose=True), invert=True, transpose=True)
    assert back == m


def test_antihom_reverses_products():
    a = GroupRingMatrix.parse(O, [["tau_i - 1", "omega_j"]])
    b = GroupRingMatrix.parse(O, [["gamma"], ["1 + tau_k"]])
    f = lambda m: apply_antihom(m, invert=True, transpose=True)
    assert f(mat_mul(a, b)) == mat_mul(f(b), f(a))


def test_pushforward_lands_in_s3():
    pi = quotient_map_O_to_S3()
    m = GroupRingMatrix.parse(O, [["tau_i - 1"]])
    out = apply_antihom(m, pi, invert=True, transpose=True)
    assert out.group is pi.target and out.side == "right"
    assert str(out[0, 0]) == "-1+s_beta"


def test_errors():
    a = GroupRingMatrix.parse(O, [["1", "tau_i"]])
    with pytest.raises(DimensionMismatch):
        mat_mul(a, a)
    with pytest.raises(SideMismatch):
        mat_mul(a, GroupRingMatrix.parse(O, [["1"], ["1"]], "right"))
    with pytest.raises(GroupMismatch):
        mat_mul(a, GroupRingMatrix.parse(T, [["1"], ["1"]]))
    with pytest.raises(GroupMismatch):
        parse_element(O, "1") + parse_element(T, "1")
