from itertools import product

import pytest
from hypothesis import given, strategies as st

from z8dual import ring_core as rc
from z8dual.ring_core import RElem, r_add, r_from_coords, r_mul, r_neg, r_to_coords

elems = st.integers(0, rc.SIZE - 1).map(RElem)


def test_z8_examples():
    assert rc.z8_mul(2, 2) == 4
    assert rc.z8_add(6, 2) == 0
    assert rc.z8_mul(2, rc.z8_mul(2, 2)) == 0
    assert rc.z8_neg(3) == 5


def test_r_examples():
    assert r_mul(rc.A, rc.B).triple == (0, 4, 0)
    assert r_add(rc.A, r_neg(rc.A)).triple == (0, 0, 0)
    assert r_mul(rc.A, rc.A).triple == (0, 4, 4) == rc.A.scale(2).triple
    assert r_from_coords(1, 0, 0).triple == (0, 2, 2)
    assert r_to_coords((0, 4, 0)) == (0, 0, 1)
    assert rc.B.scale(4) == rc.ZERO
    assert rc.A * rc.A * rc.B == rc.ZERO


def test_outside_r_rejected():
    with pytest.raises(rc.NotInR):
        r_to_coords((1, 1, 1))
    with pytest.raises(rc.NotInR):
        r_to_coords((2, 0, 0))


def test_encoding_against_brute_force():
    # every triple alpha*a + beta*b + gamma*ab, computed directly in Z8^3
    seen = {}
    for alpha, beta, gamma in product(range(4), range(4), range(2)):
        t = tuple((alpha * x + beta * y + gamma * z) % 8 for x, y, z in zip((0, 2, 2), (2, 2, 0), (0, 4, 0)))
        seen[t] = (alpha, beta, gamma)
    assert len(seen) == 32
    for t, coords in seen.items():
        assert r_to_coords(t) == coords
        assert all(u % 2 == 0 for u in t)


def test_coords_round_trip():
    for coords in product(range(4), range(4), range(2)):
        assert r_to_coords(r_from_coords(*coords)) == coords


def test_verify_ring_identities():
    report = rc.verify_ring_identities()
    assert report["passed"]
    assert report["checks"]["order_is_32"] == 32
    assert report["checks"]["annihilator_of_2Z8"] == [0, 4]


def test_annihilator():
    assert rc.annihilator_in_z8() == (0, 4)


def test_d2_values_annihilate_r():
    for s in (rc.A2, rc.B2, rc.A2 + rc.B2):
        assert all(s * x == rc.ZERO for x in rc.ELEMENTS)


@given(elems, elems, elems)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y * z == rc.ZERO
    assert x - x == rc.ZERO


@given(elems, elems)
def test_tables_match_z8_triples(x, y):
    assert (x + y).triple == tuple((u + v) % 8 for u, v in zip(x.triple, y.triple))
    assert (x * y).triple == tuple((u * v) % 8 for u, v in zip(x.triple, y.triple))


@given(elems)
def test_square_and_four(x):
    assert x * x == x.scale(2)
    assert not x.scale(4)
