import pytest
from hypothesis import given, strategies as st

from z8dual import ring_core as rc
from z8dual.ecvector import (ECVector, Window, ZERO_VECTOR, ebar_indices_meeting, ec_add, ec_mul, ec_neg,
                             ec_scale, flatten, gen_abar, gen_bbar, gen_ebar, gen_unital_variant, ghost,
                             punctured_ghost, restrict, verify_structure)

codes = st.integers(0, rc.SIZE - 1)
vectors = st.builds(ECVector.make, codes, st.dictionaries(st.integers(-12, 12), codes, max_size=6))


def test_operation_examples():
    assert ec_mul(gen_bbar(), gen_bbar()) == ECVector.make(rc.B2)
    assert ec_add(gen_abar(0), ec_neg(gen_abar(0))) == ZERO_VECTOR
    assert ec_mul(gen_ebar(0), gen_ebar(2)) == ECVector.make(rc.ZERO, {0: rc.AB, 1: rc.AB})
    assert ec_scale(4, gen_bbar()) == ZERO_VECTOR


def test_generator_examples():
    assert gen_bbar().at(7).triple == (2, 2, 0)
    assert flatten(gen_bbar(), Window(0, 1)) == (2, 2, 0, 2, 2, 0)
    assert gen_abar(0).at(0) == rc.B
    assert gen_abar(0).at(1) == rc.ZERO
    assert gen_abar(5).at(-3) == rc.A
    e = gen_ebar(0)
    assert dict(e.exceptions) == {-2: rc.A_CODE, -1: (-rc.B).code, 0: rc.B_CODE, 1: (-rc.A).code}
    assert gen_abar(1) - gen_abar(0) == gen_ebar(1)
    assert e.at(10) == rc.ZERO


def test_ghost_examples():
    assert flatten(ghost(), Window(0, 0)) == (0, 4, 0)
    assert flatten(ghost(), Window(0, 1)) == (0, 4, 0, 0, 4, 0)
    assert punctured_ghost(3).at(3) == rc.ZERO
    assert (punctured_ghost(2) - punctured_ghost(-4)).is_finite()


def test_flatten_and_restrict():
    assert flatten(ZERO_VECTOR, Window(-3, 3)) == (0,) * 21
    assert flatten(gen_ebar(0), Window(-2, 1)) == (0, 2, 2, 6, 6, 0, 2, 2, 0, 0, 6, 6)
    assert restrict(ghost(), Window(0, 2)) == (rc.AB,) * 3
    assert restrict(punctured_ghost(1), Window(0, 2)) == (rc.AB, rc.ZERO, rc.AB)
    assert restrict(gen_ebar(0), Window(5, 7)) == (rc.ZERO,) * 3


def test_unital_variant():
    a, b = gen_unital_variant()
    assert a == (2, 2, 0, 0) and b == (0, 2, 2, 0)
    assert tuple(x * y % 8 for x, y in zip(a, b)) == (0, 4, 0, 0)


def test_window():
    w = Window.parse("-2:3")
    assert (w.lo, w.hi, len(w)) == (-2, 3, 6)
    assert list(w) == [-2, -1, 0, 1, 2, 3]
    with pytest.raises(ValueError):
        Window.parse("3")
    with pytest.raises(ValueError):
        Window(2, 1)


def test_ebar_window_convention():
    w = Window(-1, 1)
    meeting = [i for i in range(-10, 10) if any(j in w for j in range(i - 2, i + 2))]
    assert list(ebar_indices_meeting(w)) == meeting


def test_structure_identities():
    report = verify_structure(-10, 10)
    assert report["passed"]
    assert report["far_products_zero"] > 0


@pytest.mark.parametrize("i", range(-10, 11))
def test_adjacent_pair_products(i):
    assert gen_ebar(i) * gen_ebar(i + 2) == ECVector.make(rc.ZERO, {i: rc.AB, i + 1: rc.AB})
    assert gen_ebar(i) * gen_ebar(i + 4) == ZERO_VECTOR


@given(vectors)
def test_canonical_form(x):
    assert all(c != x.eventual for _, c in x.exceptions)
    assert list(x.support) == sorted(x.support)
    assert ECVector.from_json(x.to_json()) == x


@given(vectors, vectors, vectors)
def test_ring_laws(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x * y * z == ZERO_VECTOR
    assert x - x == ZERO_VECTOR


@given(vectors, vectors, st.integers(-30, 30))
def test_eventual_value_and_pointwise(x, y, i):
    assert (x + y).eventual == rc.ADD[x.eventual][y.eventual]
    assert (x * y).eventual == rc.MUL[x.eventual][y.eventual]
    assert (x * y).at(i) == x.at(i) * y.at(i)
    assert (x + y).at(i) == x.at(i) + y.at(i)
