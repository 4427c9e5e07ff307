import random

import pytest
from hypothesis import given, settings, strategies as st

from z8dual import ring_core as rc
from z8dual.certificates import check_certificate
from z8dual.ecvector import Window, gen_ebar, ghost, punctured_ghost
from z8dual.subring import (BudgetExceeded, FiniteVector, build_D, close, d2_generators, d_generators,
                            evaluate_expression, packed_adder)
from z8dual.zmod4 import Z4Echelon


def fv(w, *elems):
    return FiniteVector(w, tuple(e.code for e in elems))


def naive_closure(gens, w):
    """Fixpoint of + and * on explicit FiniteVectors (oracle)."""
    elems = {FiniteVector.zero(w)} | set(gens)
    while True:
        new = {x + y for x in elems for y in elems} | {x * y for x in elems for y in elems}
        if new <= elems:
            return elems
        elems |= new


W0 = Window(0, 0)


def test_close_examples():
    ring = close([("b", fv(W0, rc.B))], W0)
    assert {v.values[0] for v in ring.element_vectors()} == {rc.ZERO_CODE, rc.B_CODE, rc.B.scale(2).code,
                                                             rc.B.scale(3).code}
    assert len(close([], W0).elements) == 1
    assert len(close([("a", fv(W0, rc.A)), ("b", fv(W0, rc.B))], W0).elements) == 32


def test_contains_examples():
    w = Window(-4, 4)
    ring = build_D(w, materialize=False)
    target = FiniteVector.of(punctured_ghost(1), w)
    found, terms = ring.contains(target)
    assert found
    assert evaluate_expression(terms, ring.generator_map, w) == target
    ok, why = check_certificate(ring.certificate(target, terms, "D"))
    assert ok, why
    assert ring.contains(FiniteVector.zero(w))[0]
    b_ring = close([("b", fv(W0, rc.B))], W0)
    assert not b_ring.contains(FiniteVector.of(ghost(), W0))[0]


def test_build_D_examples():
    ring = build_D(W0)
    for s in (rc.A2, rc.B2, rc.A2 + rc.B2):
        assert ring.contains(fv(W0, s))[0]
    w = Window(-3, 3)
    big = build_D(w, materialize=False)
    for i in range(-3, 3):
        assert big.contains(FiniteVector.of(gen_ebar(i) * gen_ebar(i + 2), w))[0]


def test_d2_generators():
    assert len(d2_generators(W0)) == 2
    w = Window(-1, 1)
    gens = d2_generators(w)
    assert len(gens) == 6
    for _, g in gens:
        for x in rc.ELEMENTS:
            assert (g * FiniteVector(w, (x.code,) * 3)).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 31), st.integers(0, 31)), min_size=0, max_size=3))
def test_close_matches_naive_oracle(raw):
    w = Window(0, 1)
    gens = [(f"g{k}", FiniteVector(w, v)) for k, v in enumerate(raw)]
    ring = close(gens, w)
    oracle = naive_closure([g for _, g in gens], w)
    assert set(ring.element_vectors()) == oracle
    assert ring.size == len(oracle)
    assert len(ring.elements) == len(set(ring.order_found))


def test_provenance_sound_everywhere(ring00):
    for key in ring00.order_found:
        target = FiniteVector.from_key(ring00.window, key)
        assert evaluate_expression(ring00.provenance(key), ring00.generator_map, ring00.window) == target


def test_provenance_sound_sampled(ring11):
    rng = random.Random(1)
    for key in rng.sample(ring11.order_found, 300):
        target = FiniteVector.from_key(ring11.window, key)
        assert evaluate_expression(ring11.provenance(key), ring11.generator_map, ring11.window) == target


def test_closed_and_idempotent(ring00):
    elems = ring00.element_vectors()
    keys = set(ring00.elements)
    for x in elems:
        for y in elems:
            assert (x + y).key in keys and (x * y).key in keys and (-x).key in keys
    again = close([(f"e{k}", v) for k, v in enumerate(elems)], ring00.window)
    assert set(again.elements) == keys


def test_generators_are_elements(ring11):
    for g in ring11.generators:
        assert g.key in ring11.elements


def test_explicit_and_echelon_sizes_agree(ring11):
    assert len(ring11.elements) == ring11.size == 2 ** 15
    assert build_D(Window(-1, 1), materialize=False).size == 2 ** 15


def test_measured_window_sizes():
    assert build_D(W0).size == 32
    assert build_D(Window(-2, 2), materialize=False).size == 2 ** 23


def test_projection_consistency():
    # projecting the ring on a wider window gives exactly the ring on the smaller one
    wide, small = Window(-2, 2), Window(-1, 1)
    big = build_D(wide, materialize=False)
    ring = build_D(small)
    proj = [FiniteVector(small, v.values[1:4]) for v in big.word_values]
    # a projection of a ring is a ring, so the additive span of the projected words is all of it
    ech = Z4Echelon(9, len(proj))
    for p in proj:
        ech.add(p.z4())
    assert ech.order() == ring.size
    rng = random.Random(0)
    for _ in range(200):
        x = FiniteVector.zero(wide)
        for k in rng.sample(range(len(big.word_values)), 6):
            x = x + big.word_values[k].scale(rng.randrange(4))
        assert FiniteVector(small, x.values[1:4]).key in ring.elements


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded) as info:
        build_D(Window(-1, 1), budget=1000)
    assert info.value.size > 1000 and info.value.budget == 1000


def test_packed_adder_matches_tables():
    w = Window(0, 2)
    add = packed_adder(3)
    rng = random.Random(5)
    for _ in range(500):
        x = FiniteVector(w, tuple(rng.randrange(32) for _ in range(3)))
        y = FiniteVector(w, tuple(rng.randrange(32) for _ in range(3)))
        assert add(x.key, y.key) == (x + y).key


def test_generator_order():
    names = [n for n, _ in d_generators(Window(-1, 1))]
    assert names[:6] == [f"ebar[{i}]" for i in range(-2, 4)]
    assert names[6:8] == ["abar0", "bbar"]
    assert names[8:] == [f"{p}[{j}]" for j in range(-1, 2) for p in ("a2", "b2")]
