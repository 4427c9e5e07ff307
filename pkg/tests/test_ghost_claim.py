from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from z8dual import ring_core as rc
from z8dual.certificates import check_certificate
from z8dual.ecvector import ECVector, Window, gen_abar, gen_bbar, gen_ebar, ghost, punctured_ghost
from z8dual.ghost_claim import (ParityError, claim_generating_family, global_punctured_witness, named_rng,
                                parity_check, punctured_witness, reduce_squares, verify_claim)

ZERO = ECVector()
parity_vectors = st.builds(
    ECVector.make, st.sampled_from([rc.ZERO_CODE, rc.AB_CODE]),
    st.dictionaries(st.integers(-15, 15), st.sampled_from([rc.ZERO_CODE, rc.AB_CODE]), max_size=8))
square_span = st.sampled_from(sorted(c for c in range(32) if rc.decode(c)[0] % 2 == 0 and rc.decode(c)[1] % 2 == 0))
span_vectors = st.builds(ECVector.make, square_span, st.dictionaries(st.integers(-10, 10), square_span, max_size=6))


def test_parity_examples():
    assert not parity_check(ghost())
    assert all(parity_check(punctured_ghost(i)) for i in range(-20, 21))
    assert parity_check(ZERO)
    with pytest.raises(ParityError):
        parity_check(gen_bbar())


def test_reduce_squares_examples():
    assert reduce_squares(gen_bbar() * gen_bbar()) == ZERO
    assert reduce_squares(gen_bbar() * gen_abar(0)) == ECVector.make(rc.AB, {-1: rc.ZERO, 0: rc.ZERO, 1: rc.ZERO})
    for i in (-3, 0, 4):
        assert reduce_squares(gen_ebar(i) * gen_ebar(i)) == ZERO
        assert reduce_squares(gen_ebar(i) * gen_ebar(i + 3)) == ZERO
    with pytest.raises(ParityError):
        reduce_squares(gen_bbar())
    assert reduce_squares(ECVector.make(rc.ZERO, {0: -rc.AB})) == ECVector.make(rc.ZERO, {0: rc.AB})


def test_family_contents():
    family = dict(claim_generating_family(-4, 4))
    for i in range(-4, 3):
        assert family[f"ebar[{i}]*ebar[{i + 2}]"] == ECVector.make(rc.ZERO, {i: rc.AB, i + 1: rc.AB})
    assert all(parity_check(v) for v in family.values())
    d2 = [v for k, v in family.items() if "a2[" in k or "b2[" in k]
    assert d2 and all(v == ZERO for v in d2)


def test_parity_closure_depth_three():
    values = sorted({v for _, v in claim_generating_family(-4, 4)}, key=repr)
    for k in (1, 2, 3):
        for combo in combinations_with_replacement(values, k):
            total = ZERO
            for v in combo:
                total = total + v
            assert parity_check(total)


@given(parity_vectors, parity_vectors)
def test_parity_is_additive(u, v):
    assert parity_check(u + v) == (parity_check(u) == parity_check(v))


@given(span_vectors, span_vectors)
def test_reduce_squares_linear(u, v):
    assert reduce_squares(u + v) == reduce_squares(u) + reduce_squares(v)


@pytest.mark.parametrize("i", range(-8, 9))
def test_global_witness(i):
    terms, value = global_punctured_witness(i)
    assert value == punctured_ghost(i)


def test_window_witness_certificates():
    w = Window(-5, 5)
    for i in (-1, 0, 1, 2):
        cert = punctured_witness(i, w)
        assert check_certificate(cert) == (True, "ok")


def test_certificate_tamper_rejected():
    cert = punctured_witness(1, Window(-3, 3))
    cert["target"][3] = [1, 0, 0]
    assert not check_certificate(cert)[0]
    cert = punctured_witness(1, Window(-3, 3))
    name = next(iter(cert["generators"]))
    cert["generators"][name][0] = [1, 1, 0]
    assert not check_certificate(cert)[0]


def test_verify_claim_small():
    report = verify_claim(-4, 4, sum_len=5, samples=500, seed=3, witness_indices=(0,), witness_window=Window(-3, 3))
    assert report["passed"]
    assert report["ghost_passes_parity"] is False
    assert report["random_sums_passed"] == 500


def test_named_streams_are_reproducible_and_distinct():
    assert named_rng(4, "x").random() == named_rng(4, "x").random()
    assert named_rng(4, "x").random() != named_rng(4, "y").random()
