from itertools import product

import numpy as np
from hypothesis import given, settings, strategies as st

from z8dual.zmod4 import Z4Echelon

small = st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3), min_size=0, max_size=5)


def brute_span(vecs, ncols):
    span = {(0,) * ncols}
    for v in vecs:
        span = {tuple((s + c * x) % 4 for s, x in zip(u, v)) for u in span for c in range(4)}
    return span


@settings(max_examples=200)
@given(small)
def test_order_and_membership(vecs):
    ech = Z4Echelon(3, len(vecs))
    for v in vecs:
        ech.add(v)
    span = brute_span(vecs, 3)
    assert ech.order() == len(span)
    for target in product(range(4), repeat=3):
        combo = ech.solve(list(target))
        if target in span:
            assert combo is not None
            got = (np.array(combo) @ np.array(vecs, dtype=np.int64).reshape(len(vecs), 3)) % 4 if vecs else np.zeros(3)
            assert tuple(int(u) for u in got) == target
        else:
            assert combo is None


@settings(max_examples=100)
@given(small)
def test_relations_are_relations(vecs):
    ech = Z4Echelon(3, len(vecs))
    for v in vecs:
        ech.add(v)
    m = np.array(vecs, dtype=np.int64).reshape(len(vecs), 3)
    for rel in ech.relations:
        assert not ((np.asarray(rel) @ m) % 4).any()


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(0, 3), min_size=2, max_size=2), min_size=1, max_size=4))
def test_relations_generate_all_relations(vecs):
    # every combo c with c.M = 0 lies in the Z4 span of the recorded relations
    ech = Z4Echelon(2, len(vecs))
    for v in vecs:
        ech.add(v)
    m = np.array(vecs, dtype=np.int64)
    kernel = {c for c in product(range(4), repeat=len(vecs)) if not ((np.array(c) @ m) % 4).any()}
    assert brute_span([list(r) for r in ech.relations], len(vecs)) == kernel
