"""The parity invariant that keeps the all-ab vector out of D.

Writing every coordinate as alpha*a + beta*b + gamma*ab, the gamma part is
additive.  Generators of D have no gamma part, so the gamma part of any
element of D is a sum of gamma parts of pairwise products of generators,
which is what ``reduce_squares`` extracts.  All of those satisfy the parity
condition, the condition is preserved by addition, and the ghost violates
it; every punctured ghost satisfies it and is exhibited in D explicitly.
"""
from __future__ import annotations

import random
import time
from itertools import combinations_with_replacement
from typing import List, Sequence, Tuple

from . import ring_core as rc
from .certificates import check_certificate
from .ecvector import (ECVector, Window, gen_abar, gen_bbar, gen_ebar, ghost, punctured_ghost,
                       unit_at)
from .subring import FiniteVector, build_D

# span of {a^2, b^2, ab}: alpha and beta even
SQUARE_SPAN = frozenset(c for c in range(rc.SIZE) if rc.decode(c)[0] % 2 == 0 and rc.decode(c)[1] % 2 == 0)
PARITY_VALUES = frozenset((rc.ZERO_CODE, rc.AB_CODE))


class ParityError(ValueError):
    pass


def named_rng(seed: int, stream: str) -> random.Random:
    """Independent reproducible stream derived from one seed."""
    return random.Random(f"{seed}/{stream}")


def _codes(v: ECVector):
    return [v.eventual] + [c for _, c in v.exceptions]


def parity_check(v: ECVector) -> bool:
    if any(c not in PARITY_VALUES for c in _codes(v)):
        raise ParityError(f"{v} has values outside {{0, ab}}")
    if v.eventual == rc.ZERO_CODE:
        return len(v.exceptions) % 2 == 0
    return len(v.exceptions) % 2 == 1


def ab_component(v: ECVector) -> ECVector:
    """Keep only the ab part of each coordinate (an additive map)."""
    keep = lambda c: rc.AB_CODE if rc.decode(c)[2] else rc.ZERO_CODE  # noqa: E731
    return ECVector.make(keep(v.eventual), [(j, keep(c)) for j, c in v.exceptions])


def reduce_squares(v: ECVector) -> ECVector:
    """Replace a^2, b^2 (and their sums) by 0; -ab is ab already."""
    for c in _codes(v):
        if c not in SQUARE_SPAN:
            raise ParityError(f"coordinate {rc.TRIPLES[c]} is outside span(a^2, b^2, ab)")
    return ab_component(v)


def claim_generators(lo: int, hi: int, include_d2: bool = True) -> List[Tuple[str, ECVector]]:
    gens = [("bbar", gen_bbar()), ("abar0", gen_abar(0))]
    gens += [(f"ebar[{i}]", gen_ebar(i)) for i in range(lo, hi + 1)]
    if include_d2:
        for j in range(lo - 2, hi + 2):
            gens += [(f"a2[{j}]", unit_at(j, rc.A2)), (f"b2[{j}]", unit_at(j, rc.B2))]
    return gens


def claim_generating_family(lo: int, hi: int, include_d2: bool = True) -> List[Tuple[str, ECVector]]:
    """Reduced pairwise products of the generators (ebar indices in [lo, hi])."""
    gens = claim_generators(lo, hi, include_d2)
    family = []
    for (n1, g1), (n2, g2) in combinations_with_replacement(gens, 2):
        family.append((f"{n1}*{n2}", reduce_squares(g1 * g2)))
    return family


def random_formal_sum(family: Sequence[Tuple[str, ECVector]], max_len: int, rng: random.Random):
    k = rng.randint(1, max_len)
    picks = [family[rng.randrange(len(family))] for _ in range(k)]
    total = ECVector()
    for _, v in picks:
        total = total + v
    return [name for name, _ in picks], total


def punctured_witness(i: int, window: Window, ring=None) -> dict:
    """Membership certificate for the restriction of punctured_ghost(i) to D_W."""
    ring = ring or build_D(window, materialize=False)
    target = FiniteVector.of(punctured_ghost(i), window)
    found, terms = ring.contains(target)
    if not found:
        raise AssertionError(f"punctured ghost {i} not found in D on {window}")
    return ring.certificate(target, terms, family="D")


def global_punctured_witness(i: int) -> Tuple[list, ECVector]:
    """An expression in the generators of D equal to punctured_ghost(i) on all of Z.

    bbar*abar0 - b2[0] is eventually ab with zeros at -1, 0, 1; each
    ebar[k]*ebar[k+2] toggles coordinates k and k+1, which moves the zeros.
    Returns ``(terms, value)`` with terms as ``(coef, (names...))``.
    """
    terms = [(1, ("bbar", "abar0")), (-1, ("b2[0]",))]
    value = gen_bbar() * gen_abar(0) - unit_at(0, rc.B2)
    toggle = sorted({-1, 0, 1} ^ {i})
    for x, y in zip(toggle[::2], toggle[1::2]):
        for k in range(x, y):
            terms.append((1, (f"ebar[{k}]", f"ebar[{k + 2}]")))
            value = value + gen_ebar(k) * gen_ebar(k + 2)
    return terms, value


class ClaimFailure(AssertionError):
    pass


def verify_claim(lo: int = -6, hi: int = 6, sum_len: int = 8, samples: int = 10_000, seed: int = 0,
                 witness_indices: Sequence[int] = (-1, 0, 1, 2), witness_window: Window = Window(-5, 5)) -> dict:
    t0 = time.perf_counter()
    report = {"range": [lo, hi], "sum_len": sum_len, "samples": samples, "seed": seed}

    gens = claim_generators(lo, hi)
    for name, g in gens:
        if any(rc.decode(c)[2] for c in _codes(g)):
            raise ClaimFailure(f"generator {name} has an ab component")
    report["generators_free_of_ab"] = len(gens)

    family = claim_generating_family(lo, hi)
    for name, v in family:
        if not parity_check(v):
            raise ClaimFailure(f"family member {name} = {v} fails parity")
    report["family_size"] = len(family)
    report["family_nonzero"] = sum(1 for _, v in family if v != ECVector())
    d2_products = [v for name, v in family if "a2[" in name or "b2[" in name]
    if any(v != ECVector() for v in d2_products):
        raise ClaimFailure("a product with a D2 generator is nonzero")
    report["d2_products_zero"] = len(d2_products)

    rng = named_rng(seed, "verify-claim/sums")
    for _ in range(samples):
        names, total = random_formal_sum(family, sum_len, rng)
        if not parity_check(total):
            raise ClaimFailure(f"sum of {names} = {total} fails parity")
    report["random_sums_passed"] = samples

    if parity_check(ghost()):
        raise ClaimFailure("the ghost passes parity")
    report["ghost_passes_parity"] = False
    for i in range(lo, hi + 1):
        if not parity_check(punctured_ghost(i)):
            raise ClaimFailure(f"punctured ghost {i} fails parity")
    report["punctured_pass_parity"] = [lo, hi]

    for i in range(lo, hi + 1):
        terms, value = global_punctured_witness(i)
        if value != punctured_ghost(i):
            raise ClaimFailure(f"global witness for punctured ghost {i} evaluates to {value}")
    report["global_witnesses"] = [lo, hi]

    ring = build_D(witness_window, materialize=False)
    certs = []
    for i in witness_indices:
        cert = punctured_witness(i, witness_window, ring)
        ok, why = check_certificate(cert)
        if not ok:
            raise ClaimFailure(f"certificate for punctured ghost {i} rejected: {why}")
        certs.append({"index": i, "terms": len(cert["expression"]), "certificate": cert})
    report["witnesses"] = certs
    report["conclusion"] = (
        "ab-parts of D satisfy the parity condition; the ghost violates it, "
        "so the ghost is not in D, while every punctured ghost is"
    )
    report["passed"] = True
    report["seconds"] = round(time.perf_counter() - t0, 3)
    return report
