"""The ghost map phi on homomorphisms D -> Z8 and the non-evaluation verdict.

phi(f) is f at a punctured ghost whose puncture avoids the critical
coordinate of f (puncture 0 for zeroring-type f, critical + 1 otherwise).
For finitely many homs one punctured ghost avoiding all their critical
coordinates realises phi simultaneously, so phi preserves every relation;
phi is decided by the values at punctures 0, 1, 2, so it is continuous; and
phi sends each coordinate projection to the matching coordinate of the
all-ab vector, which is not in D.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from .ecvector import Window, flatten, ghost, punctured_ghost
from .ghost_claim import named_rng, parity_check, verify_claim
from .homs import (Classification, Hom, classify, enumerate_homs, middle_projection,
                   probe_indices, projection_hom, punctured_value, verify_classification)
from .subring import build_D

CONTINUITY_POINTS = (0, 1, 2)


class WindowTooSmall(ValueError):
    pass


class StructureFailure(AssertionError):
    pass


def phi(f: Hom, cls: Optional[Classification] = None) -> int:
    cls = cls or classify(f)
    m = 0 if cls.kind == "zeroring" else cls.critical + 1
    return punctured_value(f, m)


@dataclass
class Profile:
    """Everything phi-related about one hom, computed once."""

    hom: Hom
    cls: Classification
    phi: int
    punctured: Dict[int, int]

    @classmethod
    def of(cls, f: Hom, probes: Sequence[int]) -> "Profile":
        c = classify(f)
        return cls(f, c, phi(f, c), {m: punctured_value(f, m) for m in probes})

    def value_at(self, m: int) -> int:
        if m not in self.punctured:
            self.punctured[m] = punctured_value(self.hom, m)
        return self.punctured[m]


def witness_candidates(window: Window) -> List[int]:
    """Puncture positions tried by finite_witness: inside the window nearest 0
    first, then one position on each side standing for all far positions."""
    inside = sorted(window, key=lambda m: (abs(m), m))
    return inside + [window.lo - 1, window.hi + 1]


def finite_witness(homs: Sequence[Hom], profiles: Optional[Sequence[Profile]] = None):
    """A punctured ghost on which every hom in ``homs`` takes its phi value.

    Returns ``(m, punctured_ghost(m))``.
    """
    if not homs:
        raise ValueError("need at least one hom")
    window = homs[0].ring.window
    if any(f.ring.window != window for f in homs):
        raise ValueError("homs live on different windows")
    if profiles is None:
        profiles = [Profile.of(f, ()) for f in homs]
    critical = {p.cls.critical for p in profiles if p.cls.kind == "critical"}
    for m in witness_candidates(window):
        if m not in critical:
            break
    else:
        raise WindowTooSmall(f"every puncture position of {window} is critical for some hom")
    for p in profiles:
        value = p.value_at(m)
        if value != p.phi:
            raise StructureFailure(f"hom {p.hom.images}: value {value} at puncture {m}, phi {p.phi}")
    return m, punctured_ghost(m)


def continuity_check(f: Hom, g: Hom) -> bool:
    """Agreement at punctures 0, 1, 2 implies equal phi values."""
    agree = all(punctured_value(f, m) == punctured_value(g, m) for m in CONTINUITY_POINTS)
    return (not agree) or phi(f) == phi(g)


def continuity_all(profiles: Sequence[Profile]) -> int:
    """Check the continuity implication for all pairs at once.

    The implication holds for every pair iff phi is constant on each class
    of homs agreeing at the three points.  Returns the number of classes.
    """
    classes: Dict[tuple, int] = {}
    for p in profiles:
        key = tuple(p.punctured[m] for m in CONTINUITY_POINTS)
        if classes.setdefault(key, p.phi) != p.phi:
            raise StructureFailure(f"homs agreeing at {CONTINUITY_POINTS} as {key} have different phi")
    return len(classes)


def witness_universality(profiles: Sequence[Profile], max_size: int = 4, samples: int = 2000,
                         seed: int = 0, exhaustive_limit: int = 60) -> dict:
    """finite_witness succeeds on every subset of at most ``max_size`` homs.

    The chosen puncture depends only on the set of critical coordinates in
    the subset, so it suffices to check, for every set T of at most
    ``max_size`` critical values, every hom whose critical value lies in T
    (or that is zeroring type).  Random subsets are also run directly, and
    all subsets are run when there are at most ``exhaustive_limit`` homs.
    """
    window = profiles[0].hom.ring.window
    cands = witness_candidates(window)
    by_crit: Dict[Optional[int], List[Profile]] = {}
    for p in profiles:
        by_crit.setdefault(p.cls.critical, []).append(p)
    crit_values = sorted(c for c in by_crit if c is not None)
    zeroring = by_crit.get(None, [])
    checked_sets = 0
    for k in range(0, max_size + 1):
        for T in combinations(crit_values, k):
            m = next((c for c in cands if c not in T), None)
            if m is None:
                raise WindowTooSmall(f"critical set {T} covers every candidate")
            for p in zeroring + [p for c in T for p in by_crit[c]]:
                if p.value_at(m) != p.phi:
                    raise StructureFailure(f"critical set {T}: hom {p.hom.images} fails at {m}")
            checked_sets += 1
    rng = named_rng(seed, "ghost-map/subsets")
    for _ in range(samples):
        size = rng.randint(1, max_size)
        subset = rng.sample(list(profiles), min(size, len(profiles)))
        finite_witness([p.hom for p in subset], subset)
    exhaustive = 0
    if len(profiles) <= exhaustive_limit:
        for k in range(1, max_size + 1):
            for subset in combinations(profiles, k):
                finite_witness([p.hom for p in subset], subset)
                exhaustive += 1
    return {"critical_sets": checked_sets, "random_subsets": samples, "exhaustive_subsets": exhaustive}


@dataclass
class PhiReport:
    window: Window
    hom_count: int
    class_counts: Dict[str, int]
    table: List[dict]
    projection_phi: Dict[str, int]
    ghost_flat: List[int]
    witnesses: dict
    continuity_classes: int
    window_evaluation: bool
    claim: dict
    verdict: bool
    conclusion: str
    seconds: float = field(default=0.0)

    def to_json(self) -> dict:
        return {
            "window": [self.window.lo, self.window.hi],
            "hom_count": self.hom_count,
            "class_counts": self.class_counts,
            "homs": self.table,
            "projection_phi": self.projection_phi,
            "ghost_flat": self.ghost_flat,
            "witnesses": self.witnesses,
            "continuity_classes": self.continuity_classes,
            "phi_is_evaluation_at_restricted_ghost": self.window_evaluation,
            "claim": self.claim,
            "verdict": self.verdict,
            "conclusion": self.conclusion,
            "seconds": self.seconds,
        }


def non_evaluation_report(window: Window, homs: Optional[Sequence[Hom]] = None, seed: int = 0,
                          hom_budget: int = 10_000_000, subset_samples: int = 2000,
                          claim_samples: int = 10_000) -> PhiReport:
    t0 = time.perf_counter()
    if homs is None:
        ring = build_D(window, materialize=False)
        homs = enumerate_homs(ring, hom_budget)
    ring = homs[0].ring
    classification = verify_classification(ring, homs)
    probes = sorted(set(probe_indices(ring)) | set(CONTINUITY_POINTS))
    profiles = [Profile.of(f, probes) for f in homs]

    # phi on every coordinate projection against the flattened ghost
    ghost_flat = list(flatten(ghost(), window))
    listed = {f.images for f in homs}
    projection_phi = {}
    for k in range(3 * len(window)):
        pi = projection_hom(ring, k)
        if pi.images not in listed:
            raise StructureFailure(f"{pi.label} missing from the hom list")
        projection_phi[pi.label] = phi(pi)
    middle_ok = all(phi(middle_projection(ring, j)) == 4 for j in window)
    matches_ghost = list(projection_phi.values()) == ghost_flat

    witnesses = witness_universality(profiles, samples=subset_samples, seed=seed)
    n_classes = continuity_all(profiles)

    # On a finite window the ghost restricts to a far punctured ghost, so phi
    # agrees there with evaluation at an element of D_W; only D itself excludes it.
    far = window.hi + 1
    window_evaluation = all(p.value_at(far) == p.phi for p in profiles)

    claim = verify_claim(samples=claim_samples, seed=seed)
    claim_summary = {k: v for k, v in claim.items() if k != "witnesses"}
    excluded = claim["passed"] and not parity_check(ghost())

    table = [
        {"images": list(p.hom.images), "class": p.cls.to_json(), "phi": p.phi}
        for p in profiles
    ]
    verdict = bool(middle_ok and matches_ghost and excluded)
    conclusion = (
        "phi preserves all finitary structure and is continuous, yet it sends every "
        "coordinate projection to the matching coordinate of the all-ab vector, which is "
        "not in D; so phi is not an evaluation, brute-force duality fails and Z8 is not dualizable"
        if verdict else "verdict not established"
    )
    return PhiReport(window, len(homs), classification["class_counts"], table, projection_phi, ghost_flat,
                     witnesses, n_classes, window_evaluation, claim_summary, verdict, conclusion,
                     round(time.perf_counter() - t0, 3))
