"""Ring homomorphisms from windowed truncations of D into Z8.

A homomorphism is determined by its generator images; every image lies in
2Z8 because 4x = 0 holds in D.  Two independent enumerations are provided:

``enumerate_homs``
    depth-first search over generator images with forward checking.  The
    constraints are the additive relations among monomial words (from the
    Z/4 echelon), triangularised so that each one fires as soon as the last
    generator it mentions is assigned.

``enumerate_homs_additive``
    works on the materialised element set only: builds a polycyclic additive
    basis by direct enumeration, lists every additive map into 2Z8 and keeps
    the multiplicative ones (checking basis pairs suffices by bilinearity).

Because restriction to a window is a ring homomorphism D -> D_W, every hom
of a truncation is also a hom of D; all statements here are about those
pullbacks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import ring_core as rc
from .ecvector import flatten, punctured_ghost
from .subring import FiniteVector, GeneratedRing, packed_adder
from .zmod4 import Z4Echelon

EVEN = (0, 2, 4, 6)
UNITS_OF_2Z8 = (2, 6)  # elements of 2Z8 outside the annihilator {0, 4}


class HomBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Hom:
    ring: GeneratedRing = field(compare=False, hash=False, repr=False)
    images: Tuple[int, ...]
    label: str = field(default="", compare=False)

    @cached_property
    def word_images(self) -> np.ndarray:
        out = np.empty(len(self.ring.words), dtype=np.int64)
        for k, word in enumerate(self.ring.words):
            v = 1
            for g in word:
                v *= self.images[g]
            out[k] = v % 8
        return out

    def __call__(self, x: FiniteVector) -> int:
        combo = self.ring.express(x)
        return int(combo @ self.word_images % 8)

    def image_of(self, name: str) -> int:
        return self.images[self.ring.names.index(name)]

    def table(self) -> Dict[int, int]:
        """Value on every materialised element, propagated along provenance."""
        ring = self.ring
        if ring.elements is None:
            raise ValueError("ring was not materialised")
        wimg = self.word_images
        zero = ring.order_found[0]
        vals = {zero: 0}
        for key in ring.order_found[1:]:
            parent, k = ring.elements[key]
            vals[key] = (vals[parent] + int(wimg[k])) % 8
        return vals

    def to_json(self) -> dict:
        return {"label": self.label, "images": dict(zip(self.ring.names, self.images))}


def relation_violations(ring: GeneratedRing, images: Sequence[int]) -> List[int]:
    """Indices of word relations that ``images`` violates (empty iff hom)."""
    h = Hom(ring, tuple(images))
    bad = []
    for n, rel in enumerate(ring.echelon.relations):
        if int(rel @ h.word_images) % 8:
            bad.append(n)
    return bad


def is_hom(ring: GeneratedRing, images: Sequence[int]) -> bool:
    return all(v % 2 == 0 for v in images) and not relation_violations(ring, images)


def _triangular_constraints(ring: GeneratedRing):
    """Relation rows grouped by the generator position that completes them."""
    nw = len(ring.words)
    level = [max(w) for w in ring.words]
    # columns ordered by level descending: a row's pivot is its latest word
    perm = sorted(range(nw), key=lambda k: (-level[k], k))
    rels = ring.echelon.relations
    ech = Z4Echelon(nw, len(rels))
    for rel in rels:
        ech.add(rel[perm])
    by_level: Dict[int, list] = {}
    for col, _, row, _ in ech.basis():
        terms = [(int(row[j]), ring.words[perm[j]]) for j in np.flatnonzero(row)]
        by_level.setdefault(level[perm[col]], []).append(terms)
    return by_level


def enumerate_homs(ring: GeneratedRing, budget: int = 10_000_000) -> List[Hom]:
    """All homs ring -> Z8 by backtracking over generator images.

    Generator images are tried in the ring's generator order (for D: ebars,
    abar0, bbar, then D2), values ascending, so the list comes out sorted
    lexicographically by image tuple.
    """
    n = len(ring.generators)
    constraints = _triangular_constraints(ring)
    images = [0] * n
    out: List[Hom] = []
    nodes = 0

    def ok(level: int) -> bool:
        for terms in constraints.get(level, ()):
            s = 0
            for c, word in terms:
                v = c
                for g in word:
                    v *= images[g]
                s += v
            if s % 8:
                return False
        return True

    def dfs(k: int) -> None:
        nonlocal nodes
        if k == n:
            out.append(Hom(ring, tuple(images)))
            return
        for v in EVEN:
            nodes += 1
            if nodes > budget:
                raise HomBudgetExceeded(f"more than {budget} search nodes")
            images[k] = v
            if ok(k):
                dfs(k + 1)
        images[k] = 0

    dfs(0)
    return out


def polycyclic_basis(ring: GeneratedRing):
    """Additive basis of a materialised ring found by direct enumeration.

    Returns ``(basis_keys, rel_orders, power_coords, coords)`` where every
    element has unique coordinates ``e_i < rel_orders[i]`` and
    ``rel_orders[i] * basis[i]`` has coordinates ``power_coords[i]``.
    """
    if ring.elements is None:
        raise ValueError("ring was not materialised")
    w = ring.window
    add = packed_adder(len(w))
    zero = FiniteVector.zero(w).key
    coords: Dict[int, Tuple[int, ...]] = {zero: ()}
    basis, orders, powers = [], [], []
    candidates = []
    for v in ring.word_values:
        if not v.is_zero() and v.key not in candidates:
            candidates.append(v.key)
    for m in candidates:
        if m in coords:
            continue
        i = len(basis)
        multiples = [zero, m]
        while multiples[-1] not in coords:
            multiples.append(add(multiples[-1], m))
        k = len(multiples) - 1
        basis.append(m)
        orders.append(k)
        powers.append(coords[multiples[-1]] + (0,) * (i - len(coords[multiples[-1]])))
        new = {}
        for key, c in coords.items():
            c = c + (0,) * (i - len(c))
            for t in range(k):
                new[add(key, multiples[t])] = c + (t,)
        coords = new
    n = len(basis)
    coords = {key: c + (0,) * (n - len(c)) for key, c in coords.items()}
    if len(coords) != len(ring.elements):
        raise AssertionError("polycyclic basis does not exhaust the ring")
    return basis, orders, powers, coords


def enumerate_homs_additive(ring: GeneratedRing) -> List[Hom]:
    """All homs ring -> Z8 via additive maps on an enumerated basis."""
    basis, orders, powers, coords = polycyclic_basis(ring)
    n = len(basis)
    w = ring.window
    vecs = [FiniteVector.from_key(w, k) for k in basis]
    # multiplicativity constraints on basis pairs, checked when the last index is set
    pair_checks: Dict[int, list] = {}
    for i in range(n):
        for j in range(i, n):
            c = coords[(vecs[i] * vecs[j]).key]
            last = max([j] + [t for t in range(n) if c[t]])
            pair_checks.setdefault(last, []).append((i, j, c))
    values = [0] * n
    found = []

    def dfs(i: int) -> None:
        if i == n:
            found.append(tuple(values))
            return
        for v in EVEN:
            # orders[i] * v must equal the value on orders[i] * basis[i]
            rhs = sum(p * values[t] for t, p in enumerate(powers[i]) if t < i)
            if (orders[i] * v - rhs) % 8:
                continue
            values[i] = v
            good = True
            for a, b, c in pair_checks.get(i, ()):
                if (values[a] * values[b] - sum(ct * values[t] for t, ct in enumerate(c))) % 8:
                    good = False
                    break
            if good:
                dfs(i + 1)
        values[i] = 0

    dfs(0)
    gen_coords = [coords[g.key] for g in ring.generators]
    homs = []
    for vals in found:
        imgs = tuple(sum(c * v for c, v in zip(gc, vals)) % 8 for gc in gen_coords)
        homs.append(Hom(ring, imgs))
    homs.sort(key=lambda h: h.images)
    return homs


@dataclass(frozen=True)
class Classification:
    kind: str  # "zeroring" or "critical"
    lead: Optional[int] = None  # smallest ebar index with image 2 or 6
    critical: Optional[int] = None  # lead + 1

    def to_json(self) -> dict:
        return {"kind": self.kind, "lead": self.lead, "critical": self.critical}


def ebar_images(f: Hom) -> Dict[int, int]:
    out = {}
    for name, v in zip(f.ring.names, f.images):
        if name.startswith("ebar["):
            out[int(name[5:-1])] = v
    return out


def finite_support_image(f: Hom) -> set:
    """Additive span in Z8 of f on the finitely supported words."""
    ring = f.ring
    fin = [k for k, word in enumerate(ring.words)
           if any(not ring.names[g].startswith(("abar", "bbar")) for g in word)]
    span = {0}
    for k in fin:
        x = int(f.word_images[k])
        span |= {(s + t * x) % 8 for s in span for t in range(4)}
    return span


def classify(f: Hom) -> Classification:
    img = finite_support_image(f)
    zeroring = all((x * y) % 8 == 0 for x in img for y in img)
    units = sorted(i for i, v in ebar_images(f).items() if v in UNITS_OF_2Z8)
    if zeroring:
        if units:
            raise AssertionError(f"zeroring image but ebar units at {units}")
        return Classification("zeroring")
    if not units:
        raise AssertionError("non-zeroring image without an ebar unit")
    return Classification("critical", units[0], units[0] + 1)


def punctured_value(f: Hom, m: int) -> int:
    return f(FiniteVector.of(punctured_ghost(m), f.ring.window))


def probe_indices(ring: GeneratedRing, margin: int = 0) -> range:
    """Puncture positions worth probing: the window plus one index on each side.

    Any puncture outside the window restricts to the plain ghost, so the two
    outside probes stand for every far index.
    """
    w = ring.window
    return range(w.lo - 1 + margin, w.hi + 2 - margin)


def projection_hom(ring: GeneratedRing, flat_coordinate: int) -> Hom:
    """x -> flatten(x)[flat_coordinate], flat coordinates counted from the window start."""
    w = ring.window
    if not 0 <= flat_coordinate < 3 * len(w):
        raise IndexError(f"flat coordinate {flat_coordinate} outside window {w}")
    block, part = divmod(flat_coordinate, 3)
    images = tuple(rc.TRIPLES[g.values[block]][part] for g in ring.generators)
    label = f"pi[{w.lo + block}].{part}"
    f = Hom(ring, images, label)
    if not is_hom(ring, images):
        raise AssertionError(f"{label} is not a homomorphism")
    return f


def middle_projection(ring: GeneratedRing, index: int) -> Hom:
    return projection_hom(ring, 3 * (index - ring.window.lo) + 1)


def verify_classification(ring: GeneratedRing, homs: Sequence[Hom], margin: int = 0) -> dict:
    """Check the homomorphism classification on every hom in ``homs``."""
    probes = list(probe_indices(ring, margin))
    counts = {"zeroring": 0, "critical": 0}
    rows = []
    for f in homs:
        where = f"hom with generator images {f.to_json()['images']}"
        if any(v not in EVEN for v in f.word_images.tolist()):
            raise AssertionError(f"image outside 2Z8: {where}")
        cls = classify(f)
        counts[cls.kind] += 1
        if cls.kind == "critical":
            for j, v in ebar_images(f).items():
                if abs(j - cls.lead) > 3 and v not in (0, 4):
                    raise AssertionError(f"ebar[{j}] -> {v} far from lead {cls.lead}: {where}")
        values = {m: punctured_value(f, m) for m in probes}
        allowed = {m for m in probes if cls.kind == "critical" and m == cls.critical}
        rest = {values[m] for m in probes if m not in allowed}
        if len(rest) > 1:
            raise AssertionError(f"punctured images {values} differ away from {cls}: {where}")
        rows.append({"images": list(f.images), "class": cls.to_json(), "punctured": values})
    return {
        "passed": True,
        "window": [ring.window.lo, ring.window.hi],
        "hom_count": len(homs),
        "class_counts": counts,
        "probes": probes,
        "rows": rows,
    }
