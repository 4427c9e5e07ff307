"""Subrings of R^W generated by finitely many vectors, with witnesses.

A subring of a commutative ring is the additive span of all monomials in
its generators.  In R every product of three elements vanishes, so the
monomial list is finite and short; it is computed generically anyway (by
degree, until a whole degree vanishes).

Two closure routes share the monomial list:

* ``close`` materialises every element by a breadth-first additive closure
  and records, per element, the monomial that first reached it;
* the Z/4 echelon of the monomials decides membership without enumerating
  anything, which is what makes wide windows tractable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import ring_core as rc
from .ecvector import ECVector, Window, ebar_indices_meeting, gen_abar, gen_bbar, gen_ebar
from .zmod4 import Z4Echelon

BITS = 5
BLOCK_MASK = (1 << BITS) - 1
# high bit of each field (alpha: bit 1, beta: bit 3, gamma: bit 4)
_HIGH = 0b11010
DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, size: int, frontier: int, budget: int):
        super().__init__(f"closure exceeded budget {budget}: {size} elements, frontier {frontier}")
        self.size = size
        self.frontier = frontier
        self.budget = budget


@dataclass(frozen=True)
class FiniteVector:
    window: Window
    values: Tuple[int, ...]  # codes, one per coordinate of the window

    def __post_init__(self):
        if len(self.values) != len(self.window):
            raise ValueError("length does not match window")

    @classmethod
    def of(cls, x: ECVector, w: Window) -> "FiniteVector":
        return cls(w, x.restrict(w))

    @classmethod
    def zero(cls, w: Window) -> "FiniteVector":
        return cls(w, (rc.ZERO_CODE,) * len(w))

    @classmethod
    def from_key(cls, w: Window, key: int) -> "FiniteVector":
        return cls(w, tuple((key >> (BITS * j)) & BLOCK_MASK for j in range(len(w))))

    @property
    def key(self) -> int:
        k = 0
        for j, c in enumerate(self.values):
            k |= c << (BITS * j)
        return k

    def at(self, i: int) -> rc.RElem:
        return rc.RElem(self.values[i - self.window.lo])

    def __add__(self, other):
        return FiniteVector(self.window, tuple(rc.ADD[x][y] for x, y in zip(self.values, other.values)))

    def __mul__(self, other):
        return FiniteVector(self.window, tuple(rc.MUL[x][y] for x, y in zip(self.values, other.values)))

    def __neg__(self):
        return FiniteVector(self.window, tuple(rc.NEG[x] for x in self.values))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n: int):
        return FiniteVector(self.window, tuple(rc.scale_code(n, x) for x in self.values))

    def is_zero(self) -> bool:
        return all(c == rc.ZERO_CODE for c in self.values)

    def z4(self) -> List[int]:
        """Injective additive image in Z4^(3|W|): (alpha, beta, 2*gamma) per block."""
        out = []
        for c in self.values:
            alpha, beta, gamma = rc.decode(c)
            out.extend((alpha, beta, 2 * gamma))
        return out

    def coords(self) -> List[List[int]]:
        return [list(rc.decode(c)) for c in self.values]

    def __repr__(self):
        return f"FiniteVector({self.window}, {[rc.TRIPLES[c] for c in self.values]})"


def _packed_mask(n: int, pattern: int) -> int:
    m = 0
    for j in range(n):
        m |= pattern << (BITS * j)
    return m


def packed_adder(n: int):
    """Coordinatewise addition on packed keys of ``n`` coordinates."""
    high = _packed_mask(n, _HIGH)
    low = ~high & _packed_mask(n, BLOCK_MASK)

    def add(x: int, y: int) -> int:
        return ((x & low) + (y & low)) ^ ((x ^ y) & high)

    return add


# A witness expression is a tuple of terms (coefficient, word); a word is a
# tuple of generator names whose product is taken.
Term = Tuple[int, Tuple[str, ...]]


def evaluate_expression(terms: Sequence[Term], generators: Dict[str, FiniteVector], w: Window) -> FiniteVector:
    total = FiniteVector.zero(w)
    for coef, word in terms:
        v = generators[word[0]]
        for name in word[1:]:
            v = v * generators[name]
        total = total + v.scale(coef)
    return total


@dataclass
class GeneratedRing:
    window: Window
    names: List[str]
    generators: List[FiniteVector]
    words: List[Tuple[int, ...]]  # generator index tuples, nondecreasing
    word_values: List[FiniteVector]
    vanishing_degree: int
    echelon: Z4Echelon
    elements: Optional[Dict[int, Tuple[int, int]]] = None  # key -> (parent key, word index)
    order_found: Optional[List[int]] = field(default=None, repr=False)
    _express_cache: Dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def generator_map(self) -> Dict[str, FiniteVector]:
        return dict(zip(self.names, self.generators))

    @property
    def size(self) -> int:
        return self.echelon.order()

    def word_names(self, k: int) -> Tuple[str, ...]:
        return tuple(self.names[g] for g in self.words[k])

    def terms_from_combo(self, combo) -> List[Term]:
        return [(int(c), self.word_names(k)) for k, c in enumerate(combo) if c % 4]

    def provenance(self, key: int) -> List[Term]:
        """Witness expression for a materialised element."""
        counts = np.zeros(len(self.words), dtype=np.int64)
        zero = FiniteVector.zero(self.window).key
        while key != zero:
            key, k = self.elements[key]
            counts[k] += 1
        return self.terms_from_combo(counts % 4)

    def element_vectors(self):
        if self.elements is None:
            raise ValueError("ring was not materialised; use close()")
        return [FiniteVector.from_key(self.window, k) for k in self.order_found]

    def contains(self, target: FiniteVector):
        """Return ``(True, expression)`` or ``(False, None)``."""
        if target.window != self.window:
            raise ValueError("target lives on a different window")
        if self.elements is not None:
            key = target.key
            if key not in self.elements:
                return False, None
            return True, self.provenance(key)
        combo = self.echelon.solve(target.z4())
        if combo is None:
            return False, None
        return True, self.terms_from_combo(combo)

    def express(self, target: FiniteVector):
        """Combination of monomial words equal to ``target`` (Z4 coefficients)."""
        key = target.key
        combo = self._express_cache.get(key)
        if combo is None:
            combo = self.echelon.solve(target.z4())
            if combo is None:
                raise ValueError(f"{target} is not in the ring")
            self._express_cache[key] = combo
        return combo

    def certificate(self, target: FiniteVector, terms: Sequence[Term], family: str = "") -> dict:
        used = sorted({n for _, word in terms for n in word}, key=self.names.index)
        gmap = self.generator_map
        return {
            "schema": "z8dual.certificate/1",
            "family": family,
            "window": [self.window.lo, self.window.hi],
            "target": target.coords(),
            "expression": [[c, list(word)] for c, word in terms],
            "generators": {n: gmap[n].coords() for n in used},
        }


def monomials(generators: Sequence[FiniteVector], max_degree: int = 16):
    """All nondecreasing generator words of each degree until a degree vanishes."""
    words: List[Tuple[int, ...]] = []
    values: List[FiniteVector] = []
    layer = [((g,), v) for g, v in enumerate(generators)]
    degree = 1
    while layer and any(not v.is_zero() for _, v in layer):
        for word, v in layer:
            words.append(word)
            values.append(v)
        if degree == max_degree:
            raise RuntimeError("generators are not nilpotent within max_degree")
        nxt = []
        for word, v in layer:
            for g in range(word[-1], len(generators)):
                nxt.append((word + (g,), v * generators[g]))
        layer = nxt
        degree += 1
    return words, values, degree


def _span_ring(named: Sequence[Tuple[str, FiniteVector]], w: Window) -> GeneratedRing:
    names = [n for n, _ in named]
    gens = [v for _, v in named]
    for v in gens:
        if v.window != w:
            raise ValueError("all generators must share one window")
    words, values, vdeg = monomials(gens)
    ech = Z4Echelon(3 * len(w), len(words))
    for v in values:
        ech.add(v.z4())
    return GeneratedRing(w, names, gens, words, values, vdeg, ech)


def span_close(named: Sequence[Tuple[str, FiniteVector]], w: Window) -> GeneratedRing:
    """Generated subring described by an additive echelon basis (no enumeration)."""
    return _span_ring(named, w)


def close(named: Sequence[Tuple[str, FiniteVector]], w: Window, budget: int = DEFAULT_BUDGET) -> GeneratedRing:
    """Generated subring with every element enumerated and given a provenance.

    Products first (the monomial words, in generator order), then a FIFO
    additive closure that tries the distinct nonzero monomials in word order.
    """
    ring = _span_ring(named, w)
    add = packed_adder(len(w))
    steps = []
    seen_values = set()
    for k, v in enumerate(ring.word_values):
        key = v.key
        if v.is_zero() or key in seen_values:
            continue
        seen_values.add(key)
        steps.append((k, key))
    zero = FiniteVector.zero(w).key
    elements = {zero: (zero, -1)}
    order = [zero]
    queue = deque([zero])
    while queue:
        x = queue.popleft()
        for k, m in steps:
            y = add(x, m)
            if y not in elements:
                elements[y] = (x, k)
                order.append(y)
                queue.append(y)
                if len(elements) > budget:
                    raise BudgetExceeded(len(elements), len(queue), budget)
    ring.elements = elements
    ring.order_found = order
    return ring


def d2_generators(w: Window) -> List[Tuple[str, FiniteVector]]:
    out = []
    for j in w:
        for label, code in (("a2", rc.A2_CODE), ("b2", rc.B2_CODE)):
            vals = [rc.ZERO_CODE] * len(w)
            vals[j - w.lo] = code
            out.append((f"{label}[{j}]", FiniteVector(w, tuple(vals))))
    return out


def d_generators(w: Window) -> List[Tuple[str, FiniteVector]]:
    """Restricted generators of D: ebars meeting w, abar_0, bbar, then D2."""
    gens = [(f"ebar[{i}]", FiniteVector.of(gen_ebar(i), w)) for i in ebar_indices_meeting(w)]
    gens.append(("abar0", FiniteVector.of(gen_abar(0), w)))
    gens.append(("bbar", FiniteVector.of(gen_bbar(), w)))
    gens.extend(d2_generators(w))
    return gens


def build_D(w: Window, materialize: bool = True, budget: int = DEFAULT_BUDGET) -> GeneratedRing:
    """Subring of R^W generated by the restrictions of the generators of D.

    Restriction is a ring homomorphism, so this equals the coordinate
    projection of D onto ``w``.
    """
    gens = d_generators(w)
    return close(gens, w, budget) if materialize else span_close(gens, w)
