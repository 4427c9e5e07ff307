"""Eventually-constant Z-indexed vectors over R.

A vector is an eventual value together with a finite map of exceptional
coordinates.  Coordinatewise ring operations only need to look at the union
of the exception supports: everywhere else the result is the operation
applied to the eventual values.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

from . import ring_core as rc
from .ring_core import RElem


@dataclass(frozen=True)
class Window:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __contains__(self, i) -> bool:
        return self.lo <= i <= self.hi

    @classmethod
    def parse(cls, text: str) -> "Window":
        """Parse ``"A:B"`` (negative bounds allowed, e.g. ``"-2:2"``)."""
        lo, sep, hi = text.rpartition(":")
        if not sep:
            raise ValueError(f"window must look like A:B, got {text!r}")
        return cls(int(lo), int(hi))

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class ECVector:
    """Canonical form: no exception equals the eventual value; exceptions sorted."""

    eventual: int = rc.ZERO_CODE
    exceptions: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def make(cls, eventual, exceptions: Dict[int, object] | Iterable = ()) -> "ECVector":
        ev = _code(eventual)
        items = exceptions.items() if isinstance(exceptions, dict) else exceptions
        exc = tuple(sorted((int(i), _code(v)) for i, v in items if _code(v) != ev))
        return cls(ev, exc)

    def at(self, i: int) -> RElem:
        return RElem(self.code_at(i))

    def code_at(self, i: int) -> int:
        for j, c in self.exceptions:
            if j == i:
                return c
        return self.eventual

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(j for j, _ in self.exceptions)

    def is_finite(self) -> bool:
        return self.eventual == rc.ZERO_CODE

    def _combine(self, other: "ECVector", table) -> "ECVector":
        mine, theirs = dict(self.exceptions), dict(other.exceptions)
        ev = table[self.eventual][other.eventual]
        exc = {}
        for j in mine.keys() | theirs.keys():
            c = table[mine.get(j, self.eventual)][theirs.get(j, other.eventual)]
            if c != ev:
                exc[j] = c
        return ECVector(ev, tuple(sorted(exc.items())))

    def __add__(self, other: "ECVector") -> "ECVector":
        return self._combine(other, rc.ADD)

    def __mul__(self, other: "ECVector") -> "ECVector":
        return self._combine(other, rc.MUL)

    def __neg__(self) -> "ECVector":
        return ECVector(rc.NEG[self.eventual], tuple((j, rc.NEG[c]) for j, c in self.exceptions))

    def __sub__(self, other: "ECVector") -> "ECVector":
        return self + (-other)

    def scale(self, n: int) -> "ECVector":
        return ECVector.make(
            rc.scale_code(n, self.eventual),
            [(j, rc.scale_code(n, c)) for j, c in self.exceptions],
        )

    def __bool__(self) -> bool:
        return self.eventual != rc.ZERO_CODE or bool(self.exceptions)

    def restrict(self, w: Window) -> Tuple[int, ...]:
        """Codes of the coordinates in ``w``."""
        return tuple(self.code_at(i) for i in w)

    def to_json(self) -> dict:
        return {
            "eventual": list(rc.decode(self.eventual)),
            "exceptions": [[j, list(rc.decode(c))] for j, c in self.exceptions],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ECVector":
        return cls.make(
            rc.encode(*data["eventual"]),
            [(j, rc.encode(*coords)) for j, coords in data["exceptions"]],
        )

    def __repr__(self) -> str:
        exc = ", ".join(f"{j}: {rc.TRIPLES[c]}" for j, c in self.exceptions)
        return f"ECVector(eventual={rc.TRIPLES[self.eventual]}, {{{exc}}})"


def _code(v) -> int:
    return v.code if isinstance(v, RElem) else int(v)


ZERO_VECTOR = ECVector()


def ec_add(x: ECVector, y: ECVector) -> ECVector:
    return x + y


def ec_mul(x: ECVector, y: ECVector) -> ECVector:
    return x * y


def ec_neg(x: ECVector) -> ECVector:
    return -x


def ec_scale(n: int, x: ECVector) -> ECVector:
    return x.scale(n)


def constant(value) -> ECVector:
    return ECVector.make(value)


def unit_at(i: int, value) -> ECVector:
    """``value`` at coordinate ``i``, zero elsewhere."""
    return ECVector.make(rc.ZERO_CODE, {i: value})


def gen_bbar() -> ECVector:
    return constant(rc.B)


def gen_abar(i: int) -> ECVector:
    return ECVector.make(rc.A, {i: rc.B, i - 1: rc.ZERO, i + 1: rc.ZERO})


def gen_ebar(i: int) -> ECVector:
    # support [i-2, i+1]
    return ECVector.make(rc.ZERO, {i - 2: rc.A, i - 1: -rc.B, i: rc.B, i + 1: -rc.A})


def ghost() -> ECVector:
    return constant(rc.AB)


def punctured_ghost(i: int) -> ECVector:
    return ECVector.make(rc.AB, {i: rc.ZERO})


def flatten(x: ECVector, w: Window) -> Tuple[int, ...]:
    """Three Z8 entries per coordinate of ``w``, in block order."""
    out = []
    for c in x.restrict(w):
        out.extend(rc.TRIPLES[c])
    return tuple(out)


def restrict(x: ECVector, w: Window) -> Tuple[RElem, ...]:
    return tuple(RElem(c) for c in x.restrict(w))


def gen_unital_variant():
    """The two 4-coordinate generators used for the ring-with-1 variant.

    Returns ``(a', b')`` after checking 2x = x^2 and 4x = 0 on each.
    """
    a = (2, 2, 0, 0)
    b = (0, 2, 2, 0)
    for v in (a, b):
        if rc.triple_mul(v, v) != rc.triple_scale(2, v) or any(rc.triple_scale(4, v)):
            raise AssertionError(f"{v} violates 2x = x^2 or 4x = 0")
    return a, b


def ebar_indices_meeting(w: Window) -> range:
    """Indices i whose ebar support [i-2, i+1] meets ``w``."""
    return range(w.lo - 1, w.hi + 3)


class StructureFailure(AssertionError):
    pass


def verify_structure(lo: int = -10, hi: int = 10) -> dict:
    """Exact checks of the generator identities used by the argument."""
    rng = range(lo, hi + 1)
    for i in rng:
        if gen_ebar(i) != gen_abar(i) - gen_abar(i - 1):
            raise StructureFailure(f"ebar[{i}] != abar[{i}] - abar[{i - 1}]")
    far = 0
    for i in rng:
        for j in rng:
            if abs(i - j) > 3:
                if gen_ebar(i) * gen_ebar(j):
                    raise StructureFailure(f"ebar[{i}] * ebar[{j}] is nonzero")
                far += 1
    for i in rng:
        want = ECVector.make(rc.ZERO, {i: rc.AB, i + 1: rc.AB})
        if gen_ebar(i) * gen_ebar(i + 2) != want:
            raise StructureFailure(f"ebar[{i}] * ebar[{i + 2}] is not ab at {i}, {i + 1}")
    for g in (rc.A2, rc.B2):
        for x in rc.ELEMENTS:
            if g * x:
                raise StructureFailure(f"{g} * {x} is nonzero")
    net = gen_ebar(2) * (gen_ebar(2) + gen_ebar(-1) + gen_ebar(5) + gen_bbar())
    if net != ECVector.make(rc.ZERO, {0: rc.AB, 3: rc.AB}):
        raise StructureFailure(f"net identity gives {net}")
    for x, y in ((gen_abar(0), gen_bbar()), (gen_ebar(1), gen_abar(3)), (ghost(), punctured_ghost(2))):
        if (x + y).eventual != rc.ADD[x.eventual][y.eventual] or (x * y).eventual != rc.MUL[x.eventual][y.eventual]:
            raise StructureFailure("eventual value is not a homomorphism")
    return {"passed": True, "range": [lo, hi], "ebar_difference": len(rng), "far_products_zero": far,
            "adjacent_products": len(rng), "d2_annihilation": 2 * rc.SIZE, "net_identity": True}
