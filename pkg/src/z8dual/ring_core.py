"""Arithmetic in Z8 and in the 32-element subring R of Z8^3 generated by
a = (0, 2, 2) and b = (2, 2, 0).

Every element of R is written uniquely as alpha*a + beta*b + gamma*ab with
alpha, beta in Z4 and gamma in Z2.  Internally an element is a 5-bit *code*
``alpha | beta << 2 | gamma << 4``; the Z8 triple stays authoritative and all
operation tables are derived from triple arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

MOD = 8


def z8_add(x: int, y: int) -> int:
    return (x + y) % MOD


def z8_mul(x: int, y: int) -> int:
    return (x * y) % MOD


def z8_neg(x: int) -> int:
    return -x % MOD


Z8_ADD = tuple(tuple(z8_add(x, y) for y in range(MOD)) for x in range(MOD))
Z8_MUL = tuple(tuple(z8_mul(x, y) for y in range(MOD)) for x in range(MOD))

A_TRIPLE = (0, 2, 2)
B_TRIPLE = (2, 2, 0)


def triple_add(x, y):
    return tuple((u + v) % MOD for u, v in zip(x, y))


def triple_mul(x, y):
    return tuple((u * v) % MOD for u, v in zip(x, y))


def triple_scale(n, x):
    return tuple((n * u) % MOD for u in x)


AB_TRIPLE = triple_mul(A_TRIPLE, B_TRIPLE)


def _triple_of_coords(alpha: int, beta: int, gamma: int):
    t = triple_add(triple_scale(alpha, A_TRIPLE), triple_scale(beta, B_TRIPLE))
    return triple_add(t, triple_scale(gamma, AB_TRIPLE))


def encode(alpha: int, beta: int, gamma: int) -> int:
    return (alpha % 4) | (beta % 4) << 2 | (gamma % 2) << 4


def decode(code: int):
    return code & 3, (code >> 2) & 3, (code >> 4) & 1


SIZE = 32
TRIPLES = tuple(_triple_of_coords(*decode(c)) for c in range(SIZE))
CODE_OF_TRIPLE = {t: c for c, t in enumerate(TRIPLES)}
assert len(CODE_OF_TRIPLE) == SIZE, "coords -> triple must be injective"

ADD = tuple(
    tuple(CODE_OF_TRIPLE[triple_add(TRIPLES[x], TRIPLES[y])] for y in range(SIZE))
    for x in range(SIZE)
)
MUL = tuple(
    tuple(CODE_OF_TRIPLE[triple_mul(TRIPLES[x], TRIPLES[y])] for y in range(SIZE))
    for x in range(SIZE)
)
NEG = tuple(CODE_OF_TRIPLE[tuple(-u % MOD for u in TRIPLES[x])] for x in range(SIZE))

ZERO_CODE = encode(0, 0, 0)
A_CODE = encode(1, 0, 0)
B_CODE = encode(0, 1, 0)
AB_CODE = encode(0, 0, 1)
A2_CODE = MUL[A_CODE][A_CODE]
B2_CODE = MUL[B_CODE][B_CODE]


class NotInR(ValueError):
    """A Z8 triple that is not an element of R."""


@dataclass(frozen=True)
class RElem:
    """An element of R, stored by its canonical code."""

    code: int

    @classmethod
    def from_coords(cls, alpha: int, beta: int, gamma: int) -> "RElem":
        return cls(encode(alpha, beta, gamma))

    @classmethod
    def from_triple(cls, triple) -> "RElem":
        t = tuple(int(u) % MOD for u in triple)
        try:
            return cls(CODE_OF_TRIPLE[t])
        except KeyError:
            raise NotInR(f"{tuple(triple)} is not in R") from None

    @property
    def triple(self):
        return TRIPLES[self.code]

    @property
    def coords(self):
        return decode(self.code)

    def __add__(self, other: "RElem") -> "RElem":
        return RElem(ADD[self.code][other.code])

    def __sub__(self, other: "RElem") -> "RElem":
        return RElem(ADD[self.code][NEG[other.code]])

    def __mul__(self, other: "RElem") -> "RElem":
        return RElem(MUL[self.code][other.code])

    def __neg__(self) -> "RElem":
        return RElem(NEG[self.code])

    def scale(self, n: int) -> "RElem":
        return RElem(scale_code(n, self.code))

    def __bool__(self) -> bool:
        return self.code != ZERO_CODE

    def __repr__(self) -> str:
        return f"RElem{self.triple}"


def scale_code(n: int, code: int) -> int:
    alpha, beta, gamma = decode(code)
    return encode(n * alpha, n * beta, n * gamma)


def r_add(x: RElem, y: RElem) -> RElem:
    return x + y


def r_mul(x: RElem, y: RElem) -> RElem:
    return x * y


def r_neg(x: RElem) -> RElem:
    return -x


def r_from_coords(alpha: int, beta: int, gamma: int) -> RElem:
    return RElem.from_coords(alpha, beta, gamma)


def r_to_coords(x) -> tuple:
    """Coordinates of an RElem or of a raw Z8 triple (raises NotInR)."""
    if not isinstance(x, RElem):
        x = RElem.from_triple(x)
    return x.coords


ZERO = RElem(ZERO_CODE)
A = RElem(A_CODE)
B = RElem(B_CODE)
AB = RElem(AB_CODE)
A2 = RElem(A2_CODE)
B2 = RElem(B2_CODE)
ELEMENTS = tuple(RElem(c) for c in range(SIZE))

# 2Z8 and its annihilator inside Z8
TWO_Z8 = (0, 2, 4, 6)


def annihilator_in_z8(ideal=TWO_Z8):
    return tuple(x for x in range(MOD) if all(z8_mul(x, y) == 0 for y in ideal))


class IdentityFailure(AssertionError):
    pass


def verify_ring_identities() -> dict:
    """Exhaustively check the identities of R used throughout the argument.

    Raises IdentityFailure with the first counterexample; otherwise returns a
    report of the checks and case counts.
    """
    checks = {}

    def fail(name, witness):
        raise IdentityFailure(f"{name} fails at {witness}")

    # |R| = 32 by closing {a, b} under +, * on raw triples
    seen = {(0, 0, 0)}
    frontier = [A_TRIPLE, B_TRIPLE]
    while frontier:
        t = frontier.pop()
        if t in seen:
            continue
        seen.add(t)
        for u in list(seen):
            frontier.extend((triple_add(t, u), triple_mul(t, u)))
    if len(seen) != SIZE or set(seen) != set(TRIPLES):
        fail("|R| = 32", len(seen))
    checks["order_is_32"] = len(seen)

    for x in ELEMENTS:
        if x * x != x.scale(2):
            fail("x^2 = 2x", x)
        if x.scale(4):
            fail("4x = 0", x)
    checks["square_is_double"] = SIZE
    checks["four_x_zero"] = SIZE

    for x, y in product(ELEMENTS, repeat=2):
        if x * y != y * x:
            fail("xy = yx", (x, y))
    checks["commutative"] = SIZE**2

    for x, y, z in product(ELEMENTS, repeat=3):
        if x * y * z:
            fail("xyz = 0", (x, y, z))
    checks["cube_zero"] = SIZE**3

    ann = annihilator_in_z8()
    if ann != (0, 4):
        fail("Ann(2Z8) = {0,4}", ann)
    checks["annihilator_of_2Z8"] = list(ann)

    return {"passed": True, "checks": checks}
