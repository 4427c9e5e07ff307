"""Stand-alone re-checking of membership certificates.

Deliberately shares no code with the closure engine: coordinates are turned
into Z8 triples with the explicit formula, generators of D are rebuilt from
their piecewise definitions, and the expression is evaluated with plain
integer arithmetic mod 8.
"""
from __future__ import annotations

import json
import re

A = (0, 2, 2)
B = (2, 2, 0)


def _triple(coords):
    alpha, beta, gamma = coords
    return ((2 * beta) % 8, (2 * alpha + 2 * beta + 4 * gamma) % 8, (2 * alpha) % 8)


def _add(x, y):
    return tuple((u + v) % 8 for u, v in zip(x, y))


def _mul(x, y):
    return tuple((u * v) % 8 for u, v in zip(x, y))


def _neg(x):
    return tuple(-u % 8 for u in x)


ZERO = (0, 0, 0)


def d_generator_value(name: str, j: int):
    """Value at coordinate j of a named generator of D (raises on unknown names)."""
    if name == "bbar":
        return B
    if name == "abar0":
        return B if j == 0 else ZERO if abs(j) == 1 else A
    m = re.fullmatch(r"(ebar|a2|b2)\[(-?\d+)\]", name)
    if not m:
        raise ValueError(f"unknown generator {name!r}")
    kind, i = m.group(1), int(m.group(2))
    if kind == "ebar":
        return {i - 2: A, i - 1: _neg(B), i: B, i + 1: _neg(A)}.get(j, ZERO)
    square = _mul(A, A) if kind == "a2" else _mul(B, B)
    return square if j == i else ZERO


def check_certificate(cert: dict) -> tuple[bool, str]:
    """Return ``(ok, reason)``."""
    lo, hi = cert["window"]
    n = hi - lo + 1
    gens = {name: [_triple(c) for c in coords] for name, coords in cert["generators"].items()}
    for name, vec in gens.items():
        if len(vec) != n:
            return False, f"generator {name} has wrong length"
        if cert.get("family") == "D":
            for k, j in enumerate(range(lo, hi + 1)):
                if vec[k] != d_generator_value(name, j):
                    return False, f"generator {name} differs from its definition at {j}"
    total = [ZERO] * n
    for coef, word in cert["expression"]:
        if not word or any(g not in gens for g in word):
            return False, f"term {word} uses an undeclared generator"
        prod = gens[word[0]]
        for g in word[1:]:
            prod = [_mul(x, y) for x, y in zip(prod, gens[g])]
        for _ in range(coef % 8):
            total = [_add(x, y) for x, y in zip(total, prod)]
    target = [_triple(c) for c in cert["target"]]
    if total != target:
        return False, f"expression evaluates to {total}, target is {target}"
    return True, "ok"


def check_any(cert) -> tuple[bool, str]:
    """Membership certificates, lists of them, or quadratic-set certificates."""
    if isinstance(cert, list):
        for k, c in enumerate(cert):
            ok, why = check_any(c)
            if not ok:
                return False, f"certificate {k}: {why}"
        return True, f"ok ({len(cert)} certificates)"
    if cert.get("schema") == "z8dual.sindi/1":
        from .quad_f2 import check_q3_certificate
        return (True, "ok") if check_q3_certificate(cert) else (False, "a flat's quadratic disagrees with the set")
    return check_certificate(cert)


def check_file(path: str) -> tuple[bool, str]:
    with open(path) as fh:
        return check_any(json.load(fh))
