"""Quadratic equations over F2^n: solution sets, the local (3-flat) version of
being a solution set, and a counterexample search.

Points of F2^n are ints (bit i = x_i).  A point set is a 2^n-bit mask.  A
quadratic is a coefficient bit vector over the monomials, ordered as: the
constant, x_0..x_{n-1}, then x_i x_j for i < j lexicographically.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np


def n_monomials(n: int) -> int:
    return 1 + n + n * (n - 1) // 2


@lru_cache(maxsize=None)
def _pairs(n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=None)
def monomial_row(n: int, v: int) -> int:
    """Bit k set iff monomial k evaluates to 1 at point v."""
    row = 1
    for i in range(n):
        if v >> i & 1:
            row |= 1 << (1 + i)
    for k, (i, j) in enumerate(_pairs(n)):
        if v >> i & 1 and v >> j & 1:
            row |= 1 << (1 + n + k)
    return row


@dataclass(frozen=True)
class QuadPoly:
    n: int
    coeffs: int

    def __post_init__(self):
        if self.coeffs >> n_monomials(self.n):
            raise ValueError("coefficient vector longer than the monomial basis")

    def eval(self, v: int) -> int:
        return bin(self.coeffs & monomial_row(self.n, v)).count("1") & 1

    def bits(self) -> List[int]:
        return [self.coeffs >> k & 1 for k in range(n_monomials(self.n))]

    def __str__(self) -> str:
        names = ["1"] + [f"x{i}" for i in range(self.n)] + [f"x{i}x{j}" for i, j in _pairs(self.n)]
        terms = [nm for k, nm in enumerate(names) if self.coeffs >> k & 1]
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class PointSet:
    n: int
    mask: int

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    @classmethod
    def full(cls, n: int) -> "PointSet":
        return cls(n, (1 << (1 << n)) - 1)

    @classmethod
    def of(cls, n: int, points) -> "PointSet":
        m = 0
        for p in points:
            m |= 1 << p
        return cls(n, m)

    def hex(self) -> str:
        return f"{self.mask:0{max(1, (1 << self.n) // 4)}x}"


def eval_poly(q: QuadPoly, v: int) -> int:
    return q.eval(v)


def solution_set(q: QuadPoly) -> PointSet:
    m = 0
    for v in range(1 << q.n):
        if not q.eval(v):
            m |= 1 << v
    return PointSet(q.n, m)


def solve_gf2(rows: List[int], ncols: int) -> Optional[int]:
    """Solve a GF(2) system given as packed rows (bit ``ncols`` = right-hand side).

    Returns one solution (free variables set to 0) or None if inconsistent.
    """
    pivots: List[Tuple[int, int]] = []  # (pivot column, row), fully reduced
    rhs_bit = 1 << ncols
    for r in rows:
        for col, pr in pivots:
            if r >> col & 1:
                r ^= pr
        low = r & (rhs_bit - 1)
        if not low:
            if r:
                return None
            continue
        col = (low & -low).bit_length() - 1
        pivots = [(c, pr ^ r if pr >> col & 1 else pr) for c, pr in pivots]
        pivots.append((col, r))
    x = 0
    for col, pr in pivots:
        if pr & rhs_bit:
            x |= 1 << col
    return x


def has_Q(S: PointSet) -> Optional[QuadPoly]:
    """A quadratic whose solution set is S, or None."""
    n = S.n
    m = n_monomials(n)
    rows = [monomial_row(n, v) | ((0 if v in S else 1) << m) for v in range(1 << n)]
    x = solve_gf2(rows, m)
    return None if x is None else QuadPoly(n, x)


@lru_cache(maxsize=None)
def q3_table() -> Tuple[Optional[int], ...]:
    """For each 8-bit subset of F2^3, the coefficients of its quadratic or None."""
    out = []
    for mask in range(256):
        q = has_Q(PointSet(3, mask))
        out.append(None if q is None else q.coeffs)
    return tuple(out)


@dataclass(frozen=True)
class AffineSubspace3:
    base: int
    dirs: Tuple[int, int, int]

    def point(self, v: int) -> int:
        p = self.base
        for k in range(3):
            if v >> k & 1:
                p ^= self.dirs[k]
        return p

    def points(self) -> Tuple[int, ...]:
        return tuple(self.point(v) for v in range(8))


def linear_3subspaces(n: int) -> Iterator[Tuple[Tuple[int, int, int], Tuple[int, int, int]]]:
    """Reduced echelon bases ``(rows, pivots)`` of all 3-dim subspaces of F2^n.

    Row k has its highest set bit at pivot p_k and no bits at other pivots.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    for piv in combinations(range(n), 3):
        free = [[c for c in range(p) if c not in piv] for p in piv]
        for fills in product(*(range(1 << len(f)) for f in free)):
            rows = []
            for p, f, fill in zip(piv, free, fills):
                r = 1 << p
                for t, c in enumerate(f):
                    if fill >> t & 1:
                        r |= 1 << c
                rows.append(r)
            yield tuple(rows), piv


def enumerate_affine_3subspaces(n: int) -> Iterator[AffineSubspace3]:
    """Every affine 3-flat exactly once: each linear 3-space with the minimal
    representative of each coset (the one vanishing on the pivot bits)."""
    for rows, piv in linear_3subspaces(n):
        pivmask = sum(1 << p for p in piv)
        for base in range(1 << n):
            if base & pivmask == 0:
                yield AffineSubspace3(base, rows)


@lru_cache(maxsize=None)
def flats(n: int) -> Tuple[AffineSubspace3, ...]:
    return tuple(enumerate_affine_3subspaces(n))


@lru_cache(maxsize=None)
def flat_points(n: int) -> np.ndarray:
    """Array (n_flats, 8) of the points of each flat, in parameter order."""
    return np.array([W.points() for W in flats(n)], dtype=np.int64)


def gaussian_binomial(n: int, k: int, q: int = 2) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def restrict_to_subspace(S: PointSet, W: AffineSubspace3) -> PointSet:
    m = 0
    for v in range(8):
        if W.point(v) in S:
            m |= 1 << v
    return PointSet(3, m)


def has_Q3(S: PointSet):
    """``(True, None)`` or ``(False, first failing flat)``."""
    table = q3_table()
    for W in flats(S.n):
        if table[restrict_to_subspace(S, W).mask] is None:
            return False, W
    return True, None


def failing_flats(S: PointSet) -> int:
    table = q3_table()
    return sum(table[restrict_to_subspace(S, W).mask] is None for W in flats(S.n))


def q3_certificate(S: PointSet) -> dict:
    """Hex mask plus, per flat, the coefficients of a quadratic cutting out S there."""
    table = q3_table()
    per_flat = []
    for W in flats(S.n):
        c = table[restrict_to_subspace(S, W).mask]
        if c is None:
            raise ValueError(f"S fails on flat {W}")
        per_flat.append({"base": W.base, "dirs": list(W.dirs), "coeffs": QuadPoly(3, c).bits()})
    return {"schema": "z8dual.sindi/1", "n": S.n, "mask": S.hex(), "has_Q": has_Q(S) is not None,
            "flats": per_flat}


def check_q3_certificate(cert: dict) -> bool:
    """Re-evaluate every flat's quadratic directly on the flat's points."""
    n = cert["n"]
    mask = int(cert["mask"], 16)
    seen = set()
    for entry in cert["flats"]:
        W = AffineSubspace3(entry["base"], tuple(entry["dirs"]))
        pts = W.points()
        if len(set(pts)) != 8:
            return False
        seen.add(frozenset(pts))
        for v, p in enumerate(pts):
            x = [v >> k & 1 for k in range(3)]
            mon = [1] + x + [x[i] * x[j] for i, j in _pairs(3)]
            val = sum(c * t for c, t in zip(entry["coeffs"], mon)) % 2
            if (val == 0) != bool(mask >> p & 1):
                return False
    expected = gaussian_binomial(n, 3) * 2 ** (n - 3)
    return len(seen) == expected


# -- symmetry -----------------------------------------------------------------

def _gl(n: int) -> List[Tuple[int, ...]]:
    """Invertible n x n matrices over F2, as tuples of column images."""
    out = []

    def extend(cols, span):
        if len(cols) == n:
            out.append(tuple(cols))
            return
        for v in range(1, 1 << n):
            if v not in span:
                extend(cols + [v], span | {s ^ v for s in span})

    extend([], {0})
    return out


@lru_cache(maxsize=None)
def affine_group(n: int) -> np.ndarray:
    """Array (|AGL(n,2)|, 2^n): row g lists the image of every point."""
    pts = np.arange(1 << n)
    lin = []
    for cols in _gl(n):
        img = np.zeros(1 << n, dtype=np.int64)
        for i, c in enumerate(cols):
            img ^= ((pts >> i) & 1) * c
        lin.append(img)
    lin = np.array(lin)
    return np.concatenate([lin ^ t for t in range(1 << n)])


def orbit(mask: int, group: np.ndarray) -> np.ndarray:
    pts = [p for p in range(group.shape[1]) if mask >> p & 1]
    if not pts:
        return np.zeros(1, dtype=np.int64)
    return np.bitwise_or.reduce(np.left_shift(1, group[:, pts]), axis=1)


def transform(S: PointSet, perm) -> PointSet:
    return PointSet.of(S.n, (int(perm[p]) for p in range(1 << S.n) if p in S))


# -- search -------------------------------------------------------------------

@dataclass
class SindiResult:
    n: int
    mode: str
    status: str  # "found", "absent" or "budget_exhausted"
    counterexample: Optional[PointSet] = None
    certificate: Optional[dict] = None
    stats: dict = field(default_factory=dict)

    @property
    def definitive(self) -> bool:
        return self.status in ("found", "absent")

    def to_json(self) -> dict:
        return {"n": self.n, "mode": self.mode, "status": self.status, "definitive": self.definitive,
                "counterexample": None if self.counterexample is None else self.counterexample.hex(),
                "certificate": self.certificate, "stats": self.stats}


class BudgetExhausted(RuntimeError):
    pass


def _confirm(S: PointSet) -> bool:
    return has_Q3(S)[0] and has_Q(S) is None


def orbit_representatives(n: int) -> List[int]:
    """Smallest mask of each orbit of AGL(n, 2) on subsets of F2^n."""
    group = affine_group(n)
    total = 1 << (1 << n)
    visited = np.zeros(total, dtype=bool)
    reps = []
    for mask in range(total):
        if not visited[mask]:
            visited[orbit(mask, group)] = True
            reps.append(mask)
    return reps


def _scan(n: int, masks: Sequence[int]) -> Tuple[int, Optional[int]]:
    q3 = 0
    for mask in masks:
        S = PointSet(n, mask)
        if has_Q3(S)[0]:
            q3 += 1
            if has_Q(S) is None:
                return q3, mask
    return q3, None


def exhaustive_search(n: int, workers: int = 1) -> SindiResult:
    """Scan all subsets of F2^n, one representative per affine orbit.

    Representatives are split round-robin across ``workers`` processes; the
    verdict waits for every partition.
    """
    if n > 4:
        raise ValueError("exhaustive mode is limited to n <= 4")
    if n < 3:
        raise ValueError("need n >= 3")
    t0 = time.perf_counter()
    reps = orbit_representatives(n)
    parts = [reps[k::workers] for k in range(max(1, workers))]
    if len(parts) == 1:
        results = [_scan(n, parts[0])]
    else:
        with ProcessPoolExecutor(len(parts)) as pool:
            results = list(pool.map(_scan, [n] * len(parts), parts))
    hits = sorted(m for _, m in results if m is not None)
    stats = {"subsets": 1 << (1 << n), "orbit_representatives": len(reps),
             "q3_representatives": sum(q for q, _ in results),
             "group_order": int(affine_group(n).shape[0]), "workers": len(parts),
             "seconds": round(time.perf_counter() - t0, 3)}
    if hits:
        found = PointSet(n, hits[0])
        if not _confirm(found):
            raise AssertionError("counterexample failed re-verification")
        return SindiResult(n, "exhaustive", "found", found, q3_certificate(found), stats)
    return SindiResult(n, "exhaustive", "absent", stats=stats)


def full_scan_q3(n: int) -> np.ndarray:
    """Boolean array over all masks: does the set satisfy the 3-flat property?
    Unpruned and vectorised; independent of the orbit machinery."""
    total = 1 << (1 << n)
    masks = np.arange(total, dtype=np.int64)
    ok = np.ones(total, dtype=bool)
    good = np.array([c is not None for c in q3_table()])
    for pts in flat_points(n):
        code = np.zeros(total, dtype=np.int64)
        for t, p in enumerate(pts):
            code |= ((masks >> int(p)) & 1) << t
        ok &= good[code]
    return ok


@dataclass
class ClimbState:
    n: int
    seed: int
    mask: int
    evaluations: int = 0
    restarts: int = 0
    best_score: Optional[int] = None
    q_sets_reached: int = 0
    stale: int = 0
    rng_state: Optional[list] = None

    def save(self, path: str) -> None:
        data = dict(self.__dict__)
        with open(path, "w") as fh:
            json.dump(data, fh)

    @classmethod
    def load(cls, path: str) -> "ClimbState":
        with open(path) as fh:
            return cls(**json.load(fh))


def _rng_from_state(state: ClimbState, stream: str) -> random.Random:
    rng = random.Random(f"{state.seed}/sindi/{stream}")
    if state.rng_state is not None:
        version, internal, gauss = state.rng_state
        rng.setstate((version, tuple(internal), gauss))
    return rng


def random_search(n: int, budget: int, seed: int = 0, resume: Optional[str] = None,
                  restart_after: int = 200, checkpoint_every: int = 10_000,
                  stream: str = "worker0") -> SindiResult:
    """Hill climbing on the number of failing 3-flats, with random restarts.

    A state with no failing flat is a counterexample unless it is already a
    quadratic solution set, in which case the climb restarts.  With ``resume``
    the state file is read if present and rewritten at checkpoints and at exit.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    t0 = time.perf_counter()
    npts = 1 << n
    pts = flat_points(n)
    good = [c is not None for c in q3_table()]
    by_point: List[List[Tuple[int, int]]] = [[] for _ in range(npts)]
    for f, row in enumerate(pts):
        for t, p in enumerate(row):
            by_point[int(p)].append((f, t))

    state = None
    if resume:
        try:
            state = ClimbState.load(resume)
        except FileNotFoundError:
            state = None
        if state is not None and (state.n != n or state.seed != seed):
            raise ValueError("resume file was written for a different dimension or seed")
    rng = _rng_from_state(state, stream) if state else random.Random(f"{seed}/sindi/{stream}")
    if state is None:
        state = ClimbState(n, seed, rng.getrandbits(npts))

    def codes_of(mask: int) -> List[int]:
        out = []
        for row in pts:
            c = 0
            for t, p in enumerate(row):
                c |= (mask >> int(p) & 1) << t
            out.append(c)
        return out

    mask = state.mask
    codes = codes_of(mask)
    score = sum(not good[c] for c in codes)
    stale = state.stale
    found = None

    def checkpoint():
        state.mask = mask
        state.stale = stale
        state.rng_state = [list(x) if isinstance(x, tuple) else x for x in rng.getstate()]
        if resume:
            state.save(resume)

    while state.evaluations < budget:
        if score == 0:
            S = PointSet(n, mask)
            if has_Q(S) is None:
                found = S
                break
            state.q_sets_reached += 1
            stale = restart_after
        if stale >= restart_after:
            mask = rng.getrandbits(npts)
            codes = codes_of(mask)
            score = sum(not good[c] for c in codes)
            state.restarts += 1
            stale = 0
            continue
        p = rng.randrange(npts)
        delta = 0
        for f, t in by_point[p]:
            c = codes[f]
            delta += (not good[c ^ (1 << t)]) - (not good[c])
        state.evaluations += 1
        if delta <= 0:
            for f, t in by_point[p]:
                codes[f] ^= 1 << t
            mask ^= 1 << p
            score += delta
            stale = 0 if delta < 0 else stale + 1
        else:
            stale += 1
        if state.best_score is None or score < state.best_score:
            state.best_score = score
        if state.evaluations % checkpoint_every == 0:
            checkpoint()
    checkpoint()
    stats = {"evaluations": state.evaluations, "restarts": state.restarts,
             "best_score": state.best_score, "q_sets_reached": state.q_sets_reached,
             "seconds": round(time.perf_counter() - t0, 3)}
    if found is not None:
        if not _confirm(found):
            raise AssertionError("counterexample failed re-verification")
        return SindiResult(n, "random", "found", found, q3_certificate(found), stats)
    return SindiResult(n, "random", "budget_exhausted", stats=stats)


def _random_worker(args):
    n, budget, seed, resume, k = args
    return random_search(n, budget, seed, resume, stream=f"worker{k}")


def parallel_random_search(n: int, budget: int, seed: int = 0, resume: Optional[str] = None,
                           workers: int = 1) -> SindiResult:
    """Independent climbers with per-worker streams; the budget is split evenly."""
    if workers <= 1:
        return random_search(n, budget, seed, resume, stream="worker0")
    shares = [budget // workers + (k < budget % workers) for k in range(workers)]
    jobs = [(n, shares[k], seed, f"{resume}.{k}" if resume else None, k) for k in range(workers)]
    with ProcessPoolExecutor(workers) as pool:
        results = list(pool.map(_random_worker, jobs))
    found = [r for r in results if r.status == "found"]
    stats = {"workers": workers, "per_worker": [r.stats for r in results]}
    if found:
        r = found[0]
        return SindiResult(n, "random", "found", r.counterexample, r.certificate, stats)
    return SindiResult(n, "random", "budget_exhausted", stats=stats)


def sindi_search(n: int, mode: str = "exhaustive", budget: int = 1_000_000, seed: int = 0,
                 resume: Optional[str] = None, workers: int = 1) -> SindiResult:
    if mode == "exhaustive":
        return exhaustive_search(n, workers)
    if mode == "random":
        return parallel_random_search(n, budget, seed, resume, workers)
    raise ValueError(f"unknown mode {mode!r}")
