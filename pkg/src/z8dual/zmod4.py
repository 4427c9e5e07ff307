"""Incremental Howell-style echelon form over Z/4 with combination tracking.

Each stored row has a pivot value 1 or 2 and is zero before its pivot
column.  For a pivot-2 row, twice the row is fed back in, which keeps the
row set *Howell*: reducing a vector against the rows decides membership in
their Z/4-span exactly.  Every vector that reduces to zero is recorded as a
relation among the inserted vectors.
"""
from __future__ import annotations

import numpy as np


class Z4Echelon:
    def __init__(self, ncols: int, nvecs: int):
        self.ncols = ncols
        self.nvecs = nvecs
        self.rows: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self.relations: list[np.ndarray] = []
        self._inserted = 0

    def add(self, vec) -> None:
        """Insert the next input vector; its combination is a unit vector."""
        if self._inserted >= self.nvecs:
            raise IndexError("more vectors than declared")
        combo = np.zeros(self.nvecs, dtype=np.int64)
        combo[self._inserted] = 1
        self._inserted += 1
        self._insert(np.asarray(vec, dtype=np.int64) % 4, combo)

    def _insert(self, vec: np.ndarray, combo: np.ndarray) -> None:
        queue = [(vec, combo)]
        while queue:
            v, c = queue.pop()
            v, c = v.copy(), c.copy()
            while True:
                nz = np.flatnonzero(v)
                if nz.size == 0:
                    if c.any():
                        self.relations.append(c)
                    break
                col = int(nz[0])
                x = int(v[col])
                row = self.rows.get(col)
                if row is None:
                    if x == 3:
                        v, c = (3 * v) % 4, (3 * c) % 4
                    self.rows[col] = (v, c)
                    if v[col] == 2:
                        queue.append(((2 * v) % 4, (2 * c) % 4))
                    break
                r, rc = row
                p = int(r[col])
                if x % p == 0:
                    t = x // p
                    v = (v - t * r) % 4
                    c = (c - t * rc) % 4
                    continue
                # odd entry against a pivot-2 row: the new vector takes over
                if x == 3:
                    v, c = (3 * v) % 4, (3 * c) % 4
                self.rows[col] = (v, c)
                queue.append((r, rc))
                break

    def reduce(self, target):
        """Return ``(residual, combo)`` with ``target = residual + sum(combo_i * v_i)``."""
        v = np.asarray(target, dtype=np.int64) % 4
        c = np.zeros(self.nvecs, dtype=np.int64)
        for col in sorted(self.rows):
            x = int(v[col])
            if x == 0:
                continue
            r, rc = self.rows[col]
            p = int(r[col])
            if x % p:
                break
            t = x // p
            v = (v - t * r) % 4
            c = (c + t * rc) % 4
        return v, c

    def solve(self, target):
        """Combination expressing ``target``, or None when it is outside the span."""
        residual, combo = self.reduce(target)
        return None if residual.any() else combo

    def order(self) -> int:
        """Size of the span."""
        n = 1
        for r, _ in self.rows.values():
            n *= 4 if r[np.flatnonzero(r)[0]] == 1 else 2
        return n

    def basis(self):
        """Pivot rows in column order as ``(pivot_col, pivot_value, row, combo)``."""
        return [(col, int(self.rows[col][0][col]), *self.rows[col]) for col in sorted(self.rows)]
