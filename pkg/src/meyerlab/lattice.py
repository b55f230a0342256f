"""Incremental integer-lattice (free abelian group) reduction.

Rows are integer vectors; the basis is kept in row-echelon Hermite form:
pivot entries positive, entries above each pivot reduced.  Membership and
canonical residues are exact and work for rational query vectors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _pivot(row: Sequence[int]) -> int:
    for i, x in enumerate(row):
        if x != 0:
            return i
    return -1


class IntegerLattice:
    """Subgroup of Z^n generated by inserted integer rows."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[int]] = []  # echelon, pivots strictly increasing

    @property
    def rank(self) -> int:
        return len(self.rows)

    def insert(self, vec: Sequence[int]) -> bool:
        """Add a vector to the group; returns True if the lattice grew."""
        v = [int(x) for x in vec]
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        i = 0
        while True:
            p = _pivot(v)
            if p == -1:
                return False
            while i < len(self.rows) and _pivot(self.rows[i]) < p:
                i += 1
            if i == len(self.rows) or _pivot(self.rows[i]) > p:
                if v[p] < 0:
                    v = [-x for x in v]
                self.rows.insert(i, v)
                self._normalize()
                return True
            # same pivot column: Euclid on the pivot entries
            b = self.rows[i]
            while v[p] != 0:
                q = v[p] // b[p]
                if q != 0:
                    v = [x - q * y for x, y in zip(v, b)]
                if v[p] != 0:
                    self.rows[i], v = v, self.rows[i]
                    b = self.rows[i]
            # continue reducing the remainder against later rows

    def _normalize(self) -> None:
        # reduce entries above each pivot (Hermite form)
        for i in range(len(self.rows) - 1, -1, -1):
            p = _pivot(self.rows[i])
            for j in range(i):
                q = self.rows[j][p] // self.rows[i][p]
                if q != 0:
                    self.rows[j] = [
                        x - q * y for x, y in zip(self.rows[j], self.rows[i])
                    ]

    def extend(self, vectors) -> None:
        for v in vectors:
            self.insert(v)
        self._normalize()

    def coordinates(self, vec: Sequence) -> list[Fraction] | None:
        """Exact coordinates of vec in the basis over Q, or None if outside span."""
        v = [Fraction(x) for x in vec]
        coords = []
        for row in self.rows:
            p = _pivot(row)
            c = v[p] / row[p]
            coords.append(c)
            if c != 0:
                v = [x - c * y for x, y in zip(v, row)]
        if any(x != 0 for x in v):
            return None
        return coords

    def membership(self, vec: Sequence) -> list[int] | None:
        """Integer coordinates of vec in the basis, or None if not a member."""
        coords = self.coordinates(vec)
        if coords is None or any(c.denominator != 1 for c in coords):
            return None
        return [int(c) for c in coords]

    def residue(self, vec: Sequence) -> tuple:
        """Canonical representative of vec modulo the lattice."""
        v = [Fraction(x) for x in vec]
        for row in self.rows:
            p = _pivot(row)
            q = v[p] // row[p]  # Fraction floor-div -> integer floor
            if q != 0:
                v = [x - int(q) * y for x, y in zip(v, row)]
        return tuple(v)

    def basis(self) -> list[tuple[int, ...]]:
        return [tuple(r) for r in self.rows]
