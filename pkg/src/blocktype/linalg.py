"""Exact Gaussian elimination over the rationals.

Rows are sparse dicts ``column -> Fraction``.  :class:`Echelon` keeps a fully
reduced row echelon form that is updated one row at a time; the RREF of a
matrix does not depend on the order its rows arrive in, so everything derived
from it (rank, kernel basis) is canonical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence


class Echelon:
    """Incremental reduced row echelon form over a fixed column order.

    ``columns`` fixes the order used to pick pivots: the pivot of a new row is
    its first nonzero column.  Unknown columns sort after all known ones, in
    insertion order.
    """

    def __init__(self, columns: Sequence[Hashable] = ()):
        self.position = {c: n for n, c in enumerate(columns)}
        self.rows: dict = {}      # pivot column -> row (pivot entry 1)
        self.holders: dict = {}   # column -> set of pivot columns whose row has it

    def _pos(self, col):
        p = self.position.get(col)
        if p is None:
            p = self.position[col] = len(self.position)
        return p

    def __len__(self):
        return len(self.rows)

    rank = property(__len__)

    def reduce(self, row: dict) -> dict:
        """The remainder of ``row`` after elimination against the pivots."""
        out = {k: Fraction(v) for k, v in row.items() if v}
        for col in [c for c in out if c in self.rows]:
            f = out.get(col)
            if not f:
                continue
            for k, v in self.rows[col].items():
                nv = out.get(k, 0) - f * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def add(self, row: dict) -> bool:
        """Insert a row; returns True if it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        pivot = min(r, key=self._pos)
        inv = 1 / r[pivot]
        r = {k: v * inv for k, v in r.items()}
        # clear the new pivot column from the existing rows
        for p in list(self.holders.get(pivot, ())):
            old = self.rows[p]
            f = old[pivot]
            for k, v in r.items():
                nv = old.get(k, 0) - f * v
                if nv:
                    if k not in old:
                        self.holders.setdefault(k, set()).add(p)
                    old[k] = nv
                else:
                    old.pop(k, None)
                    self.holders.get(k, set()).discard(p)
        self.rows[pivot] = r
        for k in r:
            if k != pivot:
                self.holders.setdefault(k, set()).add(pivot)
        self.holders.pop(pivot, None)
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def kernel(self, columns: Iterable[Hashable]) -> list:
        """Kernel basis of the inserted rows over ``columns``: one vector per
        free column, with that column set to 1 and the others free columns 0."""
        cols = list(columns)
        for c in cols:
            self._pos(c)
        basis = []
        for free in sorted((c for c in cols if c not in self.rows), key=self._pos):
            v = {free: Fraction(1)}
            for p in self.holders.get(free, ()):
                v[p] = -self.rows[p][free]
            basis.append(v)
        return basis

    def reduced_rows(self) -> list:
        return [dict(self.rows[p]) for p in sorted(self.rows, key=self._pos)]


def _dense_rows(matrix):
    return [{j: Fraction(x) for j, x in enumerate(row) if x} for row in matrix]


def nullspace(matrix: Sequence[Sequence]) -> list:
    """Kernel basis of a dense matrix as a list of Fraction lists.

    Pivots are chosen on the first nonzero column; the basis has one vector
    per free column (that entry 1, other free entries 0).
    """
    matrix = [list(r) for r in matrix]
    ncols = len(matrix[0]) if matrix else 0
    e = Echelon(range(ncols))
    for row in _dense_rows(matrix):
        e.add(row)
    return [[v.get(j, Fraction(0)) for j in range(ncols)] for v in e.kernel(range(ncols))]


def rref(matrix: Sequence[Sequence]) -> list:
    matrix = [list(r) for r in matrix]
    ncols = len(matrix[0]) if matrix else 0
    e = Echelon(range(ncols))
    for row in _dense_rows(matrix):
        e.add(row)
    return [[r.get(j, Fraction(0)) for j in range(ncols)] for r in e.reduced_rows()]


def rank(rows: Iterable) -> int:
    """Rank of a collection of rows, either dense sequences or sparse dicts."""
    e = Echelon()
    for row in rows:
        if not isinstance(row, dict):
            row = {j: x for j, x in enumerate(row) if x}
        e.add(row)
    return e.rank


def solve(rows: Sequence[dict], rhs: Sequence, columns: Sequence[Hashable] = ()):
    """One solution of the sparse system ``rows . x = rhs`` or None.

    Free columns are set to 0.
    """
    rows = list(rows)
    cols = list(columns)
    seen = set(cols)
    for row in rows:
        for k in row:
            if k not in seen:
                seen.add(k)
                cols.append(k)
    marker = object()
    e = Echelon(cols + [marker])
    for row, b in zip(rows, rhs):
        aug = dict(row)
        if b:
            aug[marker] = -Fraction(b)
        e.add(aug)
    if marker in e.rows:
        return None
    sol = {p: -r[marker] for p, r in e.rows.items() if r.get(marker)}
    return sol
