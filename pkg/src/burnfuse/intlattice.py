"""Exact integer lattices: row-echelon (Hermite-style) reduction, membership,
kernels, and Smith normal form for small dense matrices."""

from __future__ import annotations

from bisect import bisect_left

from .padic import xgcd


class IntegerLattice:
    """A sublattice of Z^n kept in pivot-echelon form.

    Rows are stored sorted by pivot column; pivots are positive. Supports
    incremental insertion and exact membership tests.
    """

    __slots__ = ("dim", "rows", "pivots")

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def _pivot_row(self, col: int) -> int | None:
        i = bisect_left(self.pivots, col)
        if i < len(self.pivots) and self.pivots[i] == col:
            return i
        return None

    def add_vector(self, vec) -> None:
        if len(vec) != self.dim:
            raise ValueError(f"vector length {len(vec)} != dimension {self.dim}")
        vec = list(vec)
        for j in range(self.dim):
            if vec[j] == 0:
                continue
            i = self._pivot_row(j)
            if i is None:
                if vec[j] < 0:
                    vec = [-v for v in vec]
                where = bisect_left(self.pivots, j)
                self.rows.insert(where, vec)
                self.pivots.insert(where, j)
                return
            row = self.rows[i]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for jj in range(j, self.dim):
                    vec[jj] -= q * row[jj]
            else:
                x, y, g = xgcd(a, b)
                ag, mbg = a // g, -(b // g)
                for jj in range(j, self.dim):
                    aa, bb = row[jj], vec[jj]
                    row[jj] = x * aa + y * bb
                    vec[jj] = mbg * aa + ag * bb

    def __contains__(self, vec) -> bool:
        if len(vec) != self.dim:
            raise ValueError(f"vector length {len(vec)} != dimension {self.dim}")
        vec = list(vec)
        for j in range(self.dim):
            if vec[j] == 0:
                continue
            i = self._pivot_row(j)
            if i is None:
                return False
            row = self.rows[i]
            if vec[j] % row[j] != 0:
                return False
            q = vec[j] // row[j]
            for jj in range(j, self.dim):
                vec[jj] -= q * row[jj]
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list[list[int]]:
        return [row.copy() for row in self.rows]


def kernel_basis(matrix: list[list[int]]) -> list[list[int]]:
    """Integer basis of {x in Z^n : M x = 0} for an m-by-n matrix M."""
    if not matrix:
        return []
    m, n = len(matrix), len(matrix[0])
    lat = IntegerLattice(m + n)
    for j in range(n):
        aug = [matrix[i][j] for i in range(m)] + [0] * n
        aug[m + j] = 1
        lat.add_vector(aug)
    out = []
    for piv, row in zip(lat.pivots, lat.rows):
        if piv >= m:
            out.append(row[m:])
    return out


def smith_invariant_factors(matrix: list[list[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    a = [row.copy() for row in matrix]
    m = len(a)
    n = len(a[0]) if a else 0
    factors: list[int] = []
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v != 0 and (pivot is None or abs(v) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        p = a[t][t]
        bad = next((i for i in range(t + 1, m) if a[i][t] % p != 0), None)
        if bad is not None:
            q = a[bad][t] // p
            for j in range(t, n):
                a[bad][j] -= q * a[t][j]
            continue
        bad = next((j for j in range(t + 1, n) if a[t][j] % p != 0), None)
        if bad is not None:
            q = a[t][bad] // p
            for i in range(t, m):
                a[i][bad] -= q * a[i][t]
            continue
        for i in range(t + 1, m):
            q = a[i][t] // p
            if q:
                for j in range(t, n):
                    a[i][j] -= q * a[t][j]
        for j in range(t + 1, n):
            q = a[t][j] // p
            if q:
                for i in range(t, m):
                    a[i][j] -= q * a[i][t]
        offender = next(
            (i for i in range(t + 1, m)
             if any(a[i][j] % p != 0 for j in range(t + 1, n))), None)
        if offender is not None:
            for j in range(t, n):
                a[t][j] += a[offender][j]
            continue
        factors.append(abs(p))
        t += 1
    return factors
