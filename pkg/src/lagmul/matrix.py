"""Dense matrices of polynomials and exact rank over a base field."""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Sequence

from .arith import FieldSpec
from .errors import KTooLarge, MixedRings, ShapeMismatch
from .poly import Polynomial, Ring


class PolyMatrix:
    """Rectangular matrix with entries in one polynomial ring.

    Shapes with zero rows or columns are allowed; they show up as the
    boundary maps of complexes.
    """

    def __init__(self, ring: Ring, rows: Sequence[Sequence[Polynomial]], ncols: int = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ShapeMismatch("ragged matrix")
            for e in r:
                if e.ring.field != ring.field or e.ring.names != ring.names:
                    raise MixedRings(f"{e.ring} vs {ring}")
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, ring: Ring, nrows: int, ncols: int) -> "PolyMatrix":
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.shape == other.shape and self.rows == other.rows

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        z = self.ring.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out, other.ncols)

    def is_zero(self) -> bool:
        return all(not e for r in self.rows for e in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def determinant(self) -> Polynomial:
        """Cofactor expansion along the first row."""
        if self.nrows != self.ncols:
            raise ShapeMismatch("determinant of a non-square matrix")
        return _cofactor_det(self.rows, self.ring)

    def minors(self, k: int) -> List[Polynomial]:
        """All k x k minors: row subsets outer, column subsets inner, lexicographic."""
        if k > min(self.nrows, self.ncols) or k < 1:
            raise KTooLarge(f"no {k}x{k} minors in a {self.nrows}x{self.ncols} matrix")
        out = []
        for rs in combinations(range(self.nrows), k):
            sub_rows = [self.rows[i] for i in rs]
            for cs in combinations(range(self.ncols), k):
                out.append(_cofactor_det([[r[j] for j in cs] for r in sub_rows], self.ring))
        return out

    def evaluate(self, point: Sequence) -> List[List]:
        return [[e.evaluate(point) for e in r] for r in self.rows]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows) + "]"

    __repr__ = __str__


def _cofactor_det(rows, ring: Ring) -> Polynomial:
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero()
    for j, a in enumerate(rows[0]):
        if not a:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * _cofactor_det(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def minor_ideal(m: PolyMatrix, k: int) -> List[Polynomial]:
    return m.minors(k)


def field_rank(rows: List[Dict[int, object]], field: FieldSpec) -> int:
    """Rank of a sparse matrix over ``field``; rows are ``{column: raw value}``.

    Rows are consumed (mutated).  Pivots go to the sparsest available row.
    """
    p = field.characteristic
    pivots: Dict[int, Dict[int, object]] = {}
    rank = 0
    for row in rows:
        row = {j: v for j, v in row.items() if v}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                inv = field.inv(row[col])
                if p:
                    row = {j: v * inv % p for j, v in row.items()}
                else:
                    row = {j: v * inv for j, v in row.items()}
                pivots[col] = row
                rank += 1
                break
            c = row[col]
            for j, v in piv.items():
                w = row.get(j, 0) - c * v
                if p:
                    w %= p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return rank


def dense_rank(matrix: Sequence[Sequence], field: FieldSpec) -> int:
    rows = [{j: field.convert(v) for j, v in enumerate(r) if v} for r in matrix]
    return field_rank(rows, field)
