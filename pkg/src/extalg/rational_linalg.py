"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`.  Elimination runs on integer rows
(each row cleared of denominators, then kept primitive by dividing out the
content after every update), which is much faster than Fraction arithmetic
and gives the same pivots.  Pivots are always the first nonzero entry in the
requested column scan order; no magnitude pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import CapacityError, ShapeError, Singular
from .subsets import level, members

COMPOUND_N_CAP = 14


@dataclass(frozen=True)
class RatMatrix:
    """Immutable ``rows x cols`` matrix of Fractions stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RatMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), cols, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> RatMatrix:
        return RatMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append([sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols])
        return RatMatrix.from_rows(out, cols=other.cols)

    def matvec(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ShapeError("vector length does not match column count")
        return [sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                for i in range(self.rows)]

    def scale(self, c) -> RatMatrix:
        c = Fraction(c)
        return RatMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)


# -- integer elimination kernel ---------------------------------------------

def integer_row(row: Iterable) -> list[int]:
    """Clear denominators of a rational row (a positive multiple of the row)."""
    row = [Fraction(x) for x in row]
    d = 1
    for x in row:
        if x.denominator != 1:
            d = lcm(d, x.denominator)
    return [int(x * d) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def echelon(rows: Iterable[Sequence[int]], order: Sequence[int] | None = None,
            reduce: bool = True) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss(-Jordan) elimination on integer rows.

    Args:
        rows: integer rows, all of equal length.
        order: column scan order; defaults to natural order.
        reduce: also clear pivot columns above each pivot (reduced form up to
            row scaling).

    Returns:
        ``(basis, pivots)`` where ``basis[k]`` is a primitive integer row whose
        first nonzero entry in scan order sits in column ``pivots[k]``.
    """
    pending = [list(r) for r in rows if any(r)]
    if not pending:
        return [], []
    width = len(pending[0])
    if order is None:
        order = range(width)
    done: list[list[int]] = []
    pivots: list[int] = []
    for col in order:
        if not pending:
            break
        k = next((i for i, r in enumerate(pending) if r[col]), None)
        if k is None:
            continue
        p = _primitive(pending.pop(k))
        if p[col] < 0:
            p = [-x for x in p]
        pv = p[col]
        targets = (pending, done) if reduce else (pending,)
        for lst in targets:
            for i, r in enumerate(lst):
                x = r[col]
                if x:
                    g = gcd(pv, x)
                    a, b = pv // g, x // g
                    lst[i] = _primitive([a * u - b * w for u, w in zip(r, p)])
        pending = [r for r in pending if any(r)]
        done.append(p)
        pivots.append(col)
    return done, pivots


def rank_int(rows: Iterable[Sequence[int]]) -> int:
    return len(echelon(rows, reduce=False)[1])


# -- public operations --------------------------------------------------------

def rref(M: RatMatrix, column_order: Sequence[int] | None = None) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form with respect to a column scan order.

    Returns the reduced matrix (nonzero rows first, ordered by pivot position
    in the scan, zero rows padded below) and the pivot columns.
    """
    if column_order is None:
        column_order = list(range(M.cols))
    else:
        column_order = list(column_order)
        if sorted(column_order) != list(range(M.cols)):
            raise ShapeError("column_order must be a permutation of the columns")
    basis, pivots = echelon((integer_row(M.row(i)) for i in range(M.rows)), column_order)
    out = [[Fraction(x, r[c]) for x in r] for r, c in zip(basis, pivots)]
    out += [[Fraction(0)] * M.cols for _ in range(M.rows - len(out))]
    return RatMatrix.from_rows(out, cols=M.cols), pivots


def rank(M: RatMatrix) -> int:
    return rank_int(integer_row(M.row(i)) for i in range(M.rows))


def det(M: RatMatrix) -> Fraction:
    """Exact determinant by Bareiss elimination on the denominator-cleared matrix."""
    if not M.is_square:
        raise ShapeError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    scale = 1
    a = []
    for i in range(n):
        row = [Fraction(x) for x in M.row(i)]
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        scale *= d
        a.append([int(x * d) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], scale)


def invert(M: RatMatrix) -> RatMatrix:
    if not M.is_square:
        raise ShapeError("inverse of a non-square matrix")
    n = M.rows
    aug = RatMatrix.from_rows(
        [list(M.row(i)) + [int(i == j) for j in range(n)] for i in range(n)], cols=2 * n)
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise Singular("matrix is singular")
    return RatMatrix.from_rows([R.row(i)[n:] for i in range(n)], cols=n)


def adjugate(M: RatMatrix) -> RatMatrix:
    """``det(M) * M^{-1}``; integral whenever M is.  Requires M invertible."""
    return invert(M).scale(det(M))


def compound(F: RatMatrix, r: int, cap: int = COMPOUND_N_CAP) -> RatMatrix:
    """r-th compound matrix: entry (A, B) is the minor on rows A, columns B.

    Rows and columns are indexed by the r-subsets of {0..n-1} in ascending
    bitmask order (reverse colex descending).  Minors are built level by level
    with Laplace expansion along the last row.
    """
    if not F.is_square:
        raise ShapeError("compound of a non-square matrix")
    n = F.rows
    if not 0 <= r <= n:
        raise ShapeError(f"compound degree {r} outside 0..{n}")
    if n > cap:
        raise CapacityError(f"compound matrices are capped at n <= {cap} (got n={n})")
    idx = level(n, r)
    if r == 0:
        return RatMatrix.identity(1)
    # prev maps (row set, column set) of size k-1 to its minor
    prev = {(0, 0): Fraction(1)}
    for k in range(1, r + 1):
        cur = {}
        for A in level(n, k):
            rows = members(A)
            last = rows[-1] - 1
            A_rest = A & ~(1 << last)
            for B in level(n, k):
                total = Fraction(0)
                for t, j in enumerate(members(B)):
                    x = F[last, j - 1]
                    if x:
                        m = prev[(A_rest, B & ~(1 << (j - 1)))]
                        if m:
                            sgn = -1 if (k - 1 + t) & 1 else 1
                            total += sgn * x * m
                cur[(A, B)] = total
        prev = cur
    return RatMatrix.from_rows([[prev[(A, B)] for B in idx] for A in idx], cols=len(idx))


def nullspace(M: RatMatrix) -> list[list[Fraction]]:
    """Basis of the right kernel {x : Mx = 0}, one free column per vector."""
    R, pivots = rref(M)
    free = [j for j in range(M.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * M.cols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -R[i, f]
        basis.append(x)
    return basis


def intersect_row_spaces(U: Sequence[Sequence], W: Sequence[Sequence]) -> list[list[Fraction]]:
    """Spanning vectors (a basis) of ``rowspace(U) ∩ rowspace(W)``."""
    U = [list(map(Fraction, u)) for u in U]
    W = [list(map(Fraction, w)) for w in W]
    if not U or not W:
        return []
    dim = len(U[0])
    # columns are the generators; kernel vectors give dependent combinations
    cols = U + [[-x for x in w] for w in W]
    K = nullspace(RatMatrix.from_rows([[c[i] for c in cols] for i in range(dim)], cols=len(cols)))
    vecs = []
    for k in K:
        v = [sum((k[j] * U[j][i] for j in range(len(U)) if k[j]), Fraction(0)) for i in range(dim)]
        if any(v):
            vecs.append(v)
    basis, pivots = echelon(integer_row(v) for v in vecs)
    return [[Fraction(x) for x in b] for b in basis]
