"""Exact rational linear algebra: dense matrices over Fraction, RREF, kernels.

Everything here is exact: entries are Python ints or ``fractions.Fraction``,
and no floating point is used anywhere. The matrices involved are small
(at most d(m) x m for the moduli we care about), so plain Gaussian
elimination over the rationals is entirely adequate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "ExactMatrix",
    "rref",
    "rank",
    "right_kernel_basis",
    "determinant",
    "mat_vec",
    "vec_mat",
    "primitive_normalize",
    "in_span",
]

# Exact scalars are ints or Fractions; they interoperate freely.
Rational = Union[int, Fraction]


class ExactMatrix:
    """A dense rows x cols matrix with exact rational entries (row-major)."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Iterable[Iterable[Rational]]):
        e = [list(row) for row in entries]
        if not e or not e[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(e[0])
        if any(len(row) != width for row in e):
            raise ValueError("all rows must have the same length")
        self.rows = len(e)
        self.cols = width
        self._e = e

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, index: tuple[int, int]) -> Rational:
        i, j = index
        return self._e[i][j]

    def row(self, i: int) -> list[Rational]:
        return list(self._e[i])

    def column(self, j: int) -> list[Rational]:
        return [row[j] for row in self._e]

    def to_lists(self) -> list[list[Rational]]:
        return [list(row) for row in self._e]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(a == b for ra, rb in zip(self._e, other._e) for a, b in zip(ra, rb))
        )

    def __hash__(self):  # mutable entries list; not hashable
        raise TypeError("ExactMatrix is not hashable")

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"


def rref(matrix: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form over the rationals.

    Returns ``(R, pivots)`` where pivots lists the pivot column indices in
    order. Pivoting picks the first nonzero entry in column order; exact
    arithmetic needs no magnitude-based pivoting.
    """
    work = [[Fraction(x) for x in row] for row in matrix.to_lists()]
    nrows, ncols = matrix.rows, matrix.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    return ExactMatrix(work), pivots


def rank(matrix: ExactMatrix) -> int:
    return len(rref(matrix)[1])


def primitive_normalize(vector: Sequence[Rational]) -> tuple[int, ...]:
    """Canonical integer representative of a rational ray.

    Clears denominators, divides by the entry gcd, and flips sign so the
    first nonzero entry is positive. Rejects the zero vector.
    """
    fracs = [Fraction(x) for x in vector]
    if all(f == 0 for f in fracs):
        raise ValueError("cannot normalize the zero vector")
    scale = 1
    for f in fracs:
        scale = scale * f.denominator // gcd(scale, f.denominator)
    ints = [int(f * scale) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def right_kernel_basis(matrix: ExactMatrix) -> list[tuple[int, ...]]:
    """Basis of ``{v : M v = 0}`` as primitive integer vectors.

    One basis vector per free column: that free variable is set to -1, all
    other free variables to 0, and the result is primitive-normalized. An
    empty list signals a trivial kernel.
    """
    reduced, pivots = rref(matrix)
    free = [c for c in range(matrix.cols) if c not in pivots]
    basis = []
    for f in free:
        v: list[Rational] = [0] * matrix.cols
        v[f] = -1
        for r, p in enumerate(pivots):
            v[p] = reduced[r, f]
        basis.append(primitive_normalize(v))
    return basis


def determinant(matrix: ExactMatrix) -> Fraction:
    """Exact determinant via Gaussian elimination with row swaps."""
    if matrix.rows != matrix.cols:
        raise ValueError("determinant requires a square matrix")
    n = matrix.rows
    work = [[Fraction(x) for x in row] for row in matrix.to_lists()]
    det = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            det = -det
        det *= work[c][c]
        inv = 1 / work[c][c]
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] * inv
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return det


def mat_vec(matrix: ExactMatrix, vector: Sequence[Rational]) -> list[Rational]:
    """Exact product M v."""
    if len(vector) != matrix.cols:
        raise ValueError(f"dimension mismatch: {matrix.rows}x{matrix.cols} times {len(vector)}")
    return [sum(a * x for a, x in zip(row, vector)) for row in matrix.to_lists()]


def vec_mat(vector: Sequence[Rational], matrix: ExactMatrix) -> list[Rational]:
    """Exact product w^T M."""
    if len(vector) != matrix.rows:
        raise ValueError(f"dimension mismatch: {len(vector)} times {matrix.rows}x{matrix.cols}")
    rows = matrix.to_lists()
    return [sum(w * rows[i][j] for i, w in enumerate(vector)) for j in range(matrix.cols)]


def in_span(vectors: Sequence[Sequence[Rational]], target: Sequence[Rational]) -> bool:
    """Whether ``target`` lies in the exact rational span of ``vectors``."""
    if not vectors:
        return all(x == 0 for x in target)
    stacked = ExactMatrix(list(vectors))
    if rank(stacked) != rank(ExactMatrix(list(vectors) + [list(target)])):
        return False
    return True
