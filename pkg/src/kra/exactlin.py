"""Exact linear algebra over the Gaussian rationals Q(i).

Operator matrices attached to diagram edges are stored with entries of the
form ``a + b*i`` where ``a`` and ``b`` are :class:`fractions.Fraction`.  The
only nontrivial routine needed on top of the arithmetic is an exact rank
computation (Gaussian elimination with exact pivots), used to measure the
dimension of the span of a family of matrices.  Everything here is
tolerance-free by construction; no floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["GaussRational", "Matrix", "matrix_rank", "span_rank"]


@dataclass(frozen=True, slots=True)
class GaussRational:
    """A complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, re: int | Fraction, im: int | Fraction = 0) -> "GaussRational":
        return cls(Fraction(re), Fraction(im))

    def __add__(self, other: "GaussRational") -> "GaussRational":
        return GaussRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussRational") -> "GaussRational":
        return GaussRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussRational") -> "GaussRational":
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussRational":
        return GaussRational(-self.re, -self.im)

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def inverse(self) -> "GaussRational":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussRational(self.re / norm, -self.im / norm)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0


ZERO = GaussRational()

#: A dense matrix: tuple of rows, each a tuple of entries.
Matrix = tuple[tuple[GaussRational, ...], ...]


def matrix_rank(rows: Sequence[Sequence[GaussRational]]) -> int:
    """Rank of a dense matrix over Q(i), by exact Gaussian elimination."""
    work = [list(row) for row in rows]
    if not work:
        return 0
    n_cols = len(work[0])
    rank = 0
    for col in range(n_cols):
        pivot_row = None
        for r in range(rank, len(work)):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [entry * inv for entry in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                factor = work[r][col]
                work[r] = [
                    entry - factor * lead
                    for entry, lead in zip(work[r], work[rank])
                ]
        rank += 1
        if rank == len(work):
            break
    return rank


def span_rank(matrices: Sequence[Matrix]) -> int:
    """Dimension of the linear span of same-shape matrices over Q(i).

    Each matrix is flattened to a vector; the rank of the stacked vectors is
    the span dimension.
    """
    if not matrices:
        return 0
    shape = (len(matrices[0]), len(matrices[0][0]) if matrices[0] else 0)
    flattened = []
    for m in matrices:
        if (len(m), len(m[0]) if m else 0) != shape:
            raise ValueError("span_rank requires matrices of equal shape")
        flattened.append([entry for row in m for entry in row])
    return matrix_rank(flattened)
