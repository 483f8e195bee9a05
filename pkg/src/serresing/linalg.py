"""Dense exact linear algebra over a FieldSpec.

Gaussian elimination with first-nonzero pivoting; no pivot-growth concerns
since every entry is a finite field element.
"""

from __future__ import annotations

import random
from typing import Sequence

from .field import FieldElement, FieldSpec


class GFMatrix:
    """An immutable rows x cols matrix of field elements (row-major)."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: FieldSpec, entries: Sequence[Sequence[FieldElement]]):
        self.field = field
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows")
        self.entries = tuple(tuple(field.elem(x) for x in row) for row in entries)

    @classmethod
    def from_int_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "GFMatrix":
        return cls(field, [[field.elem(x) for x in row] for row in rows])

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "GFMatrix":
        return cls(
            field,
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
        )

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int) -> "GFMatrix":
        return cls(field, [[field.zero] * cols for _ in range(rows)])

    @classmethod
    def random_invertible(cls, field: FieldSpec, n: int, rng: random.Random) -> "GFMatrix":
        while True:
            m = cls(field, [[field.random(rng) for _ in range(n)] for _ in range(n)])
            if not m.det().is_zero():
                return m

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, GFMatrix)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(repr(x) for x in row) for row in self.entries)
        return f"GFMatrix[{body}]"

    def __mul__(self, other: "GFMatrix") -> "GFMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        z = self.field.zero
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return GFMatrix(self.field, out)

    def scale(self, c: FieldElement) -> "GFMatrix":
        return GFMatrix(self.field, [[c * x for x in row] for row in self.entries])

    def transpose(self) -> "GFMatrix":
        return GFMatrix(
            self.field,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def _rref(self) -> tuple[list[list[FieldElement]], list[int]]:
        """Reduced row echelon form; returns (rows, pivot column indices)."""
        m = [list(row) for row in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot_row = None
            for i in range(r, self.rows):
                if not m[i][c].is_zero():
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = m[r][c].inverse()
            m[r] = [inv * x for x in m[r]]
            for i in range(self.rows):
                if i != r and not m[i][c].is_zero():
                    factor = m[i][c]
                    m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self._rref()[1])

    def kernel_basis(self) -> list[list[FieldElement]]:
        """Basis of the right kernel, one vector per free column."""
        m, pivots = self._rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for fc in free:
            v = [self.field.zero] * self.cols
            v[fc] = self.field.one
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(v)
        return basis

    def solve(self, b: Sequence[FieldElement]) -> list[FieldElement] | None:
        """Some solution x of self @ x = b, or None when inconsistent."""
        if len(b) != self.rows:
            raise ValueError("rhs length mismatch")
        aug = GFMatrix(
            self.field,
            [list(self.entries[i]) + [self.field.elem(b[i])] for i in range(self.rows)],
        )
        m, pivots = aug._rref()
        if self.cols in pivots:
            return None
        x = [self.field.zero] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = m[r][self.cols]
        return x

    def det(self) -> FieldElement:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        m = [list(row) for row in self.entries]
        n = self.rows
        det = self.field.one
        for c in range(n):
            pivot_row = None
            for i in range(c, n):
                if not m[i][c].is_zero():
                    pivot_row = i
                    break
            if pivot_row is None:
                return self.field.zero
            if pivot_row != c:
                m[c], m[pivot_row] = m[pivot_row], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for i in range(c + 1, n):
                if not m[i][c].is_zero():
                    factor = m[i][c] * inv
                    m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self) -> "GFMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = GFMatrix(
            self.field,
            [
                list(self.entries[i])
                + [self.field.one if i == j else self.field.zero for j in range(n)]
                for i in range(n)
            ],
        )
        m, pivots = aug._rref()
        if pivots != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return GFMatrix(self.field, [row[n:] for row in m])


def matrix_rank(m: GFMatrix) -> int:
    return m.rank()


def kernel_basis(m: GFMatrix) -> list[list[FieldElement]]:
    return m.kernel_basis()


def solve_linear(m: GFMatrix, b: Sequence[FieldElement]) -> list[FieldElement] | None:
    return m.solve(b)
