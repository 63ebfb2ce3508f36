"""Exact integer matrices and Smith normal form with transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = ["IntMatrix", "smith_normal_form", "is_smith_normal_form", "invariant_factors"]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError(f"entry grid does not match shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries),
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows, tuple(tuple(r[j] for r in self.entries) for j in range(self.cols))
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def rank(self) -> int:
        D, _, _ = smith_normal_form(self)
        return sum(1 for d in D.diagonal() if d)


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``U @ M @ V == D``, ``U, V`` unimodular.

    ``D`` is diagonal with non-negative entries ``d_1 | d_2 | ...``.
    """
    m, n = M.rows, M.cols
    a = [list(r) for r in M.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return IntMatrix(m, n, tuple(map(tuple, a))), IntMatrix(m, m, tuple(map(tuple, U))), IntMatrix(
        n, n, tuple(map(tuple, V))
    )


def is_smith_normal_form(D: IntMatrix) -> bool:
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j and D[i, j]:
                return False
    diag = D.diagonal()
    if any(d < 0 for d in diag):
        return False
    for x, y in zip(diag, diag[1:]):
        if x == 0 and y != 0:
            return False
        if x and y % x:
            return False
    return True


def invariant_factors(M: IntMatrix) -> list[int]:
    """Non-zero diagonal entries of the Smith form."""
    D, _, _ = smith_normal_form(M)
    return [d for d in D.diagonal() if d]
