"""Exact linear algebra over prime fields F_q.

Matrices are immutable, stored row-major as tuples of canonical residues
in [0, q).  Everything here is a pure function; results can be shared
freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

DEFAULT_ENUM_BUDGET = 10**7


class GFError(Exception):
    """Base error for field / matrix operations."""


class DimensionMismatch(GFError):
    pass


class FieldMismatch(GFError):
    pass


class NotInSpan(GFError):
    """solve_factor target is not in the column space of the divisor."""


class NotFullColumnRank(GFError):
    """solve_factor divisor fails the full-column-rank precondition."""


class BudgetExceeded(GFError):
    """An enumeration would exceed the configured element budget."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_q."""

    q: int

    def __post_init__(self):
        if not _is_prime(self.q):
            raise GFError(f"field order must be prime, got {self.q}")

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.q - 2, self.q)


@dataclass(frozen=True)
class MatrixGF:
    """Dense matrix over a prime field, row-major entries."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise GFError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise GFError("entry count does not match dimensions")
        q = self.field.q
        if any(not (0 <= e < q) for e in self.entries):
            raise GFError("entry out of range [0, q)")

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def to_lists(self) -> list:
        return [list(self.row(r)) for r in range(self.rows)]

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in self.row(r))
                         for r in range(self.rows))
        return f"MatrixGF(q={self.field.q}, [{body}])"


def matrix(field: FieldSpec, rows_data) -> MatrixGF:
    """Build a matrix from a list of row lists, reducing entries mod q."""
    rows = len(rows_data)
    cols = len(rows_data[0]) if rows else 0
    if any(len(r) != cols for r in rows_data):
        raise GFError("ragged rows")
    ent = tuple(int(e) % field.q for r in rows_data for e in r)
    return MatrixGF(field, rows, cols, ent)


def zeros(field: FieldSpec, rows: int, cols: int) -> MatrixGF:
    return MatrixGF(field, rows, cols, (0,) * (rows * cols))


def identity(field: FieldSpec, n: int) -> MatrixGF:
    ent = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    return MatrixGF(field, n, n, ent)


def mat_mul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    if a.field != b.field:
        raise FieldMismatch("operands over different fields")
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} times {b.rows}x{b.cols}")
    q = a.field.q
    out = []
    for i in range(a.rows):
        ar = a.row(i)
        for j in range(b.cols):
            s = 0
            for k in range(a.cols):
                s += ar[k] * b.entries[k * b.cols + j]
            out.append(s % q)
    return MatrixGF(a.field, a.rows, b.cols, tuple(out))


def transpose(a: MatrixGF) -> MatrixGF:
    ent = tuple(a.entries[r * a.cols + c]
                for c in range(a.cols) for r in range(a.rows))
    return MatrixGF(a.field, a.cols, a.rows, ent)


def rref(a: MatrixGF):
    """Reduced row-echelon form.

    Returns (R, rank, pivot_cols).  R has the same shape as a; its first
    `rank` rows are the nonzero rows, the rest are zero.
    """
    q = a.field.q
    rows = [list(a.row(r)) for r in range(a.rows)]
    pivot_cols = []
    pr = 0
    for col in range(a.cols):
        if pr >= a.rows:
            break
        sel = next((r for r in range(pr, a.rows) if rows[r][col]), None)
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        inv = a.field.inv(rows[pr][col])
        rows[pr] = [(x * inv) % q for x in rows[pr]]
        for r in range(a.rows):
            if r != pr and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % q for x, y in zip(rows[r], rows[pr])]
        pivot_cols.append(col)
        pr += 1
    ent = tuple(e for row in rows for e in row)
    return MatrixGF(a.field, a.rows, a.cols, ent), pr, pivot_cols


def rank(a: MatrixGF) -> int:
    return rref(a)[1]


def solve_factor(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    """The factor operator: the unique C with b @ C = a.

    Requires b to have full column rank and the column space of a to lie
    inside the column space of b.
    """
    if a.field != b.field:
        raise FieldMismatch("operands over different fields")
    if a.rows != b.rows:
        raise DimensionMismatch("a and b must have the same row count")
    # Row-reduce the augmented matrix [b | a].
    aug = MatrixGF(
        a.field, a.rows, b.cols + a.cols,
        tuple(e for r in range(a.rows) for e in (b.row(r) + a.row(r))),
    )
    red, rk, piv = rref(aug)
    b_piv = [c for c in piv if c < b.cols]
    if len(b_piv) < b.cols:
        raise NotFullColumnRank("divisor does not have full column rank")
    # Any pivot in the augmented block means a is not in the span of b.
    if any(c >= b.cols for c in piv):
        raise NotInSpan("target columns not in the span of the divisor")
    ent = tuple(red[(i, b.cols + j)] for i in range(b.cols)
                for j in range(a.cols))
    return MatrixGF(a.field, b.cols, a.cols, ent)


def all_matrices(field: FieldSpec, rows: int, cols: int,
                 budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[MatrixGF]:
    """Yield every rows x cols matrix over the field, lexicographically."""
    total = field.q ** (rows * cols)
    if total > budget:
        raise BudgetExceeded(f"{total} matrices exceeds budget {budget}")
    for ent in product(range(field.q), repeat=rows * cols):
        yield MatrixGF(field, rows, cols, ent)


def enumerate_full_rank(t: int, r: int, field: FieldSpec,
                        budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[MatrixGF]:
    """Yield every full-column-rank t x r matrix exactly once.

    Order is lexicographic on the column sequence (each column read
    top-to-bottom as a base-q number).
    """
    if r < 0 or r > t:
        return
    q = field.q
    count = 1
    for i in range(r):
        count *= q ** t - q ** i
    if count > budget:
        raise BudgetExceeded(f"{count} matrices exceeds budget {budget}")

    def rec(cols_so_far):
        k = len(cols_so_far)
        if k == r:
            ent = tuple(cols_so_far[j][i] for i in range(t) for j in range(r))
            yield MatrixGF(field, t, r, ent)
            return
        for vec in product(range(q), repeat=t):
            cand = cols_so_far + [vec]
            m = MatrixGF(field, k + 1, t,
                         tuple(e for c in cand for e in c))
            if rank(m) == k + 1:
                yield from rec(cand)

    yield from rec([])
