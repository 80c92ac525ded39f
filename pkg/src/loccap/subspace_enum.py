"""Canonical subspaces of F_q^t and enumeration of Grassmannians,
truncated projective spaces, and matrix fibers with a prescribed
column space.

A subspace is identified with the RREF of any basis written as rows;
equality and hashing are structural on that canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from . import gf_core, qcomb
from .gf_core import (BudgetExceeded, DEFAULT_ENUM_BUDGET, FieldSpec,
                      MatrixGF, mat_mul, rref, transpose)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^t, held as an RREF basis (rows = basis vectors)."""

    ambient_dim: int
    dim: int
    basis: MatrixGF  # dim x ambient_dim, in RREF, no zero rows

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    def sort_key(self):
        return (self.dim, self.basis.entries)

    def to_json(self):
        return {"ambient_dim": self.ambient_dim,
                "basis": self.basis.to_lists()}


def _from_rref_rows(field, ambient, rows) -> Subspace:
    ent = tuple(e for r in rows for e in r)
    return Subspace(ambient, len(rows),
                    MatrixGF(field, len(rows), ambient, ent))


def span_rows(a: MatrixGF) -> Subspace:
    """Canonical subspace spanned by the rows of a."""
    red, rk, _ = rref(a)
    rows = [red.row(i) for i in range(rk)]
    return _from_rref_rows(a.field, a.cols, rows)


def span_columns(a: MatrixGF) -> Subspace:
    """Canonical subspace spanned by the columns of a."""
    return span_rows(transpose(a))


def trivial_subspace(field: FieldSpec, ambient: int) -> Subspace:
    return _from_rref_rows(field, ambient, [])


def full_space(field: FieldSpec, ambient: int) -> Subspace:
    return span_rows(gf_core.identity(field, ambient))


def enumerate_grassmannian(r: int, t: int, field: FieldSpec,
                           budget: int = DEFAULT_ENUM_BUDGET
                           ) -> Iterator[Subspace]:
    """Yield every r-dimensional subspace of F_q^t exactly once.

    Generates RREF profiles directly: for each pivot-column pattern, the
    free entries range over all residue assignments.  Order is pivot
    pattern (lexicographic) then free-entry lexicographic.
    """
    if not (0 <= r <= t):
        raise ValueError(f"need 0 <= r <= t, got r={r}, t={t}")
    q = field.q
    if qcomb.gaussian_binomial(t, r, q) > budget:
        raise BudgetExceeded("Grassmannian larger than enumeration budget")
    for pivots in combinations(range(t), r):
        # Free positions: row i, column j with j > pivots[i], j not a pivot.
        free = [(i, j) for i in range(r) for j in range(t)
                if j > pivots[i] and j not in pivots]
        for vals in product(range(q), repeat=len(free)):
            rows = [[0] * t for _ in range(r)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            yield _from_rref_rows(field, t, [tuple(row) for row in rows])


def enumerate_projective(m: int, t: int, field: FieldSpec,
                         budget: int = DEFAULT_ENUM_BUDGET
                         ) -> Iterator[Subspace]:
    """Yield every subspace of F_q^t with dimension at most m."""
    for r in range(min(m, t) + 1):
        yield from enumerate_grassmannian(r, t, field, budget=budget)


def contains(u: Subspace, v: Subspace) -> bool:
    """True iff v is a subspace of u."""
    if u.ambient_dim != v.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if v.dim > u.dim:
        return False
    if v.dim == 0:
        return True
    stacked = MatrixGF(u.field, u.dim + v.dim, u.ambient_dim,
                       u.basis.entries + v.basis.entries)
    return gf_core.rank(stacked) == u.dim


def representative_matrix(u: Subspace, m: int, orientation: str = "row"
                          ) -> MatrixGF:
    """Deterministic canonical matrix with the given row or column space.

    orientation "row": a dim(u) x m matrix impossible unless the ambient
    matches; here it returns the RREF basis itself (dim(u) x ambient),
    optionally padded with zero rows up to m rows.
    orientation "col": the transposed basis padded with zero columns up
    to m columns (an ambient x m matrix with column space u).
    """
    if u.dim > m:
        raise ValueError("cannot represent a dim-{} space with {} vectors"
                         .format(u.dim, m))
    if orientation == "row":
        pad = (0,) * ((m - u.dim) * u.ambient_dim)
        return MatrixGF(u.field, m, u.ambient_dim, u.basis.entries + pad)
    if orientation == "col":
        bt = transpose(u.basis)  # ambient x dim
        rows = [bt.row(i) + (0,) * (m - u.dim) for i in range(u.ambient_dim)]
        return MatrixGF(u.field, u.ambient_dim, m,
                        tuple(e for r in rows for e in r))
    raise ValueError(f"unknown orientation {orientation!r}")


def basis_matrix(u: Subspace) -> MatrixGF:
    """The RREF basis as a dim(u) x ambient matrix (full row rank)."""
    return u.basis


def matrices_with_column_space(u: Subspace, m: int,
                               budget: int = DEFAULT_ENUM_BUDGET
                               ) -> Iterator[MatrixGF]:
    """Yield every ambient x m matrix whose column space is exactly u.

    Realized as B @ D over full-row-rank dim(u) x m matrices D, where B
    is the canonical basis written in columns.
    """
    if u.dim > m:
        raise ValueError("column space dimension exceeds column count")
    b = transpose(u.basis)  # ambient x dim(u), full column rank
    if u.dim == 0:
        yield gf_core.zeros(u.field, u.ambient_dim, m)
        return
    for d in gf_core.enumerate_full_rank(m, u.dim, u.field, budget=budget):
        yield mat_mul(b, transpose(d))
