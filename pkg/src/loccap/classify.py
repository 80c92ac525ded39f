"""Exact membership tests for the symmetry classes of Y = XH channels.

Five nested properties are tested, all by exact rational comparison
(no tolerances):

  * uniform given rank: a property of the transfer PMF alone;
  * rank symmetric: P(Y|X) depends only on (rank X, rank Y) on the
    cone of reachable outputs;
  * degraded: P(Y|X) depends on X only through its column space, and
    outputs with a common column space have proportional likelihood
    columns;
  * unique subspace degradation: the induced column-space-to-subspace
    channel does not depend on the choice of representative input;
  * row space symmetric: P(Y|X) on the reachable cone depends only on
    the row spaces of X and Y.

Every failed test carries a concrete witness, the lexicographically
first violation in a deterministic scan order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import gf_core, qcomb, subspace_enum
from .channel_model import (ChannelSpec, TransitionCore,
                            NAIVE_TABLE_BUDGET, transition_core)
from .gf_core import MatrixGF, mat_mul, solve_factor, transpose
from .subspace_enum import Subspace, span_columns, span_rows

ZERO = Fraction(0)


@dataclass(frozen=True)
class PredicateResult:
    holds: bool
    witness: Optional[dict] = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class ClassReport:
    uniform_given_rank: PredicateResult
    rank_symmetric: PredicateResult
    degraded: PredicateResult
    unique_subspace_degradation: PredicateResult
    row_space_symmetric: PredicateResult
    # rank-to-rank transition values when the channel is rank symmetric
    mu: Optional[dict] = None

    def flags(self) -> dict:
        return {
            "uniform_given_rank": self.uniform_given_rank.holds,
            "rank_symmetric": self.rank_symmetric.holds,
            "degraded": self.degraded.holds,
            "unique_subspace_degradation":
                self.unique_subspace_degradation.holds,
            "row_space_symmetric": self.row_space_symmetric.holds,
        }


def _mat_json(m: MatrixGF) -> list:
    return m.to_lists()


def is_uniform_given_rank(spec: ChannelSpec) -> PredicateResult:
    """True iff the transfer PMF is constant on each rank shell."""
    by_rank: dict = {}
    for h in sorted(spec.pmf_H, key=lambda m: m.entries):
        by_rank.setdefault(gf_core.rank(h), []).append(h)
    for r, mats in sorted(by_rank.items()):
        first = mats[0]
        for h in mats[1:]:
            if spec.pmf_H[h] != spec.pmf_H[first]:
                return PredicateResult(False, {
                    "reason": "unequal mass at equal rank",
                    "rank": r, "H1": _mat_json(first), "H2": _mat_json(h),
                    "p1": str(spec.pmf_H[first]), "p2": str(spec.pmf_H[h])})
        shell = qcomb.xi2(spec.M, spec.N, r, spec.field.q)
        if len(mats) != shell:
            return PredicateResult(False, {
                "reason": "rank shell only partially covered",
                "rank": r, "support": len(mats), "shell_size": shell})
    return PredicateResult(True)


def _class_items(core: TransitionCore, u: Subspace):
    """All (E, prob) for D_U @ H over the full q^(dim U * N) cube."""
    spec = core.spec
    table = core.tables[u]
    for e in gf_core.all_matrices(spec.field, u.dim, spec.N):
        yield e, table.get(e.entries, ZERO)


def is_row_space_symmetric(core: TransitionCore) -> PredicateResult:
    """P(Y|X) on the reachable cone is a function of the two row spaces.

    Reachable outputs of any X with row space U are in bijection with
    the cube of dim(U) x N matrices E, and the probability is the class
    value of E while the output row space equals the row space of E.
    So it suffices to check, class by class, that the table is constant
    on row-space fibers of E.
    """
    for u in core.input_classes():
        seen: dict = {}
        for e, p in _class_items(core, u):
            w = span_rows(e)
            if w not in seen:
                seen[w] = (e, p)
            elif seen[w][1] != p:
                e0, p0 = seen[w]
                x = subspace_enum.representative_matrix(u, core.spec.T, "row")
                return PredicateResult(False, {
                    "reason": "probability varies within a row-space fiber",
                    "X": _mat_json(x),
                    "Y1": _mat_json(_lift(e0, core.spec.T)),
                    "Y2": _mat_json(_lift(e, core.spec.T)),
                    "p1": str(p0), "p2": str(p)})
    return PredicateResult(True)


def _lift(e: MatrixGF, t: int) -> MatrixGF:
    """Pad E with zero rows to height t (the output for X = [D_U; 0])."""
    pad = (0,) * ((t - e.rows) * e.cols)
    return MatrixGF(e.field, t, e.cols, e.entries + pad)


def is_rank_symmetric(core: TransitionCore):
    """P(Y|X) on the reachable cone is a function of (rank X, rank Y).

    Returns (PredicateResult, mu) where mu maps (rank X, rank Y) to the
    common probability when the test passes.
    """
    mu: dict = {}
    first_at: dict = {}
    for u in core.input_classes():
        for e, p in _class_items(core, u):
            key = (u.dim, gf_core.rank(e))
            if key not in mu:
                mu[key] = p
                first_at[key] = (u, e)
            elif mu[key] != p:
                u0, e0 = first_at[key]
                t = core.spec.T
                return PredicateResult(False, {
                    "reason": "probability varies at fixed (rank X, rank Y)",
                    "rank_X": key[0], "rank_Y": key[1],
                    "X1": _mat_json(
                        subspace_enum.representative_matrix(u0, t, "row")),
                    "Y1": _mat_json(_lift(e0, t)),
                    "X2": _mat_json(
                        subspace_enum.representative_matrix(u, t, "row")),
                    "Y2": _mat_json(_lift(e, t)),
                    "p1": str(mu[key]), "p2": str(p)}), None
    return PredicateResult(True), {k: v for k, v in sorted(mu.items())}


def _inputs_by_column_space(core: TransitionCore,
                            budget: int = NAIVE_TABLE_BUDGET):
    """Yield (W, [(X, B, U), ...]) for every input column space W.

    B is the full-column-rank factor with X = B @ D_U, where U is the
    row space of X and D_U its canonical basis.
    """
    spec = core.spec
    q = spec.field.q
    if q ** (spec.T * spec.M) > budget:
        raise gf_core.BudgetExceeded("input enumeration exceeds budget")
    kmax = min(spec.T, spec.M)
    for w in subspace_enum.enumerate_projective(kmax, spec.T, spec.field):
        group = []
        for x in subspace_enum.matrices_with_column_space(w, spec.M):
            u = span_rows(x)
            b = transpose(solve_factor(transpose(x), transpose(u.basis)))
            group.append((x, b, u))
        yield w, group


def _out_dist(core: TransitionCore, b: MatrixGF, u: Subspace) -> dict:
    """Support of P(.|X) as {y entries: prob} for X = b @ D_U."""
    spec = core.spec
    out = {}
    for e_ent, p in core.tables[u].items():
        e = MatrixGF(spec.field, u.dim, spec.N, e_ent)
        out[mat_mul(b, e).entries] = p
    return out


def has_unique_subspace_degradation(core: TransitionCore) -> PredicateResult:
    """P(column space of Y | X) must agree for all X with equal column space."""
    spec = core.spec
    for w, group in _inputs_by_column_space(core):
        ref = None
        for x, b, u in group:
            dist: dict = {}
            for e_ent, p in core.tables[u].items():
                e = MatrixGF(spec.field, u.dim, spec.N, e_ent)
                v = span_columns(mat_mul(b, e))
                dist[v] = dist.get(v, ZERO) + p
            if ref is None:
                ref = (x, dist)
            elif dist != ref[1]:
                bad = next(v for v in sorted(set(dist) | set(ref[1]),
                                             key=lambda s: s.sort_key())
                           if dist.get(v, ZERO) != ref[1].get(v, ZERO))
                return PredicateResult(False, {
                    "reason": "subspace channel depends on the input "
                              "representative",
                    "X1": _mat_json(ref[0]), "X2": _mat_json(x),
                    "V": bad.to_json(),
                    "p1": str(ref[1].get(bad, ZERO)),
                    "p2": str(dist.get(bad, ZERO))})
    return PredicateResult(True)


def is_degraded(core: TransitionCore) -> PredicateResult:
    """Exact test of the two degradedness conditions.

    (a) P(Y|X) is a function of the column space of X;
    (b) for every pair of outputs with equal column space, the
        likelihood columns P(Y|.) and P(Y'|.) are proportional, which
        is the input-distribution-free form of requiring the ratio
        P(Y|X)/p(Y) to be constant on output column-space fibers for
        all input laws.
    """
    spec = core.spec
    columns: dict = {}  # y entries -> {x entries: prob}
    for w, group in _inputs_by_column_space(core):
        ref = None
        for x, b, u in group:
            dist = _out_dist(core, b, u)
            if ref is None:
                ref = (x, dist)
            elif dist != ref[1]:
                y_bad = next(y for y in sorted(set(dist) | set(ref[1]))
                             if dist.get(y, ZERO) != ref[1].get(y, ZERO))
                return PredicateResult(False, {
                    "reason": "P(Y|X) depends on more than the column "
                              "space of X",
                    "X1": _mat_json(ref[0]), "X2": _mat_json(x),
                    "Y": MatrixGF(spec.field, spec.T, spec.N,
                                  y_bad).to_lists(),
                    "p1": str(ref[1].get(y_bad, ZERO)),
                    "p2": str(dist.get(y_bad, ZERO))})
            for y_ent, p in dist.items():
                columns.setdefault(y_ent, {})[x.entries] = p
    by_colspace: dict = {}
    for y_ent in sorted(columns):
        y = MatrixGF(spec.field, spec.T, spec.N, y_ent)
        by_colspace.setdefault(span_columns(y), []).append(y_ent)
    for v, ys in sorted(by_colspace.items(), key=lambda kv: kv[0].sort_key()):
        ref_ent = ys[0]
        ref_col = columns[ref_ent]
        for y_ent in ys[1:]:
            col = columns[y_ent]
            if set(col) != set(ref_col):
                return _ratio_witness(spec, ref_ent, y_ent, ref_col, col,
                                      "likelihood supports differ")
            ratios = {col[x] / ref_col[x] for x in col}
            if len(ratios) > 1:
                return _ratio_witness(spec, ref_ent, y_ent, ref_col, col,
                                      "likelihood ratio not constant")
    return PredicateResult(True)


def _ratio_witness(spec, y1_ent, y2_ent, col1, col2, reason):
    xs = sorted(set(col1) | set(col2))
    anchor = next((x for x in xs if x in col1 and x in col2), None)
    if anchor is None:
        x_bad = xs[0]
    else:
        lam_num, lam_den = col2[anchor], col1[anchor]
        x_bad = next(x for x in xs
                     if col2.get(x, ZERO) * lam_den
                     != col1.get(x, ZERO) * lam_num)
    return PredicateResult(False, {
        "reason": reason,
        "Y1": MatrixGF(spec.field, spec.T, spec.N, y1_ent).to_lists(),
        "Y2": MatrixGF(spec.field, spec.T, spec.N, y2_ent).to_lists(),
        "X": MatrixGF(spec.field, spec.T, spec.M, x_bad).to_lists()})


def classify(spec: ChannelSpec, core: TransitionCore = None) -> ClassReport:
    if core is None:
        core = transition_core(spec)
    rs, mu = is_rank_symmetric(core)
    return ClassReport(
        uniform_given_rank=is_uniform_given_rank(spec),
        rank_symmetric=rs,
        degraded=is_degraded(core),
        unique_subspace_degradation=has_unique_subspace_degradation(core),
        row_space_symmetric=is_row_space_symmetric(core),
        mu={f"{k[0]},{k[1]}": str(v) for k, v in mu.items()} if mu else None)


# Known implications between the classes; each entry is
# (name, premise flag(s), conclusion flag, requires T >= M).
_IMPLICATIONS = [
    ("uniform_given_rank -> rank_symmetric",
     ("uniform_given_rank",), "rank_symmetric", False),
    ("rank_symmetric -> degraded",
     ("rank_symmetric",), "degraded", False),
    ("degraded -> unique_subspace_degradation",
     ("degraded",), "unique_subspace_degradation", False),
    ("degraded -> row_space_symmetric",
     ("degraded",), "row_space_symmetric", False),
    ("row_space_symmetric -> unique_subspace_degradation (T >= M)",
     ("row_space_symmetric",), "unique_subspace_degradation", True),
    ("rank_symmetric -> uniform_given_rank (T >= M)",
     ("rank_symmetric",), "uniform_given_rank", True),
]


def implication_audit(report: ClassReport, T: int, M: int) -> list:
    """Return the list of class implications violated by a report.

    An empty list is the expected outcome for every channel.
    """
    flags = report.flags()
    bad = []
    for name, premises, conclusion, needs_tall in _IMPLICATIONS:
        if needs_tall and T < M:
            continue
        if all(flags[p] for p in premises) and not flags[conclusion]:
            bad.append(name)
    return bad
