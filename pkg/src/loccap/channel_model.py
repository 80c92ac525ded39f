"""The matrix channel Y = XH: spec I/O, exact transition probabilities,
and derived conditional distributions.

Transition probabilities are computed once per input row-space class:
for each subspace U of F^M we pick the canonical full-row-rank matrix
D_U (the RREF basis of U) and tabulate the exact distribution of
D_U @ H.  Every P(Y|X) is then a single table lookup after factoring X
and Y through a common full-column-rank matrix.  A direct summation
over the support of H serves as the oracle for that fast path.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Tuple

from . import gf_core, qcomb, subspace_enum
from .gf_core import (BudgetExceeded, FieldSpec, MatrixGF, mat_mul,
                      solve_factor, transpose)
from .subspace_enum import Subspace, span_columns, span_rows

CORE_TABLE_BUDGET = 2 ** 20
NAIVE_TABLE_BUDGET = 2 ** 24

ZERO = Fraction(0)


class ChannelSpecError(Exception):
    """Invalid channel specification (file or constructor input)."""


@dataclass(frozen=True)
class ChannelSpec:
    """A channel Y = XH: field, shape parameters, and the exact PMF of H."""

    field: FieldSpec
    T: int
    M: int
    N: int
    pmf_H: Dict[MatrixGF, Fraction]

    def __post_init__(self):
        if min(self.T, self.M, self.N) < 1:
            raise ChannelSpecError("T, M, N must be positive")
        if not self.pmf_H:
            raise ChannelSpecError("empty transfer-matrix support")
        total = ZERO
        for h, p in self.pmf_H.items():
            if h.rows != self.M or h.cols != self.N:
                raise ChannelSpecError(
                    f"support matrix has shape {h.rows}x{h.cols}, "
                    f"expected {self.M}x{self.N}")
            if h.field != self.field:
                raise ChannelSpecError("support matrix over the wrong field")
            if p <= 0:
                raise ChannelSpecError("probability masses must be positive")
            total += p
        if total != 1:
            raise ChannelSpecError(f"PMF sums to {total}, not 1")

    def rank_pmf(self) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for h, p in self.pmf_H.items():
            r = gf_core.rank(h)
            out[r] = out.get(r, ZERO) + p
        return out

    def expected_rank(self) -> Fraction:
        return sum((Fraction(r) * p for r, p in self.rank_pmf().items()),
                   ZERO)


@dataclass
class TransitionCore:
    """Per-row-space-class transition tables.

    For each U in Pj(min(T,M), F^M): the representative D_U (RREF basis
    of U, full row rank) and the exact map from E = D_U @ H (keyed by
    entry tuple) to its probability.
    """

    spec: ChannelSpec
    tables: Dict[Subspace, Dict[Tuple[int, ...], Fraction]] = dc_field(
        default_factory=dict)

    @property
    def field(self) -> FieldSpec:
        return self.spec.field

    def representative(self, u: Subspace) -> MatrixGF:
        return u.basis

    def input_classes(self):
        """Row-space classes U, in canonical order."""
        return sorted(self.tables, key=lambda u: u.sort_key())


def transition_core(spec: ChannelSpec,
                    budget: int = CORE_TABLE_BUDGET) -> TransitionCore:
    """Tabulate the exact distribution of D_U @ H for every class U."""
    core = TransitionCore(spec)
    kmax = min(spec.T, spec.M)
    for u in subspace_enum.enumerate_projective(kmax, spec.M, spec.field):
        if spec.field.q ** (u.dim * spec.N) > budget:
            raise BudgetExceeded(
                f"per-class table for dim {u.dim} exceeds budget {budget}")
        d_u = u.basis
        dist: Dict[Tuple[int, ...], Fraction] = {}
        for h, p in spec.pmf_H.items():
            e = mat_mul(d_u, h)
            dist[e.entries] = dist.get(e.entries, ZERO) + p
        core.tables[u] = dist
    return core


def p_y_given_x(core: TransitionCore, x: MatrixGF, y: MatrixGF) -> Fraction:
    """Exact P(Y=y | X=x) via the class table.

    Zero whenever the column space of y is not inside the column space
    of x; otherwise with D the class representative of the row space of
    x and B = (x^T / D^T)^T, it is Pr{D @ H = y / B}.
    """
    spec = core.spec
    if x.rows != spec.T or x.cols != spec.M:
        raise ChannelSpecError("input has wrong shape")
    if y.rows != spec.T or y.cols != spec.N:
        raise ChannelSpecError("output has wrong shape")
    if not subspace_enum.contains(span_columns(x), span_columns(y)):
        return ZERO
    u = span_rows(x)
    table, d = core.tables[u], u.basis
    # x^T = d^T @ C, so x = B @ d with B = C^T full column rank.
    b = transpose(solve_factor(transpose(x), transpose(d)))
    e = solve_factor(y, b)
    return table.get(e.entries, ZERO)


def transition_naive(spec: ChannelSpec,
                     budget: int = NAIVE_TABLE_BUDGET):
    """Full table {(x.entries, y.entries): P(y|x)} by direct summation."""
    q = spec.field.q
    n_inputs = q ** (spec.T * spec.M)
    if n_inputs * len(spec.pmf_H) > budget:
        raise BudgetExceeded("naive table exceeds budget")
    table: Dict[Tuple, Fraction] = {}
    for x in gf_core.all_matrices(spec.field, spec.T, spec.M):
        for h, p in spec.pmf_H.items():
            y = mat_mul(x, h)
            key = (x.entries, y.entries)
            table[key] = table.get(key, ZERO) + p
    return table


def cond_rank_given_rowspace(core: TransitionCore,
                             u: Subspace) -> Dict[int, Fraction]:
    """P(rank(Y) = s | row space of X is u), exact."""
    spec = core.spec
    out: Dict[int, Fraction] = {}
    for e_entries, p in core.tables[u].items():
        e = MatrixGF(spec.field, u.dim, spec.N, e_entries)
        s = gf_core.rank(e)
        out[s] = out.get(s, ZERO) + p
    return out


def cond_out_rowspace_given_rowspace(core: TransitionCore, u: Subspace
                                     ) -> Dict[Subspace, Fraction]:
    """P(row space of Y = V | row space of X is u), exact."""
    spec = core.spec
    out: Dict[Subspace, Fraction] = {}
    for e_entries, p in core.tables[u].items():
        e = MatrixGF(spec.field, u.dim, spec.N, e_entries)
        v = span_rows(e)
        out[v] = out.get(v, ZERO) + p
    return out


def rank_joint(core: TransitionCore, alpha) -> Dict[Tuple[int, int], object]:
    """Joint PMF of (rank X, rank Y) induced by a row-space input PMF."""
    out: Dict[Tuple[int, int], object] = {}
    for u, pu in alpha.items():
        if pu == 0:
            continue
        for s, ps in cond_rank_given_rowspace(core, u).items():
            key = (u.dim, s)
            out[key] = out.get(key, 0) + pu * ps
    return out


# ---------------------------------------------------------------------------
# Generators for standard channel families.

def generate(kind: str, *, q: int, M: int, N: int = None, T: int = 1,
             rank_pmf=None) -> ChannelSpec:
    """Build a ChannelSpec for one of the standard transfer-matrix families.

    kinds: "iid_uniform" (every M x N matrix equally likely),
    "full_rank_uniform" (uniform over invertible M x M, N forced to M),
    "uniform_given_rank" (mass p(r) spread evenly over all rank-r
    matrices), "custom_rank_dist" (mass p(r) concentrated on one
    canonical rank-r matrix; deliberately not uniform given rank).
    """
    field = FieldSpec(q)
    if kind == "full_rank_uniform":
        N = M
    if N is None:
        raise ChannelSpecError("N is required")
    pmf: Dict[MatrixGF, Fraction] = {}
    if kind == "iid_uniform":
        mass = Fraction(1, q ** (M * N))
        for h in gf_core.all_matrices(field, M, N):
            pmf[h] = mass
    elif kind == "full_rank_uniform":
        count = qcomb.xi(M, M, q)
        for d in gf_core.enumerate_full_rank(M, M, field):
            pmf[d] = Fraction(1, count)
    elif kind in ("uniform_given_rank", "custom_rank_dist"):
        if rank_pmf is None:
            raise ChannelSpecError(f"{kind} requires a rank PMF")
        rank_pmf = {int(r): Fraction(p) for r, p in rank_pmf.items()}
        if any(p < 0 for p in rank_pmf.values()):
            raise ChannelSpecError("negative rank probability")
        if sum(rank_pmf.values()) != 1:
            raise ChannelSpecError("rank PMF does not sum to 1")
        if any(r > min(M, N) or r < 0 for r, p in rank_pmf.items() if p > 0):
            raise ChannelSpecError("rank outside [0, min(M,N)]")
        if kind == "uniform_given_rank":
            for h in gf_core.all_matrices(field, M, N):
                p = rank_pmf.get(gf_core.rank(h), ZERO)
                if p > 0:
                    pmf[h] = p / qcomb.xi2(M, N, gf_core.rank(h), q)
        else:
            for r, p in sorted(rank_pmf.items()):
                if p == 0:
                    continue
                # Canonical rank-r matrix: identity block, zeros elsewhere.
                ent = tuple(1 if (i == j and i < r) else 0
                            for i in range(M) for j in range(N))
                pmf[MatrixGF(field, M, N, ent)] = p
    else:
        raise ChannelSpecError(f"unknown generator kind {kind!r}")
    return ChannelSpec(field, T, M, N, pmf)


def random_channel(rng, q: int, T: int, M: int, N: int,
                   max_support: int = 6) -> ChannelSpec:
    """A random transfer-matrix PMF with rational masses, for oracle
    cross-checks.  Deterministic for a given random.Random state."""
    field = FieldSpec(q)
    total = q ** (M * N)
    size = rng.randint(1, min(max_support, total))
    chosen = set()
    while len(chosen) < size:
        ent = tuple(rng.randrange(q) for _ in range(M * N))
        chosen.add(ent)
    weights = [rng.randint(1, 9) for _ in chosen]
    denom = sum(weights)
    pmf = {MatrixGF(field, M, N, ent): Fraction(w, denom)
           for ent, w in zip(sorted(chosen), weights)}
    return ChannelSpec(field, T, M, N, pmf)


# ---------------------------------------------------------------------------
# JSON channel-spec I/O.
#
# Schema: {"q": int, "T": int, "M": int, "N": int,
#          "pmf": [{"H": [[int, ...], ...], "p": "num/den"}, ...]}
# Probabilities are decimal-free rational strings; support matrices
# must be distinct.

def _parse_rational(s, where: str) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or not re.fullmatch(r"\d+(/\d+)?", s.strip()):
        raise ChannelSpecError(f"{where}: probability must be a rational "
                               f"string like \"1/6\", got {s!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise ChannelSpecError(f"{where}: bad rational {s!r}: {exc}") from exc


def spec_from_dict(doc: dict) -> ChannelSpec:
    for key in ("q", "T", "M", "N", "pmf"):
        if key not in doc:
            raise ChannelSpecError(f"missing field {key!r}")
    try:
        field = FieldSpec(int(doc["q"]))
    except gf_core.GFError as exc:
        raise ChannelSpecError(str(exc)) from exc
    T, M, N = int(doc["T"]), int(doc["M"]), int(doc["N"])
    pmf: Dict[MatrixGF, Fraction] = {}
    for i, item in enumerate(doc["pmf"]):
        where = f"pmf[{i}]"
        if "H" not in item or "p" not in item:
            raise ChannelSpecError(f"{where}: needs keys 'H' and 'p'")
        try:
            h = gf_core.matrix(field, item["H"])
        except gf_core.GFError as exc:
            raise ChannelSpecError(f"{where}: {exc}") from exc
        if h in pmf:
            raise ChannelSpecError(f"{where}: duplicate support matrix")
        pmf[h] = _parse_rational(item["p"], where)
    return ChannelSpec(field, T, M, N, pmf)


def spec_to_dict(spec: ChannelSpec) -> dict:
    items = sorted(spec.pmf_H.items(), key=lambda kv: kv[0].entries)
    return {
        "q": spec.field.q, "T": spec.T, "M": spec.M, "N": spec.N,
        "pmf": [{"H": h.to_lists(),
                 "p": f"{p.numerator}/{p.denominator}"}
                for h, p in items],
    }


def load_channel(path) -> ChannelSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ChannelSpecError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return spec_from_dict(doc)
    except ChannelSpecError as exc:
        raise ChannelSpecError(f"{path}: {exc}") from exc


def save_channel(spec: ChannelSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_dict(spec), fh, indent=1)
        fh.write("\n")


def core_to_dict(core: TransitionCore) -> dict:
    """Cacheable JSON form of a transition core."""
    out = []
    for u in core.input_classes():
        dist = [{"E": list(e), "p": f"{p.numerator}/{p.denominator}"}
                for e, p in sorted(core.tables[u].items())]
        out.append({"U": u.to_json(), "dist": dist})
    return {"channel": spec_to_dict(core.spec), "classes": out}
