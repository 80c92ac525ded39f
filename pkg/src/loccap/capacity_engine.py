"""Capacity computations for the channel Y = XH.

Shannon capacity is computed by Blahut-Arimoto over input row-space
classes: the capacity is always achieved by an input that is uniform
on each row-space fiber, so the optimization variables are one weight
per subspace of F^M (dimension at most min(T, M)).  For such inputs
the whole mutual information collapses onto the exact per-class tables
of D_U @ H, which keeps the alphabet tiny even when q^(T M) is not.

Subspace-coding capacity is computed three ways: a convex rank-domain
optimization valid for channels whose induced subspace channel is
representative independent, a lower bound via one subspace choice per
input rank, and an exhaustive maximization over deterministic
subspace-to-matrix degradations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from . import classify as classify_mod
from . import qcomb, subspace_enum
from .channel_model import (ChannelSpec, TransitionCore,
                            cond_out_rowspace_given_rowspace,
                            cond_rank_given_rowspace, transition_core)
from .gf_core import BudgetExceeded, MatrixGF, mat_mul
from .subspace_enum import Subspace, span_columns, span_rows

LOG2 = math.log2
DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 10 ** 5
DEFAULT_ASSIGNMENT_BUDGET = 10 ** 5


# ---------------------------------------------------------------------------
# Result containers.

@dataclass
class CapacityResult:
    value: float
    gap: float
    iterations: int
    converged: bool
    mode: str
    alpha: Optional[Dict[Subspace, float]] = None


@dataclass
class CssResult:
    value: float
    gap: float
    iterations: int
    converged: bool
    mode: str
    rank_pmf: Optional[Dict[int, float]] = None
    assignments_tried: int = 1
    # for the exhaustive mode: per input column space, every candidate
    # representative with its induced subspace law
    degradations: Optional[list] = None


@dataclass
class MarkovVerdict:
    long_chain: bool
    short_chain: bool
    max_violation_long: float
    max_violation_short: float


# ---------------------------------------------------------------------------
# Generic reward-augmented Blahut-Arimoto.

class ConvergenceError(Exception):
    """Blahut-Arimoto did not reach the requested gap."""


def _ba(rows: List[Dict[int, float]], rewards: Optional[List[float]],
        tol: float, max_iter: int):
    """Maximize sum_i p(i) reward(i) + I(input; output) over input PMFs.

    rows[i] maps output index to probability; rewards defaults to 0.
    Returns (value, input PMF list, gap, iterations, converged).  The
    running lower bound is checked to be monotone.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty input alphabet")
    if rewards is None:
        rewards = [0.0] * n
    alpha = [1.0 / n] * n
    prev_lower = -math.inf
    lower = upper = 0.0
    it = 0
    for it in range(1, max_iter + 1):
        p_out: Dict[int, float] = {}
        for a, row in zip(alpha, rows):
            if a == 0.0:
                continue
            for w, c in row.items():
                p_out[w] = p_out.get(w, 0.0) + a * c
        d = []
        for i, row in enumerate(rows):
            acc = rewards[i]
            for w, c in row.items():
                acc += c * LOG2(c / p_out[w])
            d.append(acc)
        upper = max(d)
        z = sum(a * 2.0 ** (di - upper) for a, di in zip(alpha, d))
        lower = upper + LOG2(z)
        if not (lower >= prev_lower - 1e-9):
            raise AssertionError(
                f"lower bound decreased: {prev_lower} -> {lower}")
        prev_lower = lower
        if upper - lower <= tol:
            return lower, alpha, upper - lower, it, True
        alpha = [a * 2.0 ** (di - upper) / z for a, di in zip(alpha, d)]
    return lower, alpha, upper - lower, it, False


# ---------------------------------------------------------------------------
# Class-level structure shared by the Shannon solvers.

@dataclass
class _ClassSetup:
    classes: List[Subspace]
    out_spaces: List[Subspace]          # row spaces of Y, inside F^N
    orbit_sizes: List[int]              # matrices per output row space
    mass_rows: List[Dict[int, Fraction]]  # P(out row space | class)
    rewards: List[float]


def _class_setup(core: TransitionCore) -> _ClassSetup:
    """Collapse the channel onto output row-space orbits.

    For an input uniform on the fiber of row space U, the output matrix
    PMF is constant on each set of outputs sharing a row space W, with
    total mass m(U, W) independent of the fiber representative.  The
    orbit has xi(T, dim W) members, so the per-matrix output
    probability is m(W) / xi(T, dim W).  Folding the orbit sizes and
    the in-class conditional entropy into a per-class reward turns the
    capacity problem into a standard discrete maximization over the
    orbit channel m.
    """
    spec = core.spec
    q = spec.field.q
    out_spaces = sorted(
        subspace_enum.enumerate_projective(min(spec.T, spec.N), spec.N,
                                           spec.field),
        key=lambda s: s.sort_key())
    w_index = {w: i for i, w in enumerate(out_spaces)}
    orbit_sizes = [qcomb.xi(spec.T, w.dim, q) for w in out_spaces]
    classes = core.input_classes()
    mass_rows, rewards = [], []
    for u in classes:
        row: Dict[int, Fraction] = {}
        h_cond = 0.0   # entropy of the conditional matrix distribution
        for e_ent, p in core.tables[u].items():
            e = MatrixGF(spec.field, u.dim, spec.N, e_ent)
            wi = w_index[span_rows(e)]
            row[wi] = row.get(wi, Fraction(0)) + p
            h_cond -= float(p) * LOG2(float(p))
        h_row = -sum(float(p) * LOG2(float(p)) for p in row.values())
        log_orbits = sum(float(p) * LOG2(orbit_sizes[wi])
                         for wi, p in row.items())
        mass_rows.append(row)
        rewards.append(h_row + log_orbits - h_cond)
    return _ClassSetup(classes, out_spaces, orbit_sizes, mass_rows, rewards)


def mi_alpha(core: TransitionCore, alpha: Dict[Subspace, object]) -> float:
    """I(X;Y) in bits for the input uniform on each row-space fiber,
    with fiber weights alpha."""
    setup = _class_setup(core)
    idx = {u: i for i, u in enumerate(setup.classes)}
    weights = [0.0] * len(setup.classes)
    for u, a in alpha.items():
        weights[idx[u]] = float(a)
    if abs(sum(weights) - 1.0) > 1e-9:
        raise ValueError("alpha does not sum to 1")
    mass: Dict[int, float] = {}
    for a, row in zip(weights, setup.mass_rows):
        if a == 0.0:
            continue
        for wi, p in row.items():
            mass[wi] = mass.get(wi, 0.0) + a * float(p)
    h_y = -sum(m * LOG2(m / setup.orbit_sizes[wi])
               for wi, m in mass.items() if m > 0.0)
    h_y_given_x = 0.0
    for a, u in zip(weights, setup.classes):
        if a == 0.0:
            continue
        h_y_given_x -= a * sum(float(p) * LOG2(float(p))
                               for p in core.tables[u].values())
    return h_y - h_y_given_x


def shannon_capacity(core: TransitionCore, tol: float = DEFAULT_TOL,
                     max_iter: int = DEFAULT_MAX_ITER) -> CapacityResult:
    """Shannon capacity in bits per channel use.

    Classes that induce identical output laws (same orbit row and same
    conditional value multiset) are interchangeable; they are merged
    before the optimization and the reported achiever concentrates the
    merged weight on the canonically first class, which makes the
    output deterministic even when the optimum is not unique.
    """
    setup = _class_setup(core)
    merged: Dict[tuple, int] = {}
    reps: List[int] = []
    for i, (u, row) in enumerate(zip(setup.classes, setup.mass_rows)):
        values = tuple(sorted(core.tables[u].values()))
        sig = (tuple(sorted(row.items())), values)
        if sig not in merged:
            merged[sig] = len(reps)
            reps.append(i)
    rows = [{wi: float(p) for wi, p in setup.mass_rows[i].items()}
            for i in reps]
    rewards = [setup.rewards[i] for i in reps]
    value, alpha, gap, its, ok = _ba(rows, rewards, tol, max_iter)
    full_alpha = {u: 0.0 for u in setup.classes}
    for i, a in zip(reps, alpha):
        full_alpha[setup.classes[i]] = a
    return CapacityResult(value, gap, its, ok, "class", full_alpha)


def shannon_capacity_naive(core: TransitionCore, tol: float = DEFAULT_TOL,
                           max_iter: int = DEFAULT_MAX_ITER,
                           budget: int = 2 ** 24) -> CapacityResult:
    """Blahut-Arimoto over the full matrix alphabet; the oracle for
    shannon_capacity."""
    spec = core.spec
    q = spec.field.q
    if q ** (spec.T * spec.M) * max(len(t) for t in core.tables.values()) \
            > budget:
        raise BudgetExceeded("full-alphabet optimization exceeds budget")
    y_index: Dict[tuple, int] = {}
    rows = []
    for w in subspace_enum.enumerate_projective(min(spec.T, spec.M), spec.T,
                                                spec.field):
        for x in subspace_enum.matrices_with_column_space(w, spec.M):
            u = span_rows(x)
            b = _col_factor(x, u)
            row: Dict[int, float] = {}
            for e_ent, p in core.tables[u].items():
                e = MatrixGF(spec.field, u.dim, spec.N, e_ent)
                y_ent = mat_mul(b, e).entries
                yi = y_index.setdefault(y_ent, len(y_index))
                row[yi] = row.get(yi, 0.0) + float(p)
            rows.append(row)
    value, alpha, gap, its, ok = _ba(rows, None, tol, max_iter)
    return CapacityResult(value, gap, its, ok, "naive")


def _col_factor(x: MatrixGF, u: Subspace) -> MatrixGF:
    """The full-column-rank B with x = B @ (basis of u)."""
    from .gf_core import solve_factor, transpose
    return transpose(solve_factor(transpose(x), transpose(u.basis)))


# ---------------------------------------------------------------------------
# Rate decompositions and bounds.

def j_rank(joint: Dict[Tuple[int, int], object], T: int, q: int) -> float:
    """The nonnegative rank-interaction rate term, in bits.

    joint is the PMF of (rank X, rank Y); each (r, s) cell contributes
    p * log2 of the ratio of full-column-rank counts xi(T,s)/xi(r,s).
    """
    out = 0.0
    for (r, s), p in joint.items():
        if p == 0:
            continue
        out += float(p) * LOG2(Fraction(qcomb.xi(T, s, q),
                                        qcomb.xi(r, s, q)))
    return out


def lemma_full_rank_decomposition(spec: ChannelSpec, T: int):
    """For T >= M and full-rank inputs the rank-interaction rate splits
    into a channel-training part plus a bounded correction.

    Returns (j, training, eps) with j = training + eps, training =
    (T - M) E[rank H] log2 q, and eps in [0, 1.8).
    """
    if T < spec.M:
        raise ValueError("requires T >= M")
    q = spec.field.q
    rank_pmf = spec.rank_pmf()
    joint = {(spec.M, s): p for s, p in rank_pmf.items()}
    j = j_rank(joint, T, q)
    training = (T - spec.M) * float(spec.expected_rank()) * LOG2(q)
    eps = qcomb.epsilon_term(rank_pmf, T, spec.M, q)
    return j, training, eps


def _row_space_joint(core: TransitionCore, alpha: Dict[Subspace, object]):
    """Joint PMF of (row space of X, row space of Y) as floats."""
    joint: Dict[Tuple[Subspace, Subspace], float] = {}
    for u, a in alpha.items():
        a = float(a)
        if a == 0.0:
            continue
        for v, p in cond_out_rowspace_given_rowspace(core, u).items():
            joint[(u, v)] = joint.get((u, v), 0.0) + a * float(p)
    return joint


def _mi(joint) -> float:
    px: Dict[object, float] = {}
    py: Dict[object, float] = {}
    for (x, y), p in joint.items():
        p = float(p)
        px[x] = px.get(x, 0.0) + p
        py[y] = py.get(y, 0.0) + p
    out = 0.0
    for (x, y), p in joint.items():
        p = float(p)
        if p > 0.0:
            out += p * LOG2(p / (px[x] * py[y]))
    return out


def bounds_row_space(core: TransitionCore, alpha: Dict[Subspace, object]):
    """Sandwich bounds on I(X;Y) for a fiber-uniform input.

    lower = j + I(row space X; row space Y); upper adds the conditional
    entropy headroom sum p(r,s) log2 xi(r,s).  The lower bound is tight
    for row-space-symmetric channels.
    """
    spec = core.spec
    q = spec.field.q
    rs_joint = _row_space_joint(core, alpha)
    rank_joint = {}
    for (u, v), p in rs_joint.items():
        key = (u.dim, v.dim)
        rank_joint[key] = rank_joint.get(key, 0.0) + p
    j = j_rank(rank_joint, spec.T, q)
    lower = j + _mi(rs_joint)
    slack = sum(p * LOG2(qcomb.xi(r, s, q))
                for (r, s), p in rank_joint.items() if p > 0 and s > 0)
    return lower, lower + slack


# ---------------------------------------------------------------------------
# Subspace coding.

def r_of_class(core: TransitionCore, u: Subspace) -> float:
    """Achievable subspace-coding rate of the constant input class u."""
    q = core.spec.field.q
    out = 0.0
    for s, p in cond_rank_given_rowspace(core, u).items():
        if p == 0:
            continue
        out += float(p) * LOG2(Fraction(qcomb.xi(core.spec.T, s, q),
                                        qcomb.xi(u.dim, s, q)))
    return out


def constant_rank_best(core: TransitionCore):
    """Best constant-rank fiber-uniform input.

    Returns (rate, class); ties prefer the smallest dimension, then the
    canonical class order.
    """
    best = None
    for u in core.input_classes():
        rate = r_of_class(core, u)
        if best is None or rate > best[0] + 1e-12:
            best = (rate, u)
    return best


def css_unique(core: TransitionCore, tol: float = DEFAULT_TOL,
               max_iter: int = DEFAULT_MAX_ITER,
               verified: bool = False) -> CssResult:
    """Subspace coding capacity for channels with a representative
    independent subspace channel, via convex rank-domain optimization.

    The objective splits into a linear per-rank reward (the constant
    rate of any class of that dimension) plus the mutual information of
    the rank channel, handled by reward-augmented Blahut-Arimoto.
    """
    if not verified:
        if not classify_mod.has_unique_subspace_degradation(core):
            raise ValueError(
                "subspace channel depends on the input representative; "
                "the rank-domain optimization does not apply")
    spec = core.spec
    by_rank: Dict[int, list] = {}
    for u in core.input_classes():
        by_rank.setdefault(u.dim, []).append(u)
    rows, rewards, ranks = [], [], []
    for r, classes in sorted(by_rank.items()):
        row0 = cond_rank_given_rowspace(core, classes[0])
        for u in classes[1:]:
            if cond_rank_given_rowspace(core, u) != row0:
                raise ValueError(
                    "output rank law differs between equal-dimension "
                    "classes; the rank-domain optimization does not apply")
        rows.append({s: float(p) for s, p in row0.items()})
        rewards.append(r_of_class(core, classes[0]))
        ranks.append(r)
    value, pmf, gap, its, ok = _ba(rows, rewards, tol, max_iter)
    return CssResult(value, gap, its, ok, "unique",
                     rank_pmf=dict(zip(ranks, pmf)))


def css_alpha_lower(core: TransitionCore, tol: float = DEFAULT_TOL,
                    max_iter: int = DEFAULT_MAX_ITER,
                    budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> CssResult:
    """Best subspace-coding rate over fiber-uniform inputs.

    A maximizer exists with a single row-space class per input rank, so
    the search enumerates one class choice per rank and solves a
    reward-augmented optimization for each combination.  The result is
    a lower bound on the subspace coding capacity, tight for channels
    with a representative independent subspace channel.
    """
    by_rank: Dict[int, list] = {}
    for u in core.input_classes():
        row = cond_rank_given_rowspace(core, u)
        entry = ({s: float(p) for s, p in row.items()}, r_of_class(core, u))
        options = by_rank.setdefault(u.dim, [])
        if entry not in options:
            options.append(entry)
    ranks = sorted(by_rank)
    total = math.prod(len(by_rank[r]) for r in ranks)
    if total > budget:
        raise BudgetExceeded(
            f"{total} per-rank class assignments exceed budget {budget}")
    best = None
    tried = 0
    for choice in product(*(by_rank[r] for r in ranks)):
        tried += 1
        rows = [c[0] for c in choice]
        rewards = [c[1] for c in choice]
        value, pmf, gap, its, ok = _ba(rows, rewards, tol, max_iter)
        if best is None or value > best.value:
            best = CssResult(value, gap, its, ok, "alpha",
                             rank_pmf=dict(zip(ranks, pmf)))
    best.assignments_tried = tried
    return best


def css_bruteforce(core: TransitionCore, tol: float = DEFAULT_TOL,
                   max_iter: int = DEFAULT_MAX_ITER,
                   budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> CssResult:
    """Exact subspace coding capacity by exhausting deterministic
    degradations (one input matrix per input column space).

    Deterministic degradations suffice for the maximum.  Identical
    subspace-channel rows are deduplicated before taking the product.
    """
    spec = core.spec
    v_spaces = sorted(
        subspace_enum.enumerate_projective(min(spec.T, spec.N), spec.T,
                                           spec.field),
        key=lambda s: s.sort_key())
    v_index = {v: i for i, v in enumerate(v_spaces)}
    per_class_rows = []
    degradations = []
    for w in subspace_enum.enumerate_projective(min(spec.T, spec.M), spec.T,
                                                spec.field):
        options = []
        seen = set()
        candidates = []
        for x in subspace_enum.matrices_with_column_space(w, spec.M):
            u = span_rows(x)
            b = _col_factor(x, u)
            row: Dict[int, Fraction] = {}
            for e_ent, p in core.tables[u].items():
                e = MatrixGF(spec.field, u.dim, spec.N, e_ent)
                vi = v_index[span_columns(mat_mul(b, e))]
                row[vi] = row.get(vi, Fraction(0)) + p
            candidates.append((x, {v_spaces[vi]: p for vi, p in row.items()}))
            key = tuple(sorted(row.items()))
            if key not in seen:
                seen.add(key)
                options.append({vi: float(p) for vi, p in row.items()})
        per_class_rows.append(options)
        degradations.append((w, candidates))
    total = math.prod(len(o) for o in per_class_rows)
    if total > budget:
        raise BudgetExceeded(
            f"{total} deterministic degradations exceed budget {budget}")
    best = None
    tried = 0
    for choice in product(*per_class_rows):
        tried += 1
        value, pmf, gap, its, ok = _ba(list(choice), None, tol, max_iter)
        if best is None or value > best.value:
            rank_pmf: Dict[int, float] = {}
            for w, p in zip((w for w in _input_colspaces(core)), pmf):
                rank_pmf[w.dim] = rank_pmf.get(w.dim, 0.0) + p
            best = CssResult(value, gap, its, ok, "bruteforce",
                             rank_pmf=rank_pmf)
    best.assignments_tried = tried
    best.degradations = degradations
    return best


def _input_colspaces(core: TransitionCore):
    spec = core.spec
    yield from subspace_enum.enumerate_projective(
        min(spec.T, spec.M), spec.T, spec.field)


# ---------------------------------------------------------------------------
# Diagnostics for comparing C with the subspace coding capacity.

def theta(spec: ChannelSpec, T: int, r: int) -> float:
    """Lower bound (in units of log2 q) on the constant-rate loss of
    using input rank r instead of full rank, for T >= M.

    Positive values certify that rank-r inputs are suboptimal for
    subspace coding at this T.
    """
    q = spec.field.q
    M = spec.M
    rank_pmf = spec.rank_pmf()
    tail = 0.0
    for k in range(r + 1, M + 1):
        tail += float(sum(p for s, p in rank_pmf.items() if s >= k))
    return ((T - M) * tail - r * (M - r)
            + LOG2(qcomb.xi_tilde(r, r, q)) / LOG2(q))


def rank_star(spec: ChannelSpec) -> int:
    """Largest rank of the transfer matrix with positive probability."""
    return max(r for r, p in spec.rank_pmf().items() if p > 0)


def markov_check(core: TransitionCore, alpha: Dict[Subspace, object],
                 tol: float = 1e-9) -> MarkovVerdict:
    """Test the two chain factorizations at a given input weighting.

    long: row space X -> rank X -> rank Y -> row space Y;
    short: row space X -> rank Y -> row space Y.
    Exact when alpha is exact; max absolute violations are reported.
    """
    joint = _row_space_joint(core, alpha)
    p_u: Dict[Subspace, float] = {}
    p_v: Dict[Subspace, float] = {}
    p_rs: Dict[Tuple[int, int], float] = {}
    p_us: Dict[Tuple[Subspace, int], float] = {}
    for (u, v), p in joint.items():
        p_u[u] = p_u.get(u, 0.0) + p
        p_v[v] = p_v.get(v, 0.0) + p
        p_rs[(u.dim, v.dim)] = p_rs.get((u.dim, v.dim), 0.0) + p
        p_us[(u, v.dim)] = p_us.get((u, v.dim), 0.0) + p
    p_r = {}
    p_s = {}
    for (r, s), p in p_rs.items():
        p_r[r] = p_r.get(r, 0.0) + p
        p_s[s] = p_s.get(s, 0.0) + p
    viol_long = viol_short = 0.0
    for (u, v), p in joint.items():
        r, s = u.dim, v.dim
        lhs = p_r[r] * p_s[s] * p
        rhs = p_u[u] * p_rs[(r, s)] * p_v[v]
        viol_long = max(viol_long, abs(lhs - rhs))
        lhs2 = p * p_s[s]
        rhs2 = p_us[(u, s)] * p_v[v]
        viol_short = max(viol_short, abs(lhs2 - rhs2))
    return MarkovVerdict(viol_long <= tol, viol_short <= tol,
                         viol_long, viol_short)


# ---------------------------------------------------------------------------
# The combined report.

VERDICT_EQUAL = "C_EQUALS_CSS"
VERDICT_EXCEEDS = "C_EXCEEDS_CSS"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class ChannelReport:
    spec: ChannelSpec
    classes: classify_mod.ClassReport
    capacity: CapacityResult
    css: CssResult
    bounds: Tuple[float, float]
    markov: MarkovVerdict
    verdict: str
    verdict_reason: str


def capacity_report(spec: ChannelSpec, tol: float = DEFAULT_TOL,
                    max_iter: int = DEFAULT_MAX_ITER,
                    css_mode: str = "auto",
                    budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> ChannelReport:
    """Classify the channel, compute C and the subspace coding capacity,
    and compare them.

    The verdict only asserts equality when a theorem applies: degraded
    channels, or row-space-symmetric channels whose capacity achiever
    satisfies the long rank chain (checked numerically at the
    Blahut-Arimoto output).  Strict excess is asserted only when the
    difference clears ten times the optimization tolerance and the
    subspace value is not merely a lower bound.
    """
    core = transition_core(spec)
    report = classify_mod.classify(spec, core)
    cap = shannon_capacity(core, tol, max_iter)
    if rank_star(spec) == 0:
        css = CssResult(0.0, 0.0, 0, True, "degenerate",
                        rank_pmf={0: 1.0})
        markov = markov_check(core, cap.alpha, tol=math.sqrt(tol))
        return ChannelReport(spec, report, cap, css, (0.0, 0.0), markov,
                             VERDICT_EQUAL, "transfer matrix is always zero")
    unique_sd = report.unique_subspace_degradation.holds
    if css_mode == "auto":
        css_mode = "unique" if unique_sd else "bruteforce"
    if css_mode == "unique":
        css = css_unique(core, tol, max_iter, verified=unique_sd)
    elif css_mode == "alpha":
        css = css_alpha_lower(core, tol, max_iter, budget)
    elif css_mode == "bruteforce":
        css = css_bruteforce(core, tol, max_iter, budget)
    else:
        raise ValueError(f"unknown css mode {css_mode!r}")
    bounds = bounds_row_space(core, cap.alpha)
    markov = markov_check(core, cap.alpha, tol=math.sqrt(tol))
    css_exact = css.mode in ("unique", "bruteforce")
    if report.degraded.holds:
        verdict = VERDICT_EQUAL
        reason = ("channel is degraded; subspace coding achieves the "
                  "Shannon capacity")
    elif css_exact and cap.value - css.value > 10 * tol:
        verdict = VERDICT_EXCEEDS
        reason = (f"C - C_ss = {cap.value - css.value:.6g} exceeds the "
                  f"comparison threshold")
    elif report.row_space_symmetric.holds and markov.long_chain:
        verdict = VERDICT_EQUAL
        reason = ("row-space-symmetric channel whose capacity achiever "
                  "satisfies the long rank chain")
    else:
        verdict = VERDICT_INCONCLUSIVE
        reason = "no applicable equality theorem and no certified gap"
    return ChannelReport(spec, report, cap, css, bounds, markov,
                         verdict, reason)
