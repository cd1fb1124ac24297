"""Coset-state Fourier sampling: subgroup projections in each irrep, weak
and strong sampling distributions, exact distinguishability of a subgroup
from the trivial one, and the identity and inequality checks that drive the
distinguishability bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .chartab import CharacterTable
from .groups import Group, GroupElement, Subgroup
from .realize import RealizedIrrep, realize_table

STRUCT_TOL = 1e-8
INEQ_TOL = 1e-7
INT_TOL = 1e-6
WEAK_SUM_TOL = 1e-9
ZERO_TRACE_TOL = 1e-12
DIST_CEILING = 4.0


@dataclass
class SamplingContext:
    """Character table plus one fixed unitary realization per irrep; all
    strong-sampling output is relative to the realized coordinate basis."""
    table: CharacterTable
    reals: List[RealizedIrrep]
    els: List[GroupElement]
    basis: str
    _norms_cache: Dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def group(self) -> Group:
        return self.table.group


def sampling_context(table: CharacterTable, seed: int = 0) -> SamplingContext:
    reals = realize_table(table, seed=seed)
    return SamplingContext(
        table=table,
        reals=reals,
        els=table.group.elements(),
        basis=f"realized coordinates, seed {seed}",
    )


@dataclass
class ProjectionBundle:
    subgroup: Subgroup
    label: str
    matrix: np.ndarray
    trace: float


def projection_bundle(real: RealizedIrrep, H: Subgroup) -> ProjectionBundle:
    """Average of the realized irrep over H; verified to be an orthogonal
    projection."""
    P = np.zeros((real.dim, real.dim), dtype=complex)
    for v in H.value_set:
        P += real.mat_value(v)
    P /= H.order
    assert np.abs(P - P.conj().T).max() < STRUCT_TOL
    assert np.abs(P @ P - P).max() < STRUCT_TOL
    tr = float(np.trace(P).real)
    return ProjectionBundle(subgroup=H, label=real.label, matrix=P, trace=tr)


def weak_distribution(table: CharacterTable, H: Subgroup) -> np.ndarray:
    """P_H(rho) = d_rho * (sum of chi_rho over H) / |G| for every irrep;
    the outcome distribution of measuring only the irrep name."""
    G = table.group
    probs = np.empty(table.n_irreps)
    for i in range(table.n_irreps):
        s = table.char_sum_over(i, H)
        assert abs(s.imag) < STRUCT_TOL
        probs[i] = table.dims[i] * s.real / G.order
    assert probs.min() > -WEAK_SUM_TOL
    probs = np.clip(probs, 0.0, None)
    assert abs(probs.sum() - 1.0) < WEAK_SUM_TOL
    return probs


def conditional_distribution(
    real: RealizedIrrep, bundle: ProjectionBundle, g_value
) -> np.ndarray:
    """Distribution over the realized basis after observing irrep rho with
    the hidden subgroup conjugated by g: diagonal of U^* Pi U over tr Pi
    where U = rho(g)."""
    if bundle.trace < ZERO_TRACE_TOL:
        raise ValueError(
            "projection has zero trace: the irrep has zero weak weight and "
            "the conditional distribution is undefined"
        )
    U = real.mat_value(g_value)
    diag = np.einsum("ji,jk,ki->i", U.conj(), bundle.matrix, U).real
    p = diag / bundle.trace
    assert abs(p.sum() - 1.0) < STRUCT_TOL
    return np.clip(p, 0.0, None)


def _conditional_stack(
    real: RealizedIrrep, bundle: ProjectionBundle, values: Sequence
) -> np.ndarray:
    """Conditional distributions for every listed group value, one row per
    value."""
    if bundle.trace < ZERO_TRACE_TOL:
        raise ValueError(
            "projection has zero trace: the irrep has zero weak weight and "
            "the conditional distribution is undefined"
        )
    mats = np.stack([real.mat_value(v) for v in values])
    diag = np.einsum("gji,jk,gki->gi", mats.conj(), bundle.matrix, mats).real
    return diag / bundle.trace


def expected_l1sq(
    real: RealizedIrrep, bundle: ProjectionBundle, values: Sequence
) -> float:
    """Mean over the listed g of the squared L1 distance between the
    conditional distribution and uniform."""
    conds = _conditional_stack(real, bundle, values)
    dists = np.abs(conds - 1.0 / real.dim).sum(axis=1)
    return float(np.mean(dists**2))


@dataclass
class DistResult:
    value: float
    weak: np.ndarray
    per_irrep: Dict[str, float]
    mc_samples: Optional[int] = None
    std_error: Optional[float] = None


def distinguishability(
    ctx: SamplingContext,
    H: Subgroup,
    mc_samples: Optional[int] = None,
    seed: int = 0,
) -> DistResult:
    """Expected squared L1 distance between the strong-sampling conditional
    and uniform, weighted by the weak distribution; exhaustive over g by
    default, Monte Carlo over g when mc_samples is set."""
    probs = weak_distribution(ctx.table, H)
    if H.order == 1:
        # trivial subgroup: the fixed-space projection is the identity, so
        # every conditional is uniform and the distance is zero exactly
        return DistResult(
            value=0.0,
            weak=probs,
            per_irrep={lbl: 0.0 for lbl in ctx.table.labels},
            mc_samples=mc_samples,
            std_error=0.0 if mc_samples is not None else None,
        )
    if mc_samples is None:
        g_values = [el.value for el in ctx.els]
    else:
        rng = np.random.default_rng(seed)
        idx = rng.integers(0, len(ctx.els), size=mc_samples)
        g_values = [ctx.els[i].value for i in idx]
    per_irrep: Dict[str, float] = {}
    per_sample = np.zeros(len(g_values))
    for i, real in enumerate(ctx.reals):
        if probs[i] < ZERO_TRACE_TOL:
            per_irrep[ctx.table.labels[i]] = 0.0
            continue
        bundle = projection_bundle(real, H)
        conds = _conditional_stack(real, bundle, g_values)
        dists = np.abs(conds - 1.0 / real.dim).sum(axis=1) ** 2
        per_irrep[ctx.table.labels[i]] = float(np.mean(dists))
        per_sample += probs[i] * dists
    value = float(np.mean(per_sample))
    assert -STRUCT_TOL < value < DIST_CEILING + STRUCT_TOL
    std_error = None
    if mc_samples is not None:
        std_error = float(np.std(per_sample, ddof=1) / np.sqrt(len(per_sample)))
    return DistResult(
        value=value,
        weak=probs,
        per_irrep=per_irrep,
        mc_samples=mc_samples,
        std_error=std_error,
    )


# ---- isotypic decomposition of rho (x) rho* ----

def tensor_conj_multiplicities(table: CharacterTable, rho_idx: int) -> np.ndarray:
    """Multiplicity of each irrep inside rho (x) rho*, from characters;
    nonnegative integers, and the trivial irrep appears exactly once."""
    ev = table.element_values()
    sq = np.abs(ev[rho_idx]) ** 2
    raw = ev.conj() @ sq / table.group.order
    assert np.abs(raw.imag).max() < INT_TOL
    mult = np.rint(raw.real).astype(int)
    assert np.abs(raw.real - mult).max() < INT_TOL and mult.min() >= 0
    return mult


def isotypic_projection(
    ctx: SamplingContext, rho_idx: int, sigma_idx: int
) -> np.ndarray:
    """Projection onto the sigma-isotypic component of rho (x) rho*,
    accumulated from characters; d^2 x d^2."""
    real = ctx.reals[rho_idx]
    ev = ctx.table.element_values()
    d2 = real.dim**2
    P = np.zeros((d2, d2), dtype=complex)
    for j, el in enumerate(ctx.els):
        U = real.mat_value(el.value)
        P += np.conj(ev[sigma_idx, j]) * np.kron(U, U.conj())
    P *= ctx.table.dims[sigma_idx] / ctx.group.order
    assert np.abs(P @ P - P).max() < STRUCT_TOL
    return P


def isotypic_vector_norms(ctx: SamplingContext, rho_idx: int) -> np.ndarray:
    """norms[sigma, i] = squared norm of the sigma-isotypic projection of
    b_i (x) b_i*, for every irrep sigma and every realized basis vector;
    uses (A (x) A*)(b (x) b*) = col (x) col* to stay in d^2 vectors.
    Also certifies completeness: the projections of b (x) b* sum back to
    it.  Cached on the context (independent of any subgroup)."""
    cached = ctx._norms_cache.get(rho_idx)
    if cached is not None:
        return cached
    real = ctx.reals[rho_idx]
    table = ctx.table
    ev = table.element_values()
    d = real.dim
    W = np.zeros((table.n_irreps, d, d * d), dtype=complex)
    for j, el in enumerate(ctx.els):
        U = real.mat_value(el.value)
        V = np.einsum("ai,bi->iab", U, U.conj()).reshape(d, d * d)
        W += ev[:, j].conj()[:, None, None] * V[None, :, :]
    dims = np.asarray(table.dims, dtype=float)
    W *= (dims / ctx.group.order)[:, None, None]
    recon = W.sum(axis=0)
    target = np.zeros((d, d * d), dtype=complex)
    for i in range(d):
        target[i, i * d + i] = 1.0
    assert np.abs(recon - target).max() < STRUCT_TOL
    norms = (np.abs(W) ** 2).sum(axis=2)
    ctx._norms_cache[rho_idx] = norms
    return norms


# ---- identity and inequality checks ----

def schur_expectation_check(
    ctx: SamplingContext, H: Subgroup, rho_idx: int, b_idx: int
) -> Tuple[float, float]:
    """Mean over all g of |Pi_{H^g} b|^2 against tr(Pi_H)/d."""
    real = ctx.reals[rho_idx]
    bundle = projection_bundle(real, H)
    mats = np.stack([real.mat_value(el.value) for el in ctx.els])
    diag = np.einsum(
        "gj,jk,gk->g", mats[:, :, b_idx].conj(), bundle.matrix, mats[:, :, b_idx]
    ).real
    return float(np.mean(diag)), bundle.trace / real.dim


def second_moment_check(
    ctx: SamplingContext, h_value, rho_idx: int, b_idx: int
) -> Tuple[float, float]:
    """E_g |<b, rho(g^-1 h g) b>|^2 against the isotypic expansion
    sum_sigma (chi_sigma(h)/d_sigma) |Pi_sigma (b (x) b*)|^2."""
    real = ctx.reals[rho_idx]
    G = ctx.group
    Uh = real.mat_value(h_value)
    vals = []
    for el in ctx.els:
        col = real.mat_value(el.value)[:, b_idx]
        vals.append(abs(np.vdot(col, Uh @ col)) ** 2)
    lhs = float(np.mean(vals))
    norms = isotypic_vector_norms(ctx, rho_idx)
    h_el = GroupElement(G, h_value)
    rhs = complex(0)
    for s in range(ctx.table.n_irreps):
        rhs += (
            ctx.table.value(s, h_el) / ctx.table.dims[s] * norms[s, b_idx]
        )
    assert abs(rhs.imag) < INEQ_TOL
    return lhs, float(rhs.real)


def variance_bound_check(
    ctx: SamplingContext, H: Subgroup, rho_idx: int, b_idx: int
) -> Tuple[float, float]:
    """Variance over g of |Pi_{H^g} b|^2 against
    sum over sigma appearing in rho (x) rho* of
    (max normalized character of sigma on H minus identity) times the
    isotypic norm of b (x) b*."""
    real = ctx.reals[rho_idx]
    bundle = projection_bundle(real, H)
    mats = np.stack([real.mat_value(el.value) for el in ctx.els])
    diag = np.einsum(
        "gj,jk,gk->g", mats[:, :, b_idx].conj(), bundle.matrix, mats[:, :, b_idx]
    ).real
    lhs = float(np.var(diag))
    mult = tensor_conj_multiplicities(ctx.table, rho_idx)
    norms = isotypic_vector_norms(ctx, rho_idx)
    rhs = 0.0
    for s in range(ctx.table.n_irreps):
        if mult[s] > 0:
            rhs += ctx.table.normalized_char_max(s, H) * norms[s, b_idx]
    return lhs, rhs


def largesmall_check(
    ctx: SamplingContext, rho_idx: int, sigma_idx: int
) -> Tuple[float, float]:
    """Sum over the basis of the sigma-isotypic norms of b (x) b* against
    d_sigma^2."""
    norms = isotypic_vector_norms(ctx, rho_idx)
    return float(norms[sigma_idx].sum()), float(ctx.table.dims[sigma_idx] ** 2)


def irrep_distortion(ctx: SamplingContext, H: Subgroup, rho_idx: int) -> float:
    """E_g |P_{H^g}(.|rho) - uniform|_1^2 for one irrep; the quantity the
    per-irrep bounds control."""
    real = ctx.reals[rho_idx]
    bundle = projection_bundle(real, H)
    if bundle.trace < ZERO_TRACE_TOL:
        raise ValueError("irrep has zero weak weight under this subgroup")
    return expected_l1sq(real, bundle, [el.value for el in ctx.els])


def general_method_check(
    ctx: SamplingContext, H: Subgroup, rho_idx: int, S_indices: Sequence[int]
) -> Tuple[float, float]:
    """Per-irrep distortion against
    4|H|^2 (max normalized character outside S + |S inside rho (x) rho*| *
    d_S^2 / d_rho) for rho outside S."""
    S = set(S_indices)
    if rho_idx in S:
        raise ValueError("rho must lie outside S")
    lhs = irrep_distortion(ctx, H, rho_idx)
    table = ctx.table
    chi_bar = 0.0
    for s in range(table.n_irreps):
        if s not in S:
            chi_bar = max(chi_bar, table.normalized_char_max(s, H))
    d_S = max((table.dims[s] for s in S), default=0)
    mult = tensor_conj_multiplicities(table, rho_idx)
    overlap = sum(1 for s in S if mult[s] > 0)
    rhs = 4.0 * H.order**2 * (
        chi_bar + overlap * d_S**2 / table.dims[rho_idx]
    )
    return lhs, rhs


def pg_invariance_error(table: CharacterTable, H: Subgroup) -> float:
    """Largest deviation of the weak distribution of any conjugate of H
    from that of H itself; zero because characters are class functions."""
    G = table.group
    base = weak_distribution(table, H)
    dims = np.asarray(table.dims, dtype=float)
    worst = 0.0
    for g in G.elements():
        cols = [
            table.class_index_of(GroupElement(G, v))
            for v in H.conjugate_values(g)
        ]
        sums = table.values[:, cols].sum(axis=1)
        probs = dims * sums.real / G.order
        worst = max(worst, float(np.abs(probs - base).max()))
    return worst


def basis_average_error(ctx: SamplingContext, H: Subgroup, rho_idx: int) -> float:
    """Deviation of the g-averaged conditional distribution from uniform;
    zero by the averaging argument behind the Schur check."""
    real = ctx.reals[rho_idx]
    bundle = projection_bundle(real, H)
    conds = _conditional_stack(real, bundle, [el.value for el in ctx.els])
    return float(np.abs(conds.mean(axis=0) - 1.0 / real.dim).max())


# ---- the distinguishability bound ----

@dataclass
class BoundComponents:
    S_labels: Tuple[str, ...]
    D: int
    d_S: int
    chi_bar_rest: float
    delta: int
    small_count: int
    subgroup_order: int
    value: float

    def as_json(self) -> dict:
        return {
            "S": list(self.S_labels),
            "D": self.D,
            "d_S": self.d_S,
            "chi_bar_rest": self.chi_bar_rest,
            "delta": self.delta,
            "small_count": self.small_count,
            "subgroup_order": self.subgroup_order,
            "value": self.value,
        }


def distinguishability_bound(
    table: CharacterTable, H: Subgroup, S_indices: Sequence[int], D: int
) -> BoundComponents:
    """4|H|^2 (chi_bar over the complement of S + Delta d_S^2 / D +
    (count of irreps of dimension below D) D^2 / |G|), where Delta is the
    largest number of members of S inside rho (x) rho* over irreps of
    dimension at least D; requires D > d_S^2."""
    S = set(S_indices)
    d_S = max((table.dims[s] for s in S), default=0)
    if D <= d_S**2:
        raise ValueError("dimension threshold must exceed d_S^2")
    chi_bar = 0.0
    for s in range(table.n_irreps):
        if s not in S:
            chi_bar = max(chi_bar, table.normalized_char_max(s, H))
    large = [i for i in range(table.n_irreps) if table.dims[i] >= D]
    delta = 0
    for i in large:
        mult = tensor_conj_multiplicities(table, i)
        delta = max(delta, sum(1 for s in S if mult[s] > 0))
    small_count = table.n_irreps - len(large)
    value = 4.0 * H.order**2 * (
        chi_bar + delta * d_S**2 / D + small_count * D**2 / table.group.order
    )
    return BoundComponents(
        S_labels=tuple(table.labels[s] for s in sorted(S)),
        D=D,
        d_S=d_S,
        chi_bar_rest=chi_bar,
        delta=delta,
        small_count=small_count,
        subgroup_order=H.order,
        value=value,
    )


# ---- aggregate report ----

@dataclass
class SamplingReport:
    group_label: str
    subgroup_label: str
    subgroup_order: int
    basis: str
    weak: Dict[str, float]
    dist: float
    mc_samples: Optional[int]
    std_error: Optional[float]
    bound: Optional[BoundComponents]

    def as_json(self) -> dict:
        out = {
            "group": self.group_label,
            "subgroup": self.subgroup_label,
            "subgroup_order": self.subgroup_order,
            "basis": self.basis,
            "weak_distribution": self.weak,
            "distinguishability": self.dist,
        }
        if self.mc_samples is not None:
            out["mc_samples"] = self.mc_samples
            out["std_error"] = self.std_error
        if self.bound is not None:
            out["bound"] = self.bound.as_json()
        return out


def sampling_report(
    ctx: SamplingContext,
    H: Subgroup,
    S_indices: Optional[Sequence[int]] = None,
    D: Optional[int] = None,
    mc_samples: Optional[int] = None,
    seed: int = 0,
) -> SamplingReport:
    res = distinguishability(ctx, H, mc_samples=mc_samples, seed=seed)
    bound = None
    if S_indices is not None and D is not None:
        bound = distinguishability_bound(ctx.table, H, S_indices, D)
    weak = {
        ctx.table.labels[i]: float(res.weak[i]) for i in range(ctx.table.n_irreps)
    }
    return SamplingReport(
        group_label=repr(ctx.group),
        subgroup_label=H.label or f"order-{H.order} subgroup",
        subgroup_order=H.order,
        basis=ctx.basis,
        weak=weak,
        dist=res.value,
        mc_samples=mc_samples,
        std_error=res.std_error,
        bound=bound,
    )
