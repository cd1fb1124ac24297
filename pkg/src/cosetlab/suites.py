"""Standard verification grids: canonical subgroup catalogs per group kind,
batched identity and inequality checks over (subgroup, irrep, basis) grids,
and the distinguishability suite with golden values and bound
configurations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import sampling
from .chartab import CharacterTable
from .gl2rep import char_table as gl2_char_table
from .groups import (
    GeneralLinearGroup,
    Group,
    Subgroup,
    SymmetricGroup,
    WreathZ2,
    subgroup_closure,
    trivial_subgroup,
)
from .sampling import SamplingContext, sampling_context
from .symrep import lambda_c_member, sn_character_table
from .wreathrep import k_build, wreath_char_table

SCHUR_TOL = 1e-8
IDENTITY_TOL = 1e-7
INEQ_TOL = 1e-7
INVARIANCE_TOL = 1e-8
WEIGHT_TOL = 1e-12
GOLDEN_TOL = 1e-10

SECOND_MOMENT_ELEMENTS = 3


@dataclass
class CheckRecord:
    group: str
    subgroup: str
    check: str
    subject: str
    lhs: float
    rhs: float
    ok: bool

    def as_json(self) -> dict:
        return {
            "group": self.group,
            "subgroup": self.subgroup,
            "check": self.check,
            "subject": self.subject,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ok": self.ok,
        }


# ---- canonical subgroup catalogs ----

def _sym_catalog(G: SymmetricGroup) -> List[Subgroup]:
    n = G.n
    out = [trivial_subgroup(G)]
    if n >= 2:
        swap = tuple([1, 0] + list(range(2, n)))
        out.append(subgroup_closure(G, [G.make(swap)], label="order-2"))
    if n >= 3:
        cyc = tuple([1, 2, 0] + list(range(3, n)))
        out.append(subgroup_closure(G, [G.make(cyc)], label="three-cycle"))
    return out


def _gl2_catalog(G: GeneralLinearGroup) -> List[Subgroup]:
    F = G.field
    out = [trivial_subgroup(G)]
    uni = ((1, 1), (0, 1))
    out.append(subgroup_closure(G, [G.make(uni)], label="unipotent"))
    if F.q == 2:
        out.append(
            subgroup_closure(G, [G.make(((0, 1), (1, 1)))], label="order-3")
        )
    else:
        torus = ((1, 0), (0, F.generator))
        out.append(subgroup_closure(G, [G.make(torus)], label="split-torus"))
    return out


def _wreath_catalog(G: WreathZ2) -> List[Subgroup]:
    base = G.base
    e = base.identity_value()
    out = [trivial_subgroup(G)]
    out.append(subgroup_closure(G, [G.make((e, e, 1))], label="order-2"))
    base_els = base.elements()
    s = base_els[1]
    small = k_build(trivial_subgroup(base), s)
    small.subgroup.label = "K-type small"
    out.append(small.subgroup)
    H0 = subgroup_closure(base, [base_els[1]], label="H0")
    s2 = next(el for el in base_els if el.value not in H0.value_set)
    big = k_build(H0, s2)
    big.subgroup.label = "K-type"
    out.append(big.subgroup)
    return out


def subgroup_catalog(G: Group) -> List[Subgroup]:
    """Deterministic list of representative subgroups for the verification
    grid: trivial plus small cyclic kinds per group family, plus the
    two-coset K shapes inside wreath products."""
    if isinstance(G, SymmetricGroup):
        return _sym_catalog(G)
    if isinstance(G, GeneralLinearGroup) and G.k == 2:
        return _gl2_catalog(G)
    if isinstance(G, WreathZ2):
        return _wreath_catalog(G)
    out = [trivial_subgroup(G)]
    for el in G.elements():
        if not G.is_identity(el):
            out.append(subgroup_closure(G, [el], label="cyclic"))
            break
    return out


# ---- grid runners ----

def _linear_indices(table: CharacterTable) -> List[int]:
    return [i for i in range(table.n_irreps) if table.dims[i] == 1]


def lemma_checks(
    ctx: SamplingContext,
    H: Subgroup,
    max_dim: Optional[int] = None,
    second_moment_elements: int = SECOND_MOMENT_ELEMENTS,
) -> List[CheckRecord]:
    """Every identity and inequality check for one subgroup: Schur means,
    second moments, variance bounds, basis sums, per-irrep distortion
    bounds, weak-distribution structure, and conjugation invariance.
    max_dim restricts the irreps examined (reduced slices for big
    groups)."""
    table = ctx.table
    gname = repr(ctx.group)
    records: List[CheckRecord] = []
    probs = sampling.weak_distribution(table, H)
    records.append(
        CheckRecord(
            gname, H.label, "weak-sum", "",
            float(probs.sum()), 1.0, abs(probs.sum() - 1.0) < 1e-9,
        )
    )
    inv_err = sampling.pg_invariance_error(table, H)
    records.append(
        CheckRecord(
            gname, H.label, "conjugation-invariance", "",
            inv_err, 0.0, inv_err < INVARIANCE_TOL,
        )
    )
    rho_list = [
        i
        for i in range(table.n_irreps)
        if max_dim is None or table.dims[i] <= max_dim
    ]
    h_values = [H.group.identity_value()]
    for el in H.elements:
        if not H.group.is_identity(el):
            h_values.append(el.value)
        if len(h_values) > second_moment_elements:
            break
    lin = _linear_indices(table)
    for i in rho_list:
        label = table.labels[i]
        d = table.dims[i]
        norms = sampling.isotypic_vector_norms(ctx, i)
        for s in range(table.n_irreps):
            lhs, rhs = float(norms[s].sum()), float(table.dims[s] ** 2)
            records.append(
                CheckRecord(
                    gname, H.label, "large-small",
                    f"rho={label} sigma={table.labels[s]}",
                    lhs, rhs, lhs <= rhs + INEQ_TOL,
                )
            )
        for b in range(d):
            lhs, rhs = sampling.schur_expectation_check(ctx, H, i, b)
            records.append(
                CheckRecord(
                    gname, H.label, "schur-expectation",
                    f"rho={label} b={b}", lhs, rhs,
                    abs(lhs - rhs) < SCHUR_TOL,
                )
            )
            lhs, rhs = sampling.variance_bound_check(ctx, H, i, b)
            records.append(
                CheckRecord(
                    gname, H.label, "variance-bound",
                    f"rho={label} b={b}", lhs, rhs, lhs <= rhs + INEQ_TOL,
                )
            )
            for j, hv in enumerate(h_values):
                lhs, rhs = sampling.second_moment_check(ctx, hv, i, b)
                records.append(
                    CheckRecord(
                        gname, H.label, "second-moment",
                        f"rho={label} b={b} h#{j}", lhs, rhs,
                        abs(lhs - rhs) < IDENTITY_TOL,
                    )
                )
        if probs[i] > WEIGHT_TOL:
            err = sampling.basis_average_error(ctx, H, i)
            records.append(
                CheckRecord(
                    gname, H.label, "basis-average",
                    f"rho={label}", err, 0.0, err < SCHUR_TOL,
                )
            )
            if i not in lin and lin:
                lhs, rhs = sampling.general_method_check(ctx, H, i, lin)
                records.append(
                    CheckRecord(
                        gname, H.label, "general-method",
                        f"rho={label} S=linear", lhs, rhs,
                        lhs <= rhs + INEQ_TOL,
                    )
                )
    return records


def dist_checks(
    ctx: SamplingContext,
    H: Subgroup,
    S_indices: Optional[Sequence[int]] = None,
    D: Optional[int] = None,
    golden: Optional[float] = None,
    mc_samples: Optional[int] = None,
    seed: int = 0,
) -> List[CheckRecord]:
    """Distinguishability of one subgroup: range check, optional golden
    value, optional bound configuration."""
    table = ctx.table
    gname = repr(ctx.group)
    res = sampling.distinguishability(ctx, H, mc_samples=mc_samples, seed=seed)
    records = [
        CheckRecord(
            gname, H.label, "dist-range", "",
            res.value, sampling.DIST_CEILING,
            -1e-12 < res.value <= sampling.DIST_CEILING + 1e-12,
        )
    ]
    if golden is not None:
        records.append(
            CheckRecord(
                gname, H.label, "dist-golden", "",
                res.value, golden, abs(res.value - golden) < GOLDEN_TOL,
            )
        )
    if S_indices is not None and D is not None:
        bc = sampling.distinguishability_bound(table, H, S_indices, D)
        records.append(
            CheckRecord(
                gname, H.label, "dist-bound",
                f"S={','.join(bc.S_labels) or 'empty'} D={D}",
                res.value, bc.value, res.value <= bc.value + INEQ_TOL,
            )
        )
    return records


# ---- named suites ----

def grid_tables() -> List[Tuple[str, Callable[[], CharacterTable]]]:
    """The small-instance grid: name plus a character-table factory."""
    return [
        ("s3", lambda: sn_character_table(3)),
        ("s4", lambda: sn_character_table(4)),
        ("gl2_2", lambda: gl2_char_table(2)),
        ("gl2_3", lambda: gl2_char_table(3)),
        ("wreath_s3", lambda: wreath_char_table(sn_character_table(3))),
    ]


def big_wreath_table() -> CharacterTable:
    from .chartab import product_table
    from .groups import general_linear_group, product_group, symmetric_group

    g1t = gl2_char_table(2)
    g2t = sn_character_table(3)
    G = product_group(g1t.group, g2t.group)
    return wreath_char_table(product_table(G, g1t, g2t))


def run_lemma_suite(name: str, seed: int = 0) -> List[CheckRecord]:
    """name: one of small, gl2, wreath, big-wreath, all."""
    records: List[CheckRecord] = []
    picks: List[Tuple[str, Callable[[], CharacterTable]]] = []
    if name in ("small", "all"):
        picks += [t for t in grid_tables() if t[0] in ("s3", "s4")]
    if name in ("gl2", "all"):
        picks += [t for t in grid_tables() if t[0] in ("gl2_2", "gl2_3")]
    if name in ("wreath", "all"):
        picks += [t for t in grid_tables() if t[0] == "wreath_s3"]
    if not picks and name not in ("big-wreath",):
        raise ValueError(f"unknown suite {name!r}")
    for _, factory in picks:
        ctx = sampling_context(factory(), seed=seed)
        for H in subgroup_catalog(ctx.group):
            records.extend(lemma_checks(ctx, H))
    if name in ("big-wreath", "all"):
        ctx = sampling_context(big_wreath_table(), seed=seed)
        for H in subgroup_catalog(ctx.group):
            records.extend(lemma_checks(ctx, H, max_dim=2))
    return records


def lambda_set_indices(table: CharacterTable, c: Fraction) -> List[int]:
    """Indices of the partitions with a long first row or column at rate
    c, in a symmetric-group table."""
    parts = table.partition_rows
    n = sum(parts[0])
    return [
        i for i, la in enumerate(parts) if lambda_c_member(la, n, c)
    ]


def run_dist_suite(seed: int = 0) -> List[CheckRecord]:
    """Golden distinguishability values plus bound configurations: the
    symmetric-group goldens, GL2 over q in {3,4,5} with S = linear irreps
    and D = q-1, and S6 against the long-row set at c = 1/6."""
    records: List[CheckRecord] = []

    table = sn_character_table(3)
    ctx = sampling_context(table, seed=seed)
    G = ctx.group
    trivialH = trivial_subgroup(G)
    order2 = subgroup_closure(G, [G.make((1, 0, 2))], label="order-2")
    alt = subgroup_closure(G, [G.make((1, 2, 0))], label="three-cycle")
    records.extend(dist_checks(ctx, trivialH, golden=0.0))
    records.extend(dist_checks(ctx, order2, golden=1.0 / 3.0))
    records.extend(dist_checks(ctx, alt, golden=0.0))

    for q in (3, 4, 5):
        table = gl2_char_table(q)
        ctx = sampling_context(table, seed=seed)
        G = ctx.group
        uni = subgroup_closure(
            G, [G.make(((1, 1), (0, 1)))], label="unipotent"
        )
        lin = _linear_indices(table)
        records.extend(dist_checks(ctx, uni, S_indices=lin, D=q - 1))

    table = sn_character_table(6)
    ctx = sampling_context(table, seed=seed)
    G = ctx.group
    order2 = subgroup_closure(
        G, [G.make((1, 0, 2, 3, 4, 5))], label="order-2"
    )
    S = lambda_set_indices(table, Fraction(1, 6))
    d_S = max(table.dims[i] for i in S)
    records.extend(dist_checks(ctx, order2, S_indices=S, D=d_S**2 + 1))
    return records


def failed(records: Sequence[CheckRecord]) -> List[CheckRecord]:
    return [r for r in records if not r.ok]
