from __future__ import annotations

import numpy as np
import pytest

from cosetlab import sampling
from cosetlab.gl2rep import char_table as gl2_char_table
from cosetlab.groups import subgroup_closure, trivial_subgroup
from cosetlab.sampling import (
    conditional_distribution,
    distinguishability,
    distinguishability_bound,
    expected_l1sq,
    irrep_distortion,
    isotypic_vector_norms,
    pg_invariance_error,
    projection_bundle,
    sampling_context,
    sampling_report,
    tensor_conj_multiplicities,
    weak_distribution,
)
from cosetlab.symrep import sn_character_table
from cosetlab.wreathrep import wreath_char_table


def s3_ctx(seed=0):
    return sampling_context(sn_character_table(3), seed=seed)


def s3_subgroups(ctx):
    G = ctx.group
    order2 = subgroup_closure(G, [G.make((1, 0, 2))], label="order-2")
    alt = subgroup_closure(G, [G.make((1, 2, 0))], label="three-cycle")
    return trivial_subgroup(G), order2, alt


def test_projection_bundle_is_projector():
    ctx = s3_ctx()
    _, order2, alt = s3_subgroups(ctx)
    for H in (order2, alt):
        for real in ctx.reals:
            b = projection_bundle(real, H)
            P = b.matrix
            assert np.allclose(P @ P, P, atol=1e-10)
            assert np.allclose(P, P.conj().T, atol=1e-10)
            assert abs(b.trace - np.trace(P).real) < 1e-10


def test_weak_distribution_golden_values():
    ctx = s3_ctx()
    trivialH, order2, alt = s3_subgroups(ctx)
    t = ctx.table
    by_label = lambda p: {t.labels[i]: p[i] for i in range(t.n_irreps)}
    w2 = by_label(weak_distribution(t, order2))
    assert abs(w2["(3,)"] - 1 / 3) < 1e-10
    assert abs(w2["(2, 1)"] - 2 / 3) < 1e-10
    assert abs(w2["(1, 1, 1)"]) < 1e-10
    w3 = by_label(weak_distribution(t, alt))
    assert abs(w3["(3,)"] - 1 / 2) < 1e-10
    assert abs(w3["(2, 1)"]) < 1e-10
    assert abs(w3["(1, 1, 1)"] - 1 / 2) < 1e-10
    # the trivial subgroup weights irreps by d^2/|G|
    w1 = weak_distribution(t, trivialH)
    for i in range(t.n_irreps):
        assert abs(w1[i] - t.dims[i] ** 2 / 6) < 1e-10


def test_weak_distribution_sums_to_one():
    ctx = sampling_context(gl2_char_table(3))
    G = ctx.group
    uni = subgroup_closure(G, [G.make(((1, 1), (0, 1)))])
    assert abs(weak_distribution(ctx.table, uni).sum() - 1.0) < 1e-9


def test_conditional_distribution_golden_at_identity():
    # two-dimensional irrep, order-2 subgroup: the projector fixes the first
    # realized coordinate, so observing at g = identity gives (1, 0)
    ctx = s3_ctx()
    _, order2, _ = s3_subgroups(ctx)
    std = next(i for i in range(3) if ctx.table.dims[i] == 2)
    bundle = projection_bundle(ctx.reals[std], order2)
    p = conditional_distribution(ctx.reals[std], bundle, ctx.group.identity_value())
    assert np.allclose(sorted(p), [0.0, 1.0], atol=1e-10)


def test_conditional_distribution_zero_weight_raises():
    ctx = s3_ctx()
    _, order2, _ = s3_subgroups(ctx)
    sign = next(
        i for i in range(3)
        if ctx.table.dims[i] == 1 and ctx.table.labels[i] == "(1, 1, 1)"
    )
    bundle = projection_bundle(ctx.reals[sign], order2)
    with pytest.raises(ValueError):
        conditional_distribution(ctx.reals[sign], bundle, ctx.group.identity_value())


def test_distinguishability_golden_values():
    ctx = s3_ctx()
    trivialH, order2, alt = s3_subgroups(ctx)
    assert distinguishability(ctx, trivialH).value < 1e-10
    assert abs(distinguishability(ctx, order2).value - 1 / 3) < 1e-10
    assert distinguishability(ctx, alt).value < 1e-10


def test_distinguishability_seed_independent():
    # the exhaustive value is a basis-independent quantity
    a = distinguishability(s3_ctx(0), s3_subgroups(s3_ctx(0))[1]).value
    b = distinguishability(s3_ctx(5), s3_subgroups(s3_ctx(5))[1]).value
    assert abs(a - b) < 1e-10


def test_distinguishability_monte_carlo_agrees():
    ctx = s3_ctx()
    _, order2, _ = s3_subgroups(ctx)
    exact = distinguishability(ctx, order2).value
    mc = distinguishability(ctx, order2, mc_samples=4000, seed=3)
    assert mc.std_error is not None
    assert abs(mc.value - exact) < 6 * mc.std_error + 1e-6


def test_expected_l1sq_matches_direct_average():
    ctx = s3_ctx()
    _, order2, _ = s3_subgroups(ctx)
    std = next(i for i in range(3) if ctx.table.dims[i] == 2)
    real = ctx.reals[std]
    bundle = projection_bundle(real, order2)
    values = [el.value for el in ctx.els]
    direct = np.mean(
        [
            np.abs(conditional_distribution(real, bundle, v) - 0.5).sum() ** 2
            for v in values
        ]
    )
    assert abs(expected_l1sq(real, bundle, values) - direct) < 1e-12


def test_tensor_conj_multiplicities_are_integral():
    for table in (sn_character_table(4), gl2_char_table(3)):
        for i in range(table.n_irreps):
            m = tensor_conj_multiplicities(table, i)
            assert np.all(m >= 0)
            # the trivial irrep appears exactly once in rho (x) rho*
            trivial = next(
                j for j in range(table.n_irreps)
                if table.dims[j] == 1
                and np.allclose(np.asarray(table.values[j]), 1.0)
            )
            assert m[trivial] == 1
            assert sum(m[j] * table.dims[j] for j in range(table.n_irreps)) == table.dims[i] ** 2


def test_isotypic_vector_norms_resolve_identity():
    ctx = sampling_context(sn_character_table(4))
    for idx in range(ctx.table.n_irreps):
        norms = isotypic_vector_norms(ctx, idx)
        d = ctx.reals[idx].dim
        # each b (x) b* is a unit vector split across isotypic pieces
        assert np.allclose(norms.sum(axis=0), 1.0, atol=1e-8)
        mults = tensor_conj_multiplicities(ctx.table, idx)
        for j in range(ctx.table.n_irreps):
            if mults[j] == 0:
                assert np.all(norms[j] < 1e-10)


def test_irrep_distortion_zero_weight_raises():
    ctx = s3_ctx()
    _, order2, _ = s3_subgroups(ctx)
    sign = next(i for i in range(3) if ctx.table.labels[i] == "(1, 1, 1)")
    with pytest.raises(ValueError):
        irrep_distortion(ctx, order2, sign)


def test_pg_invariance_is_exact_for_weak_probabilities():
    ctx = sampling_context(gl2_char_table(2))
    G = ctx.group
    H = subgroup_closure(G, [G.make(((0, 1), (1, 1)))], label="order-3")
    assert pg_invariance_error(ctx.table, H) < 1e-12


def test_distinguishability_bound_components():
    table = gl2_char_table(3)
    G = table.group
    uni = subgroup_closure(G, [G.make(((1, 1), (0, 1)))], label="unipotent")
    lin = [i for i in range(table.n_irreps) if table.dims[i] == 1]
    comp = distinguishability_bound(table, uni, lin, D=2)
    assert comp.d_S == 1
    assert comp.D == 2
    assert comp.value >= 0
    # bound must dominate the exhaustive value
    ctx = sampling_context(table)
    assert distinguishability(ctx, uni).value <= min(4.0, comp.value) + 1e-7
    with pytest.raises(ValueError):
        distinguishability_bound(table, uni, lin, D=1)


def test_sampling_report_shape():
    ctx = s3_ctx()
    _, order2, _ = s3_subgroups(ctx)
    rep = sampling_report(ctx, order2)
    body = rep.as_json()
    assert body["group"] == "S3"
    assert body["subgroup_order"] == 2
    assert abs(body["distinguishability"] - 1 / 3) < 1e-10
    assert abs(sum(body["weak_distribution"].values()) - 1.0) < 1e-9


def test_wreath_minus_irrep_zero_weight_under_swap():
    # a minus-type irrep over a linear base character has zero projector
    # trace for the swap subgroup, a legitimate zero-weight case
    table = wreath_char_table(sn_character_table(3))
    ctx = sampling_context(table)
    W = ctx.group
    e3 = (0, 1, 2)
    swap = subgroup_closure(W, [W.make((e3, e3, 1))], label="swap")
    probs = weak_distribution(table, swap)
    minus_over_linear = [
        i
        for i, m in enumerate(table.wreath_meta)
        if m.kind == "minus" and table.base_table.dims[m.i] == 1
    ]
    assert minus_over_linear
    for i in minus_over_linear:
        assert probs[i] < 1e-12
