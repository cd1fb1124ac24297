from __future__ import annotations

import numpy as np
import pytest

from cosetlab.groups import subgroup_closure, trivial_subgroup, wreath_z2
from cosetlab.realize import check_traces, realize_table
from cosetlab.symrep import sn_character_table
from cosetlab.gl2rep import char_table as gl2_char_table
from cosetlab.wreathrep import (
    k_build,
    k_max_normalized_char,
    swap_matrix,
    wreath_char_table,
)


def s3_wreath():
    return wreath_char_table(sn_character_table(3))


def test_irrep_census():
    t = s3_wreath()
    assert t.n_irreps == 9
    assert sum(d * d for d in t.dims) == 72
    kinds = [m.kind for m in t.wreath_meta]
    assert kinds.count("pair") == 3
    assert kinds.count("plus") == 3
    assert kinds.count("minus") == 3
    assert sorted(t.dims) == [1, 1, 1, 1, 2, 4, 4, 4, 4]
    assert t.orthogonality_error() < 1e-9


def test_character_values_from_base_table():
    # pair: chi_i(g1)chi_j(g2) + chi_i(g2)chi_j(g1) off the swap, 0 on it;
    # plus/minus: chi(g1)chi(g2) off the swap, +-chi(g1 g2) on it
    base = sn_character_table(3)
    t = s3_wreath()
    G0 = base.group
    W = t.group
    for el in W.elements():
        g1, g2, bit = el.value
        a, b = G0.make(g1), G0.make(g2)
        for idx, m in enumerate(t.wreath_meta):
            got = t.value(idx, el)
            ci = lambda g: base.values[m.i][base.class_index_of(g)]
            cj = lambda g: base.values[m.j][base.class_index_of(g)]
            if bit == 0:
                if m.kind == "pair":
                    want = ci(a) * cj(b) + ci(b) * cj(a)
                else:
                    want = ci(a) * ci(b)
            else:
                if m.kind == "pair":
                    want = 0.0
                else:
                    sign = 1.0 if m.kind == "plus" else -1.0
                    want = sign * ci(G0.mul(a, b))
            assert abs(got - want) < 1e-8


def test_realized_traces_match_table():
    t = s3_wreath()
    reals = realize_table(t)
    assert check_traces(t, reals) < 1e-8


def test_swap_matrix_exchanges_tensor_factors():
    rng = np.random.default_rng(0)
    for d in (2, 3):
        S = swap_matrix(d)
        A = rng.normal(size=(d, d))
        B = rng.normal(size=(d, d))
        assert np.allclose(S @ np.kron(A, B) @ S, np.kron(B, A), atol=1e-12)
        assert np.allclose(S @ S, np.eye(d * d), atol=1e-12)


def test_k_two_coset_structure():
    base = sn_character_table(3)
    G0 = base.group
    H0 = subgroup_closure(G0, [G0.make((1, 0, 2))], label="order-2")
    s = G0.make((1, 2, 0))
    K = k_build(H0, s)
    assert K.order == 2 * H0.order**2
    s_inv = G0.inv(s)
    H0s = {G0.mul(h, s).value for h in H0.elements}
    sH0s = {G0.conj(s, h).value for h in H0.elements}
    sinvH0 = {G0.mul(s_inv, h).value for h in H0.elements}
    for v in K.subgroup.value_set:
        g1, g2, bit = v
        if bit == 0:
            assert g1 in H0.value_set and g2 in sH0s
        else:
            assert g1 in H0s and g2 in sinvH0


def test_k_build_rejects_foreign_shift():
    base = sn_character_table(3)
    G0 = base.group
    other = sn_character_table(4).group
    H0 = trivial_subgroup(G0)
    with pytest.raises(ValueError):
        k_build(H0, other.identity())


def test_k_normalized_character_relations_exhaustive():
    # every subgroup of the base paired with every shift, all nine irreps
    base = sn_character_table(3)
    t = s3_wreath()
    G0 = base.group
    subgroups = [trivial_subgroup(G0)]
    seen = {frozenset(trivial_subgroup(G0).value_set)}
    for el in G0.elements():
        for el2 in G0.elements():
            H = subgroup_closure(G0, [el, el2])
            key = frozenset(H.value_set)
            if key not in seen:
                seen.add(key)
                subgroups.append(H)
    assert len(subgroups) == 6  # 1, three of order 2, A3, S3
    for H0 in subgroups:
        for s in G0.elements():
            K = k_build(H0, s)
            for idx in range(t.n_irreps):
                rep = k_max_normalized_char(t, idx, K)
                assert rep.bound_ok
                assert rep.direct <= rep.formula + 1e-8
                if rep.kind in ("plus", "minus"):
                    # the closed form is exact for the two extensions
                    assert rep.equality_holds
                else:
                    assert rep.equality_holds is None


def test_wreath_over_matrix_base():
    t = wreath_char_table(gl2_char_table(2))
    assert t.n_irreps == 3 + 3 + 3
    assert sum(d * d for d in t.dims) == 2 * 36
    assert t.orthogonality_error() < 1e-9
