from __future__ import annotations

import numpy as np
import pytest

from cosetlab.chartab import CharacterTable
from cosetlab.gl2rep import (
    char_table,
    class_key,
    conjugacy_classes_gl2,
    corollary_bound,
    gl2_class_list,
    linear_multiplicities,
    linear_multiplicity_pattern,
    scalar_free_check,
)
from cosetlab.fields import field_of_order, glk_order
from cosetlab.groups import general_linear_group, subgroup_closure
from cosetlab.symrep import sn_character_table

QS = (2, 3, 4, 5)

# number of distinct linear constituents of rho (x) rho^*, per irrep
LINEAR_MULT_Q2 = {"U0": 1, "V0": 2, "X1": 1}
LINEAR_MULT_Q3 = {
    "U0": 1,
    "U1": 1,
    "V0": 1,
    "V1": 1,
    "W0,1": 2,
    "X1": 1,
    "X2": 2,
    "X5": 1,
}


def family_of(label: str) -> str:
    return label[0]


def test_irrep_count_and_dimension_sum():
    for q in QS:
        t = char_table(q)
        assert t.n_irreps == q * q - 1
        assert sum(d * d for d in t.dims) == glk_order(q, 2)
        assert glk_order(q, 2) == (q - 1) ** 2 * q * (q + 1)


def test_family_census():
    for q in QS:
        t = char_table(q)
        counts: dict = {}
        for i in range(t.n_irreps):
            counts[family_of(t.labels[i])] = counts.get(family_of(t.labels[i]), 0) + 1
            d = t.dims[i]
            fam = family_of(t.labels[i])
            assert d == {"U": 1, "V": q, "W": q + 1, "X": q - 1}[fam]
        assert counts.get("U", 0) == q - 1
        assert counts.get("V", 0) == q - 1
        assert counts.get("W", 0) == (q - 1) * (q - 2) // 2
        assert counts.get("X", 0) == q * (q - 1) // 2


def test_row_orthogonality():
    for q in QS:
        assert char_table(q).orthogonality_error() < 1e-9


def test_class_census():
    for q in QS:
        G = general_linear_group(2, q)
        classes = gl2_class_list(field_of_order(q))
        assert len(classes) == q * q - 1
        assert sum(c.size for c in classes) == G.order
        # closed-form census agrees with explicit membership on small q
        if q <= 3:
            reps = conjugacy_classes_gl2(G, with_members=True)
            assert len(reps) == len(classes)
            assert sum(c.size for c in reps) == G.order


def test_class_key_is_conjugation_invariant():
    for q in (2, 3):
        F = field_of_order(q)
        G = general_linear_group(2, q)
        els = G.elements()
        for x in els[:12]:
            for g in els[:12]:
                assert class_key(F, x.value) == class_key(F, G.conj(g, x).value)


def test_q2_table_matches_s3():
    # GL_2(F_2) is isomorphic to S_3: same multiset of irreducible characters
    t = char_table(2)
    s3 = sn_character_table(3)
    got = sorted(
        sorted(np.round(np.real(row)).astype(int).tolist())
        for row in _expanded_rows(t)
    )
    want = sorted(
        sorted(np.round(np.real(row)).astype(int).tolist())
        for row in _expanded_rows(s3)
    )
    assert got == want


def _expanded_rows(t: CharacterTable):
    # repeat each class value class-size times so row multisets are comparable
    out = []
    for i in range(t.n_irreps):
        row = []
        for j in range(len(t.class_keys)):
            row.extend([t.values[i][j]] * t.class_sizes[j])
        out.append(np.asarray(row))
    return out


def test_linear_multiplicity_cap():
    for q in QS:
        t = char_table(q)
        for i in range(t.n_irreps):
            m = linear_multiplicities(t, i)
            assert 1 <= m <= 2
            pattern = linear_multiplicity_pattern(t, i)
            assert all(v == 1 for v in pattern.values())
            assert "U0" in pattern  # the trivial character always appears once


def test_linear_multiplicity_frozen_patterns():
    t2 = char_table(2)
    assert {t2.labels[i]: linear_multiplicities(t2, i) for i in range(3)} == LINEAR_MULT_Q2
    t3 = char_table(3)
    got = {t3.labels[i]: linear_multiplicities(t3, i) for i in range(t3.n_irreps)}
    assert got == LINEAR_MULT_Q3


def test_char_sum_over_subgroup_is_invariant_dimension():
    # sum of chi over a subgroup is |H| times the fixed-space dimension
    t = char_table(3)
    G = t.group
    H = subgroup_closure(G, [G.make(((1, 1), (0, 1)))], label="unipotent")
    for i in range(t.n_irreps):
        s = t.char_sum_over(i, H)
        assert abs(s.imag) < 1e-9
        dim_fixed = s.real / H.order
        assert abs(dim_fixed - round(dim_fixed)) < 1e-7
        assert round(dim_fixed) >= 0


def test_scalar_free_check():
    G = general_linear_group(2, 3)
    uni = subgroup_closure(G, [G.make(((1, 1), (0, 1)))])
    assert scalar_free_check(uni)
    scalars = subgroup_closure(G, [G.make(((2, 0), (0, 2)))])
    assert not scalar_free_check(scalars)
    with pytest.raises(ValueError):
        corollary_bound(scalars, 3)
    assert corollary_bound(uni, 3) == 28.0 * 9 / 3
