from __future__ import annotations

import random

import pytest

from cosetlab import hsp
from cosetlab.fields import (
    apply_perm_to_cols,
    field_of_order,
    mat_inv,
    mat_mul,
    mat_rank,
)
from cosetlab.goppa import LinearCode, automorphisms
from cosetlab.groups import trivial_subgroup, wreath_z2
from cosetlab.hsp import (
    McElieceInstance,
    attack,
    brute_stabilizer,
    check_right_injective,
    extract_shift,
    hidden_subgroup_of,
    keygen,
    lift_f,
    public_matrix,
    random_instance,
    shift_problem,
    shift_set,
    stabilizer_order_product,
)
from cosetlab.wreathrep import k_build


def tiny_instance(seed=0):
    return random_instance(field_of_order(2), 2, 3, seed=seed)


def test_keygen_is_seed_deterministic():
    F = field_of_order(2)
    M = ((1, 0, 1), (0, 1, 1))
    a = keygen(F, M, seed=9)
    b = keygen(F, M, seed=9)
    assert a == b
    c = keygen(F, M, seed=10)
    assert a != c


def test_keygen_force_hooks():
    F = field_of_order(2)
    M = ((1, 0, 1), (0, 1, 1))
    A = ((1, 1), (0, 1))
    P = (2, 0, 1)
    inst = keygen(F, M, seed=0, force_A=A, force_P=P)
    assert inst.A == A and inst.P == P
    assert inst.Mstar == public_matrix(F, A, M, P)
    with pytest.raises(ValueError):
        keygen(F, M, seed=0, force_A=((1, 1), (1, 1)))


def test_public_matrix_composition():
    # the public key is A (M with columns moved by P)
    F = field_of_order(3)
    M = ((1, 2, 0), (0, 1, 1))
    A = ((2, 1), (1, 1))
    P = (1, 2, 0)
    assert public_matrix(F, A, M, P) == mat_mul(F, A, apply_perm_to_cols(M, P))


def test_instance_json_roundtrip_and_tamper_rejection():
    inst = tiny_instance()
    back = McElieceInstance.from_json(inst.as_json())
    assert back == inst
    bad = inst.as_json()
    bad["Mstar"][0][0] ^= 1
    with pytest.raises(ValueError):
        McElieceInstance.from_json(bad)
    singular = inst.as_json()
    singular["A"] = [[1, 1], [1, 1]]
    with pytest.raises(ValueError):
        McElieceInstance.from_json(singular)


def test_random_instance_rank_floor():
    F = field_of_order(2)
    for seed in range(8):
        inst = random_instance(F, 2, 4, seed=seed, min_rank=2)
        assert mat_rank(F, inst.M) == 2


def test_witness_relates_the_two_functions():
    # f0(s x) = f1(x) for every x in the base group
    inst = tiny_instance(3)
    prob = shift_problem(inst)
    G = prob.group
    s = prob.witness
    for x in G.elements():
        assert prob.f0(G.mul(s, x).value) == prob.f1(x.value)


def test_function_values_are_transported_matrices():
    inst = tiny_instance(4)
    F = inst.field()
    prob = shift_problem(inst)
    G = prob.group
    for el in G.elements()[:20]:
        A, P = el.value
        assert prob.f0(el.value) == apply_perm_to_cols(
            mat_mul(F, mat_inv(F, A), inst.M), P
        )
    assert prob.f0(prob.witness.value) == inst.Mstar


def test_base_stabilizer_order_product():
    # |H0| = |aut(code of M)| x |Fix(M)|
    for seed in (0, 1, 2, 5):
        inst = tiny_instance(seed)
        H0 = brute_stabilizer(inst)
        assert H0.order == stabilizer_order_product(inst)
        F = inst.field()
        code = LinearCode(F, inst.M)
        assert H0.order % automorphisms(code).order == 0


def test_base_stabilizer_fixes_message_matrix():
    inst = tiny_instance(6)
    prob = shift_problem(inst)
    H0 = brute_stabilizer(inst)
    for v in prob.group.elements():
        assert (prob.f0(v.value) == inst.M) == (v.value in H0.value_set)


def test_shift_set_is_right_coset_of_stabilizer():
    inst = tiny_instance(7)
    prob = shift_problem(inst)
    G = prob.group
    H0 = brute_stabilizer(inst)
    want = {G.mul(h, prob.witness).value for h in H0.elements}
    assert shift_set(inst) == frozenset(want)


def test_lifted_function_hides_the_two_coset_subgroup():
    inst = tiny_instance(8)
    hidden = lift_f(shift_problem(inst))
    W = hidden.group
    assert check_right_injective(hidden.f, W)
    K = hidden_subgroup_of(hidden.f, W)
    H0 = brute_stabilizer(inst)
    oracle = k_build(H0, hidden.problem.witness)
    assert K.value_set == oracle.subgroup.value_set
    assert K.order == 2 * H0.order**2


def test_lifted_function_constant_exactly_on_left_cosets():
    inst = tiny_instance(9)
    hidden = lift_f(shift_problem(inst))
    W = hidden.group
    K = hidden_subgroup_of(hidden.f, W)
    els = W.elements()
    fvals = {el.value: hidden.f(el.value) for el in els}
    for x in els[:24]:
        for k in K.elements:
            assert fvals[W.mul(k, x).value] == fvals[x.value]


def test_extract_shift_requires_swap_coset_element():
    W = wreath_z2(shift_problem(tiny_instance()).group)
    with pytest.raises(ValueError):
        extract_shift(trivial_subgroup(W))


def test_attack_recovers_equivalent_key():
    for seed in (0, 1, 2):
        inst = tiny_instance(seed)
        res = attack(inst)
        assert res.right_injective
        assert res.k_formula_match
        assert res.size_match
        assert res.valid
        F = inst.field()
        assert public_matrix(F, res.recovered_A, inst.M, res.recovered_P) == inst.Mstar
        body = res.as_json()
        assert body["valid"] and body["H0_order"] * 2 * body["H0_order"] == 2 * body["H0_order"] ** 2


def test_attack_larger_permutation_side():
    inst = random_instance(field_of_order(2), 2, 4, seed=1, min_rank=2)
    res = attack(inst)
    assert res.valid and res.k_formula_match and res.size_match
