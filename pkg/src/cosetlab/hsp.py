"""Scrambler-permutation key recovery as a hidden subgroup computation: key
generation, the two stabilizer-shift functions on GL_k x S_n, their lift to
the wreath product, right-injectivity certification, explicit hidden
subgroups, and shift extraction back to a valid private key.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from . import fields, goppa
from .fields import Fq, Matrix, field_of_order
from .groups import (
    DirectProduct,
    Group,
    GroupElement,
    GROUP_ENUM_CAP,
    Subgroup,
    WreathZ2,
    general_linear_group,
    product_group,
    symmetric_group,
    wreath_z2,
)
from .wreathrep import KSubgroup, k_build


@dataclass(frozen=True)
class McElieceInstance:
    q: int
    k: int
    n: int
    M: Matrix
    A: Matrix
    P: Tuple[int, ...]
    Mstar: Matrix
    seed: Optional[int] = None

    def field(self) -> Fq:
        return field_of_order(self.q)

    def base_group(self) -> DirectProduct:
        return product_group(
            general_linear_group(self.k, self.q), symmetric_group(self.n)
        )

    def wreath_group(self) -> WreathZ2:
        return wreath_z2(self.base_group())

    def as_json(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "n": self.n,
            "seed": self.seed,
            "M": [list(r) for r in self.M],
            "A": [list(r) for r in self.A],
            "P": list(self.P),
            "Mstar": [list(r) for r in self.Mstar],
        }

    @staticmethod
    def from_json(obj: dict) -> "McElieceInstance":
        inst = McElieceInstance(
            q=int(obj["q"]),
            k=int(obj["k"]),
            n=int(obj["n"]),
            M=tuple(tuple(int(x) for x in r) for r in obj["M"]),
            A=tuple(tuple(int(x) for x in r) for r in obj["A"]),
            P=tuple(int(x) for x in obj["P"]),
            Mstar=tuple(tuple(int(x) for x in r) for r in obj["Mstar"]),
            seed=obj.get("seed"),
        )
        F = inst.field()
        if public_matrix(F, inst.A, inst.M, inst.P) != inst.Mstar:
            raise ValueError("public matrix does not match A*M*P")
        if not fields.mat_is_invertible(F, inst.A):
            raise ValueError("scrambler is singular")
        return inst


def public_matrix(F: Fq, A: Matrix, M: Matrix, P: Tuple[int, ...]) -> Matrix:
    return fields.mat_mul(F, A, fields.apply_perm_to_cols(M, P))


def random_matrix(rng: random.Random, F: Fq, k: int, n: int) -> Matrix:
    return tuple(tuple(rng.randrange(F.q) for _ in range(n)) for _ in range(k))


def random_invertible(rng: random.Random, F: Fq, k: int) -> Matrix:
    while True:
        A = random_matrix(rng, F, k, k)
        if fields.mat_is_invertible(F, A):
            return A


def random_instance(
    F: Fq, k: int, n: int, seed: int, min_rank: int = 1
) -> McElieceInstance:
    """Seeded instance whose message matrix has rank at least min_rank;
    low-rank matrices blow up the stabilizer (the zero matrix is fixed by
    all of GL_k x S_n) and carry little key information."""
    rng = random.Random(seed)
    while True:
        M = random_matrix(rng, F, k, n)
        if fields.mat_rank(F, M) >= min_rank:
            break
    return keygen(F, M, seed=rng.randrange(2**32))


def keygen(
    F: Fq,
    M: Matrix,
    seed: int,
    force_A: Optional[Matrix] = None,
    force_P: Optional[Tuple[int, ...]] = None,
) -> McElieceInstance:
    """Instance with uniformly random scrambler (rejection sampling) and
    permutation (shuffle), deterministic from the seed; force hooks pin
    either secret for tests."""
    k = len(M)
    n = len(M[0])
    rng = random.Random(seed)
    A = force_A if force_A is not None else random_invertible(rng, F, k)
    if force_P is not None:
        P = tuple(force_P)
    else:
        p = list(range(n))
        rng.shuffle(p)
        P = tuple(p)
    if not fields.mat_is_invertible(F, A):
        raise ValueError("forced scrambler is singular")
    return McElieceInstance(
        q=F.q, k=k, n=n, M=M, A=A, P=P,
        Mstar=public_matrix(F, A, M, P), seed=seed,
    )


# ---- the shift pair and its wreath lift ----

@dataclass
class ShiftProblem:
    group: DirectProduct
    f0: Callable[[object], Matrix]
    f1: Callable[[object], Matrix]
    witness: GroupElement  # a known shift, for oracle tests only


@dataclass
class HiddenSubgroupInstance:
    group: WreathZ2
    f: Callable[[object], tuple]
    problem: ShiftProblem


def _memoized_stabilizer_map(F: Fq, target: Matrix) -> Callable[[object], Matrix]:
    cache: Dict[object, Matrix] = {}

    def f(value):
        got = cache.get(value)
        if got is None:
            Av, Pv = value
            got = fields.mat_mul(
                F, fields.mat_inv(F, Av), fields.apply_perm_to_cols(target, Pv)
            )
            cache[value] = got
        return got

    return f


def shift_problem(inst: McElieceInstance) -> ShiftProblem:
    """f0(A,P) = A^-1 M P and f1(A,P) = A^-1 M* P; the recorded witness
    shift is (A^-1, P) for the secret pair."""
    F = inst.field()
    G = inst.base_group()
    witness = G.make((fields.mat_inv(F, inst.A), inst.P))
    return ShiftProblem(
        group=G,
        f0=_memoized_stabilizer_map(F, inst.M),
        f1=_memoized_stabilizer_map(F, inst.Mstar),
        witness=witness,
    )


def lift_f(problem: ShiftProblem) -> HiddenSubgroupInstance:
    """Single function on (G x G) semidirect Z_2 hiding the two-coset
    subgroup: components in given order on b=0, swapped on b=1."""
    W = wreath_z2(problem.group)

    def f(value):
        xv, yv, bv = value
        if bv == 0:
            return (problem.f0(xv), problem.f1(yv))
        return (problem.f1(yv), problem.f0(xv))

    return HiddenSubgroupInstance(group=W, f=f, problem=problem)


# ---- coset structure of a function ----

def _value_classes(f, G: Group, cap: int):
    els = G.elements(cap)
    fv = {el.value: f(el.value) for el in els}
    classes: Dict[object, List[object]] = {}
    for v, val in fv.items():
        classes.setdefault(val, []).append(v)
    return els, fv, classes


def check_right_injective(f, G: Group, cap: int = GROUP_ENUM_CAP) -> bool:
    """f(x) = f(y) iff f(y x^-1) = f(identity), certified over the whole
    group through three facts that together are equivalent to the pairwise
    biconditional: every value class lies in one right translate of the
    identity class K, K is closed under multiplication (hence a subgroup),
    and the class count times |K| accounts for the whole group, which
    forces each class to equal its translate exactly."""
    els, fv, classes = _value_classes(f, G, cap)
    ident_val = fv[G.identity_value()]
    K_vals = set(classes[ident_val])
    for cls in classes.values():
        x_inv = G.inv_value(cls[0])
        for y in cls:
            if G.mul_values(y, x_inv) not in K_vals:
                return False
    for a in K_vals:
        for b in K_vals:
            if G.mul_values(a, b) not in K_vals:
                return False
    return len(classes) * len(K_vals) == len(els)


def hidden_subgroup_of(
    f, G: Group, cap: int = GROUP_ENUM_CAP, label: str = "G|_f",
    verify: bool = True,
) -> Subgroup:
    """The stabilizer class {g : f(g) = f(1)} as a verified subgroup;
    requires right-injectivity so that f exactly separates its right
    cosets.  Pass verify=False only when the caller has already run
    check_right_injective on the same f."""
    if verify and not check_right_injective(f, G, cap):
        raise ValueError("function is not injective under right multiplication")
    els, fv, classes = _value_classes(f, G, cap)
    vals = classes[fv[G.identity_value()]]
    return Subgroup(G, [GroupElement(G, v) for v in vals], label=label)


def brute_stabilizer(inst: McElieceInstance, cap: int = GROUP_ENUM_CAP) -> Subgroup:
    """H0 = {(A,P) : A^-1 M P = M} by full enumeration of GL_k x S_n."""
    prob = shift_problem(inst)
    G = prob.group
    vals = [
        el for el in G.elements(cap) if prob.f0(el.value) == inst.M
    ]
    return Subgroup(G, vals, label="H0")


def shift_set(inst: McElieceInstance, cap: int = GROUP_ENUM_CAP) -> frozenset:
    """All group values s with f0(s x) = f1(x) for every x, which reduces
    to f0(s) = M*; equals the right coset H0 * (known shift)."""
    prob = shift_problem(inst)
    return frozenset(
        el.value
        for el in prob.group.elements(cap)
        if prob.f0(el.value) == inst.Mstar
    )


def stabilizer_order_product(inst: McElieceInstance) -> int:
    """|aut(code of M)| * |Fix(M)|, the closed form for |H0|."""
    F = inst.field()
    aut = goppa.automorphisms(goppa.LinearCode(F, inst.M))
    fix = len(fields.fix_group_elements(F, inst.M))
    return aut.order * fix


# ---- extraction ----

def extract_shift(K: Subgroup) -> GroupElement:
    """First component of the smallest b=1 element of K; always a valid
    shift because the b=1 block is (H0 s, s^-1 H0)."""
    W = K.group
    if not isinstance(W, WreathZ2):
        raise ValueError("K must live in a wreath product")
    flipped = sorted(v for v in K.value_set if v[2] == 1)
    if not flipped:
        raise ValueError("no component-swapping element in K")
    return GroupElement(W.base, flipped[0][0])


@dataclass
class AttackResult:
    instance: McElieceInstance
    right_injective: bool
    K: Subgroup
    H0: Subgroup
    k_formula_match: bool
    size_match: bool
    recovered_A: Matrix
    recovered_P: Tuple[int, ...]
    valid: bool

    def as_json(self) -> dict:
        return {
            "right_injective": self.right_injective,
            "K_order": self.K.order,
            "H0_order": self.H0.order,
            "k_formula_match": self.k_formula_match,
            "size_match": self.size_match,
            "recovered_A": [list(r) for r in self.recovered_A],
            "recovered_P": list(self.recovered_P),
            "valid": self.valid,
        }


def attack(inst: McElieceInstance, cap: int = GROUP_ENUM_CAP) -> AttackResult:
    """End-to-end simulated attack: lift, read off the hidden subgroup by
    exhaustive evaluation, extract a shift, and verify it reproduces the
    public matrix."""
    F = inst.field()
    prob = shift_problem(inst)
    hsp = lift_f(prob)
    injective = check_right_injective(hsp.f, hsp.group, cap)
    if not injective:
        raise ValueError("lifted function is not injective under right multiplication")
    K = hidden_subgroup_of(hsp.f, hsp.group, cap, label="K", verify=False)
    H0 = brute_stabilizer(inst, cap)
    oracle = k_build(H0, prob.witness)
    shift = extract_shift(K)
    Av, Pv = shift.value
    A_rec = fields.mat_inv(F, Av)
    P_rec = Pv
    return AttackResult(
        instance=inst,
        right_injective=injective,
        K=K,
        H0=H0,
        k_formula_match=K.value_set == oracle.subgroup.value_set,
        size_match=K.order == 2 * H0.order**2,
        recovered_A=A_rec,
        recovered_P=P_rec,
        valid=public_matrix(F, A_rec, inst.M, P_rec) == inst.Mstar,
    )
