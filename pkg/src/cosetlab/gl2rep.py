"""Closed-form conjugacy data and the complete character table of GL_2(F_q):
four class families keyed by eigenvalue structure, four character families
built from cyclic characters of F_q^* and F_{q^2}^*, tensor-square linear
multiplicities, and the scalar-free subgroup distinguishability bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from . import fields
from .chartab import CharacterTable
from .fields import Fq, Matrix, field_make, field_of_order
from .groups import (
    ConjugacyClass,
    GeneralLinearGroup,
    GroupElement,
    Subgroup,
    general_linear_group,
)

GL2_TABLE_CAP = 32


class CyclicCharacter:
    """Character of a cyclic group of order m with value exp(2*pi*i*k*j/m)
    at generator^j."""

    def __init__(self, m: int, k: int):
        self.m = m
        self.k = k % m

    def at_log(self, j: int) -> complex:
        return complex(np.exp(2j * np.pi * ((self.k * j) % self.m) / self.m))

    def of(self, F: Fq, x: int) -> complex:
        return self.at_log(F.log(x))

    def is_trivial(self) -> bool:
        return self.k == 0


def character_sum_over_units(F: Fq, chi: CyclicCharacter) -> complex:
    """sum of chi over F^*; zero for every nontrivial chi."""
    return sum(chi.of(F, x) for x in F.units())


# ---- conjugacy classes ----

ClassKey = Tuple


def _quadratic_extension(F: Fq) -> Tuple[Fq, List[int], Dict[int, int]]:
    E = field_make(F.p, 2 * F.n)
    emb = fields.embed_map(F, E)
    inv = {e: x for x, e in enumerate(emb)}
    return E, emb, inv


_CLASS_KEY_CACHE: Dict[Tuple[int, int, int, int], ClassKey] = {}


def class_key(F: Fq, M: Matrix) -> ClassKey:
    """Canonical conjugacy-class key of an invertible 2x2 matrix.

    ('a', x) scalar, ('b', x) non-semisimple, ('c', x, y) split with x < y,
    ('d', xi) non-split with xi the smaller of the two conjugate eigenvalues
    in the quadratic extension.
    """
    t = fields.mat_trace(F, M)
    D = fields.mat_det(F, M)
    if D == 0:
        raise ValueError("matrix is singular")
    cached = _CLASS_KEY_CACHE.get((F.p, F.n, t, D))
    if cached is not None:
        kind = cached[0]
        if kind == "a":
            # same (t, D) covers both the scalar and the b_x class
            x = cached[1]
            if M == ((x, 0), (0, x)):
                return cached
            return ("b", x)
        if kind == "b":
            x = cached[1]
            if M == ((x, 0), (0, x)):
                return ("a", x)
            return cached
        return cached
    roots = [
        r
        for r in F.units()
        if F.add(F.sub(F.mul(r, r), F.mul(t, r)), D) == 0
    ]
    if roots:
        if len(roots) == 1:
            x = roots[0]
            key: ClassKey = ("a", x) if M == ((x, 0), (0, x)) else ("b", x)
            _CLASS_KEY_CACHE[(F.p, F.n, t, D)] = key
            return key
        x, y = min(roots), max(roots)
        key = ("c", x, y)
    else:
        E, emb, _ = _quadratic_extension(F)
        te, De = emb[t], emb[D]
        xi = next(
            z
            for z in E.units()
            if E.add(E.sub(E.mul(z, z), E.mul(te, z)), De) == 0
        )
        key = ("d", min(xi, E.pow(xi, F.q)))
    _CLASS_KEY_CACHE[(F.p, F.n, t, D)] = key
    return key


@dataclass(frozen=True)
class Gl2Class:
    key: ClassKey
    representative: Matrix
    size: int


def gl2_class_list(F: Fq) -> List[Gl2Class]:
    """All conjugacy classes in canonical order: a, b, c, d families."""
    q = F.q
    out: List[Gl2Class] = []
    for x in F.units():
        out.append(Gl2Class(("a", x), ((x, 0), (0, x)), 1))
    for x in F.units():
        out.append(Gl2Class(("b", x), ((x, 1), (0, x)), q * q - 1))
    for x in F.units():
        for y in F.units():
            if x < y:
                out.append(Gl2Class(("c", x, y), ((x, 0), (0, y)), q * q + q))
    E, emb, inv = _quadratic_extension(F)
    seen = set()
    d_keys = []
    for xi in E.units():
        conj = E.pow(xi, q)
        if conj == xi:
            continue
        lo = min(xi, conj)
        if lo not in seen:
            seen.add(lo)
            d_keys.append(lo)
    for xi in sorted(d_keys):
        conj = E.pow(xi, q)
        t = inv[E.add(xi, conj)]
        D = inv[E.mul(xi, conj)]
        out.append(Gl2Class(("d", xi), ((0, F.neg(D)), (1, t)), q * q - q))
    total = sum(c.size for c in out)
    assert total == fields.glk_order(q, 2), "class sizes must fill the group"
    assert len(out) == q * q - 1, "class count must be q^2 - 1"
    return out


def conjugacy_classes_gl2(
    G: GeneralLinearGroup, with_members: bool = False, cap: int = 0
) -> List[ConjugacyClass]:
    """Conjugacy classes of GL_2 via the closed-form classification."""
    assert G.k == 2
    F = G.field
    cls = gl2_class_list(F)
    members_by_key: Dict[ClassKey, List[GroupElement]] = {}
    if with_members:
        from .groups import GROUP_ENUM_CAP

        for el in G.elements(cap or GROUP_ENUM_CAP):
            members_by_key.setdefault(class_key(F, el.value), []).append(el)
    out = []
    for c in cls:
        members = None
        if with_members:
            got = members_by_key.get(c.key, [])
            assert len(got) == c.size, (c.key, len(got), c.size)
            members = tuple(got)
        out.append(ConjugacyClass(G.make(c.representative), c.size, members))
    return out


# ---- the character table ----

def char_table(q: int) -> CharacterTable:
    """Complete character table of GL_2(F_q): linear characters U, the
    q-dimensional twists V, principal-series W (unordered pairs), and the
    (q-1)-dimensional family X indexed by characters of the quadratic
    extension not fixed by the q-power map."""
    if q > GL2_TABLE_CAP:
        raise ValueError(f"table construction capped at q = {GL2_TABLE_CAP}")
    F = field_of_order(q)
    G = general_linear_group(2, q)
    E, emb, inv = _quadratic_extension(F)
    cls = gl2_class_list(F)

    # per-class discrete logs feeding the character formulas
    a_logs: Dict[ClassKey, int] = {}
    ext_logs: Dict[ClassKey, int] = {}
    c_logs: Dict[ClassKey, Tuple[int, int]] = {}
    d_logs: Dict[ClassKey, Tuple[int, int]] = {}
    for c in cls:
        kind = c.key[0]
        if kind in ("a", "b"):
            x = c.key[1]
            a_logs[c.key] = F.log(x)
            ext_logs[c.key] = E.log(emb[x])
        elif kind == "c":
            c_logs[c.key] = (F.log(c.key[1]), F.log(c.key[2]))
        else:
            xi = c.key[1]
            norm = inv[E.pow(xi, q + 1)]
            d_logs[c.key] = (E.log(xi), F.log(norm))

    labels: List[str] = []
    dims: List[int] = []
    rows: List[List[complex]] = []

    def alpha(k: int) -> CyclicCharacter:
        return CyclicCharacter(q - 1, k)

    def phi(k: int) -> CyclicCharacter:
        return CyclicCharacter(q * q - 1, k)

    for k in range(q - 1):
        ak = alpha(k)
        row = []
        for c in cls:
            kind = c.key[0]
            if kind in ("a", "b"):
                row.append(ak.at_log(2 * a_logs[c.key]))
            elif kind == "c":
                lx, ly = c_logs[c.key]
                row.append(ak.at_log(lx + ly))
            else:
                row.append(ak.at_log(d_logs[c.key][1]))
        labels.append(f"U{k}")
        dims.append(1)
        rows.append(row)

    for k in range(q - 1):
        ak = alpha(k)
        row = []
        for c in cls:
            kind = c.key[0]
            if kind == "a":
                row.append(q * ak.at_log(2 * a_logs[c.key]))
            elif kind == "b":
                row.append(0j)
            elif kind == "c":
                lx, ly = c_logs[c.key]
                row.append(ak.at_log(lx + ly))
            else:
                row.append(-ak.at_log(d_logs[c.key][1]))
        labels.append(f"V{k}")
        dims.append(q)
        rows.append(row)

    for k in range(q - 1):
        for l in range(k + 1, q - 1):
            ak, al = alpha(k), alpha(l)
            row = []
            for c in cls:
                kind = c.key[0]
                if kind == "a":
                    row.append((q + 1) * ak.at_log(a_logs[c.key]) * al.at_log(a_logs[c.key]))
                elif kind == "b":
                    row.append(ak.at_log(a_logs[c.key]) * al.at_log(a_logs[c.key]))
                elif kind == "c":
                    lx, ly = c_logs[c.key]
                    row.append(
                        ak.at_log(lx) * al.at_log(ly) + ak.at_log(ly) * al.at_log(lx)
                    )
                else:
                    row.append(0j)
            labels.append(f"W{k},{l}")
            dims.append(q + 1)
            rows.append(row)

    ext_order = q * q - 1
    seen_phi = set()
    for k in range(ext_order):
        partner = (k * q) % ext_order
        if partner == k or min(k, partner) in seen_phi:
            continue
        seen_phi.add(k)
        pk = phi(k)
        row = []
        for c in cls:
            kind = c.key[0]
            if kind == "a":
                row.append((q - 1) * pk.at_log(ext_logs[c.key]))
            elif kind == "b":
                row.append(-pk.at_log(ext_logs[c.key]))
            elif kind == "c":
                row.append(0j)
            else:
                lxi = d_logs[c.key][0]
                row.append(-(pk.at_log(lxi) + pk.at_log(lxi * q)))
        labels.append(f"X{k}")
        dims.append(q - 1)
        rows.append(row)

    expected = (q - 1) + (q - 1) + (q - 1) * (q - 2) // 2 + q * (q - 1) // 2
    assert len(rows) == expected == q * q - 1

    values = np.array(rows, dtype=complex)
    return CharacterTable(
        G,
        labels,
        dims,
        [c.key for c in cls],
        [c.size for c in cls],
        [G.make(c.representative) for c in cls],
        values,
        lambda el: class_key(F, el.value),
    )


# ---- linear parts of the tensor square ----

def linear_multiplicity_pattern(table: CharacterTable, i: int) -> Dict[str, int]:
    """Multiplicity of each linear character in rho_i (x) rho_i^*, keyed by
    label, zeros omitted."""
    mults = table.tensor_square_multiplicities(i)
    out = {}
    for j, m in enumerate(mults):
        if table.dims[j] == 1 and m > 0:
            out[table.labels[j]] = int(m)
    return out


def linear_multiplicities(table: CharacterTable, i: int) -> int:
    """Number of distinct linear constituents of rho_i (x) rho_i^*."""
    return len(linear_multiplicity_pattern(table, i))


# ---- scalar-free subgroups ----

def scalar_free_check(H: Subgroup) -> bool:
    """True iff H contains no scalar matrix other than the identity."""
    for el in H.elements:
        M = el.value
        if M[0][1] == 0 and M[1][0] == 0 and M[0][0] == M[1][1] and M[0][0] != 1:
            return False
    return True


def corollary_bound(H: Subgroup, q: int) -> float:
    """28|H|^2/q, valid for scalar-free H <= GL_2(F_q)."""
    if not scalar_free_check(H):
        raise ValueError("subgroup contains a non-identity scalar")
    return 28.0 * H.order**2 / q
