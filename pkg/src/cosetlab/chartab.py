"""Character tables addressed by conjugacy class, with a uniform interface
for inner products, tensor-square multiplicities and per-element lookup.

A table stores one row per irreducible character and one column per class.
`class_key_of` maps a group element to its class key, so character values on
arbitrary elements never require enumerating the group; the dense per-element
value matrix is materialized lazily only where projections need it.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Sequence

import numpy as np

from .groups import DirectProduct, Group, GroupElement, Subgroup

INTEGRALITY_TOL = 1e-6


class CharacterTable:
    def __init__(
        self,
        group: Group,
        labels: Sequence[str],
        dims: Sequence[int],
        class_keys: Sequence,
        class_sizes: Sequence[int],
        class_reps: Sequence[GroupElement],
        values: np.ndarray,
        class_key_of: Callable[[GroupElement], object],
    ):
        n_irreps = len(labels)
        n_classes = len(class_keys)
        if values.shape != (n_irreps, n_classes):
            raise ValueError("value matrix shape mismatch")
        if n_irreps != n_classes:
            raise ValueError(f"{n_irreps} irreps vs {n_classes} classes")
        if sum(class_sizes) != group.order:
            raise ValueError("class sizes do not sum to |G|")
        self.group = group
        self.labels = list(labels)
        self.dims = list(int(d) for d in dims)
        self.class_keys = list(class_keys)
        self.class_sizes = list(int(s) for s in class_sizes)
        self.class_reps = list(class_reps)
        self.values = np.asarray(values, dtype=complex)
        self.class_key_of = class_key_of
        self._key_index = {k: i for i, k in enumerate(self.class_keys)}
        if len(self._key_index) != n_classes:
            raise ValueError("duplicate class keys")
        self._label_index = {l: i for i, l in enumerate(self.labels)}
        if len(self._label_index) != n_irreps:
            raise ValueError("duplicate irrep labels")
        ident_col = self.class_index_of(group.identity())
        self.identity_class = ident_col
        if not np.allclose(self.values[:, ident_col].real, self.dims, atol=1e-8) or (
            np.abs(self.values[:, ident_col].imag).max(initial=0.0) > 1e-8
        ):
            raise ValueError("character at identity must equal the dimension")
        self._element_values: Optional[np.ndarray] = None

    @property
    def n_irreps(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        return self._label_index[label]

    def class_index_of(self, el: GroupElement) -> int:
        return self._key_index[self.class_key_of(el)]

    def value(self, i: int, el: GroupElement) -> complex:
        return complex(self.values[i, self.class_index_of(el)])

    def element_values(self) -> np.ndarray:
        """Dense (n_irreps, |G|) value matrix aligned with group.elements()."""
        if self._element_values is None:
            cols = np.array(
                [self.class_index_of(el) for el in self.group.elements()], dtype=int
            )
            self._element_values = self.values[:, cols]
        return self._element_values

    # -- inner products over classes --

    def inner(self, i: int, j: int) -> complex:
        w = np.asarray(self.class_sizes, dtype=float)
        return complex(
            np.sum(w * self.values[i] * np.conj(self.values[j])) / self.group.order
        )

    def gram(self) -> np.ndarray:
        w = np.asarray(self.class_sizes, dtype=float)
        return (self.values * w) @ np.conj(self.values.T) / self.group.order

    def orthogonality_error(self) -> float:
        return float(np.abs(self.gram() - np.eye(self.n_irreps)).max())

    def tensor_square_multiplicities(self, i: int) -> np.ndarray:
        """Multiplicity of each irrep in rho_i (x) rho_i^*, as exact integers."""
        w = np.asarray(self.class_sizes, dtype=float)
        sq = np.abs(self.values[i]) ** 2
        raw = np.conj(self.values) @ (w * sq) / self.group.order
        mults = np.rint(raw.real).astype(int)
        err = np.abs(raw - mults).max()
        if err > INTEGRALITY_TOL:
            raise ValueError(f"non-integer tensor multiplicity (off by {err:.2e})")
        if mults.min() < 0:
            raise ValueError("negative tensor multiplicity")
        return mults

    # -- subgroup functionals --

    def char_sum_over(self, i: int, sub: Subgroup) -> complex:
        return sum(self.value(i, h) for h in sub.elements)

    def normalized_char_max(self, i: int, sub: Subgroup) -> float:
        """max over non-identity h in H of |chi(h)| / dim; 0 for trivial H."""
        G = self.group
        best = 0.0
        for h in sub.elements:
            if G.is_identity(h):
                continue
            best = max(best, abs(self.value(i, h)) / self.dims[i])
        return best

    def check_sum_of_squares(self) -> None:
        total = sum(d * d for d in self.dims)
        if total != self.group.order:
            raise ValueError(f"sum of dim^2 = {total} != |G| = {self.group.order}")


def product_table(G: DirectProduct, t1: CharacterTable, t2: CharacterTable) -> CharacterTable:
    """Character table of G1 x G2 from factor tables (tensor products)."""
    g1, g2 = G.factors
    if t1.group.key != g1.key or t2.group.key != g2.key:
        raise ValueError("factor tables do not match the product group")
    labels, dims = [], []
    for i1, l1 in enumerate(t1.labels):
        for i2, l2 in enumerate(t2.labels):
            labels.append(f"({l1})x({l2})")
            dims.append(t1.dims[i1] * t2.dims[i2])
    class_keys, class_sizes, class_reps = [], [], []
    for j1, k1 in enumerate(t1.class_keys):
        for j2, k2 in enumerate(t2.class_keys):
            class_keys.append((k1, k2))
            class_sizes.append(t1.class_sizes[j1] * t2.class_sizes[j2])
            class_reps.append(
                GroupElement(G, (t1.class_reps[j1].value, t2.class_reps[j2].value))
            )
    values = np.kron(t1.values, t2.values)

    def key_of(el: GroupElement):
        v1, v2 = el.value
        return (
            t1.class_key_of(GroupElement(g1, v1)),
            t2.class_key_of(GroupElement(g2, v2)),
        )

    table = CharacterTable(
        G, labels, dims, class_keys, class_sizes, class_reps, values, key_of
    )
    table.factor_tables = (t1, t2)
    return table
