"""Explicit unitary matrix models for every irrep of a character table.

Symmetric groups get Young's orthogonal matrices, wreath products get the
block models over realized base irreps, direct products get Kronecker
factors, and everything else (notably GL_2) goes through a dense
regular-representation projection: project onto the isotypic component,
then split off a single copy with a twirled random Hermitian.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .chartab import CharacterTable
from .groups import (
    DirectProduct,
    Group,
    GroupElement,
    SymmetricGroup,
    WreathZ2,
)

GENERIC_CAP = 2048
TRACE_TOL = 1e-8
_TWIRL_TRIES = 10

MatFun = Callable[[object], np.ndarray]


class RealizedIrrep:
    """One irrep as a function from elements to unitary matrices, with a
    bounded per-value cache."""

    def __init__(self, group: Group, label: str, dim: int, matfun: MatFun):
        self.group = group
        self.label = label
        self.dim = dim
        self._fun = matfun
        self._cache: Dict[object, np.ndarray] = {}
        # keep roughly 4 MB of cached matrices per irrep
        self._cache_limit = max(64, 4_000_000 // (16 * dim * dim))

    def mat_value(self, value) -> np.ndarray:
        got = self._cache.get(value)
        if got is None:
            got = np.asarray(self._fun(value), dtype=complex)
            if len(self._cache) < self._cache_limit:
                got.setflags(write=False)
                self._cache[value] = got
        return got

    def mat(self, el: GroupElement) -> np.ndarray:
        if el.group.key != self.group.key:
            raise ValueError(f"element of {el.group} fed to irrep of {self.group}")
        return self.mat_value(el.value)

    def __repr__(self) -> str:
        return f"RealizedIrrep({self.label}, dim={self.dim})"


# ---- the generic regular-representation route ----

_REGULAR_CACHE: Dict[object, tuple] = {}


def _regular_structure(G: Group):
    """Element list, inverse indices and full Cayley rows for G."""
    got = _REGULAR_CACHE.get(G.key)
    if got is not None:
        return got
    els = G.elements(GENERIC_CAP)
    n = len(els)
    index = {el.value: i for i, el in enumerate(els)}
    inv_index = np.array([index[G.inv_value(el.value)] for el in els])
    cay = np.empty((n, n), dtype=np.int32)
    for i, g in enumerate(els):
        gv = g.value
        row = cay[i]
        for x, h in enumerate(els):
            row[x] = index[G.mul_values(gv, h.value)]
    got = (els, index, inv_index, cay)
    _REGULAR_CACHE[G.key] = got
    return got


def _eig_clusters(evals: np.ndarray, tol: float) -> List[np.ndarray]:
    order = np.argsort(evals)
    ev = evals[order]
    splits = np.nonzero(np.diff(ev) > tol)[0] + 1
    return [chunk for chunk in np.split(order, splits)]


def _generic_realize_row(
    table: CharacterTable, i: int, seed: int
) -> MatFun:
    G = table.group
    els, index, inv_index, cay = _regular_structure(G)
    n = len(els)
    d = table.dims[i]
    chi = table.element_values()[i]
    coefs = np.conj(chi) * (d / G.order)
    P = np.zeros((n, n), dtype=complex)
    cols = np.arange(n)
    for gi in range(n):
        P[cay[gi], cols] += coefs[gi]
    evals, evecs = np.linalg.eigh(P)
    Q0 = evecs[:, evals > 0.5]
    if Q0.shape[1] != d * d:
        raise ValueError(
            f"isotypic rank {Q0.shape[1]} != d^2 = {d * d} for {table.labels[i]}"
        )

    def block(gi: int, Q: np.ndarray) -> np.ndarray:
        return Q.conj().T @ Q[cay[inv_index[gi]]]

    last_err: Optional[str] = None
    for attempt in range(_TWIRL_TRIES):
        rng = np.random.default_rng((seed + attempt, i))
        D2 = d * d
        B = rng.standard_normal((D2, D2)) + 1j * rng.standard_normal((D2, D2))
        T = np.zeros((D2, D2), dtype=complex)
        for gi in range(n):
            A = block(gi, Q0)
            T += A @ B @ A.conj().T
        H = (T + T.conj().T) / n
        hvals, hvecs = np.linalg.eigh(H)
        scale = max(1.0, float(np.abs(hvals).max(initial=0.0)))
        chosen = None
        for cluster in _eig_clusters(hvals, 1e-6 * scale):
            if len(cluster) == d:
                chosen = cluster
                break
        if chosen is None:
            last_err = "no eigenvalue cluster of the right size"
            continue
        Qfin = Q0 @ hvecs[:, np.sort(chosen)]

        def matfun(value, Qfin=Qfin):
            gi = index.get(value)
            if gi is None:
                raise ValueError("element outside the enumerated group")
            return Qfin.conj().T @ Qfin[cay[inv_index[gi]]]

        # traces against the table certify the split-off copy
        ok = True
        for j, rep in enumerate(table.class_reps):
            tr = np.trace(matfun(rep.value))
            if abs(tr - table.values[i, j]) > TRACE_TOL:
                ok = False
                last_err = f"trace mismatch on class {j}: {tr} vs {table.values[i, j]}"
                break
        if ok:
            return matfun
    raise ValueError(
        f"realization failed for {table.labels[i]} after {_TWIRL_TRIES} tries: {last_err}"
    )


# ---- dispatch ----

def realize_table(table: CharacterTable, seed: int = 0) -> List[RealizedIrrep]:
    """Unitary models for every row of the table, aligned with its rows,
    with traces certified against the table."""
    G = table.group
    out: List[RealizedIrrep] = []
    if isinstance(G, SymmetricGroup) and hasattr(table, "partition_rows"):
        from . import symrep

        for i, la in enumerate(table.partition_rows):
            rep = symrep.YorRep(la)
            assert rep.dim == table.dims[i]
            out.append(
                RealizedIrrep(G, table.labels[i], rep.dim, lambda v, r=rep: r.mat(v))
            )
    elif isinstance(G, WreathZ2) and hasattr(table, "wreath_meta"):
        from . import wreathrep

        base_reals = realize_table(table.base_table, seed)
        for i, meta in enumerate(table.wreath_meta):
            rho = base_reals[meta.i].mat_value
            sigma = base_reals[meta.j].mat_value if meta.kind == "pair" else None
            fun = wreathrep.wreath_realize(meta.kind, rho, sigma)
            out.append(RealizedIrrep(G, table.labels[i], table.dims[i], fun))
    elif isinstance(G, DirectProduct) and hasattr(table, "factor_tables"):
        t1, t2 = table.factor_tables
        reals1 = realize_table(t1, seed)
        reals2 = realize_table(t2, seed)
        for i1, r1 in enumerate(reals1):
            for i2, r2 in enumerate(reals2):
                fun = lambda v, a=r1, b=r2: np.kron(a.mat_value(v[0]), b.mat_value(v[1]))
                out.append(
                    RealizedIrrep(
                        G,
                        table.labels[i1 * len(reals2) + i2],
                        r1.dim * r2.dim,
                        fun,
                    )
                )
    else:
        for i in range(table.n_irreps):
            fun = _generic_realize_row(table, i, seed)
            out.append(RealizedIrrep(G, table.labels[i], table.dims[i], fun))

    for i, r in enumerate(out):
        assert r.dim == table.dims[i]
    return out


def check_traces(table: CharacterTable, reals: List[RealizedIrrep], tol: float = TRACE_TOL) -> float:
    """Max |trace - table value| over all irreps and class representatives."""
    worst = 0.0
    for i, r in enumerate(reals):
        for j, rep in enumerate(table.class_reps):
            err = abs(np.trace(r.mat(rep)) - table.values[i, j])
            worst = max(worst, err)
    if worst > tol:
        raise AssertionError(f"trace certification failed: {worst}")
    return worst
