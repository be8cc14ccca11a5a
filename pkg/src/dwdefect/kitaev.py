"""Quantum double lattice Hamiltonian on a transparent defect surface, at toy scale.

All operators are exact integer sparse matrices on C[G^E]: the scaled vertex
operator |G|·A_v = Σ_g A_v^g and the plaquette indicator B_p. No floating
point enters, so a disagreement with `z_surface` is decisive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from .config import charge, resolve_budget
from .errors import BudgetError, ConsistencyError, InputError
from .surface import DefectSurface, z_surface

__all__ = [
    "MAX_HILBERT_DIM",
    "LatticeHilbert",
    "OracleResult",
    "lattice_hilbert",
    "vertex_projector",
    "plaquette_projector",
    "ground_space_dim",
]

MAX_HILBERT_DIM = 4096


@dataclass
class LatticeHilbert:
    """C[G^E] with basis the edge configurations in the surface's mixed-radix order."""

    surface: DefectSurface
    order: int  # |G|
    dim: int
    edge_values: np.ndarray  # (E, dim) value of each edge in each basis config

    @property
    def vertices(self) -> list[str]:
        return self.surface.vertex_ids

    @property
    def faces(self) -> list[str]:
        return [f.id for f in self.surface.faces]


def lattice_hilbert(S: DefectSurface, budget: int | None = None) -> LatticeHilbert:
    """Check that S carries one group with transparent edges and flat faces, then set up the basis."""
    if not S.is_transparent():
        raise InputError(f"{S.name}: the lattice oracle needs a single group, transparent edges and flat faces")
    order = S.vertex_groups[0].order if S.vertex_groups else 1
    dim = order ** len(S.edge_ids)
    if dim > MAX_HILBERT_DIM:
        raise BudgetError(f"{S.name}: Hilbert space dimension {dim} exceeds the oracle limit {MAX_HILBERT_DIM}")
    charge(dim * max(1, order) * max(1, len(S.vertex_ids)), resolve_budget(budget), "lattice operators")
    carrier = S.gauge_groupoid().carrier
    codes = np.arange(dim, dtype=np.int64)
    values = np.array(carrier.coords(codes), dtype=np.int64).reshape(len(S.edge_ids), dim)
    return LatticeHilbert(S, order, dim, values)


def _pack(H: LatticeHilbert, values: np.ndarray) -> np.ndarray:
    radix = H.order ** np.arange(values.shape[0] - 1, -1, -1, dtype=np.int64)
    return radix @ values if values.shape[0] else np.zeros(values.shape[1], dtype=np.int64)


def _permutation(H: LatticeHilbert, image: np.ndarray) -> sp.csr_matrix:
    """The basis permutation |c⟩ ↦ |image[c]⟩."""
    return sp.csr_matrix((np.ones(H.dim, dtype=np.int64), (image, np.arange(H.dim))), shape=(H.dim, H.dim))


def vertex_projector(H: LatticeHilbert, v: str) -> sp.csr_matrix:
    """Return |G|·A_v as an integer matrix; A_v averages h_e ↦ g_t(e)·h_e·g_s(e)⁻¹ over g at v."""
    S = H.surface
    if v not in S.vertex_index:
        raise InputError(f"unknown vertex {v!r}")
    k = S.vertex_index[v]
    G = S.vertex_groups[k]
    total = sp.csr_matrix((H.dim, H.dim), dtype=np.int64)
    for g in range(G.order):
        moved = H.edge_values.copy()
        for e in range(len(S.edge_ids)):
            if S.edge_target[e] == k:
                moved[e] = G.multiply(g, moved[e])
            if S.edge_source[e] == k:
                moved[e] = G.multiply(moved[e], G.inverse(g))
        total = total + _permutation(H, _pack(H, moved))
    A = total.tocsr()
    if (A - A.T).count_nonzero():
        raise ConsistencyError(f"vertex operator at {v!r} is not symmetric")
    if (A @ A - G.order * A).count_nonzero():
        raise ConsistencyError(f"vertex operator at {v!r} is not idempotent")
    return A


def plaquette_projector(H: LatticeHilbert, p: str) -> sp.csr_matrix:
    """The 0/1 diagonal indicator of a trivial ordered holonomy around p from its basepoint."""
    S = H.surface
    if p not in S.face_index:
        raise InputError(f"unknown face {p!r}")
    rf = S.reduced_faces[S.face_index[p]]
    G = S.vertex_groups[rf.corners[0]]
    hol = np.zeros(H.dim, dtype=np.int64)
    for e, sign in rf.letters:
        h = H.edge_values[e]
        hol = G.multiply(hol, h if sign > 0 else G.inverse(h))
    return sp.diags((hol == 0).astype(np.int64), format="csr", dtype=np.int64)


@dataclass
class OracleResult:
    dim: int
    hilbert_dim: int
    surface_dim: int
    rank_checked: bool  # exact rational rank computed as well as the trace

    @property
    def matches(self) -> bool:
        return self.dim == self.surface_dim

    def as_json(self) -> dict:
        return {"ground_space_dim": self.dim, "hilbert_dim": self.hilbert_dim, "surface_dim": self.surface_dim,
                "matches_surface": self.matches, "rank_checked": self.rank_checked}


def _commute(X: sp.csr_matrix, Y: sp.csr_matrix) -> bool:
    return (X @ Y - Y @ X).count_nonzero() == 0


def ground_space_dim(S: DefectSurface, budget: int | None = None, rank_limit: int = 64) -> OracleResult:
    """The protected space dimension: rank of ∏A_v·∏B_p, from its exact trace.

    Pairwise commutation of every operator is checked first. For Hilbert
    spaces up to `rank_limit` the rank is also computed in exact rationals.
    """
    H = lattice_hilbert(S, budget)
    As = [vertex_projector(H, v) for v in H.vertices]
    Bs = [plaquette_projector(H, p) for p in H.faces]
    ops = [("vertex", v, X) for v, X in zip(H.vertices, As)] + [("face", p, X) for p, X in zip(H.faces, Bs)]
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if not _commute(ops[i][2], ops[j][2]):
                raise ConsistencyError(f"{ops[i][0]} {ops[i][1]!r} and {ops[j][0]} {ops[j][1]!r} do not commute")
    product = sp.identity(H.dim, dtype=np.int64, format="csr")
    for X in As + Bs:
        product = product @ X
    scale = H.order ** len(As)
    trace = Fraction(int(product.diagonal().sum()), scale)
    if trace.denominator != 1:
        raise ConsistencyError(f"trace of the ground state projector is {trace}, not an integer")
    dim = int(trace)
    rank_checked = False
    if H.dim <= rank_limit:
        import sympy

        rank = sympy.Matrix(product.toarray().tolist()).rank()
        if rank != dim:
            raise ConsistencyError(f"ground state projector has trace {dim} but rank {rank}")
        rank_checked = True
    return OracleResult(dim, H.dim, z_surface(S, budget=budget).dim, rank_checked)
