"""The linearisation functor on represented fibrant spans.

A representation ρ of a groupoid is sent to its limit, the direct sum over
component representatives of the automorphism-invariant vectors. A represented
span is sent to the block matrix of fibre averages

    S(x, y) = (1/|Aut(y)|) Σ_{fibre components H} σ_H / |Aut_fibre(H)|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .config import settings
from .errors import ConsistencyError, ValidationError
from .groupoids import (
    ActionGroupoid,
    FibrantSpan,
    fibre,
    identity_span,
    product_groupoid,
    product_span,
    pullback_compose,
    same_groupoid,
)
from .groups import Orbit, ProductGroup, orbit_of
from .reps import Block, GroupoidRep, MatrixRep, invariant_basis

__all__ = [
    "LimitSpace",
    "RepresentedSpan",
    "limit_space",
    "s_sigma",
    "apply_L",
    "ambient_matrix",
    "compose_represented",
    "tensor_represented",
    "tensor_rep",
    "classical_matrix",
    "natural_family",
    "same_rep",
]


@dataclass
class LimitSpace:
    rep: GroupoidRep
    points: list[int]  # one representative per component, increasing
    auts: list[tuple[int, ...]]
    bases: list[np.ndarray]  # dim ρ(x) × invariant dim, orthonormal columns
    offsets: list[int]

    @property
    def dim(self) -> int:
        return self.offsets[-1]

    def piece(self, i: int) -> slice:
        return slice(self.offsets[i], self.offsets[i + 1])

    def provenance(self) -> list[int]:
        """Component representative of each basis vector."""
        out = []
        for p, b in zip(self.points, self.bases):
            out.extend([p] * b.shape[1])
        return out


def limit_space(rho: GroupoidRep) -> LimitSpace:
    points, auts, bases, offsets = [], [], [], [0]
    for comp in rho.base.components():
        x = comp.rep
        d = rho.dim_at(x)
        basis = invariant_basis(rho.restricted_matrices(x, comp.stabilizer)) if d else np.zeros((0, 0), dtype=complex)
        points.append(x)
        auts.append(comp.stabilizer)
        bases.append(basis)
        offsets.append(offsets[-1] + basis.shape[1])
    return LimitSpace(rho, points, auts, bases, offsets)


def same_rep(r1: GroupoidRep, r2: GroupoidRep) -> bool:
    """Equal evaluation on all objects and generating morphisms."""
    if r1 is r2:
        return True
    if not same_groupoid(r1.base, r2.base):
        return False
    base = r1.base
    for m in range(base.size):
        if r1.dim_at(m) != r2.dim_at(m):
            return False
        if r1.dim_at(m) == 0:
            continue
        for s in base.group.generators:
            if not np.allclose(r1.eval(s, m), r2.eval(s, m), atol=settings.tol):
                return False
    return True


class RepresentedSpan:
    """A fibrant span with boundary representations and a natural family σ."""

    def __init__(self, span: FibrantSpan, left_rep: GroupoidRep, right_rep: GroupoidRep,
                 sigma: Sequence[np.ndarray], *, check: bool = True):
        if not same_groupoid(left_rep.base, span.source) or not same_groupoid(right_rep.base, span.target):
            raise ValidationError("boundary representations live on the wrong groupoids")
        if len(sigma) != span.apex.size:
            raise ValidationError(f"σ needs one matrix per apex object ({span.apex.size}), got {len(sigma)}")
        self.span = span
        self.left_rep = left_rep
        self.right_rep = right_rep
        self.sigma = [np.asarray(s, dtype=complex) for s in sigma]
        lp, rp = span.left.point_map, span.right.point_map
        for a, s in enumerate(self.sigma):
            want = (right_rep.dim_at(int(rp[a])), left_rep.dim_at(int(lp[a])))
            if s.shape != want:
                raise ValidationError(f"σ at apex object {a} has shape {s.shape}, expected {want}")
        if check:
            self.check_naturality()

    def check_naturality(self) -> None:
        """ρ₂(right(f))·σ_H = σ_H'·ρ₁(left(f)) for generating morphisms f: H → H'."""
        span, tol = self.span, settings.tol
        lp, rp = span.left.point_map, span.right.point_map
        lh, rh = span.left.hom.image, span.right.hom.image
        for s in span.apex.group.generators:
            perm = span.apex.perm(s)
            for a in range(span.apex.size):
                b = int(perm[a])
                lhs = self.right_rep.eval(int(rh[s]), int(rp[a])) @ self.sigma[a]
                rhs = self.sigma[b] @ self.left_rep.eval(int(lh[s]), int(lp[a]))
                if not np.allclose(lhs, rhs, atol=tol):
                    raise ValidationError(f"σ is not natural along generator {s} at apex object {a}")

    @staticmethod
    def identity(rho: GroupoidRep) -> "RepresentedSpan":
        """The arrow-groupoid span of the base with σ at (m, g) equal to ρ(g): ρ(m) → ρ(g▷m)."""
        span = identity_span(rho.base)
        n = rho.base.group.order
        sigma = [rho.eval(a % n, a // n) for a in range(span.apex.size)]
        return RepresentedSpan(span, rho, rho, sigma, check=False)

    @staticmethod
    def trivial(span: FibrantSpan) -> "RepresentedSpan":
        """Trivial boundary representations and σ ≡ (1)."""
        ones = [np.ones((1, 1), dtype=complex)] * span.apex.size
        return RepresentedSpan(span, GroupoidRep.trivial(span.source), GroupoidRep.trivial(span.target), ones, check=False)


def natural_family(span: FibrantSpan, left_rep: GroupoidRep, right_rep: GroupoidRep,
                   seed: Callable[[int, tuple[int, int]], np.ndarray]) -> list[np.ndarray]:
    """A natural σ built orbitwise: average `seed(a, shape)` over Aut(a), then transport."""
    apex = span.apex
    G = apex.group
    lp, rp = span.left.point_map, span.right.point_map
    lh, rh = span.left.hom.image, span.right.hom.image
    sigma: list[np.ndarray | None] = [None] * apex.size
    for comp in apex.components():
        a = comp.rep
        x, y = int(lp[a]), int(rp[a])
        shape = (right_rep.dim_at(y), left_rep.dim_at(x))
        Y = np.asarray(seed(a, shape), dtype=complex).reshape(shape)
        X = np.zeros(shape, dtype=complex)
        for h in comp.stabilizer:
            hinv = int(G.inverse(h))
            X += right_rep.eval(int(rh[hinv]), y) @ Y @ left_rep.eval(int(lh[h]), x)
        X /= len(comp.stabilizer)
        for b, t in comp.transversal.items():
            tinv = int(G.inverse(t))
            sigma[b] = right_rep.eval(int(rh[t]), y) @ X @ left_rep.eval(int(lh[tinv]), int(lp[b]))
    return sigma


def s_sigma(rs: RepresentedSpan, x: int, y: int, *, descending: bool = False) -> np.ndarray:
    """Average of σ over the fibre above (x, y); lands in the Aut(y)-invariant vectors."""
    d_in, d_out = rs.left_rep.dim_at(x), rs.right_rep.dim_at(y)
    S = np.zeros((d_out, d_in), dtype=complex)
    if d_in == 0 or d_out == 0:
        return S
    fib = fibre(rs.span, x, y, descending=descending)
    aut_y = rs.span.target.images_of(y) == y
    n_aut = int(aut_y.sum())
    for comp in fib.components:
        w = Fraction(1, n_aut * len(comp.aut))
        S += rs.sigma[comp.rep] * float(w)
    stab = np.nonzero(aut_y)[0]
    P = sum(rs.right_rep.eval(int(h), y) for h in stab) / len(stab)
    if not np.allclose(P @ S, S, atol=settings.tol):
        raise ConsistencyError(f"fibre average at ({x}, {y}) is not invariant under Aut({y})")
    return S


def apply_L(rs: RepresentedSpan, *, descending: bool = False,
            spaces: tuple[LimitSpace, LimitSpace] | None = None) -> np.ndarray:
    """Matrix of the linearised span between the limit spaces of the boundary representations."""
    L1, L2 = spaces or (limit_space(rs.left_rep), limit_space(rs.right_rep))
    out = np.zeros((L2.dim, L1.dim), dtype=complex)
    for i, x in enumerate(L1.points):
        Bx = L1.bases[i]
        if Bx.shape[1] == 0:
            continue
        for j, y in enumerate(L2.points):
            By = L2.bases[j]
            if By.shape[1] == 0:
                continue
            out[L2.piece(j), L1.piece(i)] = By.conj().T @ s_sigma(rs, x, y, descending=descending) @ Bx
    return out


def ambient_matrix(rs: RepresentedSpan, matrix: np.ndarray | None = None) -> np.ndarray:
    """The same map written on ⊕ρ(x) over component representatives, independent of bases."""
    L1, L2 = limit_space(rs.left_rep), limit_space(rs.right_rep)
    M = apply_L(rs, spaces=(L1, L2)) if matrix is None else matrix

    def embedding(L: LimitSpace) -> np.ndarray:
        rows = sum(b.shape[0] for b in L.bases)
        E = np.zeros((rows, L.dim), dtype=complex)
        r = 0
        for i, b in enumerate(L.bases):
            E[r:r + b.shape[0], L.piece(i)] = b
            r += b.shape[0]
        return E

    return embedding(L2) @ M @ embedding(L1).conj().T


def compose_represented(rs1: RepresentedSpan, rs2: RepresentedSpan) -> RepresentedSpan:
    """rs2 ∘ rs1: pullback span with σ at (a, b) equal to τ_b·σ_a."""
    if not same_rep(rs1.right_rep, rs2.left_rep):
        raise ValidationError("represented spans are not composable: middle representations differ")
    span = pullback_compose(rs1.span, rs2.span)
    sigma = [rs2.sigma[b] @ rs1.sigma[a] for a, b in span.factor_pairs]
    return RepresentedSpan(span, rs1.left_rep, rs2.right_rep, sigma)


def tensor_rep(r1: GroupoidRep, r2: GroupoidRep, base: ActionGroupoid | None = None) -> GroupoidRep:
    """External tensor product on the product groupoid, with product transversals."""
    base = base or product_groupoid(r1.base, r2.base)
    G = base.group
    if not isinstance(G, ProductGroup):
        raise ValidationError("tensor product needs a product groupoid")
    n2, size2 = r2.base.group.order, r2.base.size
    blocks = []
    for b1 in r1.blocks:
        for b2 in r2.blocks:
            o1, o2 = b1.orbit, b2.orbit
            trans = {p * size2 + q: t * n2 + u for p, t in o1.transversal.items() for q, u in o2.transversal.items()}
            stab = tuple(sorted(s * n2 + t for s in o1.stabilizer for t in o2.stabilizer))
            mats = [np.kron(b1.sigma(g // n2), b2.sigma(g % n2)) for g in stab]
            sigma = MatrixRep(G, stab, np.stack(mats), check=False)
            orbit = Orbit(o1.rep * size2 + o2.rep, tuple(sorted(trans)), stab, trans)
            blocks.append(Block(orbit, sigma))
    return GroupoidRep(base, blocks, name=f"{r1.name}(x){r2.name}")


def tensor_represented(rs1: RepresentedSpan, rs2: RepresentedSpan) -> RepresentedSpan:
    """Monoidal product: product span, tensor boundary representations, σ ⊗ σ'."""
    left = tensor_rep(rs1.left_rep, rs2.left_rep)
    right = tensor_rep(rs1.right_rep, rs2.right_rep)
    span = product_span(rs1.span, rs2.span, source=left.base, target=right.base)
    n = rs2.span.apex.size
    sigma = [np.kron(rs1.sigma[a // n], rs2.sigma[a % n]) for a in range(span.apex.size)]
    return RepresentedSpan(span, left, right, sigma)


def classical_matrix(span: FibrantSpan) -> list[list[Fraction]]:
    """Exact matrix of the trivially represented span, rows = target components.

    Entry (y, x) is χ^π of the component of y times χ^π of the fibre over (x, y).
    """
    rows = []
    for cy in span.target.components():
        row = []
        for cx in span.source.components():
            row.append(Fraction(1, len(cy.stabilizer)) * fibre(span, cx.rep, cy.rep).homotopy_content())
        rows.append(row)
    return rows
