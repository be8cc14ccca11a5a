"""Representations of groups and action groupoids in orbit/stabilizer form.

A representation of M⫽G is a list of blocks. Each block lives on one orbit: it
fixes a base point m₀, a transversal h_m with h_m▷m₀ = m, and a representation
σ of Stab(m₀). A morphism g: m → g▷m is sent to σ(h_{g▷m}⁻¹ · g · h_m).
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import charge, settings
from .errors import BudgetError, ConsistencyError, InputError, UnsupportedGroupError, ValidationError
from .groupoids import ActionGroupoid
from .groups import BiSet, EdgewiseGSet, FiniteGroup, Orbit, ProductGroup, conjugacy_data, conjugation_gset, orbit_of

__all__ = [
    "MatrixRep",
    "GroupoidRep",
    "Block",
    "DoubleIrrep",
    "irreps",
    "stabilizer_rep_from_descriptor",
    "transparent_rep",
    "pullback_rep",
    "flat_rep",
    "holonomy",
    "invariant_dim",
    "invariant_basis",
    "averaging_projector",
    "double_irreps",
    "conjugation_groupoid",
    "smash_roundtrip_check",
]


def _subgroup_generators(G: FiniteGroup, elements: Sequence[int]) -> list[int]:
    gens: list[int] = []
    closure = {0}
    target = len(elements)
    for g in elements:
        if len(closure) == target:
            break
        if g not in closure:
            gens.append(int(g))
            closure = set(G.closure(gens))
    return gens


class MatrixRep:
    """A complex representation of the subgroup `elements` of `group`.

    Matrices are looked up by ambient element id, so stabilizer representations
    can be evaluated without relabelling.
    """

    def __init__(self, group: FiniteGroup, elements: Iterable[int], mats, *, check: bool = True, name: str = ""):
        self.group = group
        self.elements = tuple(int(x) for x in elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        mats = np.asarray(mats, dtype=complex)
        if mats.ndim != 3 or mats.shape[0] != len(self.elements) or mats.shape[1] != mats.shape[2]:
            raise ValidationError(f"expected {len(self.elements)} square matrices, got shape {mats.shape}")
        self.mats = mats
        self.mats.setflags(write=False)
        self.dim = int(mats.shape[1])
        self.name = name
        self._generators: list[int] | None = None
        if check:
            self.validate()

    @property
    def generators(self) -> list[int]:
        if self._generators is None:
            self._generators = _subgroup_generators(self.group, self.elements)
        return self._generators

    def validate(self) -> None:
        tol = settings.tol
        if 0 not in self.index:
            raise ValidationError("representation domain must contain the identity")
        if not np.allclose(self(0), np.eye(self.dim), atol=tol):
            raise ValidationError("identity is not sent to the identity matrix")
        G = self.group
        for s in self.generators:
            ms = self(s)
            for g in self.elements:
                sg = int(G.multiply(s, g))
                if sg not in self.index:
                    raise ValidationError("representation domain is not a subgroup")
                if not np.allclose(self(sg), ms @ self(g), atol=tol):
                    raise ValidationError(f"not a homomorphism at ({s}, {g})")

    def __call__(self, g: int) -> np.ndarray:
        try:
            return self.mats[self.index[int(g)]]
        except KeyError:
            raise ConsistencyError(f"element {g} is outside the domain of representation {self.name or '?'}") from None

    def character(self, g: int) -> complex:
        return complex(np.trace(self(g)))

    # -- constructors ----------------------------------------------------
    @staticmethod
    def trivial(group: FiniteGroup, elements: Iterable[int] | None = None, dim: int = 1) -> "MatrixRep":
        elems = tuple(range(group.order)) if elements is None else tuple(elements)
        return MatrixRep(group, elems, np.broadcast_to(np.eye(dim), (len(elems), dim, dim)), check=False, name="trivial")

    @staticmethod
    def from_generator_images(group: FiniteGroup, elements: Iterable[int] | None, images: dict, name: str = "") -> "MatrixRep":
        """Extend images of generators to the subgroup they generate, then validate."""
        images = {int(k): np.asarray(v, dtype=complex) for k, v in images.items()}
        dims = {m.shape for m in images.values()}
        if len(dims) > 1:
            raise ValidationError("generator images have different shapes")
        dim = next(iter(dims))[0] if dims else 1
        span = group.closure(images)
        if elements is not None and set(span) != set(int(x) for x in elements):
            raise ValidationError("generator images do not generate the requested subgroup")
        mats = {0: np.eye(dim, dtype=complex)}
        queue = deque([0])
        while queue:
            g = queue.popleft()
            for s, ms in images.items():
                h = int(group.multiply(s, g))
                if h not in mats:
                    mats[h] = ms @ mats[g]
                    queue.append(h)
        elems = tuple(sorted(mats))
        return MatrixRep(group, elems, np.stack([mats[g] for g in elems]), name=name)

    def pullback(self, group: FiniteGroup, elements: Iterable[int], via) -> "MatrixRep":
        """The representation h ↦ self(via(h)) of another group."""
        elems = tuple(int(x) for x in elements)
        return MatrixRep(group, elems, np.stack([self(via(h)) for h in elems]) if elems else np.zeros((0, self.dim, self.dim)),
                         check=False, name=self.name)

    def direct_sum(self, other: "MatrixRep") -> "MatrixRep":
        if self.elements != other.elements:
            raise ValidationError("direct sum needs representations of the same subgroup")
        d1, d2 = self.dim, other.dim
        out = np.zeros((len(self.elements), d1 + d2, d1 + d2), dtype=complex)
        out[:, :d1, :d1] = self.mats
        out[:, d1:, d1:] = other.mats
        return MatrixRep(self.group, self.elements, out, check=False)

    def tensor(self, other: "MatrixRep") -> "MatrixRep":
        if self.elements != other.elements:
            raise ValidationError("inner tensor product needs representations of the same subgroup")
        return MatrixRep(self.group, self.elements, np.einsum("gij,gkl->gikjl", self.mats, other.mats).reshape(
            len(self.elements), self.dim * other.dim, self.dim * other.dim), check=False)

    def dual(self) -> "MatrixRep":
        """ρ*(g) = ρ(g⁻¹)ᵀ."""
        mats = np.stack([self(int(self.group.inverse(g))).T for g in self.elements]) if self.elements else self.mats
        return MatrixRep(self.group, self.elements, mats, check=False, name=self.name + "*")

    def conjugated(self, U: np.ndarray) -> "MatrixRep":
        """g ↦ U ρ(g) U⁻¹."""
        Uinv = np.linalg.inv(U)
        return MatrixRep(self.group, self.elements, U[None] @ self.mats @ Uinv[None], check=False, name=self.name)

    def __repr__(self) -> str:
        return f"MatrixRep({self.name or '?'}, dim={self.dim}, |H|={len(self.elements)})"


# -- irreducible representation tables -----------------------------------------


def _orders(G: FiniteGroup, elements: Sequence[int]) -> dict[int, int]:
    return {g: G.element_order(g) for g in elements}


def irreps(G: FiniteGroup, elements: Iterable[int] | None = None) -> list[MatrixRep]:
    """Irreducible representations of a subgroup from the built-in tables.

    Supported isomorphism types: cyclic of order ≤ 12, Z2×Z2, S3 and D4. The
    trivial representation always comes first.
    """
    elems = tuple(sorted(range(G.order) if elements is None else set(int(x) for x in elements)))
    n = len(elems)
    orders = _orders(G, elems)
    abelian = all(int(G.multiply(a, b)) == int(G.multiply(b, a)) for a in elems for b in elems)
    label = f"subgroup of order {n} in {G.name}"
    if n == 1:
        return [MatrixRep.trivial(G, elems)]
    if abelian:
        full = [g for g in elems if orders[g] == n]
        if full:
            if n > 12:
                raise UnsupportedGroupError(f"no irrep table for the cyclic {label} (orders above 12 are not built in)")
            a = full[0]
            return [
                MatrixRep.from_generator_images(G, elems, {a: [[cmath.exp(2j * math.pi * k / n)]]},
                                                name="trivial" if k == 0 else ("sign" if 2 * k == n else f"chi{k}"))
                for k in range(n)
            ]
        if n == 4:
            a = elems[1]
            b = next(g for g in elems if g not in (0, a))
            reps = []
            for sa, sb in ((1, 1), (-1, 1), (1, -1), (-1, -1)):
                reps.append(MatrixRep.from_generator_images(G, elems, {a: [[sa]], b: [[sb]]},
                                                            name="trivial" if sa == sb == 1 else f"chi({sa},{sb})"))
            return reps
        raise UnsupportedGroupError(f"no irrep table for the non-cyclic abelian {label}")
    if n == 6:
        a = next(g for g in elems if orders[g] == 3)
        b = next(g for g in elems if orders[g] == 2)
        c, s = -0.5, math.sqrt(3) / 2
        rot = [[c, -s], [s, c]]
        ref = [[1, 0], [0, -1]]
        return [
            MatrixRep.from_generator_images(G, elems, {a: [[1]], b: [[1]]}, name="trivial"),
            MatrixRep.from_generator_images(G, elems, {a: [[1]], b: [[-1]]}, name="sign"),
            MatrixRep.from_generator_images(G, elems, {a: rot, b: ref}, name="standard"),
        ]
    if n == 8:
        involutions = [g for g in elems if orders[g] == 2]
        fours = [g for g in elems if orders[g] == 4]
        if len(involutions) > 1 and fours:
            a = fours[0]
            cyc = set(G.closure([a]))
            b = next(g for g in involutions if g not in cyc)
            reps = [
                MatrixRep.from_generator_images(G, elems, {a: [[sa]], b: [[sb]]},
                                                name="trivial" if sa == sb == 1 else f"chi({sa},{sb})")
                for sa, sb in ((1, 1), (-1, 1), (1, -1), (-1, -1))
            ]
            reps.append(MatrixRep.from_generator_images(G, elems, {a: [[0, -1], [1, 0]], b: [[1, 0], [0, -1]]},
                                                        name="standard"))
            return reps
    raise UnsupportedGroupError(f"no irrep table for the non-abelian {label}")


def stabilizer_rep_from_descriptor(G: FiniteGroup, elements: Sequence[int], desc) -> MatrixRep:
    """Read a stabilizer representation.

    Accepted forms: "trivial", "sign", {"irrep": k}, {"name": ...},
    {"trivial": dim}, {"sum": [desc, ...]} and {"generators": {element: matrix}}.
    """
    if desc in (None, "trivial"):
        return MatrixRep.trivial(G, elements)
    if desc == "sign":
        ones = [r for r in irreps(G, elements)[1:] if r.dim == 1 and np.allclose(r.mats.imag, 0)]
        if len(ones) != 1:
            raise InputError(f"'sign' is ambiguous or undefined for a stabilizer of order {len(elements)}; use an irrep index")
        return ones[0]
    if isinstance(desc, str):
        desc = {"name": desc}
    if isinstance(desc, dict):
        if "trivial" in desc:
            d = desc["trivial"]
            if not isinstance(d, int) or isinstance(d, bool) or d < 0:
                raise InputError(f"trivial representation dimension must be a non-negative integer, got {d!r}")
            return MatrixRep.trivial(G, elements, dim=d)
        if "sum" in desc:
            parts = [stabilizer_rep_from_descriptor(G, elements, d) for d in desc["sum"]]
            if not parts:
                raise InputError("an empty direct sum has no representation; use {'trivial': 0}")
            out = parts[0]
            for q in parts[1:]:
                out = out.direct_sum(q)
            return out
        if "irrep" in desc:
            table = irreps(G, elements)
            k = desc["irrep"]
            if not isinstance(k, int) or not 0 <= k < len(table):
                raise InputError(f"irrep index {k!r} out of range 0..{len(table) - 1}")
            return table[k]
        if "name" in desc:
            for r in irreps(G, elements):
                if r.name == desc["name"]:
                    return r
            raise InputError(f"no irrep named {desc['name']!r} for this stabilizer")
        if "generators" in desc:
            images = {G.element(k): v for k, v in desc["generators"].items()}
            return MatrixRep.from_generator_images(G, elements, images)
    raise InputError(f"unrecognised stabilizer representation {desc!r}")


# -- groupoid representations --------------------------------------------------


@dataclass
class Block:
    orbit: Orbit  # transversal based at orbit.rep
    sigma: MatrixRep

    @property
    def rep(self) -> int:
        return self.orbit.rep


class GroupoidRep:
    """A representation of an action groupoid, zero outside its blocks."""

    def __init__(self, base: ActionGroupoid, blocks: Sequence[Block], *, name: str = ""):
        self.base = base
        self.blocks = list(blocks)
        self.name = name
        self._block_of: dict[int, int] = {}
        for i, b in enumerate(self.blocks):
            if set(b.sigma.elements) != set(b.orbit.stabilizer):
                raise ValidationError(f"block {i}: σ is not a representation of the stabilizer of {b.rep}")
            for m in b.orbit.members:
                if m in self._block_of:
                    raise ValidationError(f"blocks {self._block_of[m]} and {i} share the orbit of {m}")
                self._block_of[m] = i

    @staticmethod
    def from_blocks(base: ActionGroupoid, specs: Iterable[tuple[int, MatrixRep]], name: str = "") -> "GroupoidRep":
        """Blocks given as (base point, σ on its stabilizer)."""
        blocks = []
        for point, sigma in specs:
            blocks.append(Block(orbit_of(base.carrier, int(point)), sigma))
        return GroupoidRep(base, blocks, name=name)

    @staticmethod
    def trivial(base: ActionGroupoid) -> "GroupoidRep":
        """C on every object, identities on every morphism."""
        return GroupoidRep(base, [Block(o, MatrixRep.trivial(base.group, o.stabilizer)) for o in base.components()],
                           name="trivial")

    @staticmethod
    def indicator(base: ActionGroupoid, points: Iterable[int], name: str = "") -> "GroupoidRep":
        """C exactly on `points` (a union of orbits), identities on morphisms."""
        pts = sorted(set(int(p) for p in points))
        blocks, covered = [], set()
        for p in pts:
            if p in covered:
                continue
            orb = orbit_of(base.carrier, p)
            if not set(orb.members) <= set(pts):
                raise ValidationError(f"support of {name or 'indicator'} is not a union of orbits (orbit of {p})")
            covered.update(orb.members)
            blocks.append(Block(orb, MatrixRep.trivial(base.group, orb.stabilizer)))
        return GroupoidRep(base, blocks, name=name)

    def block_index(self, m: int) -> int:
        return self._block_of.get(int(m), -1)

    def support(self) -> set[int]:
        return set(self._block_of)

    def dim_at(self, m: int) -> int:
        i = self.block_index(m)
        return 0 if i < 0 else self.blocks[i].sigma.dim

    def eval(self, g: int, m: int) -> np.ndarray:
        """Matrix of the morphism g: m → g▷m (0×0 off the support)."""
        if not (0 <= int(m) < self.base.size and 0 <= int(g) < self.base.group.order):
            raise InputError(f"morphism ({g}, {m}) out of range")
        i = self.block_index(m)
        if i < 0:
            return np.zeros((0, 0), dtype=complex)
        block = self.blocks[i]
        G = self.base.group
        trans = block.orbit.transversal
        gm = self.base.act(int(g), int(m))
        k = G.multiply(G.multiply(G.inverse(trans[gm]), int(g)), trans[int(m)])
        return block.sigma(int(k))

    def restricted_matrices(self, m: int, subgroup: Iterable[int]) -> list[np.ndarray]:
        return [self.eval(h, m) for h in subgroup]

    def dual(self) -> "GroupoidRep":
        return GroupoidRep(self.base, [Block(b.orbit, b.sigma.dual()) for b in self.blocks], name=self.name + "*")

    def __repr__(self) -> str:
        return f"GroupoidRep({self.name or '?'}, {len(self.blocks)} blocks on {self.base!r})"


# -- labels ------------------------------------------------------------------


def transparent_rep(M: BiSet) -> GroupoidRep:
    """The diagonal representation on (M×M)⫽(left×right): C at (m, m), zero elsewhere."""
    group = ProductGroup([M.left, M.right])
    base = ActionGroupoid(EdgewiseGSet(group, [M, M], [(0, 1), (0, 1)]), name=f"{M.name}x{M.name}")
    single = M.as_gset()
    blocks = []
    from .groups import orbits as _orbits

    for orb in _orbits(single):
        diag = orb.rep * M.size + orb.rep
        o = orbit_of(base.carrier, diag)
        blocks.append(Block(o, MatrixRep.trivial(group, o.stabilizer)))
    return GroupoidRep(base, blocks, name="transparent")


def pullback_rep(base: ActionGroupoid, target: GroupoidRep, point_map, hom, name: str = "") -> GroupoidRep:
    """Block form of ρ∘π for a functor π given by `point_map` on objects and `hom` on group elements.

    Each supported orbit of `base` gets the stabilizer representation
    h ↦ ρ(hom(h)) at the image of its representative, so the result is
    naturally isomorphic to evaluating ρ after π.
    """
    blocks = []
    for orb in base.components():
        y = int(point_map(orb.rep))
        d = target.dim_at(y)
        if d == 0:
            continue
        mats = np.stack([target.eval(int(hom(h)), y) for h in orb.stabilizer])
        blocks.append(Block(orb, MatrixRep(base.group, orb.stabilizer, mats, check=False)))
    return GroupoidRep(base, blocks, name=name or f"pullback({target.name})")


def holonomy(G: FiniteGroup, values: Sequence[int], signs: Sequence[int]) -> int:
    """Ordered product of the letters v or v⁻¹."""
    h = 0
    for v, s in zip(values, signs):
        h = int(G.multiply(h, v if s > 0 else G.inverse(v)))
    return h


def flat_rep(base: ActionGroupoid, signs: Sequence[int]) -> GroupoidRep:
    """C on the tuples whose oriented ordered product is the identity.

    `base` must be an edgewise groupoid whose coordinates are all the
    transparent biset of one group; `signs` gives each letter's direction.
    """
    carrier = base.carrier
    if not isinstance(carrier, EdgewiseGSet):
        raise ValidationError("flat representation needs a groupoid built from edge bisets")
    groups = {id(M.transparent_of) for M in carrier.bisets}
    if any(not M.is_transparent for M in carrier.bisets) or len(groups) > 1:
        raise ValidationError("flat representation needs every edge to carry the transparent biset of one common group")
    if len(signs) != len(carrier.bisets):
        raise ValidationError("one direction is needed per boundary letter")
    orb = orbit_of(carrier, 0)
    return GroupoidRep(base, [Block(orb, MatrixRep.trivial(base.group, orb.stabilizer))], name="flat")


# -- invariants ----------------------------------------------------------------


def _as_stack(mats) -> np.ndarray:
    mats = list(mats)
    if not mats:
        raise InputError("at least one matrix (the identity) is required")
    return np.stack([np.asarray(m, dtype=complex) for m in mats])


def invariant_dim(mats) -> int:
    """Dimension of the common fixed space of a finite matrix group, by character averaging."""
    stack = _as_stack(mats)
    if stack.shape[1] == 0:
        return 0
    avg = np.trace(stack, axis1=1, axis2=2).mean()
    k = int(round(avg.real))
    if abs(avg - k) > settings.int_tol:
        raise ConsistencyError(f"character average {avg} is not an integer")
    return k


def averaging_projector(mats) -> np.ndarray:
    stack = _as_stack(mats)
    P = stack.mean(axis=0)
    if not np.allclose(P @ P, P, atol=settings.tol):
        raise ConsistencyError("averaging operator is not idempotent; the matrices do not form a group")
    return P


def invariant_basis(mats) -> np.ndarray:
    """Orthonormal columns spanning the fixed space (image of the averaging projector)."""
    stack = _as_stack(mats)
    d = stack.shape[1]
    if d == 0:
        return np.zeros((0, 0), dtype=complex)
    P = averaging_projector(stack)
    k = invariant_dim(stack)
    U, s, _ = np.linalg.svd(P)
    if k and (abs(s[k - 1]) < 0.5 or (k < d and abs(s[k]) > 1e-6)):
        raise ConsistencyError(f"projector rank does not match invariant dimension {k}")
    basis = U[:, :k]
    # deterministic phase: make the largest entry of each column real positive
    for j in range(k):
        col = basis[:, j]
        i = int(np.argmax(np.abs(col)))
        basis[:, j] = col * (abs(col[i]) / col[i])
    return basis


# -- Drinfeld double -----------------------------------------------------------


_CONJ_CACHE: dict[int, ActionGroupoid] = {}


def conjugation_groupoid(G: FiniteGroup) -> ActionGroupoid:
    """G⫽G with the conjugation action (cached per group object)."""
    key = id(G)
    if key not in _CONJ_CACHE or _CONJ_CACHE[key].group is not G:
        _CONJ_CACHE[key] = ActionGroupoid(conjugation_gset(G), name=f"{G.name}//{G.name}")
    return _CONJ_CACHE[key]


@dataclass
class DoubleIrrep:
    class_rep: int
    class_members: tuple[int, ...]
    sigma: MatrixRep  # irrep of the centralizer of class_rep

    @property
    def dim(self) -> int:
        return len(self.class_members) * self.sigma.dim

    def as_groupoid_rep(self, base: ActionGroupoid | None = None) -> GroupoidRep:
        base = base or conjugation_groupoid(self.sigma.group)
        return GroupoidRep.from_blocks(base, [(self.class_rep, self.sigma)], name=f"D[{self.class_rep},{self.sigma.name}]")


def double_irreps(G: FiniteGroup) -> list[DoubleIrrep]:
    """Irreducible modules of the Drinfeld double: (conjugacy class, centralizer irrep) pairs."""
    out = []
    for cls in conjugacy_data(G):
        try:
            table = irreps(G, cls.centralizer)
        except UnsupportedGroupError as exc:
            raise UnsupportedGroupError(f"centralizer of {G.labels[cls.rep]} in {G.name}: {exc}") from None
        out.extend(DoubleIrrep(cls.rep, cls.members, sigma) for sigma in table)
    return out


def smash_roundtrip_check(rho: GroupoidRep, limit: int = 512) -> bool:
    """Turn ρ into a module over C[G] ⋉ C^M and back, comparing all matrices.

    The module is V = ⊕_m ρ(m) with (g⊗δ_m) acting as ι_{g▷m} ρ(g) π_m.
    """
    base = rho.base
    G = base.group
    dims = [rho.dim_at(m) for m in range(base.size)]
    offsets = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    N = int(offsets[-1])
    if N > limit:
        raise BudgetError(f"module dimension {N} exceeds {limit}")
    charge(G.order * base.size * max(1, N) ** 2, None, "smash product module")
    tol = settings.tol

    def action(g: int, m: int) -> np.ndarray:
        A = np.zeros((N, N), dtype=complex)
        if dims[m]:
            gm = base.act(g, m)
            A[offsets[gm]:offsets[gm + 1], offsets[m]:offsets[m + 1]] = rho.eval(g, m)
        return A

    acts = {(g, m): action(g, m) for g in range(G.order) for m in range(base.size)}
    # unit and multiplication (g⊗δ_m)(h⊗δ_n) = δ_{m, h▷n} (gh⊗δ_n)
    if not np.allclose(sum(acts[(0, m)] for m in range(base.size)), np.eye(N), atol=tol):
        return False
    left_factors = range(G.order) if G.order * base.size <= 100 else G.generators
    for g in left_factors:
        for m in range(base.size):
            Agm = acts[(g, m)]
            for h in range(G.order):
                for n in range(base.size):
                    prod = Agm @ acts[(h, n)]
                    expected = acts[(int(G.multiply(g, h)), n)] if base.act(h, n) == m else np.zeros((N, N))
                    if not np.allclose(prod, expected, atol=tol):
                        return False
    # inverse direction: recover ρ(m) as the image of δ_m and ρ(g) by restriction
    for m in range(base.size):
        P = acts[(0, m)]
        idx = np.nonzero(np.abs(np.diag(P) - 1) < tol)[0]
        if len(idx) != dims[m] or not np.allclose(P[np.ix_(idx, idx)], np.eye(len(idx)), atol=tol):
            return False
    for (g, m), A in acts.items():
        gm = base.act(g, m)
        src = np.nonzero(np.abs(np.diag(acts[(0, m)]) - 1) < tol)[0]
        dst = np.nonzero(np.abs(np.diag(acts[(0, gm)]) - 1) < tol)[0]
        recovered = A[np.ix_(dst, src)]
        if recovered.shape != (dims[gm], dims[m]):
            return False
        if dims[m] and not np.allclose(recovered, rho.eval(g, m), atol=tol):
            return False
        mask = np.ones_like(A, dtype=bool)
        mask[np.ix_(dst, src)] = False
        if np.abs(A[mask]).max(initial=0) > tol:
            return False
    return True
