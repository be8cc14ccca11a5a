"""Desk-scale defect cobordisms as represented fibrant spans.

Each builder produces the reduced gauge groupoid of a small 3-manifold with
defects as the apex of a span into the gauge groupoids of its boundary
surfaces, together with the natural family σ that evaluates the defect data.
The linear map is then the linearisation of that span.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .config import charge, resolve_budget, settings
from .errors import ConsistencyError, InputError
from .groupoids import ActionGroupoid, FibrantSpan, GroupoidMap, homotopy_content
from .groups import (
    BiSet,
    EdgewiseGSet,
    FiniteGroup,
    GroupHom,
    GSet,
    ProductGroup,
    enumerate_homs,
    orbit_of,
)
from .quinn import LimitSpace, RepresentedSpan, apply_L, compose_represented, limit_space
from .reps import Block, GroupoidRep, conjugation_groupoid, pullback_rep, stabilizer_rep_from_descriptor
from .surface import (
    DefectSurface,
    check_format,
    empty_surface,
    genus_surface,
    read_bisets,
    read_groups,
    solid_torus_boundary,
    surface_from_dict,
    surface_rep,
)

__all__ = [
    "CobordismSpan",
    "HandlebodyResult",
    "cylinder",
    "handlebody",
    "wall_cylinder",
    "handlebody_double",
    "closed_invariant",
    "solid_torus",
    "loop_groupoid",
    "double_loop_rep",
    "glue",
    "load_cobordism",
    "cobordism_from_dict",
]


@dataclass
class CobordismSpan:
    rs: RepresentedSpan
    source: DefectSurface
    target: DefectSurface
    provenance: str
    _matrix: np.ndarray | None = field(default=None, repr=False)
    _spaces: tuple[LimitSpace, LimitSpace] | None = field(default=None, repr=False)

    @property
    def spaces(self) -> tuple[LimitSpace, LimitSpace]:
        if self._spaces is None:
            self._spaces = (limit_space(self.rs.left_rep), limit_space(self.rs.right_rep))
        return self._spaces

    def matrix(self) -> np.ndarray:
        """The linear map Z(source) → Z(target) in the limit-space bases."""
        if self._matrix is None:
            self._matrix = apply_L(self.rs, spaces=self.spaces)
        return self._matrix

    def basis_labels(self, side: str) -> list[dict[str, str]]:
        """Boundary gauge configuration representing each basis vector of one side."""
        surface = self.source if side == "source" else self.target
        space = self.spaces[0 if side == "source" else 1]
        carrier = surface.gauge_groupoid().carrier
        return [surface.config_label(carrier.unpack(p)) for p in space.provenance()]

    def as_json(self) -> dict:
        M = self.matrix()
        return {
            "builder": self.provenance,
            "shape": list(M.shape),
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in M],
            "source_basis": self.basis_labels("source"),
            "target_basis": self.basis_labels("target"),
        }


def _empty_side() -> tuple[DefectSurface, GroupoidRep]:
    E = empty_surface()
    return E, surface_rep(E)


def _to_point(apex: ActionGroupoid, target: ActionGroupoid) -> GroupoidMap:
    return GroupoidMap(apex, target, GroupHom.trivial(apex.group, target.group),
                       np.zeros(apex.size, dtype=np.int64), check=False)


# -- cylinders ---------------------------------------------------------------


def cylinder(S: DefectSurface) -> CobordismSpan:
    """Σ×[0,1]: the arrow-groupoid span of the gauge groupoid with σ = F_Σ on morphisms."""
    F = surface_rep(S)
    return CobordismSpan(RepresentedSpan.identity(F), S, S, provenance="cylinder")


# -- handlebodies --------------------------------------------------------------


def _free_hom_groupoid(G: FiniteGroup, rank: int) -> ActionGroupoid:
    """Hom(F_rank, G)⫽G: tuples conjugated simultaneously."""
    P = ProductGroup([G])
    T = BiSet.transparent(G)
    return ActionGroupoid(EdgewiseGSet(P, [T] * rank, [(0, 0)] * rank), name=f"Hom(F{rank},{G.name})//{G.name}")


def _meridian_configs(S: DefectSurface, xs: np.ndarray) -> np.ndarray:
    """Surface configurations a_i = x_i, b_i = e, ordered as the edges a1, b1, a2, b2, …"""
    carrier = S.gauge_groupoid().carrier
    cols = []
    for i in range(xs.shape[1]):
        cols += [xs[:, i], np.zeros(len(xs), dtype=np.int64)]
    return carrier._pack_arrays(cols, (len(xs),))


def handlebody(G: FiniteGroup, genus: int, *, reverse: bool = False,
               surface: DefectSurface | None = None) -> CobordismSpan:
    """The genus-g handlebody as a span from the empty surface to its boundary (or back).

    The apex is Hom(π₁H, G)⫽G with π₁H free on the a-cycles; the b-cycles
    bound discs, so the leg sends x to the configuration a_i = x_i, b_i = e.
    """
    S = surface or genus_surface(G, genus)
    E, FE = _empty_side()
    F = surface_rep(S)
    apex = _free_hom_groupoid(G, genus)
    xs = np.array(list(itertools.product(range(G.order), repeat=genus)), dtype=np.int64).reshape(-1, genus)
    leg = GroupoidMap(apex, S.gauge_groupoid(), GroupHom(apex.group, S.gauge_group, np.arange(G.order), check=False),
                      _meridian_configs(S, xs))
    other = _to_point(apex, E.gauge_groupoid())
    ones = [np.ones((1, 1), dtype=complex)] * apex.size
    if reverse:
        rs = RepresentedSpan(FibrantSpan(apex, leg, other), F, FE, ones)
        return CobordismSpan(rs, S, E, provenance="handlebody_reverse")
    rs = RepresentedSpan(FibrantSpan(apex, other, leg), FE, F, ones)
    return CobordismSpan(rs, E, S, provenance="handlebody")


def _flat_codes(S: DefectSurface) -> np.ndarray:
    from .surface import _analyse

    return _analyse(S).codes


def wall_cylinder(S1: DefectSurface, S2: DefectSurface, N: BiSet) -> CobordismSpan:
    """Σ×[0,1] with a parallel wall N in the middle, between two transparent genus-g surfaces.

    Apex objects are (ρ₁, ρ₂, n) with ρ_i flat on Σ and n fixed by every
    loop λ acting as ρ₁(λ) ▷ n ◁ ρ₂(λ)⁻¹; the group is G₁×G₂.
    """
    for S in (S1, S2):
        if len(S.vertex_groups) != 1 or not S.is_transparent():
            raise InputError("wall cylinder needs transparent one-vertex surfaces on both sides")
    if len(S1.edge_ids) != len(S2.edge_ids):
        raise InputError("wall cylinder needs surfaces of the same genus")
    G1, G2 = S1.vertex_groups[0], S2.vertex_groups[0]
    if N.left is not G1 or N.right is not G2:
        raise InputError("wall biset must be a G1×G2^op set")
    c1, c2 = _flat_codes(S1), _flat_codes(S2)
    car1, car2 = S1.gauge_groupoid().carrier, S2.gauge_groupoid().carrier
    k = len(S1.edge_ids)
    charge(len(c1) * len(c2) * N.size * max(1, k), None, "wall cylinder objects")
    x = np.stack(car1.coords(c1), axis=1) if k else np.zeros((len(c1), 0), dtype=np.int64)
    y = np.stack(car2.coords(c2), axis=1) if k else np.zeros((len(c2), 0), dtype=np.int64)
    I, J, n = np.meshgrid(np.arange(len(c1)), np.arange(len(c2)), np.arange(N.size), indexing="ij")
    I, J, n = I.ravel(), J.ravel(), n.ravel()
    ok = np.ones(len(I), dtype=bool)
    for e in range(k):
        moved = N.lact[x[I, e], N.ract[G2.inverse(y[J, e]), n]]
        ok &= moved == n
    I, J, n = I[ok], J[ok], n[ok]
    objects = (I * len(c2) + J) * N.size + n  # sorted, since the meshgrid is lexicographic
    P = ProductGroup([G1, G2])
    table = np.empty((P.order, len(objects)), dtype=np.int64)
    for h in range(P.order):
        h1, h2 = P.unpack(h)
        i2 = np.searchsorted(c1, car1.perm(car1.group.pack([h1]))[c1[I]])
        j2 = np.searchsorted(c2, car2.perm(car2.group.pack([h2]))[c2[J]])
        n2 = N.lact[h1, N.ract[G2.inverse(h2), n]]
        code = (i2 * len(c2) + j2) * N.size + n2
        table[h] = np.searchsorted(objects, code)
    apex = ActionGroupoid(GSet(P, table), name="wall_cylinder")
    ids = np.arange(P.order)
    d = P.digits(ids)
    left = GroupoidMap(apex, S1.gauge_groupoid(), GroupHom(P, S1.gauge_group, d[0], check=False), c1[I])
    right = GroupoidMap(apex, S2.gauge_groupoid(), GroupHom(P, S2.gauge_group, d[1], check=False), c2[J])
    ones = [np.ones((1, 1), dtype=complex)] * apex.size
    rs = RepresentedSpan(FibrantSpan(apex, left, right), surface_rep(S1), surface_rep(S2), ones)
    return CobordismSpan(rs, S1, S2, provenance="wall_cylinder")


@dataclass
class HandlebodyResult:
    enumerated: Fraction  # the fixed-point double sum
    via_groupoid: Fraction  # homotopy content of the reduced gauge groupoid
    closed_form: Fraction | None  # impermeable closed form or |Hom(π₁M, G)|/|G|
    closed_form_kind: str  # "impermeable", "transparent" or "none"

    def consistent(self) -> bool:
        return self.enumerated == self.via_groupoid and (self.closed_form is None or self.closed_form == self.enumerated)


def _is_impermeable(N: BiSet) -> bool:
    pts = np.arange(N.size)
    return bool(np.all(N.lact == pts) and np.all(N.ract == pts))


def _handlebody_triples(genus: int, G1: FiniteGroup, G2: FiniteGroup, N: BiSet, budget: int):
    """All (x, y, n) with n = x_i ▷ n ◁ y_i⁻¹ for every a-cycle (the b-cycles bound on both sides)."""
    charge(G1.order ** genus * G2.order ** genus * N.size, budget, "handlebody double sum")
    xs = np.array(list(itertools.product(range(G1.order), repeat=genus)), dtype=np.int64).reshape(-1, genus)
    ys = np.array(list(itertools.product(range(G2.order), repeat=genus)), dtype=np.int64).reshape(-1, genus)
    I, J, n = np.meshgrid(np.arange(len(xs)), np.arange(len(ys)), np.arange(N.size), indexing="ij")
    I, J, n = I.ravel(), J.ravel(), n.ravel()
    ok = np.ones(len(I), dtype=bool)
    for i in range(genus):
        ok &= N.lact[xs[I, i], N.ract[G2.inverse(ys[J, i]), n]] == n
    return xs, ys, I[ok], J[ok], n[ok]


def handlebody_double(genus: int, G1: FiniteGroup, G2: FiniteGroup, N: BiSet, gluing: str = "identity",
                      budget: int | None = None) -> HandlebodyResult:
    """Two genus-g handlebodies glued by the identity along a wall N.

    Both handlebodies fill the b-cycles, so π₁(ι_k) sends a_i to the i-th free
    generator and b_i to 1. Returns the fixed-point double sum, the homotopy
    content of the gauge groupoid and, when available, a closed form.
    """
    if gluing != "identity":
        raise InputError(f"unsupported gluing {gluing!r}; only 'identity' is built in")
    if genus < 1:
        raise InputError("genus must be at least 1")
    if N.left is not G1 or N.right is not G2:
        raise InputError("wall biset must be a G1×G2^op set")
    budget = resolve_budget(budget)
    xs, ys, I, J, n = _handlebody_triples(genus, G1, G2, N, budget)
    enumerated = Fraction(len(I), G1.order * G2.order)

    # reduced gauge groupoid of (x, y, n) under G1×G2
    P = ProductGroup([G1, G2])
    ny, nn = len(ys), N.size
    codes = (I * ny + J) * nn + n
    xcode = xs @ (G1.order ** np.arange(genus - 1, -1, -1))
    ycode = ys @ (G2.order ** np.arange(genus - 1, -1, -1))
    xindex = np.empty(len(xs), dtype=np.int64)
    xindex[xcode] = np.arange(len(xs))
    yindex = np.empty(len(ys), dtype=np.int64)
    yindex[ycode] = np.arange(len(ys))
    table = np.empty((P.order, len(codes)), dtype=np.int64)
    for h in range(P.order):
        h1, h2 = P.unpack(h)
        cx = G1.conjugate(h1, xs[I]) @ (G1.order ** np.arange(genus - 1, -1, -1))
        cy = G2.conjugate(h2, ys[J]) @ (G2.order ** np.arange(genus - 1, -1, -1))
        n2 = N.lact[h1, N.ract[G2.inverse(h2), n]]
        table[h] = np.searchsorted(codes, (xindex[cx] * ny + yindex[cy]) * nn + n2)
    apex = ActionGroupoid(GSet(P, table), name="handlebody_double")
    via = homotopy_content(apex)

    closed, kind = None, "none"
    if _is_impermeable(N):
        closed = N.size * Fraction(G1.order) ** (genus - 1) * Fraction(G2.order) ** (genus - 1)
        kind = "impermeable"
    elif G1 is G2 and N.is_transparent:
        # π₁M = ⟨x_1..x_g, y_1..y_g | x_i = y_i⟩ by van Kampen
        relators = [[i + 1, -(genus + i + 1)] for i in range(genus)]
        closed = Fraction(len(enumerate_homs(2 * genus, relators, G1, budget)), G1.order)
        kind = "transparent"
    return HandlebodyResult(enumerated, via, closed, kind)


def closed_invariant(c: CobordismSpan | RepresentedSpan) -> complex:
    """Σ over apex components of μ/|Aut| for a span between empty surfaces."""
    rs = c.rs if isinstance(c, CobordismSpan) else c
    for side in (rs.span.source, rs.span.target):
        if side.size != 1 or side.group.order != 1:
            raise InputError("closed invariant needs empty boundaries on both sides")
    total = 0j
    for comp in rs.span.apex.components():
        s = rs.sigma[comp.rep]
        mu = complex(s[0, 0]) if s.size else 0j
        total += mu * float(Fraction(1, len(comp.stabilizer)))
    via_L = apply_L(rs)
    value = complex(via_L[0, 0]) if via_L.size else 0j
    if abs(value - total) > 1e-8:
        raise ConsistencyError(f"closed invariant {total} disagrees with the linearised span {value}")
    return total


# -- the solid torus with two walls and a core loop ------------------------------


def loop_groupoid(G1: FiniteGroup, G2: FiniteGroup, M1: BiSet, M2: BiSet) -> ActionGroupoid:
    """(M1×M2)⫽(G1×G2) with (h1,h2)·(m1,m2) = (h1▷m1◁h2⁻¹, h2▷m2◁h1⁻¹)."""
    P = ProductGroup([G1, G2])
    return ActionGroupoid(EdgewiseGSet(P, [M1, M2.opposite()], [(0, 1), (0, 1)]), name="loop")


def double_loop_rep(base: ActionGroupoid, G: FiniteGroup, cls, sigma: Any = "trivial") -> GroupoidRep:
    """A Drinfeld double irrep pulled back along (m1,m2) ↦ m1·m2 and (h1,h2) ↦ h1."""
    carrier = base.carrier
    M1, M2op = carrier.bisets
    if not (M1.transparent_of is G and M2op.transparent_of is G):
        raise InputError("Drinfeld double labels on the core loop need transparent walls over one group")
    conj = conjugation_groupoid(G)
    orb = orbit_of(conj.carrier, G.element(cls))
    rep = GroupoidRep(conj, [Block(orb, stabilizer_rep_from_descriptor(G, orb.stabilizer, sigma))], name="D")
    P = base.group

    def point_map(p):
        m1, m2 = carrier.unpack(p)
        return int(G.multiply(m1, m2))

    def hom(h):
        return P.unpack(h)[0]

    return pullback_rep(base, rep, point_map, hom, name=f"D[{G.labels[orb.rep]}]")


def _loop_blocks(base: ActionGroupoid, blocks) -> GroupoidRep:
    carrier = base.carrier
    out = []
    try:
        specs = [(b["point"], b.get("stabilizer_rep", "trivial")) for b in blocks]
    except (KeyError, TypeError, AttributeError):
        raise InputError("core loop blocks need a 'point' each") from None
    for point, desc in specs:
        if not isinstance(point, (list, tuple)) or len(point) != 2:
            raise InputError(f"core loop point {point!r} must be a pair [m1, m2]")
        p = carrier.pack([M.point(v) for M, v in zip(carrier.bisets, point)])
        orb = orbit_of(carrier, p)
        out.append(Block(orb, stabilizer_rep_from_descriptor(base.group, orb.stabilizer, desc)))
    return GroupoidRep(base, out, name="phi")


def _phi_from_descriptor(base: ActionGroupoid, G1, G2, desc) -> GroupoidRep:
    if isinstance(desc, GroupoidRep):
        if desc.base.size != base.size or desc.base.group.order != base.group.order:
            raise InputError("core loop representation lives on a different groupoid")
        return desc
    if callable(desc):
        return _phi_from_descriptor(base, G1, G2, desc(base))
    if isinstance(desc, str):
        desc = {"kind": desc}
    kind = desc.get("kind") if isinstance(desc, dict) else None
    if kind == "double_irrep":
        if G1 is not G2:
            raise InputError("Drinfeld double labels need G1 = G2")
        return double_loop_rep(base, G1, desc.get("class", 0), desc.get("sigma", "trivial"))
    if kind == "trivial":
        return GroupoidRep.trivial(base)
    if kind == "transparent":
        raise InputError("a transparent core line is not gauge invariant for these walls; "
                         "use a double_irrep label instead")
    if kind == "blocks":
        return _loop_blocks(base, desc.get("blocks"))
    raise InputError(f"unknown core loop representation {desc!r}")


def solid_torus(G1: FiniteGroup, G2: FiniteGroup, M1: BiSet, M2: BiSet, phi: Any) -> CobordismSpan:
    """Solid torus with two wall annuli M1, M2 meeting along a core loop labelled φ.

    The boundary is the two-vertex torus of `solid_torus_boundary`; the apex
    is the boundary gauge groupoid itself with the identity projection, and
    σ at (g1, g2, m1, m2) is the trace of φ at the automorphism (g1, g2).
    """
    S = solid_torus_boundary(G1, G2, M1, M2)
    E, FE = _empty_side()
    A = S.gauge_groupoid()
    F = surface_rep(S)
    base = loop_groupoid(G1, G2, M1, M2)
    rho = _phi_from_descriptor(base, G1, G2, phi)
    P, carrier = A.group, A.carrier
    sigma = []
    for a in range(A.size):
        d = F.dim_at(a)
        if d == 0:
            sigma.append(np.zeros((1, 0), dtype=complex))
            continue
        g1, g2, m1, m2 = carrier.unpack(a)
        point = base.carrier.pack([m1, m2])
        if base.act(base.group.pack([g1, g2]), point) != point:
            raise ConsistencyError(f"boundary configuration {a} does not give a loop automorphism")
        if rho.dim_at(point) == 0:
            mu = 0j
        else:
            mu = complex(np.trace(rho.eval(base.group.pack([g1, g2]), point)))
        sigma.append(np.full((1, d), mu, dtype=complex))
    left = GroupoidMap(A, A, GroupHom.identity(P), np.arange(A.size), check=False)
    right = _to_point(A, E.gauge_groupoid())
    rs = RepresentedSpan(FibrantSpan(A, left, right), F, FE, sigma)
    return CobordismSpan(rs, S, E, provenance="solid_torus")


# -- gluing ------------------------------------------------------------------


def glue(c1: CobordismSpan, c2: CobordismSpan) -> CobordismSpan:
    """c2 ∘ c1 along the shared surface; multiplicativity of Z is asserted."""
    if c1.target is not c2.source:
        raise InputError(f"cannot glue: target of the first cobordism ({c1.target.name}) is not the source "
                         f"of the second ({c2.source.name})")
    rs = compose_represented(c1.rs, c2.rs)
    glued = CobordismSpan(rs, c1.source, c2.target, provenance=f"{c2.provenance}∘{c1.provenance}")
    glued._spaces = (c1.spaces[0], c2.spaces[1])
    expected = c2.matrix() @ c1.matrix()
    got = glued.matrix()
    if got.shape != expected.shape or (got.size and np.max(np.abs(got - expected)) > 1e-8):
        raise ConsistencyError("gluing is not multiplicative: Z(c2∘c1) differs from Z(c2)·Z(c1)")
    return glued


# -- JSON input ----------------------------------------------------------------


def _named(table: dict, key: str, where: str):
    if key not in table:
        raise InputError(f"{where}: unknown name {key!r}")
    return table[key]


def cobordism_from_dict(data: dict) -> CobordismSpan | HandlebodyResult:
    check_format(data)
    builder = data.get("builder")
    if builder == "cylinder":
        if "surface" not in data:
            raise InputError("cylinder: missing field 'surface'")
        return cylinder(surface_from_dict(data["surface"]))
    groups = read_groups(data)
    bisets = read_bisets(data, groups)

    def group(key):
        return _named(groups, data.get(key, ""), f"{builder}.{key}")

    def biset(key, left, right):
        name = data.get(key)
        if name in (None, "point"):
            return BiSet.trivial(left, right)
        if name == "transparent":
            if left is not right:
                raise InputError(f"{builder}.{key}: transparent wall needs equal groups")
            return BiSet.transparent(left)
        return _named(bisets, name, f"{builder}.{key}")

    if builder == "solid_torus":
        G1, G2 = group("G1"), group("G2")
        return solid_torus(G1, G2, biset("M1", G1, G2), biset("M2", G2, G1), data.get("phi", "trivial"))
    if builder == "handlebody_double":
        G1, G2 = group("G1"), group("G2")
        genus = data.get("genus")
        if not isinstance(genus, int):
            raise InputError("handlebody_double: 'genus' must be an integer")
        return handlebody_double(genus, G1, G2, biset("N", G1, G2), data.get("gluing", "identity"))
    if builder == "raw":
        return _raw_span(data, groups)
    raise InputError(f"unknown cobordism builder {builder!r}")


def _raw_span(data: dict, groups: dict[str, FiniteGroup]) -> CobordismSpan:
    """Apex and boundary G-sets given by tables; trivial boundary representations."""

    def gset(key):
        d = data.get(key)
        if not isinstance(d, dict):
            raise InputError(f"raw.{key}: expected an object")
        G = _named(groups, d.get("group", ""), f"raw.{key}.group")
        try:
            return ActionGroupoid(GSet(G, d["table"]), name=key), d
        except KeyError:
            raise InputError(f"raw.{key}: missing field 'table'") from None

    apex, _ = gset("apex")
    legs = []
    for side in ("left", "right"):
        X, d = gset(side)
        if "hom" not in d or "points" not in d:
            raise InputError(f"raw.{side}: a leg needs 'hom' and 'points'")
        legs.append((X, GroupoidMap(apex, X, GroupHom(apex.group, X.group, d["hom"]), d["points"])))
    span = FibrantSpan(apex, legs[0][1], legs[1][1])
    sigma = data.get("sigma")
    if sigma is None:
        rs = RepresentedSpan.trivial(span)
    else:
        if len(sigma) != apex.size:
            raise InputError(f"raw.sigma: need {apex.size} scalars")
        vals = [complex(*v) if isinstance(v, list) else complex(v) for v in sigma]
        rs = RepresentedSpan(span, GroupoidRep.trivial(span.source), GroupoidRep.trivial(span.target),
                             [np.full((1, 1), v) for v in vals])
    src = _raw_surface(legs[0][0], "raw_source")
    tgt = _raw_surface(legs[1][0], "raw_target")
    return CobordismSpan(rs, src, tgt, provenance="raw")


def _raw_surface(X: ActionGroupoid, name: str):
    """A stand-in carrying only the boundary groupoid, for basis labels of raw spans."""

    class _Boundary:
        def __init__(self):
            self.name = name

        def gauge_groupoid(self):
            return _Wrapped(X)

        def config_label(self, config):
            return {"object": str(config[0])}

    class _Wrapped:
        def __init__(self, A):
            self.carrier = _Unpack()

    class _Unpack:
        @staticmethod
        def unpack(p):
            return (int(p),)

    return _Boundary()


def load_cobordism(path: str | Path):
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return cobordism_from_dict(data)
