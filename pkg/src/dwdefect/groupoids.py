"""Action groupoids, equivariant maps, fibrant spans, pullbacks and fibres."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .config import charge
from .errors import ConsistencyError, InputError, ValidationError
from .groups import (
    FiniteGroup,
    GroupHom,
    GSet,
    LazyGSet,
    Orbit,
    ProductGroup,
    make_group,
    orbit_of,
    orbits,
    subgroup_as_group,
)

__all__ = [
    "ActionGroupoid",
    "GroupoidMap",
    "FibrantSpan",
    "FibreGroupoid",
    "point_groupoid",
    "discrete_groupoid",
    "product_groupoid",
    "path_components",
    "homotopy_content",
    "is_fibration",
    "identity_span",
    "pullback_compose",
    "product_span",
    "fibre",
    "span_fingerprint",
    "same_groupoid",
    "fibre_check_count",
]


class ActionGroupoid:
    """Objects are the points of a G-set, morphisms g: m → g▷m."""

    def __init__(self, carrier: GSet, name: str = ""):
        self.carrier = carrier
        self.name = name
        self._components: list[Orbit] | None = None

    @property
    def group(self) -> FiniteGroup:
        return self.carrier.group

    @property
    def size(self) -> int:
        return self.carrier.size

    def act(self, g: int, m: int) -> int:
        return self.carrier.act(g, m)

    def perm(self, g: int) -> np.ndarray:
        return self.carrier.perm(g)

    def images_of(self, m: int) -> np.ndarray:
        return self.carrier.images_of(m)

    def components(self) -> list[Orbit]:
        if self._components is None:
            self._components = orbits(self.carrier)
        return self._components

    def component_index(self) -> np.ndarray:
        """Index into components() for every object."""
        idx = np.empty(self.size, dtype=np.int64)
        for i, orb in enumerate(self.components()):
            idx[list(orb.members)] = i
        return idx

    def label(self, m: int) -> str:
        return self.carrier.label(m)

    def __repr__(self) -> str:
        return f"ActionGroupoid({self.name or '?'}: {self.size} objects, group {self.group.name})"


def point_groupoid(G: FiniteGroup) -> ActionGroupoid:
    """•⫽G."""
    return ActionGroupoid(GSet(G, np.zeros((G.order, 1), dtype=np.int64), check=False), name=f"pt//{G.name}")


def discrete_groupoid(k: int) -> ActionGroupoid:
    """k objects, identity morphisms only."""
    return ActionGroupoid(GSet(make_group("cyclic", 1), np.arange(k)[None, :], check=False), name=f"discrete{k}")


def product_groupoid(A: ActionGroupoid, B: ActionGroupoid) -> ActionGroupoid:
    """A × B on pairs a·|B| + b, acted on by the product group."""
    G = ProductGroup([A.group, B.group])
    nb = B.size

    def perm(g):
        ga, gb = G.unpack(g)
        return (A.perm(ga)[:, None] * nb + B.perm(gb)[None, :]).reshape(-1)

    def images(m):
        a, b = divmod(m, nb)
        return (A.images_of(a)[:, None] * nb + B.images_of(b)[None, :]).reshape(-1)

    return ActionGroupoid(LazyGSet(G, A.size * nb, perm, images), name=f"{A.name}x{B.name}")


def same_groupoid(A: ActionGroupoid, B: ActionGroupoid) -> bool:
    """Structural equality: same group table and same action of every element."""
    if A is B:
        return True
    if A.size != B.size or A.group.order != B.group.order:
        return False
    charge(A.group.order * (A.size + A.group.order), None, "groupoid comparison")
    ids = np.arange(A.group.order)
    if not np.array_equal(A.group.multiply(ids[:, None], ids[None, :]), B.group.multiply(ids[:, None], ids[None, :])):
        return False
    return all(np.array_equal(A.perm(g), B.perm(g)) for g in range(A.group.order))


def path_components(A: ActionGroupoid) -> list[Orbit]:
    """Components as orbits: representative, members, automorphism group of the representative."""
    return A.components()


def homotopy_content(A: ActionGroupoid) -> Fraction:
    """Groupoid cardinality Σ over components of 1/|Aut|."""
    return sum((Fraction(1, len(c.stabilizer)) for c in A.components()), Fraction(0))


class GroupoidMap:
    """An equivariant map of action groupoids: a hom plus a point map."""

    def __init__(self, source: ActionGroupoid, target: ActionGroupoid, hom: GroupHom, point_map, *, check: bool = True):
        if hom.source is not source.group and hom.source.order != source.group.order:
            raise ValidationError("hom source does not match the source groupoid")
        if hom.target is not target.group and hom.target.order != target.group.order:
            raise ValidationError("hom target does not match the target groupoid")
        self.source = source
        self.target = target
        self.hom = hom
        self.point_map = np.asarray(point_map, dtype=np.int64).reshape(source.size)
        self.point_map.setflags(write=False)
        if check:
            self._validate()

    def _validate(self) -> None:
        pm = self.point_map
        if self.source.size and (pm.min() < 0 or pm.max() >= self.target.size):
            raise ValidationError("point map lands outside the target groupoid")
        for s in self.source.group.generators:
            lhs = pm[self.source.perm(s)]
            rhs = self.target.perm(int(self.hom.image[s]))[pm]
            bad = np.nonzero(lhs != rhs)[0]
            if len(bad):
                raise ValidationError(f"point map is not equivariant at generator {s}, object {int(bad[0])}")

    def __call__(self, m):
        return self.point_map[m]


def _paired_image(left: GroupoidMap, right: GroupoidMap) -> np.ndarray:
    return left.hom.image * right.target.group.order + right.hom.image


def is_fibration(left: GroupoidMap, right: GroupoidMap):
    """Whether ⟨left, right⟩ lifts every morphism; returns (flag, witness).

    For action groupoids this is surjectivity of the paired homomorphism. The
    witness is (apex object, (g1, g2)): a boundary morphism out of that
    object's image with no lift.
    """
    if left.source is not right.source:
        raise ValidationError("span legs must share their apex")
    if left.source.size == 0:
        return True, None
    n2 = right.target.group.order
    hit = np.zeros(left.target.group.order * n2, dtype=bool)
    hit[_paired_image(left, right)] = True
    missing = np.nonzero(~hit)[0]
    if len(missing) == 0:
        return True, None
    # report the missing pair with the smallest right component first
    g1, g2 = min((divmod(int(c), n2) for c in missing), key=lambda p: (p[1], p[0]))
    return False, (0, (g1, g2))


class FibrantSpan:
    """left.target ← apex → right.target with a fibrant pairing."""

    def __init__(self, apex: ActionGroupoid, left: GroupoidMap, right: GroupoidMap, *, check: bool = True):
        if left.source is not apex or right.source is not apex:
            raise ValidationError("span legs must start at the apex")
        self.apex = apex
        self.left = left
        self.right = right
        if check:
            ok, witness = is_fibration(left, right)
            if not ok:
                raise ValidationError(f"span is not fibrant: morphism {witness[1]} at object {witness[0]} has no lift")
        self._kernel = None
        self._over: dict | None = None

    @property
    def source(self) -> ActionGroupoid:
        return self.left.target

    @property
    def target(self) -> ActionGroupoid:
        return self.right.target

    def kernel(self) -> np.ndarray:
        """Apex group elements mapping to (identity, identity)."""
        if self._kernel is None:
            self._kernel = np.nonzero((self.left.hom.image == 0) & (self.right.hom.image == 0))[0]
        return self._kernel

    def objects_over(self, x: int, y: int) -> list[int]:
        if self._over is None:
            over = defaultdict(list)
            for a, (p, q) in enumerate(zip(self.left.point_map, self.right.point_map)):
                over[(int(p), int(q))].append(a)
            self._over = dict(over)
        return self._over.get((int(x), int(y)), [])


# -- fibres ------------------------------------------------------------------

_FIBRE_CHECKS = [0]


def fibre_check_count() -> int:
    """How many times the fibre cardinality identity has been verified in this process."""
    return _FIBRE_CHECKS[0]


@dataclass
class FibreComponent:
    rep: int
    members: tuple[int, ...]
    aut: tuple[int, ...]  # kernel elements fixing rep


@dataclass
class FibreGroupoid:
    x: int
    y: int
    objects: tuple[int, ...]
    kernel: tuple[int, ...]
    components: list[FibreComponent] = field(default_factory=list)

    def homotopy_content(self) -> Fraction:
        return sum((Fraction(1, len(c.aut)) for c in self.components), Fraction(0))

    def as_groupoid(self, span: FibrantSpan) -> ActionGroupoid:
        """The fibre as a standalone action groupoid of the kernel group."""
        K, emb = subgroup_as_group(span.apex.group, self.kernel, name="ker")
        index = {a: i for i, a in enumerate(self.objects)}
        table = np.array([[index[int(span.apex.perm(int(k))[a])] for a in self.objects] for k in emb], dtype=np.int64)
        return ActionGroupoid(GSet(K, table.reshape(K.order, len(self.objects)), check=False), name="fibre")


def fibre(span: FibrantSpan, x: int, y: int, *, descending: bool = False) -> FibreGroupoid:
    """Apex objects over (x, y) with morphisms in the kernel of the paired hom.

    Components are listed by smallest (or, with `descending`, largest) object.
    The automorphism cardinality identity relating apex, fibre and boundary is
    verified for every component.
    """
    if not (0 <= x < span.source.size and 0 <= y < span.target.size):
        raise InputError(f"boundary objects ({x}, {y}) out of range")
    objs = span.objects_over(x, y)
    kernel = span.kernel()
    result = FibreGroupoid(int(x), int(y), tuple(objs), tuple(int(k) for k in kernel))
    if not objs:
        return result
    apex = span.apex
    pos = {a: i for i, a in enumerate(objs)}
    comp_of = np.full(len(objs), -1, dtype=np.int64)
    order = reversed(objs) if descending else objs
    for a in order:
        if comp_of[pos[a]] >= 0:
            continue
        images = apex.images_of(a)
        kim = images[kernel]
        members = sorted(set(int(b) for b in kim))
        for b in members:
            comp_of[pos[b]] = len(result.components)
        aut = tuple(int(k) for k in kernel[kim == a])
        result.components.append(FibreComponent(int(a), tuple(members), aut))
    # cardinality identity |Aut_apex(a)| · |orbit of [a]| = |Aut_fibre(a)| · |Aut(x, y)|
    stab_x = span.source.images_of(x) == x
    stab_y = span.target.images_of(y) == y
    boundary_aut = int(stab_x.sum()) * int(stab_y.sum())
    lifts = np.nonzero(stab_x[span.left.hom.image] & stab_y[span.right.hom.image])[0]
    for comp in result.components:
        images = apex.images_of(comp.rep)
        apex_aut = int(np.count_nonzero(images == comp.rep))
        reached = {int(comp_of[pos[int(b)]]) for b in set(images[lifts].tolist())}
        _FIBRE_CHECKS[0] += 1
        if apex_aut * len(reached) != len(comp.aut) * boundary_aut:
            raise ConsistencyError(
                f"fibre cardinality identity fails at object {comp.rep}: |Aut_apex|={apex_aut}, "
                f"|Aut_fibre|={len(comp.aut)}, |Aut_boundary|={boundary_aut}, orbit={len(reached)}"
            )
    return result


# -- span constructions --------------------------------------------------------


def identity_span(A: ActionGroupoid) -> FibrantSpan:
    """The arrow groupoid span A ← (M×G)⫽(G×G) → A.

    Objects (m, g) are morphisms g: m → g▷m; (h0, h1) sends it to
    (h0▷m, h1·g·h0⁻¹).
    """
    G = A.group
    n = G.order
    GG = ProductGroup([G, G])
    ids = np.arange(n)
    size = A.size * n

    def perm(h):
        h0, h1 = GG.unpack(h)
        new_m = A.perm(h0)
        new_g = G.multiply(G.multiply(h1, ids), G.inverse(h0))
        return (new_m[:, None] * n + np.asarray(new_g)[None, :]).reshape(-1)

    def images(p):
        m, g = divmod(p, n)
        h0 = np.repeat(ids, n)
        h1 = np.tile(ids, n)
        new_m = A.images_of(m)[h0]
        new_g = G.multiply(G.multiply(h1, g), G.inverse(h0))
        return new_m * n + new_g

    apex = ActionGroupoid(LazyGSet(GG, size, perm, images), name=f"arrows({A.name})")
    pts = np.arange(size)
    m_of, g_of = pts // n, pts % n
    tgt = np.array([A.perm(int(g))[int(m)] for m, g in zip(m_of, g_of)], dtype=np.int64).reshape(size)
    left = GroupoidMap(apex, A, GroupHom.projection(GG, 0), m_of, check=False)
    right = GroupoidMap(apex, A, GroupHom.projection(GG, 1), tgt, check=False)
    return FibrantSpan(apex, left, right)


def pullback_compose(s1: FibrantSpan, s2: FibrantSpan, budget: int | None = None) -> FibrantSpan:
    """Compose s1: X → Y with s2: Y → Z by the pullback over Y."""
    if not same_groupoid(s1.target, s2.source):
        raise ValidationError("spans are not composable: middle boundaries differ")
    A1, A2 = s1.apex, s2.apex
    h1, h2 = s1.right.hom.image, s2.left.hom.image
    # fibre product group {(g, h) : h1(g) = h2(h)}
    by_image = defaultdict(list)
    for h, img in enumerate(h2):
        by_image[int(img)].append(h)
    n2 = A2.group.order
    elements = [g * n2 + h for g, img in enumerate(h1) for h in by_image.get(int(img), [])]
    charge(len(elements) ** 2, budget, "fibre product group")
    P = ProductGroup([A1.group, A2.group])
    F, emb = subgroup_as_group(P, elements, name=f"{A1.group.name}x_{s1.target.group.name}{A2.group.name}")
    # pullback objects
    by_point = defaultdict(list)
    for b, y in enumerate(s2.left.point_map):
        by_point[int(y)].append(b)
    pairs = [(a, b) for a, y in enumerate(s1.right.point_map) for b in by_point.get(int(y), [])]
    charge(F.order * max(1, len(pairs)), budget, "pullback apex")
    code = np.full(A1.size * A2.size, -1, dtype=np.int64)
    pa = np.array([p[0] for p in pairs], dtype=np.int64)
    pb = np.array([p[1] for p in pairs], dtype=np.int64)
    code[pa * A2.size + pb] = np.arange(len(pairs))
    table = np.empty((F.order, len(pairs)), dtype=np.int64)
    for f, pg in enumerate(emb):
        g, h = divmod(int(pg), n2)
        table[f] = code[A1.perm(g)[pa] * A2.size + A2.perm(h)[pb]]
    if len(pairs) and table.min() < 0:
        raise ConsistencyError("pullback objects are not closed under the fibre product group")
    apex = ActionGroupoid(GSet(F, table, check=False), name="pullback")
    hom_left = GroupHom(F, s1.source.group, s1.left.hom.image[emb // n2], check=False)
    hom_right = GroupHom(F, s2.target.group, s2.right.hom.image[emb % n2], check=False)
    left = GroupoidMap(apex, s1.source, hom_left, s1.left.point_map[pa] if len(pairs) else [], check=False)
    right = GroupoidMap(apex, s2.target, hom_right, s2.right.point_map[pb] if len(pairs) else [], check=False)
    span = FibrantSpan(apex, left, right, check=False)
    ok, witness = is_fibration(left, right)
    if not ok:
        raise ConsistencyError(f"composite span is not fibrant (witness {witness})")
    span.factor_pairs = pairs  # (a, b) for each composite apex object
    return span


def product_span(s1: FibrantSpan, s2: FibrantSpan, source: ActionGroupoid | None = None,
                 target: ActionGroupoid | None = None) -> FibrantSpan:
    """The product span, monoidal structure on spans."""
    apex = product_groupoid(s1.apex, s2.apex)
    src = source or product_groupoid(s1.source, s2.source)
    tgt = target or product_groupoid(s1.target, s2.target)

    def leg(m1: GroupoidMap, m2: GroupoidMap, onto: ActionGroupoid) -> GroupoidMap:
        Gp = apex.group
        ids = np.arange(Gp.order)
        d1, d2 = Gp.digits(ids)
        img = m1.hom.image[d1] * m2.target.group.order + m2.hom.image[d2]
        pm = (m1.point_map[:, None] * m2.target.size + m2.point_map[None, :]).reshape(-1)
        return GroupoidMap(apex, onto, GroupHom(Gp, onto.group, img, check=False), pm, check=False)

    return FibrantSpan(apex, leg(s1.left, s2.left, src), leg(s1.right, s2.right, tgt))


def span_fingerprint(span: FibrantSpan) -> dict:
    """Invariants preserved by equivalence of spans over the boundary."""
    comps = span.apex.components()
    table = {}
    for cx in span.source.components():
        for cy in span.target.components():
            table[(cx.rep, cy.rep)] = fibre(span, cx.rep, cy.rep).homotopy_content()
    return {
        "components": len(comps),
        "aut_orders": tuple(sorted(len(c.stabilizer) for c in comps)),
        "content": homotopy_content(span.apex),
        "fibre_content": table,
    }
