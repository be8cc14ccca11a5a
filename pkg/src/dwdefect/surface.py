"""Labelled defect surfaces in their fully reduced combinatorial form.

A surface is given by its dual graph. Vertices carry finite groups, edges
carry bisets (left group at the target, right group at the source) and faces
carry a cyclic boundary word, a basepoint corner and a representation.

A gauge configuration picks a point of every edge biset; the product of the
vertex groups acts edgewise by m_e ↦ g_t(e) ▷ m_e ◁ g_s(e)⁻¹. Each face sees
its configuration through a small reduced groupoid: the holonomy around the
face for faces inside one phase, or the pair of wall values (with the pure
segments absorbed) for faces on a domain wall. Face representations are
pulled back from the reduced groupoid, so face groupoids never need to be
materialized.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .config import charge, resolve_budget, settings
from .errors import ConsistencyError, InputError
from .groupoids import ActionGroupoid
from .groups import (
    BiSet,
    EdgewiseGSet,
    FiniteGroup,
    Orbit,
    ProductGroup,
    group_from_descriptor,
    orbit_of,
    orbits,
)
from .reps import (
    Block,
    GroupoidRep,
    MatrixRep,
    conjugation_groupoid,
    double_irreps,
    invariant_basis,
    pullback_rep,
    stabilizer_rep_from_descriptor,
)

__all__ = [
    "DefectSurface",
    "FaceSpec",
    "ReducedFace",
    "FaceGroupoid",
    "OrbitRecord",
    "SurfaceSpace",
    "load_surface",
    "surface_from_dict",
    "gauge_groupoid",
    "face_groupoid",
    "face_rep",
    "surface_rep",
    "z_surface",
    "euler_characteristic",
    "genus_surface",
    "torus",
    "sphere",
    "punctured_surface",
    "excitation",
    "separating_surface",
    "solid_torus_boundary",
    "empty_surface",
]

Letter = tuple[int, int]  # (edge index, +1 along the edge or -1 against it)


@dataclass
class FaceSpec:
    id: str
    word: list[tuple[str, int]]
    basepoint: int = 0
    rep: Any = "flat"
    walls: list[int] | None = None  # letter positions (in the given word) crossing a domain wall


# -- face reduction ------------------------------------------------------------


def _segment_product(G: FiniteGroup, values: Sequence[np.ndarray], signs: Sequence[int], shape) -> np.ndarray:
    out = np.zeros(shape, dtype=np.int64)
    for v, s in zip(values, signs):
        out = np.asarray(G.multiply(out, v if s > 0 else G.inverse(v)), dtype=np.int64)
    return out


def _same_biset(A: BiSet, B: BiSet) -> bool:
    return (A.left is B.left and A.right is B.right and A.size == B.size
            and np.array_equal(A.lact, B.lact) and np.array_equal(A.ract, B.ract))


class ReducedFace:
    """A face's view of gauge configurations through its reduced groupoid.

    With no wall letters the reduced groupoid is G⫽G (conjugation) and a
    configuration maps to the ordered holonomy read from the basepoint. With
    wall letters w_0 < … < w_{r-1} each wall value absorbs the pure segments
    next to it; the reduced group has one factor per wall (the corner before
    the wall, corner 0 for the first one). Two walls are presented as the
    pair (value of the second wall, absorbed value of the first) under
    (g_a, g_b) acting by g_a ▷ · ◁ g_b⁻¹ on both coordinates.
    """

    def __init__(self, face_id: str, letters: Sequence[Letter], corners: Sequence[int],
                 walls: Sequence[int], edge_bisets: Sequence[BiSet], vertex_groups: Sequence[FiniteGroup]):
        self.id = face_id
        self.letters = list(letters)
        self.corners = list(corners)
        self.walls = sorted(walls)
        k = len(self.letters)
        if not self.walls:
            G = vertex_groups[self.corners[0]]
            self.kind = "pure"
            self.group = G
            self.groupoid = conjugation_groupoid(G)
            self.slots = [0]
            self._pure_group = G
            return
        self.kind = "wall"
        r = len(self.walls)
        self.slots = [0] + [self.walls[j] for j in range(1, r)]
        self._plan = []
        for j, w in enumerate(self.walls):
            e, s = self.letters[w]
            M = edge_bisets[e]
            N = M if s > 0 else M.opposite()
            left_seg = list(range(0, w)) if j == 0 else []
            stop = self.walls[j + 1] if j + 1 < r else k
            right_seg = list(range(w + 1, stop))
            self._plan.append((w, N, left_seg, right_seg))
        factors = [vertex_groups[self.corners[c]] for c in self.slots]
        self.group = ProductGroup(factors)
        for j, (w, N, _, _) in enumerate(self._plan):
            if N.left is not factors[j] or N.right is not factors[(j + 1) % r]:
                raise InputError(f"face {face_id!r}: wall letter {w} does not join the expected phases")
        if r == 2:
            second = self._plan[1][1].opposite()
            self.reduced_bisets = [second, self._plan[0][1]]
            endpoints = [(0, 1), (0, 1)]
        else:
            self.reduced_bisets = [p[1] for p in self._plan]
            endpoints = [(j, (j + 1) % r) for j in range(r)]
        self.groupoid = ActionGroupoid(EdgewiseGSet(self.group, self.reduced_bisets, endpoints),
                                       name=f"reduced({face_id})")

    # points ------------------------------------------------------------------
    def reduce_values(self, values: Sequence[np.ndarray]) -> np.ndarray:
        """Reduced point for letter values given in word order from the basepoint."""
        values = [np.asarray(v, dtype=np.int64) for v in values]
        shape = np.broadcast(*values).shape if values else ()
        signs = [s for _, s in self.letters]
        if self.kind == "pure":
            return _segment_product(self._pure_group, values, signs, shape)
        coords = []
        for w, N, left_seg, right_seg in self._plan:
            alpha = _segment_product(N.left, [values[i] for i in left_seg], [signs[i] for i in left_seg], shape)
            beta = _segment_product(N.right, [values[i] for i in right_seg], [signs[i] for i in right_seg], shape)
            coords.append(N.lact[alpha, N.ract[beta, values[w]]])
        if len(coords) == 2:
            coords = [coords[1], coords[0]]
        carrier = self.groupoid.carrier
        return carrier._pack_arrays([np.broadcast_to(c, shape) for c in coords], shape)

    def reduce_points(self, edge_columns: Sequence[np.ndarray]) -> np.ndarray:
        return self.reduce_values([edge_columns[e] for e, _ in self.letters])

    # group elements ----------------------------------------------------------
    def reduce_corner_group(self, corner_digits: Sequence[np.ndarray]) -> np.ndarray:
        if self.kind == "pure":
            return np.asarray(corner_digits[0], dtype=np.int64)
        digits = [np.asarray(corner_digits[c], dtype=np.int64) for c in self.slots]
        return self.group._combine(digits, np.shape(digits[0]))

    def reduce_group(self, vertex_digits: Sequence[np.ndarray]) -> np.ndarray:
        return self.reduce_corner_group([vertex_digits[v] for v in self.corners])

    # representations -----------------------------------------------------------
    def attach(self, rep: GroupoidRep) -> None:
        self.rep = rep
        mask = np.zeros(self.groupoid.size, dtype=bool)
        for m in rep.support():
            mask[m] = True
        self.support_mask = mask


def _resolve_point(rf: ReducedFace, value) -> int:
    if rf.kind == "pure":
        return rf.group.element(value)
    carrier = rf.groupoid.carrier
    if isinstance(value, (list, tuple)):
        if len(value) != len(carrier.bisets):
            raise InputError(f"face {rf.id!r}: a reduced point needs {len(carrier.bisets)} coordinates")
        return carrier.pack([M.point(v) for M, v in zip(carrier.bisets, value)])
    if isinstance(value, (int, np.integer)) and 0 <= int(value) < carrier.size:
        return int(value)
    raise InputError(f"face {rf.id!r}: cannot read reduced point {value!r}")


def _block_rep(rf: ReducedFace, specs: Iterable[tuple[Any, Any]], name: str) -> GroupoidRep:
    blocks = []
    for value, sigma_desc in specs:
        p = _resolve_point(rf, value)
        orb = orbit_of(rf.groupoid.carrier, p)
        sigma = stabilizer_rep_from_descriptor(rf.groupoid.group, orb.stabilizer, sigma_desc)
        blocks.append(Block(orb, sigma))
    return GroupoidRep(rf.groupoid, blocks, name=name)


def _transparent_wall(rf: ReducedFace) -> GroupoidRep:
    if rf.kind != "wall" or len(rf.walls) != 2:
        raise InputError(f"face {rf.id!r}: a transparent label on a wall face needs exactly two wall letters")
    A, B = rf.reduced_bisets
    if not _same_biset(A, B):
        raise InputError(f"face {rf.id!r}: the two wall letters carry different bisets, so no diagonal exists")
    carrier = rf.groupoid.carrier
    blocks = []
    for single in orbits(B.as_gset()):
        orb = orbit_of(carrier, carrier.pack([single.rep, single.rep]))
        blocks.append(Block(orb, MatrixRep.trivial(rf.groupoid.group, orb.stabilizer)))
    return GroupoidRep(rf.groupoid, blocks, name="transparent")


def _face_rep_from_descriptor(rf: ReducedFace, desc) -> GroupoidRep:
    if isinstance(desc, GroupoidRep):
        if desc.base.size != rf.groupoid.size or desc.base.group.order != rf.groupoid.group.order:
            raise InputError(f"face {rf.id!r}: supplied representation lives on a different groupoid")
        return GroupoidRep(rf.groupoid, [Block(b.orbit, MatrixRep(rf.groupoid.group, b.sigma.elements, b.sigma.mats,
                                                                  check=False)) for b in desc.blocks], name=desc.name)
    if callable(desc):
        return _face_rep_from_descriptor(rf, desc(rf.groupoid))
    if isinstance(desc, str):
        desc = {"kind": desc}
    if not isinstance(desc, dict):
        raise InputError(f"face {rf.id!r}: representation must be a string or an object, got {desc!r}")
    if "orbit_of" in desc and "kind" not in desc:
        return _block_rep(rf, [(desc["orbit_of"], desc.get("stabilizer_rep", "trivial"))], "block")
    kind = desc.get("kind")
    if kind in ("flat", "transparent", "vacuum"):
        if rf.kind == "pure":
            orb = orbit_of(rf.groupoid.carrier, 0)
            return GroupoidRep(rf.groupoid, [Block(orb, MatrixRep.trivial(rf.group, orb.stabilizer))], name="flat")
        return _transparent_wall(rf)
    if kind == "trivial":
        return GroupoidRep.trivial(rf.groupoid)
    if kind == "zero":
        return GroupoidRep(rf.groupoid, [], name="zero")
    if kind == "excitation":
        if rf.kind != "pure":
            raise InputError(f"face {rf.id!r}: excitations by conjugacy class need a face inside one phase")
        if "class" not in desc:
            raise InputError(f"face {rf.id!r}: excitation needs a 'class' element")
        return _block_rep(rf, [(desc["class"], desc.get("sigma", "trivial"))], "excitation")
    if kind == "double_irrep":
        if rf.kind != "pure":
            raise InputError(f"face {rf.id!r}: Drinfeld double labels need a face inside one phase")
        table = double_irreps(rf.group)
        k = desc.get("index")
        if not isinstance(k, int) or not 0 <= k < len(table):
            raise InputError(f"face {rf.id!r}: double irrep index {k!r} out of range 0..{len(table) - 1}")
        return table[k].as_groupoid_rep(rf.groupoid)
    if kind == "blocks":
        specs = desc.get("blocks")
        if not isinstance(specs, list):
            raise InputError(f"face {rf.id!r}: 'blocks' must be a list")
        try:
            pairs = [(b["point"], b.get("stabilizer_rep", "trivial")) for b in specs]
        except (KeyError, TypeError, AttributeError):
            raise InputError(f"face {rf.id!r}: every block needs a 'point'") from None
        return _block_rep(rf, pairs, "blocks")
    raise InputError(f"face {rf.id!r}: unknown representation kind {kind!r}")


# -- the surface ---------------------------------------------------------------


class DefectSurface:
    """A closed defect surface described by its labelled dual graph."""

    def __init__(self, groups: dict[str, FiniteGroup], bisets: dict[str, BiSet],
                 vertices: Sequence[tuple[str, str]], edges: Sequence[tuple[str, str, str, str]],
                 faces: Sequence[FaceSpec], name: str = "surface"):
        self.name = name
        self.groups = dict(groups)
        self.bisets = dict(bisets)
        self.vertex_ids = [str(v) for v, _ in vertices]
        self._check_unique(self.vertex_ids, "vertex")
        self.vertex_index = {v: i for i, v in enumerate(self.vertex_ids)}
        self.vertex_groups = [self._group(g, f"vertex {v!r}") for v, g in vertices]

        self.edge_ids = [str(e[0]) for e in edges]
        self._check_unique(self.edge_ids, "edge")
        self.edge_index = {e: i for i, e in enumerate(self.edge_ids)}
        self.edge_source: list[int] = []
        self.edge_target: list[int] = []
        self.edge_bisets: list[BiSet] = []
        for eid, src, tgt, bname in edges:
            for end in (src, tgt):
                if end not in self.vertex_index:
                    raise InputError(f"edge {eid!r}: unknown vertex {end!r}")
            s, t = self.vertex_index[src], self.vertex_index[tgt]
            M = self._biset(bname, f"edge {eid!r}")
            if M.left is not self.vertex_groups[t] or M.right is not self.vertex_groups[s]:
                raise InputError(
                    f"edge {eid!r}: biset {M.name} is a {M.left.name}x{M.right.name}^op set but the target/source "
                    f"vertices carry {self.vertex_groups[t].name}/{self.vertex_groups[s].name}"
                )
            self.edge_source.append(s)
            self.edge_target.append(t)
            self.edge_bisets.append(M)

        self.faces = list(faces)
        self._check_unique([f.id for f in self.faces], "face")
        self.face_index = {f.id: i for i, f in enumerate(self.faces)}
        uses = [0] * len(self.edge_ids)
        self.reduced_faces: list[ReducedFace] = []
        for f in self.faces:
            letters, corners, walls = self._read_face(f)
            for e, _ in letters:
                uses[e] += 1
            rf = ReducedFace(f.id, letters, corners, walls, self.edge_bisets, self.vertex_groups)
            rf.attach(_face_rep_from_descriptor(rf, f.rep))
            self.reduced_faces.append(rf)
        for e, n in enumerate(uses):
            if n != 2:
                raise InputError(f"edge {self.edge_ids[e]!r} occurs {n} times in face boundaries; a closed surface needs 2")
        self._gauge: ActionGroupoid | None = None
        self._analysis: _Analysis | None = None
        self._rep: GroupoidRep | None = None

    # construction helpers --------------------------------------------------
    @staticmethod
    def _check_unique(ids: Sequence[str], what: str) -> None:
        seen = set()
        for i in ids:
            if i in seen:
                raise InputError(f"duplicate {what} id {i!r}")
            seen.add(i)

    def _group(self, name: str, where: str) -> FiniteGroup:
        if name not in self.groups:
            raise InputError(f"{where}: unknown group {name!r}")
        return self.groups[name]

    def _biset(self, name: str, where: str) -> BiSet:
        if name in self.bisets:
            return self.bisets[name]
        if name in self.groups:
            self.bisets[name] = BiSet.transparent(self.groups[name], name=name)
            return self.bisets[name]
        raise InputError(f"{where}: unknown biset {name!r}")

    def _ends(self, e: int, sign: int) -> tuple[int, int]:
        """(left corner, right corner) of a letter: target then source along the edge."""
        t, s = self.edge_target[e], self.edge_source[e]
        return (t, s) if sign > 0 else (s, t)

    def _read_face(self, f: FaceSpec) -> tuple[list[Letter], list[int], list[int]]:
        where = f"face {f.id!r}"
        if not f.word:
            raise InputError(f"{where}: empty boundary word")
        raw: list[Letter] = []
        for i, item in enumerate(f.word):
            try:
                eid, sign = item
            except (TypeError, ValueError):
                raise InputError(f"{where}: letter {i} must be a pair [edge, ±1]") from None
            if eid not in self.edge_index:
                raise InputError(f"{where}: letter {i} names unknown edge {eid!r}")
            if sign not in (1, -1) or isinstance(sign, bool):
                raise InputError(f"{where}: letter {i} has direction {sign!r}, expected +1 or -1")
            raw.append((self.edge_index[eid], int(sign)))
        k = len(raw)
        if not isinstance(f.basepoint, int) or not 0 <= f.basepoint < k:
            raise InputError(f"{where}: basepoint {f.basepoint!r} is not a corner index in 0..{k - 1}")
        for i in range(k):
            right = self._ends(*raw[i])[1]
            nxt = self._ends(*raw[(i + 1) % k])[0]
            if right != nxt:
                raise InputError(
                    f"{where}: letters {i} and {(i + 1) % k} do not meet at a common vertex "
                    f"({self.vertex_ids[right]!r} vs {self.vertex_ids[nxt]!r})"
                )
        b = f.basepoint
        letters = raw[b:] + raw[:b]
        corners = [self._ends(*l)[0] for l in letters]
        if f.walls is None:
            walls = [i for i, (e, _) in enumerate(letters) if not self.edge_bisets[e].is_transparent]
        else:
            if any(not isinstance(w, int) or not 0 <= w < k for w in f.walls):
                raise InputError(f"{where}: wall positions must be letter indices in 0..{k - 1}")
            walls = sorted((w - b) % k for w in set(f.walls))
        for i, (e, _) in enumerate(letters):
            if i not in walls and not self.edge_bisets[e].is_transparent:
                raise InputError(f"{where}: letter {(i + b) % k} carries the non-transparent biset "
                                 f"{self.edge_bisets[e].name} but is not marked as a wall")
        return letters, corners, walls

    # structure -----------------------------------------------------------------
    @property
    def gauge_group(self) -> ProductGroup:
        return self.gauge_groupoid().group

    def gauge_groupoid(self) -> ActionGroupoid:
        if self._gauge is None:
            group = ProductGroup(self.vertex_groups)
            carrier = EdgewiseGSet(group, self.edge_bisets, list(zip(self.edge_target, self.edge_source)))
            self._gauge = ActionGroupoid(carrier, name=f"gauge({self.name})")
        return self._gauge

    def config_label(self, config: Sequence[int]) -> dict[str, str]:
        return {e: M.label(int(c)) for e, M, c in zip(self.edge_ids, self.edge_bisets, config)}

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertex_ids) - len(self.edge_ids) + len(self.faces)

    def is_transparent(self) -> bool:
        """All edges transparent for one group and all faces flat."""
        groups = {id(g) for g in self.vertex_groups}
        if len(groups) > 1:
            return False
        if any(not M.is_transparent for M in self.edge_bisets):
            return False
        for rf in self.reduced_faces:
            if rf.kind != "pure":
                return False
            blocks = rf.rep.blocks
            if len(blocks) != 1 or blocks[0].rep != 0 or blocks[0].sigma.dim != 1:
                return False
            if not np.allclose(blocks[0].sigma.mats, 1):
                return False
        return True

    def __repr__(self) -> str:
        return (f"DefectSurface({self.name}: {len(self.vertex_ids)} vertices, {len(self.edge_ids)} edges, "
                f"{len(self.faces)} faces)")


def empty_surface() -> DefectSurface:
    """The empty surface: one gauge configuration, trivial gauge group."""
    return DefectSurface({}, {}, [], [], [], name="empty")


# -- JSON input ----------------------------------------------------------------


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    return obj[key]


def _biset_from_descriptor(name: str, desc, groups: dict[str, FiniteGroup]) -> BiSet:
    where = f"bisets.{name}"

    def group(key):
        g = _field(desc, key, where)
        if g not in groups:
            raise InputError(f"{where}: unknown group {g!r}")
        return groups[g]

    if isinstance(desc, str):
        desc = {"kind": "transparent", "group": desc}
    kind = _field(desc, "kind", where)
    if kind == "transparent":
        return BiSet.transparent(group("group"), name=name)
    if kind in ("point", "trivial"):
        size = desc.get("size", 1)
        if not isinstance(size, int) or size < 1:
            raise InputError(f"{where}: size must be a positive integer")
        return BiSet.trivial(group("left"), group("right"), size, name=name, labels=desc.get("labels"))
    if kind == "table":
        try:
            return BiSet(group("left"), group("right"), desc["lact"], desc["ract"], name=name, labels=desc.get("labels"))
        except KeyError as exc:
            raise InputError(f"{where}: missing field {exc.args[0]!r}") from None
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from None
    raise InputError(f"{where}: unknown biset kind {kind!r}")


def read_groups(data: dict, where: str = "groups") -> dict[str, FiniteGroup]:
    groups: dict[str, FiniteGroup] = {}
    raw = data.get("groups", {})
    if not isinstance(raw, dict):
        raise InputError(f"{where}: expected an object of named group descriptors")
    for name, desc in raw.items():
        try:
            groups[name] = group_from_descriptor(desc, groups, name=name)
        except InputError as exc:
            raise InputError(f"{where}.{name}: {exc}") from None
    return groups


def read_bisets(data: dict, groups: dict[str, FiniteGroup]) -> dict[str, BiSet]:
    raw = data.get("bisets", {})
    if not isinstance(raw, dict):
        raise InputError("bisets: expected an object of named biset descriptors")
    return {name: _biset_from_descriptor(name, desc, groups) for name, desc in raw.items()}


def check_format(data: dict) -> None:
    if not isinstance(data, dict):
        raise InputError("top level must be a JSON object")
    fmt = data.get("format", 1)
    if fmt != 1:
        raise InputError(f"unsupported format {fmt!r} (this reader understands format 1)")


def surface_from_dict(data: dict, name: str = "surface") -> DefectSurface:
    """Build a surface from the JSON schema (format 1)."""
    check_format(data)
    if "builder" in data:
        raise InputError(f"this is a cobordism description (builder {data['builder']!r}), not a surface")
    groups = read_groups(data)
    bisets = read_bisets(data, groups)
    vertices = []
    for i, v in enumerate(data.get("vertices", [])):
        where = f"vertices[{i}]"
        vertices.append((str(_field(v, "id", where)), _field(v, "group", where)))
    edges = []
    for i, e in enumerate(data.get("edges", [])):
        where = f"edges[{i}]"
        edges.append((str(_field(e, "id", where)), str(_field(e, "source", where)),
                      str(_field(e, "target", where)), _field(e, "biset", where)))
    faces = []
    for i, f in enumerate(data.get("faces", [])):
        where = f"faces[{i}]"
        fid = str(f.get("id", f"f{i}")) if isinstance(f, dict) else None
        word = _field(f, "word", f"face {fid!r}" if fid else where)
        if not isinstance(word, list):
            raise InputError(f"face {fid!r}: 'word' must be a list of [edge, ±1] pairs")
        word = [tuple(l) if isinstance(l, (list, tuple)) else l for l in word]
        faces.append(FaceSpec(fid, word, f.get("basepoint", 0), f.get("rep", "flat"), f.get("walls")))
    return DefectSurface(groups, bisets, vertices, edges, faces, name=data.get("name", name))


def load_surface(path: str | Path) -> DefectSurface:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return surface_from_dict(data, name=path.stem)


# -- enumeration ---------------------------------------------------------------


@dataclass
class _Analysis:
    configs: np.ndarray  # supported configurations, one row each, lexicographic
    codes: np.ndarray  # their ids in the gauge groupoid
    moves: list[tuple[int, np.ndarray]]  # (gauge generator, index of its image for every config)
    labels: np.ndarray  # orbit index of each config
    reps: list[int]  # row index of each orbit representative
    stabilizers: list[np.ndarray]


@dataclass
class OrbitRecord:
    config: tuple[int, ...]
    labels: dict[str, str]
    orbit_size: int
    stabilizer_order: int
    invariant_dim: int

    def as_json(self) -> dict:
        return {"config": self.labels, "orbit_size": self.orbit_size,
                "stabilizer_order": self.stabilizer_order, "invariant_dim": self.invariant_dim}


@dataclass
class SurfaceSpace:
    dim: int
    decomposition: list[OrbitRecord]
    supported: int
    bases: list[np.ndarray] | None = None
    gauge_order: int = 1
    euler_characteristic: int = 0

    def as_json(self, basis: bool = False) -> dict:
        out = {
            "dim": self.dim,
            "supported_configs": self.supported,
            "gauge_group_order": self.gauge_order,
            "euler_characteristic": self.euler_characteristic,
            "decomposition": [r.as_json() for r in self.decomposition],
        }
        if basis and self.bases is not None:
            out["bases"] = [[[[float(z.real), float(z.imag)] for z in row] for row in B] for B in self.bases]
        return out


def _supported_configs(S: DefectSurface, budget: int) -> np.ndarray:
    E = len(S.edge_ids)
    closing: dict[int, list[ReducedFace]] = {i: [] for i in range(E)}
    for rf in S.reduced_faces:
        closing[max(e for e, _ in rf.letters)].append(rf)
    configs = np.zeros((1, 0), dtype=np.int64)
    used = 0
    for i, M in enumerate(S.edge_bisets):
        n, k = configs.shape[0], M.size
        used += n * k * (i + 1)
        charge(used, budget, "gauge configuration enumeration")
        configs = np.hstack([np.repeat(configs, k, axis=0), np.tile(np.arange(k, dtype=np.int64), n)[:, None]])
        for rf in closing[i]:
            pts = rf.reduce_points(configs.T)
            configs = configs[rf.support_mask[pts]]
    return configs


def _analyse(S: DefectSurface, budget: int | None = None) -> _Analysis:
    if S._analysis is not None:
        return S._analysis
    budget = resolve_budget(budget)
    A = S.gauge_groupoid()
    carrier: EdgewiseGSet = A.carrier
    P: ProductGroup = A.group
    configs = _supported_configs(S, budget)
    cols = list(configs.T)
    n = configs.shape[0]
    codes = carrier._pack_arrays(cols, (n,))
    V = len(S.vertex_groups)

    moves = []
    for v, G in enumerate(S.vertex_groups):
        for s in G.generators:
            digits = [0] * V
            digits[v] = int(s)
            new = carrier._pack_arrays(carrier._act_coords(digits, cols), (n,))
            idx = np.minimum(np.searchsorted(codes, new), max(n - 1, 0))
            if n and not np.array_equal(codes[idx], new):
                raise ConsistencyError("support of the face representations is not gauge invariant")
            moves.append((P.embed(v, int(s)), idx))
    if n:
        rows = np.concatenate([np.arange(n)] + [np.arange(n) for _ in moves]) if moves else np.arange(n)
        dest = np.concatenate([np.arange(n)] + [idx for _, idx in moves]) if moves else np.arange(n)
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, dest)), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
        _, first = np.unique(labels, return_index=True)
        order = np.argsort(first)
        relabel = np.empty_like(order)
        relabel[order] = np.arange(len(order))
        labels = relabel[labels]
        reps = [int(first[o]) for o in order]
    else:
        labels, reps = np.zeros(0, dtype=np.int64), []

    charge(P.order * max(1, len(cols)) * max(1, len(reps)), budget, "stabilizer scan")
    all_g = np.arange(P.order, dtype=np.int64)
    vdigits = P.digits(all_g)
    sizes = np.bincount(labels, minlength=len(reps)) if n else np.zeros(0, dtype=np.int64)
    stabs = []
    for o, r in enumerate(reps):
        point = [np.int64(c) for c in configs[r]]
        images = carrier._act_coords(vdigits, point)
        fixed = np.ones(P.order, dtype=bool)
        for im, c in zip(images, point):
            fixed &= np.asarray(im) == c
        stab = all_g[fixed]
        if int(sizes[o]) * len(stab) != P.order:
            raise ConsistencyError(f"orbit-stabilizer mismatch at orbit {o}: {int(sizes[o])}·{len(stab)} ≠ {P.order}")
        stabs.append(stab)
    S._analysis = _Analysis(configs, codes, moves, labels, reps, stabs)
    return S._analysis


def _face_matrices(rf: ReducedFace, red_point: int, red_group: np.ndarray) -> dict[int, np.ndarray]:
    return {int(h): rf.rep.eval(int(h), red_point) for h in np.unique(red_group)}


def _stabilizer_data(S: DefectSurface, config: np.ndarray, stab: np.ndarray):
    """Per face: reduced point, reduced images of the stabilizer, matrices by reduced element."""
    P = S.gauge_group
    vdigits = P.digits(stab)
    cols = [np.array([c]) for c in config]
    out = []
    for rf in S.reduced_faces:
        point = int(rf.reduce_points(cols)[0])
        red = rf.reduce_group(vdigits)
        out.append((red, _face_matrices(rf, point, red)))
    return out


def z_surface(S: DefectSurface, *, basis: bool = False, budget: int | None = None) -> SurfaceSpace:
    """Dimension of the state space, orbit by orbit, via character averaging."""
    an = _analyse(S, budget)
    records = []
    total = 0
    bases = [] if basis else None
    sizes = np.bincount(an.labels, minlength=len(an.reps)) if len(an.labels) else []
    for o, r in enumerate(an.reps):
        config, stab = an.configs[r], an.stabilizers[o]
        faces = _stabilizer_data(S, config, stab)
        chars = np.ones(len(stab), dtype=complex)
        for red, mats in faces:
            tr = {h: complex(np.trace(m)) for h, m in mats.items()}
            chars *= np.array([tr[int(h)] for h in red])
        avg = chars.sum() / len(stab)
        dim = int(round(avg.real))
        if abs(avg - dim) > settings.int_tol:
            raise ConsistencyError(f"character average {avg} at orbit {o} is not an integer")
        if basis:
            mats = []
            for i in range(len(stab)):
                m = np.ones((1, 1), dtype=complex)
                for red, fm in faces:
                    m = np.kron(m, fm[int(red[i])])
                mats.append(m)
            B = invariant_basis(mats)
            if B.shape[1] != dim:
                raise ConsistencyError(f"invariant basis size {B.shape[1]} differs from character count {dim}")
            bases.append(B)
        total += dim
        records.append(OrbitRecord(tuple(int(c) for c in config), S.config_label(config), int(sizes[o]),
                                   len(stab), dim))
    return SurfaceSpace(total, records, int(len(an.codes)), bases, S.gauge_group.order, S.euler_characteristic)


def _orbit_object(an: _Analysis, P: ProductGroup, o: int) -> Orbit:
    r = an.reps[o]
    trans = {int(an.codes[r]): 0}
    queue = deque([r])
    while queue:
        p = queue.popleft()
        tp = trans[int(an.codes[p])]
        for g, idx in an.moves:
            q = int(idx[p])
            cq = int(an.codes[q])
            if cq not in trans:
                trans[cq] = int(P.multiply(g, tp))
                queue.append(q)
    return Orbit(int(an.codes[r]), tuple(sorted(trans)), tuple(int(h) for h in an.stabilizers[o]), trans)


def surface_rep(S: DefectSurface, budget: int | None = None) -> GroupoidRep:
    """The functor F_Σ on the gauge groupoid: tensor product of the pulled-back face representations.

    Returned in block form, one block per supported orbit, with the
    stabilizer acting by the Kronecker product of the face matrices.
    """
    if S._rep is not None:
        return S._rep
    an = _analyse(S, budget)
    A = S.gauge_groupoid()
    P = A.group
    blocks = []
    for o, r in enumerate(an.reps):
        stab = an.stabilizers[o]
        faces = _stabilizer_data(S, an.configs[r], stab)
        mats = []
        for i in range(len(stab)):
            m = np.ones((1, 1), dtype=complex)
            for red, fm in faces:
                m = np.kron(m, fm[int(red[i])])
            mats.append(m)
        if mats[0].shape[0] == 0:
            continue
        blocks.append(Block(_orbit_object(an, P, o), MatrixRep(P, stab, np.stack(mats), check=False)))
    S._rep = GroupoidRep(A, blocks, name=f"F({S.name})")
    return S._rep


def gauge_groupoid(S: DefectSurface) -> ActionGroupoid:
    return S.gauge_groupoid()


def euler_characteristic(S: DefectSurface) -> int:
    return S.euler_characteristic


# -- face groupoids --------------------------------------------------------------


@dataclass
class FaceGroupoid:
    """The action groupoid of one face: letter values acted on by corner groups."""

    face: ReducedFace
    groupoid: ActionGroupoid
    surface: DefectSurface = field(repr=False)

    def restrict_config(self, config: Sequence[int]) -> int:
        """Face object seen by a gauge configuration (edge point ids in surface order)."""
        return self.groupoid.carrier.pack([config[e] for e, _ in self.face.letters])

    def restrict_gauge(self, g: int) -> int:
        digits = self.surface.gauge_group.unpack(g)
        return self.groupoid.group.pack([digits[v] for v in self.face.corners])

    def reduce(self, point: int) -> int:
        return int(self.face.reduce_values(self.groupoid.carrier.coords(point)))

    def reduce_group(self, h: int) -> int:
        return int(self.face.reduce_corner_group(self.groupoid.group.digits(h)))


def face_groupoid(S: DefectSurface, face_id: str) -> FaceGroupoid:
    if face_id not in S.face_index:
        raise InputError(f"unknown face {face_id!r}")
    rf = S.reduced_faces[S.face_index[face_id]]
    k = len(rf.letters)
    group = ProductGroup([S.vertex_groups[v] for v in rf.corners])
    bisets, ends = [], []
    for i, (e, s) in enumerate(rf.letters):
        bisets.append(S.edge_bisets[e])
        ends.append((i, (i + 1) % k) if s > 0 else ((i + 1) % k, i))
    carrier = EdgewiseGSet(group, bisets, ends)
    return FaceGroupoid(rf, ActionGroupoid(carrier, name=f"face({face_id})"), S)


def face_rep(S: DefectSurface, face_id: str) -> GroupoidRep:
    """The face representation materialized on its face groupoid (small faces only)."""
    fg = face_groupoid(S, face_id)
    charge(fg.groupoid.size * max(1, len(fg.groupoid.group.generators)), None, "face groupoid")
    return pullback_rep(fg.groupoid, fg.face.rep, fg.reduce, fg.reduce_group, name=f"rep({face_id})")


# -- builders ------------------------------------------------------------------


def _handle_word(names: Sequence[tuple[str, str]]) -> list[tuple[str, int]]:
    word = []
    for a, b in names:
        word += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return word


def _inverse_word(word: Sequence[tuple[str, int]]) -> list[tuple[str, int]]:
    return [(e, -s) for e, s in reversed(word)]


def genus_surface(G: FiniteGroup, genus: int, name: str | None = None) -> DefectSurface:
    """Closed genus-g surface with transparent labels: one vertex, 2g loops, one flat face."""
    if genus < 0:
        raise InputError("genus must be non-negative")
    if genus == 0:
        return sphere(G)
    handles = [(f"a{i + 1}", f"b{i + 1}") for i in range(genus)]
    edges = [(e, "v", "v", "T") for pair in handles for e in pair]
    groups = {G.name: G}
    bisets = {"T": BiSet.transparent(G, name=G.name)}
    faces = [FaceSpec("f", _handle_word(handles), 0, "flat")]
    return DefectSurface(groups, bisets, [("v", G.name)], edges, faces, name=name or f"genus{genus}_{G.name}")


def torus(G: FiniteGroup) -> DefectSurface:
    return genus_surface(G, 1, name=f"torus_{G.name}")


def sphere(G: FiniteGroup, reps: Sequence[Any] = ("flat", "flat")) -> DefectSurface:
    """Sphere from one vertex, one loop and two monogon faces."""
    groups = {G.name: G}
    bisets = {"T": BiSet.transparent(G, name=G.name)}
    faces = [FaceSpec("north", [("e", 1)], 0, reps[0]), FaceSpec("south", [("e", -1)], 0, reps[1])]
    return DefectSurface(groups, bisets, [("v", G.name)], [("e", "v", "v", "T")], faces, name=f"sphere_{G.name}")


def excitation(cls, sigma: Any = "trivial") -> dict:
    """Face label for a Drinfeld double excitation: conjugacy class element and centralizer representation."""
    return {"kind": "excitation", "class": cls, "sigma": sigma}


def punctured_surface(G: FiniteGroup, genus: int, excitations: Sequence[Any]) -> DefectSurface:
    """Genus-g surface with one excited face per puncture.

    Loops m_i bound the puncture faces; the remaining face is bordered by the
    inverse of m_1⋯m_n[a_1,b_1]⋯[a_g,b_g] and carries the flat label.
    """
    if not excitations:
        return genus_surface(G, genus)
    n = len(excitations)
    handles = [(f"a{i + 1}", f"b{i + 1}") for i in range(genus)]
    loops = [f"m{i + 1}" for i in range(n)]
    edges = [(m, "v", "v", "T") for m in loops] + [(e, "v", "v", "T") for pair in handles for e in pair]
    relator = [(m, 1) for m in loops] + _handle_word(handles)
    faces = [FaceSpec(f"p{i + 1}", [(m, 1)], 0, excitations[i]) for i, m in enumerate(loops)]
    faces.append(FaceSpec("p", _inverse_word(relator), 0, "flat"))
    return DefectSurface({G.name: G}, {"T": BiSet.transparent(G, name=G.name)}, [("v", G.name)], edges, faces,
                         name=f"punctured{genus}_{n}_{G.name}")


def separating_surface(G1: FiniteGroup, G2: FiniteGroup, M: BiSet, genus1: int, genus2: int,
                       vertex_rep: Any = "transparent") -> DefectSurface:
    """Genus g1+g2 surface cut by a separating domain wall labelled M.

    Vertex u1 (group G1) and u2 (group G2) carry the handle loops of each
    side; the wall edge m runs from u2 to u1. The single face is read
    R1 (m,+) R2 (m,−) from a corner at u1 and carries `vertex_rep` on the
    reduced wall groupoid (M×M)⫽(G1×G2).
    """
    if M.left is not G1 or M.right is not G2:
        raise InputError("wall biset must be a G1×G2^op set")
    h1 = [(f"a{i + 1}", f"b{i + 1}") for i in range(genus1)]
    h2 = [(f"c{i + 1}", f"d{i + 1}") for i in range(genus2)]
    groups = {"G1": G1, "G2": G2}
    bisets = {"T1": BiSet.transparent(G1, name=G1.name), "T2": BiSet.transparent(G2, name=G2.name), "M": M}
    edges = [(e, "u1", "u1", "T1") for p in h1 for e in p] + [(e, "u2", "u2", "T2") for p in h2 for e in p]
    edges.append(("m", "u2", "u1", "M"))
    r1, r2 = _handle_word(h1), _handle_word(h2)
    word = r1 + [("m", 1)] + r2 + [("m", -1)]
    faces = [FaceSpec("v", word, 0, vertex_rep, walls=[len(r1), len(word) - 1])]
    return DefectSurface(groups, bisets, [("u1", "G1"), ("u2", "G2")], edges, faces,
                         name=f"separating_{genus1}_{genus2}")


def solid_torus_boundary(G1: FiniteGroup, G2: FiniteGroup, M1: BiSet, M2: BiSet,
                         face_reps: tuple[Any, Any] = ("transparent", "transparent")) -> DefectSurface:
    """Torus cut into two annuli by two parallel walls M1 and M2.

    Vertices w1 (G1) and w2 (G2) each carry a loop g_i around the core; the
    wall edges m1: w2 → w1 and m2: w1 → w2 cross between the annuli.
    """
    if M1.left is not G1 or M1.right is not G2:
        raise InputError("M1 must be a G1×G2^op set")
    if M2.left is not G2 or M2.right is not G1:
        raise InputError("M2 must be a G2×G1^op set")
    groups = {"G1": G1, "G2": G2}
    bisets = {"T1": BiSet.transparent(G1, name=G1.name), "T2": BiSet.transparent(G2, name=G2.name),
              "M1": M1, "M2": M2}
    edges = [("g1", "w1", "w1", "T1"), ("g2", "w2", "w2", "T2"), ("m1", "w2", "w1", "M1"), ("m2", "w1", "w2", "M2")]
    faces = [
        FaceSpec("fA", [("g1", 1), ("m1", 1), ("g2", -1), ("m1", -1)], 0, face_reps[0], walls=[1, 3]),
        FaceSpec("fB", [("g2", 1), ("m2", 1), ("g1", -1), ("m2", -1)], 0, face_reps[1], walls=[1, 3]),
    ]
    return DefectSurface(groups, bisets, [("w1", "G1"), ("w2", "G2")], edges, faces, name="solid_torus_boundary")
