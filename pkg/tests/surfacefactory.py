"""Random defect surfaces and label-preserving rewrites of their dual graphs."""

from __future__ import annotations

import numpy as np

from dwdefect.groups import BiSet
from dwdefect.surface import (
    DefectSurface,
    FaceSpec,
    excitation,
    genus_surface,
    punctured_surface,
    separating_surface,
    solid_torus_boundary,
    sphere,
)
from spanfactory import SMALL


def rebuild(S: DefectSurface, reverse=(), rotate=None, rename=None, name=None) -> DefectSurface:
    """The same labelled surface with edges reversed, face words rotated or ids renamed.

    Reversing edge e swaps its endpoints, replaces the biset by its opposite
    and flips every occurrence in the face words. Rotating a face by k moves
    the basepoint along so that the same corner stays the basepoint.
    """
    rotate = rotate or {}
    rename = rename or (lambda kind, x: x)
    reverse = set(reverse)
    groups = {f"grp{i}": G for i, G in enumerate(_unique(S.vertex_groups))}
    gname = {id(G): n for n, G in groups.items()}
    vertices = [(rename("v", v), gname[id(G)]) for v, G in zip(S.vertex_ids, S.vertex_groups)]
    bisets, edges = {}, []
    for e, eid in enumerate(S.edge_ids):
        M = S.edge_bisets[e]
        src, tgt = S.vertex_ids[S.edge_source[e]], S.vertex_ids[S.edge_target[e]]
        if eid in reverse:
            M, src, tgt = M.opposite(), tgt, src
        key = f"B_{rename('e', eid)}"
        bisets[key] = M
        edges.append((rename("e", eid), rename("v", src), rename("v", tgt), key))
    faces = []
    for f in S.faces:
        word = [(rename("e", e), -s if e in reverse else s) for e, s in f.word]
        k = rotate.get(f.id, 0) % len(word)
        n = len(word)
        word = word[k:] + word[:k]
        walls = None if f.walls is None else [(w - k) % n for w in f.walls]
        faces.append(FaceSpec(rename("f", f.id), word, (f.basepoint - k) % n, f.rep, walls))
    return DefectSurface(groups, bisets, vertices, edges, faces, name=name or S.name)


def subdivide(S: DefectSurface, eid: str) -> DefectSurface:
    """Split a transparent edge by a new vertex carrying the same group."""
    e = S.edge_index[eid]
    M = S.edge_bisets[e]
    assert M.is_transparent
    G = M.transparent_of
    groups = {f"grp{i}": H for i, H in enumerate(_unique(S.vertex_groups))}
    mid = f"mid{len(S.vertex_ids)}"
    gname = {id(H): n for n, H in groups.items()}
    vertices = [(v, gname[id(H)]) for v, H in zip(S.vertex_ids, S.vertex_groups)] + [(mid, gname[id(G)])]
    bisets = {f"B_{x}": S.edge_bisets[i] for i, x in enumerate(S.edge_ids)}
    edges = []
    for i, x in enumerate(S.edge_ids):
        src, tgt = S.vertex_ids[S.edge_source[i]], S.vertex_ids[S.edge_target[i]]
        if i == e:
            edges += [(x + "_1", mid, tgt, f"B_{x}"), (x + "_2", src, mid, f"B_{x}")]
        else:
            edges.append((x, src, tgt, f"B_{x}"))
    faces = []
    for f in S.faces:
        word, walls, shift = [], [], 0
        for pos, (x, s) in enumerate(f.word):
            if f.walls is not None and pos in f.walls:
                walls.append(len(word))
            if x == eid:
                word += [(x + "_1", 1), (x + "_2", 1)] if s > 0 else [(x + "_2", -1), (x + "_1", -1)]
                if pos < f.basepoint:
                    shift += 1
            else:
                word.append((x, s))
        faces.append(FaceSpec(f.id, word, f.basepoint + shift, f.rep, None if f.walls is None else walls))
    return DefectSurface(groups, bisets, vertices, edges, faces, name=S.name + "_sub")


def _unique(groups):
    seen, out = set(), []
    for G in groups:
        if id(G) not in seen:
            seen.add(id(G))
            out.append(G)
    return out


def random_surface(rng) -> DefectSurface:
    """One of the builder families with random small labels."""
    Z2, Z3, S3 = SMALL["Z2"], SMALL["Z3"], SMALL["S3"]
    kind = int(rng.integers(6))
    G = [Z2, Z3, S3][int(rng.integers(3))]
    if kind == 0:
        return genus_surface(G, int(rng.integers(1, 3)) if G is not S3 else 1)
    if kind == 1:
        classes = [G.labels[int(x)] for x in rng.integers(0, G.order, size=int(rng.integers(1, 4)))]
        return punctured_surface(G, int(rng.integers(0, 2)), [excitation(c) for c in classes])
    if kind == 2:
        return sphere(G, (excitation(G.labels[int(rng.integers(G.order))]), "flat"))
    if kind == 3:
        H = [Z2, Z3][int(rng.integers(2))]
        M = BiSet.trivial(G, H, size=int(rng.integers(1, 3)))
        return separating_surface(G, H, M, 1, 1)
    if kind == 4:
        return separating_surface(G, G, BiSet.transparent(G), 1, int(rng.integers(0, 2)))
    H = [Z2, Z3][int(rng.integers(2))]
    return solid_torus_boundary(G, H, BiSet.trivial(G, H, size=int(rng.integers(1, 3))), BiSet.trivial(H, G))


def random_rewrite(S: DefectSurface, rng) -> DefectSurface:
    reverse = [e for e in S.edge_ids if rng.random() < 0.5]
    rotate = {f.id: int(rng.integers(len(f.word))) for f in S.faces}
    tag = str(int(rng.integers(1000)))
    return rebuild(S, reverse=reverse, rotate=rotate, rename=lambda kind, x: f"{kind}{tag}_{x}")


def sample_seeds(n: int, seed: int = 0) -> list[int]:
    return [int(x) for x in np.random.default_rng(seed).integers(0, 2**32 - 1, size=n)]
