import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dwdefect.errors import BudgetError, InputError
from dwdefect.examples import free_class_count, hom_class_count
from dwdefect.groups import BiSet, make_group, surface_relator
from dwdefect.surface import (
    DefectSurface,
    FaceSpec,
    excitation,
    face_groupoid,
    face_rep,
    gauge_groupoid,
    genus_surface,
    punctured_surface,
    separating_surface,
    sphere,
    surface_from_dict,
    surface_rep,
    torus,
    z_surface,
)
from spanfactory import SMALL
from surfacefactory import random_rewrite, random_surface, rebuild, subdivide

Z1, Z2, Z3, S3 = SMALL["Z1"], SMALL["Z2"], SMALL["Z3"], SMALL["S3"]


def test_gauge_groupoid_examples():
    one = surface_from_dict({"groups": {"S3": {"kind": "symmetric", "n": 3}},
                             "vertices": [{"id": "v", "group": "S3"}],
                             "edges": [{"id": "e", "source": "v", "target": "v", "biset": "S3"}],
                             "faces": [{"id": "n", "word": [["e", 1]]}, {"id": "s", "word": [["e", -1]]}]})
    A = gauge_groupoid(one)
    assert A.size == 6 and A.group.order == 6
    assert all(A.act(g, m) == S3.conjugate(g, m) for g in range(6) for m in range(6))
    T = gauge_groupoid(torus(Z2))
    assert T.size == 4 and all(T.act(g, m) == m for g in range(2) for m in range(4))
    W = separating_surface(Z2, Z3, BiSet.trivial(Z2, Z3, size=2), 0, 0)
    assert gauge_groupoid(W).size == 2 and gauge_groupoid(W).group.order == 6


def test_z_surface_examples():
    assert z_surface(torus(Z2)).dim == 4
    assert z_surface(torus(S3)).dim == 8
    x = excitation("x")
    assert z_surface(sphere(Z2, (x, x))).dim == 1
    assert z_surface(sphere(Z2, (x, "flat"))).dim == 0
    single = z_surface(sphere(Z2, (x, x)))
    assert single.decomposition[0].stabilizer_order == 2


def test_separating_examples():
    assert z_surface(separating_surface(Z2, Z2, BiSet.trivial(Z2, Z2), 1, 1)).dim == 16
    assert z_surface(separating_surface(Z2, Z2, BiSet.transparent(Z2), 1, 1)).dim == z_surface(genus_surface(Z2, 2)).dim
    assert z_surface(separating_surface(Z1, Z1, BiSet.trivial(Z1, Z1), 1, 1)).dim == 1
    imp = separating_surface(S3, Z2, BiSet.trivial(S3, Z2), 1, 1)
    assert z_surface(imp).dim == free_class_count(S3, 2) * free_class_count(Z2, 2)


@pytest.mark.parametrize("name,genus", [("Z2", 1), ("Z2", 2), ("Z3", 1), ("Z3", 2), ("S3", 1), ("S3", 2)])
def test_transparent_reduction_one_vertex(name, genus):
    G = SMALL[name]
    assert z_surface(genus_surface(G, genus)).dim == hom_class_count(G, 2 * genus, [surface_relator(genus)])


@pytest.mark.parametrize("name", ["Z2", "S3"])
def test_transparent_reduction_with_punctures(name):
    G = SMALL[name]
    # flat punctures: π₁ of the sphere with three discs filled is trivial
    assert z_surface(punctured_surface(G, 0, ["flat", "flat", "flat"])).dim == 1
    assert z_surface(punctured_surface(G, 1, ["flat"])).dim == hom_class_count(G, 2, [surface_relator(1)])


def test_orbit_accounting_and_euler():
    space = z_surface(torus(S3))
    assert sum(r.orbit_size for r in space.decomposition) == space.supported == 18
    assert all(r.orbit_size * r.stabilizer_order == 6 for r in space.decomposition)
    assert space.euler_characteristic == 0
    assert z_surface(genus_surface(Z2, 2)).euler_characteristic == -2
    assert z_surface(sphere(S3)).euler_characteristic == 2


def test_basis_output():
    space = z_surface(torus(S3), basis=True)
    assert sum(B.shape[1] for B in space.bases) == 8
    assert json.loads(json.dumps(space.as_json(basis=True)))["dim"] == 8


def test_excitation_with_centralizer_irrep():
    t = next(g for g in range(6) if S3.element_order(g) == 2)
    pair = (excitation(S3.labels[t], {"irrep": 1}), excitation(S3.labels[t], {"irrep": 1}))
    assert z_surface(sphere(S3, pair)).dim == 1
    mixed = (excitation(S3.labels[t], {"irrep": 1}), excitation(S3.labels[t]))
    assert z_surface(sphere(S3, mixed)).dim == 0
    # three transpositions on a sphere: m1 m2 m3 = 1 has no solution in the transposition class
    labels = [excitation(S3.labels[t])] * 3
    assert z_surface(punctured_surface(S3, 0, labels)).dim == 0


def test_face_groupoid_examples():
    fg = face_groupoid(sphere(S3), "north")
    assert fg.groupoid.size == 6
    assert all(fg.groupoid.act(g, m) == S3.conjugate(g, m) for g in range(6) for m in range(6))
    groups = {"G": Z2, "H": Z3}
    M = BiSet.trivial(Z2, Z3, size=2)
    wall = DefectSurface(groups, {"M": M}, [("u", "G"), ("w", "H")],
                         [("m", "w", "u", "M"), ("n", "w", "u", "M")],
                         [FaceSpec("bigon", [("m", 1), ("n", -1)], 0, "transparent"),
                          FaceSpec("back", [("n", 1), ("m", -1)], 0, "transparent")])
    fg = face_groupoid(wall, "bigon")
    P = fg.groupoid.group
    for h in range(P.order):
        g, k = P.unpack(h)
        for p in range(fg.groupoid.size):
            m, mp = fg.groupoid.carrier.unpack(p)
            assert fg.groupoid.carrier.unpack(fg.groupoid.act(h, p)) == (M.lact[g, M.ract[Z3.inverse(k), m]],
                                                                         M.lact[g, M.ract[Z3.inverse(k), mp]])
    rho = face_rep(wall, "bigon")
    assert {fg.groupoid.carrier.unpack(p) for p in rho.support()} == {(0, 0), (1, 1)}
    assert z_surface(wall).dim == M.size  # the two wall points must agree; gauge acts trivially


def test_pentagon_flat_support():
    S = DefectSurface({"Z2": Z2}, {}, [(f"v{i}", "Z2") for i in range(5)],
                      [(f"e{i}", f"v{(i + 1) % 5}", f"v{i}", "Z2") for i in range(5)],
                      [FaceSpec("p", [(f"e{i}", 1) for i in range(5)], 0, "flat"),
                       FaceSpec("q", [(f"e{i}", -1) for i in reversed(range(5))], 0, "flat")])
    assert len(face_rep(S, "p").support()) == 16
    assert z_surface(S).dim == 1


def test_surface_rep_limit_matches_dimension():
    from dwdefect.quinn import limit_space

    for S in (torus(S3), sphere(Z2, (excitation("x"), excitation("x"))), separating_surface(Z2, Z3, BiSet.trivial(Z2, Z3), 1, 1)):
        assert limit_space(surface_rep(S)).dim == z_surface(S).dim


def test_errors_name_the_face():
    base = {"groups": {"Z2": {"kind": "cyclic", "n": 2}}, "vertices": [{"id": "v", "group": "Z2"}],
            "edges": [{"id": "a", "source": "v", "target": "v", "biset": "Z2"}]}
    with pytest.raises(InputError, match="'bad'"):
        surface_from_dict({**base, "faces": [{"id": "bad", "word": [["a", 1], ["zz", -1]]},
                                             {"id": "ok", "word": [["a", -1]]}]})
    with pytest.raises(InputError, match="'bad'"):
        surface_from_dict({**base, "faces": [{"id": "bad", "word": [["a", 2]]}, {"id": "ok", "word": [["a", -1]]}]})
    with pytest.raises(InputError, match="occurs 1 times"):
        surface_from_dict({**base, "faces": [{"id": "one", "word": [["a", 1]]}]})
    with pytest.raises(InputError, match="format"):
        surface_from_dict({**base, "format": 2, "faces": []})
    with pytest.raises(InputError):
        DefectSurface({"Z2": Z2, "Z3": Z3}, {"M": BiSet.trivial(Z2, Z3)}, [("u", "Z2"), ("w", "Z3")],
                      [("m", "u", "w", "M")], [])


def test_budget_is_enforced():
    with pytest.raises(BudgetError):
        z_surface(genus_surface(S3, 3), budget=10**4)


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_gauge_invariance_under_rewrites(seed):
    rng = np.random.default_rng(seed)
    S = random_surface(rng)
    R = random_rewrite(S, rng)
    assert z_surface(R).dim == z_surface(S).dim
    assert z_surface(R).supported == z_surface(S).supported


@settings(max_examples=20)
@given(st.integers(0, 2**32 - 1))
def test_subdividing_a_transparent_edge(seed):
    rng = np.random.default_rng(seed)
    S = random_surface(rng)
    explicit = {f.word[w][0] for f in S.faces if f.walls is not None for w in f.walls}
    candidates = [e for e, M in zip(S.edge_ids, S.edge_bisets) if M.is_transparent and e not in explicit]
    if not candidates:
        return
    e = candidates[int(rng.integers(len(candidates)))]
    assert z_surface(subdivide(S, e)).dim == z_surface(S).dim


@pytest.mark.parametrize("shift", [1, 2, 3])
def test_flat_face_basepoint_is_irrelevant(shift):
    S = torus(S3)
    f = S.faces[0]
    moved = DefectSurface(S.groups, S.bisets, [("v", S3.name)], [(e, "v", "v", "T") for e in S.edge_ids],
                          [FaceSpec("f", f.word, shift, "flat")])
    assert z_surface(moved).dim == 8
    assert z_surface(rebuild(S, rotate={"f": shift})).dim == 8


def test_empty_groups_and_cyclic_labels():
    Z4 = make_group("cyclic", 4)
    assert z_surface(torus(Z4)).dim == 16
    assert z_surface(genus_surface(Z1, 2)).dim == 1
