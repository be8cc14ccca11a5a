import numpy as np
import pytest
from hypothesis import given, strategies as st

from dwdefect.errors import BudgetError, InputError, ValidationError
from dwdefect.groups import (
    BiSet,
    GroupHom,
    GSet,
    ProductGroup,
    burnside_count,
    conjugacy_data,
    conjugation_gset,
    enumerate_homs,
    group_from_descriptor,
    make_group,
    orbits,
    surface_relator,
)
from spanfactory import SMALL, random_gset

GROUPS = [("cyclic", 1), ("cyclic", 4), ("cyclic", 6), ("dihedral", 4), ("symmetric", 3), ("symmetric", 4)]


@pytest.mark.parametrize("kind,n", GROUPS)
def test_group_axioms_and_generators(kind, n):
    G = make_group(kind, n)
    ids = np.arange(G.order)
    assert np.all(G.multiply(0, ids) == ids) and np.all(G.multiply(ids, 0) == ids)
    assert np.all(G.multiply(ids, G.inverse(ids)) == 0)
    assert len(G.closure(G.generators)) == G.order


def test_small_group_examples():
    assert make_group("cyclic", 1).order == 1
    S3 = make_group("symmetric", 3)
    assert S3.order == 6 and len(conjugacy_data(S3)) == 3
    P = make_group("product", factors=[make_group("cyclic", 2), make_group("cyclic", 3)])
    assert P.order == 6 and P.is_abelian()


def test_conjugacy_examples():
    S3 = make_group("symmetric", 3)
    data = sorted(conjugacy_data(S3), key=lambda c: len(c.members))
    assert [len(c.members) for c in data] == [1, 2, 3]
    assert [len(c.centralizer) for c in data] == [6, 3, 2]
    assert len(conjugacy_data(make_group("cyclic", 4))) == 4
    assert all(len(c.centralizer) == 4 for c in conjugacy_data(make_group("cyclic", 4)))
    assert len(conjugacy_data(make_group("cyclic", 1))) == 1


@pytest.mark.parametrize("kind,n", GROUPS)
def test_conjugacy_partitions_with_class_equation(kind, n):
    G = make_group(kind, n)
    classes = conjugacy_data(G)
    members = sorted(m for c in classes for m in c.members)
    assert members == list(range(G.order))
    for c in classes:
        assert len(c.members) * len(c.centralizer) == G.order
        assert all(G.conjugate(z, c.rep) == c.rep for z in c.centralizer)
    if G.is_abelian():
        assert len(classes) == G.order


def test_bad_table_reports_failure():
    with pytest.raises(ValidationError):
        make_group("table", table=[[0, 1, 2], [1, 0, 0], [2, 0, 1]])
    with pytest.raises(InputError):
        make_group("symmetric", 7)


def test_group_descriptor_roundtrip():
    G = group_from_descriptor({"kind": "product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "symmetric", "n": 3}]})
    assert G.order == 12


def test_hom_counts():
    S3 = SMALL["S3"]
    assert len(enumerate_homs(1, [], S3)) == 6
    assert len(enumerate_homs(2, [surface_relator(1)], S3)) == 18
    assert len(enumerate_homs(4, [surface_relator(2)], S3)) == 486
    with pytest.raises(BudgetError):
        enumerate_homs(8, [], S3, budget=10**4)


@given(st.sampled_from(["Z1", "Z2", "Z3", "S3"]), st.integers(0, 3))
def test_free_hom_count(name, rank):
    G = SMALL[name]
    homs = enumerate_homs(rank, [], G)
    assert len(homs) == G.order ** rank
    assert homs == sorted(homs)


def test_orbit_examples():
    S3 = SMALL["S3"]
    sizes = sorted(o.size for o in orbits(conjugation_gset(S3)))
    assert sizes == [1, 2, 3]
    Z2 = SMALL["Z2"]
    trivial = orbits(GSet(Z2, [[0, 1], [0, 1]]))
    assert len(trivial) == 2 and all(len(o.stabilizer) == 2 for o in trivial)
    swap = orbits(GSet(Z2, [[0, 1], [1, 0]]))
    assert len(swap) == 1 and swap[0].stabilizer == (0,)


@given(st.sampled_from(["Z1", "Z2", "Z3", "S3"]), st.integers(0, 2**32 - 1))
def test_orbit_stabilizer_and_burnside(name, seed):
    G = SMALL[name]
    S = random_gset(G, np.random.default_rng(seed), max_orbits=3)
    comps = orbits(S)
    assert sum(G.order // len(o.stabilizer) for o in comps) == S.size
    assert burnside_count(S) == len(comps)
    for o in comps:
        assert o.rep == min(o.members)
        assert o.transversal[o.rep] == 0
        for m, t in o.transversal.items():
            assert S.act(t, o.rep) == m


def test_biset_conventions():
    S3 = SMALL["S3"]
    T = BiSet.transparent(S3)
    assert T.is_transparent and T.size == 6
    for g in range(6):
        for h in range(6):
            assert T.lact[g, T.ract[h, 0]] == T.ract[h, T.lact[g, 0]]
    op = T.opposite()
    assert op.left is S3 and op.right is S3
    with pytest.raises(ValidationError):
        BiSet(SMALL["Z2"], SMALL["Z1"], [[0, 1], [0, 1]], [[1, 0]])


def test_product_group_packing():
    P = ProductGroup([SMALL["Z2"], SMALL["S3"]])
    assert P.order == 12
    for g in range(P.order):
        assert P.pack(P.unpack(g)) == g
    a, b = 5, 9
    (a1, a2), (b1, b2) = P.unpack(a), P.unpack(b)
    assert P.unpack(int(P.multiply(a, b))) == (SMALL["Z2"].multiply(a1, b1), SMALL["S3"].multiply(a2, b2))


def test_hom_validation():
    Z2, Z3 = SMALL["Z2"], SMALL["Z3"]
    with pytest.raises(ValidationError):
        GroupHom(Z3, Z2, [0, 1, 1])
    GroupHom.trivial(Z3, Z2)
