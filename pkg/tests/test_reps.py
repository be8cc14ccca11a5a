import numpy as np
import pytest
from hypothesis import given, strategies as st

from dwdefect.errors import UnsupportedGroupError
from dwdefect.groupoids import ActionGroupoid, point_groupoid
from dwdefect.groups import BiSet, EdgewiseGSet, GSet, ProductGroup, make_group, orbits
from dwdefect.reps import (
    GroupoidRep,
    MatrixRep,
    conjugation_groupoid,
    double_irreps,
    flat_rep,
    holonomy,
    invariant_basis,
    invariant_dim,
    irreps,
    smash_roundtrip_check,
    stabilizer_rep_from_descriptor,
    transparent_rep,
)
from spanfactory import SMALL, coset_gset, random_boundary, random_rep

Z2, S3 = SMALL["Z2"], SMALL["S3"]


@pytest.mark.parametrize("kind,n", [("cyclic", 5), ("cyclic", 12), ("symmetric", 3), ("dihedral", 4)])
def test_irreps_are_homomorphisms_and_complete(kind, n):
    G = make_group(kind, n)
    table = irreps(G)
    assert sum(r.dim ** 2 for r in table) == G.order
    assert table[0].dim == 1 and np.allclose(table[0].mats, 1)
    for r in table:
        for g in range(G.order):
            for h in range(G.order):
                assert np.allclose(r(g) @ r(h), r(int(G.multiply(g, h))), atol=1e-9)


def test_klein_four_and_unsupported():
    V = make_group("product", factors=[Z2, Z2])
    assert len(irreps(V)) == 4
    with pytest.raises(UnsupportedGroupError):
        irreps(make_group("symmetric", 4))


def test_invariant_dim_examples():
    assert invariant_dim([np.eye(1)] * 3) == 1
    sign = [r for r in irreps(Z2) if not np.allclose(r.mats, 1)][0]
    assert invariant_dim(sign.mats) == 0
    two = [r for r in irreps(S3) if r.dim == 2][0]
    assert invariant_dim(two.mats) == 0


def _perm_mats(S: GSet):
    mats = []
    for g in range(S.group.order):
        P = np.zeros((S.size, S.size))
        P[S.perm(g), np.arange(S.size)] = 1
        mats.append(P)
    return mats


def test_invariant_basis_examples():
    assert invariant_basis([np.eye(3)]).shape == (3, 3)
    regular = _perm_mats(GSet(Z2, [[0, 1], [1, 0]]))
    B = invariant_basis(regular)
    assert B.shape == (2, 1) and np.allclose(B[:, 0], np.ones(2) / np.sqrt(2))
    transposition = next(g for g in range(6) if S3.element_order(g) == 2)
    points = coset_gset(S3, [transposition])  # S3 permuting three points
    B = invariant_basis(_perm_mats(points))
    assert B.shape == (3, 1) and np.allclose(np.abs(B[:, 0]), 1 / np.sqrt(3))


def test_double_irreps_examples():
    assert [d.dim for d in double_irreps(Z2)] == [1, 1, 1, 1]
    dims = sorted(d.dim for d in double_irreps(S3))
    assert dims == [1, 1, 2, 2, 2, 2, 3, 3]
    assert sum(d * d for d in dims) == 36
    assert [d.dim for d in double_irreps(SMALL["Z1"])] == [1]


@pytest.mark.parametrize("kind,n", [("cyclic", 3), ("cyclic", 4), ("symmetric", 3), ("dihedral", 4)])
def test_double_dimension_sum(kind, n):
    G = make_group(kind, n)
    assert sum(d.dim ** 2 for d in double_irreps(G)) == G.order ** 2


def _functorial(rho: GroupoidRep) -> bool:
    base = rho.base
    G = base.group
    for m in range(base.size):
        if not np.allclose(rho.eval(0, m), np.eye(rho.dim_at(m))):
            return False
        for g in range(G.order):
            gm = base.act(g, m)
            for h in range(G.order):
                if not np.allclose(rho.eval(h, gm) @ rho.eval(g, m), rho.eval(int(G.multiply(h, g)), m), atol=1e-9):
                    return False
    return True


def test_double_irrep_evaluation():
    t = next(g for g in range(6) if S3.element_order(g) == 2)
    cls = next(d for d in double_irreps(S3) if t in d.class_members and d.sigma.dim == 1
               and not np.allclose(d.sigma.mats, 1))
    rho = cls.as_groupoid_rep()
    rep = cls.class_rep
    assert np.allclose(rho.eval(rep, rep), [[-1]])
    assert _functorial(rho)
    for d in double_irreps(S3):
        assert smash_roundtrip_check(d.as_groupoid_rep())


@given(st.integers(0, 2**32 - 1))
def test_random_reps_are_functorial_and_roundtrip(seed):
    rng = np.random.default_rng(seed)
    A = random_boundary(rng)
    rho = random_rep(A, rng)
    assert _functorial(rho)
    assert smash_roundtrip_check(rho)


def test_transparent_rep_examples():
    T = BiSet.transparent(Z2)
    rho = transparent_rep(T)
    support = sorted(rho.support())
    carrier = rho.base.carrier
    assert [carrier.unpack(p) for p in support] == [(0, 0), (1, 1)]
    assert all(np.allclose(rho.eval(g, p), [[1]]) for g in range(rho.base.group.order) for p in support)
    assert smash_roundtrip_check(rho)
    single = transparent_rep(BiSet.trivial(Z2, S3))
    assert len(single.blocks) == 1 and single.support() == {0}
    two = transparent_rep(BiSet.trivial(Z2, Z2, size=2))
    assert len(two.blocks) == 2
    assert {two.base.carrier.unpack(p) for p in two.support()} == {(0, 0), (1, 1)}


def _face_base(G, signs):
    k = len(signs)
    T = BiSet.transparent(G)
    ends = [(i, (i + 1) % k) if s > 0 else ((i + 1) % k, i) for i, s in enumerate(signs)]
    return ActionGroupoid(EdgewiseGSet(ProductGroup([G] * k), [T] * k, ends))


@pytest.mark.parametrize("G,signs,expected", [
    (Z2, [1, -1], 2),
    (Z2, [1, 1, -1, 1, -1], 16),
    (S3, [1], 1),
])
def test_flat_rep_support(G, signs, expected):
    base = _face_base(G, signs)
    rho = flat_rep(base, signs)
    support = rho.support()
    assert len(support) == expected
    carrier = base.carrier
    for p in range(carrier.size):
        assert (p in support) == (holonomy(G, carrier.unpack(p), signs) == 0)


def test_stabilizer_descriptors():
    elems = tuple(range(6))
    assert stabilizer_rep_from_descriptor(S3, elems, "sign").dim == 1
    assert stabilizer_rep_from_descriptor(S3, elems, {"trivial": 3}).dim == 3
    assert stabilizer_rep_from_descriptor(S3, elems, {"sum": ["trivial", {"irrep": 2}]}).dim == 3
    rep = MatrixRep.trivial(S3, elems, dim=2)
    assert invariant_dim(rep.mats) == 2


def test_point_groupoid_limit_of_sign():
    sign = [r for r in irreps(Z2) if not np.allclose(r.mats, 1)][0]
    rho = GroupoidRep.from_blocks(point_groupoid(Z2), [(0, sign)])
    assert invariant_dim([rho.eval(g, 0) for g in range(2)]) == 0
    assert orbits(point_groupoid(Z2).carrier)[0].members == (0,)
    assert conjugation_groupoid(S3) is conjugation_groupoid(S3)
