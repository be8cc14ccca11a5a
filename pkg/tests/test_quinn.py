from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dwdefect.errors import ValidationError
from dwdefect.groupoids import FibrantSpan, GroupoidMap, identity_span, point_groupoid
from dwdefect.groups import GroupHom
from dwdefect.quinn import (
    RepresentedSpan,
    ambient_matrix,
    apply_L,
    classical_matrix,
    compose_represented,
    limit_space,
    s_sigma,
    tensor_represented,
)
from dwdefect.reps import GroupoidRep, MatrixRep, conjugation_groupoid, irreps
from spanfactory import SMALL, random_boundary, random_chain, random_rep, random_span

FUNCTOR_TOL = 1e-8
CLASSICAL_TOL = 1e-9
Z2, S3 = SMALL["Z2"], SMALL["S3"]


def _sup(a, b):
    assert a.shape == b.shape
    return float(np.max(np.abs(a - b), initial=0.0))


def impermeable(G, sigma=1.0):
    pt = point_groupoid(SMALL["Z1"])
    apex = point_groupoid(G)
    leg = GroupoidMap(apex, pt, GroupHom.trivial(G, pt.group), [0])
    one = GroupoidRep.trivial(pt)
    return RepresentedSpan(FibrantSpan(apex, leg, leg), one, one, [np.full((1, 1), sigma)])


def test_limit_space_examples():
    from dwdefect.groupoids import discrete_groupoid

    assert limit_space(GroupoidRep.trivial(discrete_groupoid(3))).dim == 3
    sign = irreps(Z2)[1]
    assert limit_space(GroupoidRep.from_blocks(point_groupoid(Z2), [(0, sign)])).dim == 0
    C = conjugation_groupoid(S3)
    t = next(g for g in range(6) if S3.element_order(g) == 2)
    orb_rep = min(int(S3.conjugate(g, t)) for g in range(6))
    cent = [g for g in range(6) if S3.conjugate(g, orb_rep) == orb_rep]
    rho = GroupoidRep.from_blocks(C, [(orb_rep, MatrixRep.trivial(S3, cent))])
    assert limit_space(rho).dim == 1


def test_s_sigma_examples():
    rho = GroupoidRep.trivial(point_groupoid(Z2))
    ident = RepresentedSpan.identity(rho)
    assert np.allclose(s_sigma(ident, 0, 0), [[1]])
    assert np.allclose(apply_L(impermeable(Z2)), [[0.5]])
    assert classical_matrix(impermeable(Z2).span) == [[Fraction(1, 2)]]


def test_identity_and_zero_examples():
    rho = GroupoidRep.trivial(point_groupoid(Z2))
    assert np.allclose(apply_L(RepresentedSpan.identity(rho)), np.eye(1))
    assert classical_matrix(identity_span(point_groupoid(Z2))) == [[Fraction(1)]]
    sign = GroupoidRep.from_blocks(point_groupoid(Z2), [(0, irreps(Z2)[1])])
    assert apply_L(RepresentedSpan.identity(sign)).shape == (0, 0)
    pair = compose_represented(impermeable(Z2, 2.0), impermeable(SMALL["Z3"], 3.0))
    assert all(np.allclose(s, [[6.0]]) for s in pair.sigma)
    assert np.allclose(apply_L(pair), [[6.0 / 6]])


def test_naturality_is_enforced():
    C = conjugation_groupoid(S3)
    span = identity_span(C)
    rho = GroupoidRep.trivial(C)
    bad = [np.full((1, 1), float(a % 2)) for a in range(span.apex.size)]
    with pytest.raises(ValidationError):
        RepresentedSpan(span, rho, rho, bad)


def test_composition_needs_matching_middle():
    C = conjugation_groupoid(S3)
    trivial = GroupoidRep.trivial(C)
    vacuum = GroupoidRep.from_blocks(C, [(0, MatrixRep.trivial(S3))])
    with pytest.raises(ValidationError):
        compose_represented(RepresentedSpan.identity(trivial), RepresentedSpan.identity(vacuum))


_CHAINS = []


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1))
def test_functoriality_on_random_chains(seed):
    rng = np.random.default_rng(seed)
    rs1, rs2 = random_chain(rng, 2)
    assert rs1.span.apex.group.order <= 1000 and rs2.span.apex.group.order <= 1000
    composite = compose_represented(rs1, rs2)
    assert _sup(apply_L(composite), apply_L(rs2) @ apply_L(rs1)) < FUNCTOR_TOL
    _CHAINS.append(seed)


def test_at_least_fifty_chains_were_checked():
    assert len(set(_CHAINS)) >= 50


@given(st.integers(0, 2**32 - 1))
def test_unit_laws(seed):
    rng = np.random.default_rng(seed)
    (rs,) = random_chain(rng, 1)
    L = apply_L(rs)
    left = compose_represented(RepresentedSpan.identity(rs.left_rep), rs)
    right = compose_represented(rs, RepresentedSpan.identity(rs.right_rep))
    assert _sup(apply_L(left), L) < FUNCTOR_TOL
    assert _sup(apply_L(right), L) < FUNCTOR_TOL
    ident = apply_L(RepresentedSpan.identity(rs.left_rep))
    assert _sup(ident, np.eye(ident.shape[0])) < FUNCTOR_TOL


@given(st.integers(0, 2**32 - 1))
def test_classical_matrix_matches_trivial_representation(seed):
    rng = np.random.default_rng(seed)
    X1, X2 = random_boundary(rng), random_boundary(rng)
    span = random_span(X1, X2, rng)
    exact = classical_matrix(span)
    assert all(isinstance(x, Fraction) for row in exact for x in row)
    L = apply_L(RepresentedSpan.trivial(span))
    assert _sup(L, np.array(exact, dtype=float)) < CLASSICAL_TOL


@given(st.integers(0, 2**32 - 1))
def test_representatives_do_not_matter(seed):
    rng = np.random.default_rng(seed)
    (rs,) = random_chain(rng, 1)
    assert _sup(apply_L(rs), apply_L(rs, descending=True)) < FUNCTOR_TOL


def _block_order(d1, d2):
    """Kron indices of ⊕ρ1(x)⊗⊕ρ2(y), listed component pair by component pair."""
    o1, o2 = np.concatenate([[0], np.cumsum(d1)]), np.concatenate([[0], np.cumsum(d2)])
    total2 = int(o2[-1])
    order = []
    for i in range(len(d1)):
        for j in range(len(d2)):
            for a in range(o1[i], o1[i + 1]):
                order += [a * total2 + b for b in range(o2[j], o2[j + 1])]
    return np.array(order, dtype=int)


def _ambient_dims(rho):
    return [b.shape[0] for b in limit_space(rho).bases]


@settings(max_examples=25)
@given(st.integers(0, 2**32 - 1))
def test_monoidality(seed):
    rng = np.random.default_rng(seed)
    small = ("Z1", "Z2", "Z3")
    X = [random_boundary(rng, names=small) for _ in range(4)]
    reps = [random_rep(x, rng) for x in X]
    from spanfactory import random_represented

    a = random_represented(X[0], X[1], reps[0], reps[1], rng)
    b = random_represented(X[2], X[3], reps[2], reps[3], rng)
    both = tensor_represented(a, b)
    K = np.kron(ambient_matrix(a), ambient_matrix(b))
    rows = _block_order(_ambient_dims(a.right_rep), _ambient_dims(b.right_rep))
    cols = _block_order(_ambient_dims(a.left_rep), _ambient_dims(b.left_rep))
    assert _sup(ambient_matrix(both), K[np.ix_(rows, cols)]) < FUNCTOR_TOL
