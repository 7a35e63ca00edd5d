import random
from fractions import Fraction as Q

import pytest

from shlie3.chain import ChainComplexT
from shlie3.linalg import Matrix, vis_zero
from shlie3.lincat import from_chain, tensor_product
from shlie3.simplicial import (SimplicialVS, aw, aw_after_ez_identity,
                               aw_ez_homology_check, compose_tensor_identity,
                               constant_svs, ez, moore, moore_bases,
                               moore_of_nerve_check, nerve, nerve_map,
                               obstruction_demo, tensor_svs)
from shlie3.lincat import NFunctor, lift_functor

from helpers import rand_chain2, rand_matrix


def two_term_cat(rng, dims=None):
    return from_chain(rand_chain2(rng, dims))


def test_constant_point():
    S = constant_svs(3)
    assert S.dims == (1, 1, 1, 1)
    C = moore(S)
    assert C.dims[0] == 1 and all(d == 0 for d in C.dims[1:])


def test_validation_rejects_bad_faces():
    S = constant_svs(2)
    bad_faces = tuple(
        tuple(Matrix([[2]]) if (n == 1 and i == 0) else m for i, m in enumerate(level))
        for n, level in enumerate(S.faces, start=1))
    with pytest.raises(ValueError):
        SimplicialVS(S.dims, bad_faces, S.degens)


def test_nerve_dims_and_identities():
    rng = random.Random(1)
    L = two_term_cat(rng, (3, 2))
    S = nerve(L, 4)
    n0, n1 = 3, 2
    assert S.dims == tuple(n0 + n * n1 for n in range(5))
    # construction already validated the simplicial identities exhaustively


def test_nerve_orientation():
    # at level 1, d_1 is the source and d_0 the target of an arrow
    rng = random.Random(2)
    L = two_term_cat(rng, (2, 2))
    S = nerve(L, 2)
    f = (Q(1), Q(0), Q(3), Q(-2))  # base (1,0), kernel part (3,-2)
    x = tuple(f[:2])
    src = S.d(1, 1).apply(f)
    tgt = S.d(1, 0).apply(f)
    assert src == x
    assert tgt == tuple(a + b for a, b in zip(x, L.t_matrix(1).apply(f[2:])))


def test_moore_of_nerve():
    rng = random.Random(3)
    for _ in range(8):
        L = two_term_cat(rng)
        assert moore_of_nerve_check(L, 3)
    assert moore_of_nerve_check(two_term_cat(rng, (3, 3)), 3)


def test_moore_level1_basis_normalized():
    rng = random.Random(4)
    L = two_term_cat(rng, (2, 2))
    S = nerve(L, 3)
    for b in moore_bases(S)[1]:
        assert vis_zero(b[:2])


def test_nerve_map_commutes_with_faces():
    rng = random.Random(5)
    L = two_term_cat(rng, (2, 1))
    maps = [Matrix.eye(L.level_dim(m)).scale(1) for m in range(2)]
    F = lift_functor(L, L, maps)
    N = 3
    levels = nerve_map(F, N)
    S = nerve(L, N)
    for n in range(1, N + 1):
        for i in range(n + 1):
            assert levels[n - 1] @ S.d(n, i) == S.d(n, i) @ levels[n]


def test_tensor_svs_dims():
    S = constant_svs(2)
    rng = random.Random(6)
    T = nerve(two_term_cat(rng, (2, 1)), 2)
    ST = tensor_svs(S, T)
    assert ST.dims == tuple(a * b for a, b in zip(S.dims, T.dims))


def test_ez_aw_chain_maps_and_roundtrips():
    rng = random.Random(7)
    for dims in ((2, 1), (1, 2), (2, 2)):
        S = nerve(two_term_cat(rng, dims), 3)
        T = nerve(two_term_cat(rng, (2, 1)), 3)
        f = ez(S, T)
        g = aw(S, T)
        assert f.is_chain_map() and g.is_chain_map()
        assert aw_after_ez_identity(S, T)
        assert aw_ez_homology_check(S, T)


def test_ez_aw_with_point():
    rng = random.Random(8)
    S = nerve(two_term_cat(rng, (2, 2)), 3)
    P = constant_svs(3)
    assert aw_after_ez_identity(S, P)
    assert aw_ez_homology_check(S, P)


def test_compose_tensor_identity():
    rng = random.Random(9)
    for dims in ((2, 1), (2, 2), (1, 1)):
        L = two_term_cat(rng, dims)
        tc = tensor_product(L, L)
        assert compose_tensor_identity(L, tc)


def test_obstruction_present_with_kernel_arrows():
    rng = random.Random(10)
    for dims in ((1, 1), (2, 1), (2, 2)):
        L = two_term_cat(rng, dims)
        rep = obstruction_demo(L)
        assert rep.compose_tensor_identity_holds
        assert rep.obstructed
        assert rep.witness_index is not None
        assert not vis_zero(rep.witness_difference)
        assert rep.kernel_dim > 0


def test_no_obstruction_without_kernel_arrows():
    L = from_chain(ChainComplexT((2, 0), (Matrix.zeros(2, 0),)))
    rep = obstruction_demo(L)
    assert rep.compose_tensor_identity_holds
    assert not rep.obstructed
    assert rep.kernel_dim == 0
    assert "no obstruction" in rep.message
