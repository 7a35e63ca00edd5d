import itertools
import random
from fractions import Fraction as Q

import pytest

from shlie3.chain import ChainComplexT
from shlie3.graded import GradedSpace, MultiMap, build_multimap
from shlie3.linalg import Matrix
from shlie3.lincat import (Cell, ComposabilityError, LiftError, LinearNCat,
                           cartesian_product, chain_iso_invariants,
                           check_axioms, from_chain, lift_functor, product,
                           tensor_product, to_chain, unit_category)

from helpers import rand_chain3, rand_matrix


def rand_cat(rng, dims=None) -> LinearNCat:
    return from_chain(rand_chain3(rng, dims))


def test_boundary_calculus_hand_example():
    # t(v0, v1) = v0 + d v1 with d = [[1], [0]]
    C = ChainComplexT((2, 1), (Matrix([[1], [0]]),))
    L = from_chain(ChainComplexT((2, 1, 0), (C.diff(1), Matrix.zeros(1, 0))))
    f = Cell(1, ((Q(2), Q(0)), (Q(3),)))
    assert L.source(f).components[0] == (Q(2), Q(0))
    assert L.target(f).components[0] == (Q(5), Q(0))
    assert L.identity(L.source(f)) == Cell(1, ((Q(2), Q(0)), (Q(0),)))


def test_compose_hand_example():
    C = ChainComplexT((2, 1, 0), (Matrix([[1], [0]]), Matrix.zeros(1, 0)))
    L = from_chain(C)
    f = Cell(1, ((Q(0), Q(1)), (Q(2),)))
    g = Cell(1, (L.target(f).components[0], (Q(5),)))
    h = L.compose(f, g, 0)
    # vertical stacking adds the fiber components over the source of f
    assert h.components[0] == (Q(0), Q(1))
    assert h.components[1] == (Q(7),)


def test_compose_rejects_mismatch():
    rng = random.Random(1)
    L = rand_cat(rng, (2, 1, 1))
    a = L.basis_cell(1, 1, 0)
    b = L.basis_cell(1, 1, 0)
    bad = Cell(1, (tuple(c + 1 for c in L.target(a).components[0]), b.components[1]))
    if L.composable(a, bad, 0):
        bad = Cell(1, (tuple(c + 2 for c in bad.components[0]), b.components[1]))
    with pytest.raises(ComposabilityError):
        L.compose(a, bad, 0)


def small_dims(rng):
    return (rng.randint(1, 2), rng.randint(0, 2), rng.randint(0, 1))


def test_axioms_on_random_categories():
    rng = random.Random(42)
    for k in range(12):
        L = rand_cat(rng, small_dims(rng))
        rep = check_axioms(L)
        assert rep.passed, rep.failures[:3]
    rep = check_axioms(rand_cat(rng, (3, 2, 2)))
    assert rep.passed


def test_axioms_catch_corrupted_composition():
    rng = random.Random(5)
    L = rand_cat(rng, (2, 2, 1))

    def broken(a, b, p):
        c = L.compose(a, b, p)
        if c.level == 2 and p == 0:
            comps = list(c.components)
            comps[2] = tuple(x + 1 for x in comps[2])
            return Cell(c.level, tuple(comps))
        return c

    rep = check_axioms(L, compose=broken)
    assert not rep.passed


def test_unique_composition_via_units():
    rng = random.Random(7)
    for _ in range(10):
        L = rand_cat(rng)
        for m in range(1, 3):
            for p in range(m):
                for a in L.spanning_cells(m):
                    for tail in itertools.islice(_tails(L, m, p), 6):
                        b = L.pad_composable(a, tail, p)
                        assert L.compose(a, b, p) == L.compose_via_units(a, b, p)


def _tails(L, m, p):
    opts = []
    for i in range(p + 1, m + 1):
        base = [tuple(Q(0) for _ in range(L.dim(i)))]
        for k in range(L.dim(i)):
            base.append(tuple(Q(1) if j == k else Q(0) for j in range(L.dim(i))))
        opts.append(base)
    return itertools.product(*opts)


def test_assemble_decompose_roundtrip():
    rng = random.Random(9)
    L = rand_cat(rng, (3, 2, 2))
    for m in range(3):
        for a in L.spanning_cells(m):
            assert L.decompose(L.assemble(a)) == a
            assert L.assemble(L.decompose(a)) == a


def test_chain_roundtrips():
    rng = random.Random(11)
    for _ in range(10):
        C = rand_chain3(rng)
        L = from_chain(C)
        D = to_chain(L)
        assert D.dims == C.dims
        assert all(D.diff(n) == C.diff(n) for n in range(1, 3))
        assert from_chain(D) == L


def test_globular_matrices():
    rng = random.Random(13)
    L = rand_cat(rng, (2, 2, 2))
    for m in range(1, 3):
        ss = L.s_matrix_level(m - 1) @ L.s_matrix_level(m) if m > 1 else None
        assert (L.s_matrix_level(m) @ L.i_matrix_level(m - 1)) == Matrix.eye(L.level_dim(m - 1))
        assert (L.t_matrix_level(m) @ L.i_matrix_level(m - 1)) == Matrix.eye(L.level_dim(m - 1))


def test_lift_functor_identity_and_failure():
    rng = random.Random(17)
    L = rand_cat(rng, (2, 1, 1))
    maps = [Matrix.eye(L.level_dim(m)) for m in range(3)]
    F = lift_functor(L, L, maps)
    a = L.basis_cell(2, 2, 0)
    assert F.apply(a) == a

    bad = list(maps)
    bad[1] = Matrix.zeros(L.level_dim(1), L.level_dim(1))
    with pytest.raises(LiftError):
        lift_functor(L, L, bad)


def test_functor_between_different_categories():
    # chain map levels induce a functor: project away V2
    C = ChainComplexT((2, 1, 1), (Matrix([[1], [1]]), Matrix.zeros(1, 1)))
    D = ChainComplexT((2, 1, 0), (Matrix([[1], [1]]), Matrix.zeros(1, 0)))
    L, M = from_chain(C), from_chain(D)
    maps = []
    for m in range(3):
        rows = []
        for r in range(M.level_dim(m)):
            rows.append([Q(1) if c == r else Q(0) for c in range(L.level_dim(m))])
        maps.append(Matrix(rows, ncols=L.level_dim(m)))
    F = lift_functor(L, M, maps)
    a = L.basis_cell(1, 1, 0)
    assert F.apply(a).components[1] == a.components[1]


def test_cartesian_product_dims():
    rng = random.Random(19)
    L, M = rand_cat(rng, (2, 1, 1)), rand_cat(rng, (1, 1, 0))
    P = cartesian_product(L, M)
    assert P.space.dims == (3, 2, 1)
    assert check_axioms(P, max_tails=4).passed


def test_unit_category_tensor_is_neutral():
    rng = random.Random(23)
    L = rand_cat(rng, (2, 2, 1))
    K = unit_category(2)
    T = product(L, K, "tensor")
    assert chain_iso_invariants(T) == chain_iso_invariants(L)


def test_tensor_product_is_valid_category():
    rng = random.Random(29)
    L, M = rand_cat(rng, (2, 1, 0)), rand_cat(rng, (1, 1, 0))
    tc = tensor_product(L, M)
    assert check_axioms(tc.cat, max_tails=3).passed


def test_tensor_raw_cell_roundtrip():
    rng = random.Random(31)
    L, M = rand_cat(rng, (2, 1, 1)), rand_cat(rng, (2, 1, 1))
    tc = tensor_product(L, M)
    for m in range(3):
        for v in tc.kernel_bases[m]:
            cell = tc.raw_to_cell(m, v)
            assert tc.cell_to_raw(cell) == tuple(v)


def test_product_mode_dispatch():
    rng = random.Random(37)
    L = rand_cat(rng, (1, 1, 0))
    assert product(L, L, "cartesian").space.dims == (2, 2, 0)
    with pytest.raises(ValueError):
        product(L, L, "diagonal")
