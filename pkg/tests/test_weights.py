import random

import pytest

from paradol.linalg import Matrix, Subspace, image, kernel, rank
from paradol.weights import (NilpotentEndo, jordan_type, rank_sequence,
                             same_orbit, weight_filtration)


def jordan_block_sum(sizes):
    n = sum(sizes)
    m = [[0] * n for _ in range(n)]
    off = 0
    for s in sizes:
        for k in range(s - 1):
            m[off + k][off + k + 1] = 1
        off += s
    return NilpotentEndo(Matrix(n, n, m))


def random_nilpotent(rng, n):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = rng.randint(-3, 3)
    return NilpotentEndo(Matrix(n, n, m))


def random_invertible(rng, n):
    while True:
        p = Matrix(n, n, [[rng.randint(-2, 2) for _ in range(n)]
                          for _ in range(n)])
        if rank(p) == n:
            return p


def test_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        NilpotentEndo(Matrix.identity(2))


def test_j2_level_dims():
    w = weight_filtration(jordan_block_sum([2]))
    assert [w.level(l).dim for l in (-2, -1, 0, 1)] == [0, 1, 1, 2]


def test_j3_level_dims():
    w = weight_filtration(jordan_block_sum([3]))
    assert [w.level(l).dim for l in range(-3, 3)] == [0, 1, 1, 2, 2, 3]


def test_zero_endo_concentrated_in_level_zero():
    w = weight_filtration(NilpotentEndo(Matrix.zero(3, 3)))
    assert w.level(0).dim == 3 and w.level(-1).dim == 0


def test_jordan_type_and_rank_sequence():
    n = jordan_block_sum([3, 2, 2, 1])
    assert jordan_type(n) == (3, 2, 2, 1)
    assert rank_sequence(n)[0] == 8
    assert same_orbit(n, jordan_block_sum([2, 3, 1, 2]))
    assert not same_orbit(n, jordan_block_sum([3, 3, 1, 1]))


def axioms_hold(endo):
    w = weight_filtration(endo)
    n = endo.matrix
    for l in range(-w.m - 1, w.m + 2):
        lvl = w.level(l)
        if not w.level(l - 2).contains_subspace(lvl.image_under(n)):
            return False
    for l in range(1, w.m + 1):
        gr_l = w.level(l).dim - w.level(l - 1).dim
        gr_ml = w.level(-l).dim - w.level(-l - 1).dim
        if gr_l != gr_ml:
            return False
        # surjectivity of N^l on graded pieces; with equal dims this
        # makes the induced map an isomorphism
        pushed = w.level(l).image_under(n.power(l)).sum(w.level(-l - 1))
        if pushed != w.level(-l):
            return False
    return True


def test_axioms_on_random_sample():
    rng = random.Random(7)
    for _ in range(40):
        assert axioms_hold(random_nilpotent(rng, rng.randint(1, 6)))


def test_conjugation_equivariance():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randint(2, 5)
        endo = random_nilpotent(rng, n)
        p = random_invertible(rng, n)
        conj = NilpotentEndo(p * endo.matrix * _inverse(p))
        w = weight_filtration(endo)
        wc = weight_filtration(conj)
        for l in range(-w.m - 1, w.m + 1):
            assert wc.level(l) == w.level(l).image_under(p)


def _inverse(p: Matrix) -> Matrix:
    n = p.rows
    aug = Matrix(n, 2 * n, [p.data[i] + Matrix.identity(n).data[i]
                            for i in range(n)])
    from paradol.linalg import rref
    red, pivots = rref(aug)
    assert pivots == list(range(n))
    return Matrix(n, n, [red.data[i][n:] for i in range(n)])
