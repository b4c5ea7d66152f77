from fractions import Fraction

import pytest

from paradol.linalg import (Matrix, Q, QuotientPresentation, Subspace,
                            image, induced_map, kernel, rank)


def test_matrix_arithmetic():
    a = Matrix(2, 2, [[1, 2], [3, 4]])
    b = Matrix(2, 2, [[0, 1], [1, 0]])
    assert (a * b).data == [[Q(2), Q(1)], [Q(4), Q(3)]]
    assert (a + b - b) == a
    assert a.apply([1, 1]) == [Q(3), Q(7)]
    assert a.transpose().data == [[Q(1), Q(3)], [Q(2), Q(4)]]
    assert Matrix.identity(3).power(5) == Matrix.identity(3)


def test_rank_exact_with_fractions():
    m = Matrix(2, 2, [[Fraction(1, 3), Fraction(2, 3)],
                      [Fraction(1, 2), Fraction(1, 1)]])
    assert rank(m) == 1


def test_subspace_canonical_equality():
    s1 = Subspace(3, [[1, 1, 0], [0, 0, 1]])
    s2 = Subspace(3, [[2, 2, 3], [0, 0, -1], [1, 1, 1]])
    assert s1 == s2
    assert s1.dim == 2
    assert s1.contains([5, 5, -2])
    assert not s1.contains([1, 0, 0])


def test_sum_intersect_dims():
    a = Subspace(4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    b = Subspace(4, [[0, 1, 0, 0], [0, 0, 1, 0]])
    assert a.sum(b).dim == 3
    assert a.intersect(b) == Subspace(4, [[0, 1, 0, 0]])
    # dim formula
    assert a.sum(b).dim + a.intersect(b).dim == a.dim + b.dim


def test_kernel_image():
    m = Matrix(2, 3, [[1, 0, 1], [0, 1, 1]])
    assert kernel(m) == Subspace(3, [[1, 1, -1]])
    assert image(m) == Subspace.full(2)


def test_quotient_presentation_roundtrip():
    qp = QuotientPresentation(Subspace.full(3), Subspace(3, [[1, 1, 0]]))
    assert qp.dim == 2
    v = [2, 5, 7]
    coords = qp.project(v)
    lifted = qp.lift(coords)
    # lift differs from v by an element of sub
    diff = [x - y for x, y in zip(v, lifted)]
    assert qp.sub.contains(diff)


def test_quotient_requires_containment():
    with pytest.raises(ValueError):
        QuotientPresentation(Subspace(3, [[1, 0, 0]]),
                             Subspace(3, [[0, 1, 0]]))


def test_induced_map_on_quotients():
    # multiplication by x on Q[x]/(x^2) presented on basis 1, x
    amb = Matrix(2, 2, [[0, 0], [1, 0]])
    src = QuotientPresentation(Subspace.full(2), Subspace.zero(2))
    dst = QuotientPresentation(Subspace.full(2), Subspace(2, [[0, 1]]))
    m = induced_map(amb, src, dst)
    assert m.rows == 1 and m.cols == 2
    assert m.is_zero()
