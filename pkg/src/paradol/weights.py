"""Monodromy weight filtrations of nilpotent endomorphisms.

The filtration W is the unique increasing filtration centered at 0 with
N.W_l <= W_{l-2} and N^l inducing isomorphisms Gr_l -> Gr_{-l}.  It is
computed by the classical recursion: with m = (nilpotency index - 1),
W_m is everything, W_{m-1} = ker N^m, W_{-m} = im N^m, and the interior
levels are preimages of the filtration of the endomorphism induced on
ker N^m / im N^m.

Conjugacy of nilpotents is decided through rank sequences, a complete
invariant of the nilpotent orbit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (Matrix, QuotientPresentation, Subspace, induced_map,
                     kernel, image, rank)


class NilpotentEndo:
    """Square matrix checked nilpotent at construction."""

    __slots__ = ("dim", "matrix", "index")

    def __init__(self, matrix: Matrix):
        assert matrix.rows == matrix.cols
        self.dim = matrix.rows
        self.matrix = matrix
        k = 0
        power = Matrix.identity(self.dim)
        while not power.is_zero():
            if k > self.dim:
                raise ValueError("not nilpotent")
            power = power * matrix
            k += 1
        self.index = k  # smallest k with N^k = 0 (0 for the 0-dim space)

    def __repr__(self):
        return f"NilpotentEndo(dim {self.dim}, index {self.index})"


@dataclass(frozen=True)
class WeightFiltration:
    """Levels l -> Subspace for l in [-m-1, m]; increasing, centered at 0."""

    dim: int
    m: int
    levels: dict  # l -> Subspace, complete on [-m-1, m]

    def level(self, l: int) -> Subspace:
        if l < -self.m:
            return Subspace.zero(self.dim)
        if l >= self.m:
            return Subspace.full(self.dim)
        return self.levels[l]

    def graded_dim(self, l: int) -> int:
        return self.level(l).dim - self.level(l - 1).dim

    def graded(self, l: int) -> QuotientPresentation:
        return QuotientPresentation(self.level(l), self.level(l - 1))


def weight_filtration(n: NilpotentEndo) -> WeightFiltration:
    dim = n.dim
    if n.index <= 1:
        # zero endomorphism: all mass in weight 0
        return WeightFiltration(dim, 0, {0: Subspace.full(dim), -1: Subspace.zero(dim)})
    m = n.index - 1
    npow = n.matrix.power(m)
    ker_top = kernel(npow)
    im_top = image(npow)
    quot = QuotientPresentation(ker_top, im_top)
    induced = induced_map(n.matrix, quot, quot)
    inner = weight_filtration(NilpotentEndo(induced))
    levels = {m: Subspace.full(dim), m - 1: ker_top, -m: im_top,
              -m - 1: Subspace.zero(dim)}
    for l in range(-m + 1, m - 1):
        wl = inner.level(l)
        # preimage in ker N^m of the inner level
        lifted = [quot.lift(c) for c in wl.basis.columns()]
        levels[l] = im_top.sum(Subspace(dim, lifted))
    return WeightFiltration(dim, m, levels)


def rank_sequence(n: NilpotentEndo) -> tuple[int, ...]:
    """r_j = rank(N^j) for j = 0..dim; determines the Jordan type."""
    ranks = []
    power = Matrix.identity(n.dim)
    for _ in range(n.dim + 1):
        ranks.append(rank(power))
        power = power * n.matrix
    return tuple(ranks)


def same_orbit(a: NilpotentEndo, b: NilpotentEndo) -> bool:
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    return rank_sequence(a) == rank_sequence(b)


def jordan_type(n: NilpotentEndo) -> tuple[int, ...]:
    """Partition of dim by Jordan block sizes, decreasing."""
    r = rank_sequence(n)
    # number of blocks of size >= j is r_{j-1} - r_j
    counts = [r[j - 1] - r[j] for j in range(1, n.dim + 1)]
    blocks = []
    for size in range(n.dim, 0, -1):
        k = counts[size - 1] - (counts[size] if size < n.dim else 0)
        blocks.extend([size] * k)
    return tuple(blocks)


@dataclass(frozen=True)
class DegenerationReport:
    passed: bool
    graded_ranks: tuple[int, ...]
    expected_ranks: tuple[int, ...]


def graded_degeneration_check(full: NilpotentEndo, flag: list[Subspace],
                              expected: tuple[int, ...]) -> DegenerationReport:
    """Compare the associated graded of ``full`` along ``flag`` to an
    expected rank sequence.

    ``flag`` is an increasing filtration 0 = F_0 <= F_1 <= ... <= F_k = V
    (list of subspaces, smallest first, full space last) preserved by
    ``full``.  Raises if the flag is not preserved.
    """
    dim = full.dim
    steps = [Subspace.zero(dim)] + list(flag)
    if steps[-1] != Subspace.full(dim):
        steps.append(Subspace.full(dim))
    for i in range(1, len(steps)):
        if not steps[i].contains_subspace(steps[i - 1]):
            raise ValueError("flag is not increasing")
    blocks = []
    total = 0
    for i in range(1, len(steps)):
        q = QuotientPresentation(steps[i], steps[i - 1])
        for col in steps[i].basis.columns():
            out = full.matrix.apply(col)
            if not steps[i].contains(out):
                raise ValueError("endomorphism does not preserve flag")
        blocks.append(induced_map(full.matrix, q, q))
        total += q.dim
    # block-diagonal graded endomorphism
    g = Matrix.zero(total, total)
    data = [row[:] for row in g.data]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                data[off + i][off + j] = b.data[i][j]
        off += b.rows
    graded = NilpotentEndo(Matrix(total, total, data))
    got = rank_sequence(graded)
    want = tuple(expected) + (0,) * (len(got) - len(expected))
    return DegenerationReport(got == want[: len(got)], got, tuple(expected))
