"""Exact dense linear algebra over the rationals.

Everything downstream (weight filtrations, graded modules, fiber
cohomology) is built on three primitives: ``Matrix`` (dense, Fraction
entries), ``Subspace`` (a canonical reduced-column-echelon basis, so
subspace equality is data equality) and ``QuotientPresentation`` (an
ambient/sub pair with a chosen complement basis).  No floating point
anywhere: the invariants computed here are discrete and rounding would
corrupt them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction


class Matrix:
    """Dense matrix over Q, row-major.  Immutable by convention."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence]):
        self.rows = rows
        self.cols = cols
        self.data = [[Q(x) for x in row] for row in data]
        assert len(self.data) == rows
        assert all(len(r) == cols for r in self.data)

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, [[0] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(rows: int, columns: Sequence[Sequence]) -> "Matrix":
        cols = len(columns)
        return Matrix(rows, cols, [[columns[j][i] for j in range(cols)] for i in range(rows)])

    def column(self, j: int) -> list[Q]:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> list[list[Q]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __mul__(self, other: "Matrix") -> "Matrix":
        assert self.cols == other.rows, (self.cols, other.rows)
        out = [[Q(0)] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.data[i]
            for k in range(self.cols):
                a = row[k]
                if a:
                    brow = other.data[k]
                    orow = out[i]
                    for j in range(other.cols):
                        if brow[j]:
                            orow[j] += a * brow[j]
        return Matrix(self.rows, other.cols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return Matrix(self.rows, self.cols,
                      [[self.data[i][j] + other.data[i][j] for j in range(self.cols)]
                       for i in range(self.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def scale(self, c) -> "Matrix":
        c = Q(c)
        return Matrix(self.rows, self.cols,
                      [[c * x for x in row] for row in self.data])

    def apply(self, vec: Sequence) -> list[Q]:
        assert len(vec) == self.cols
        return [sum((self.data[i][j] * Q(vec[j]) for j in range(self.cols)), Q(0))
                for i in range(self.rows)]

    def power(self, k: int) -> "Matrix":
        assert self.rows == self.cols and k >= 0
        out = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def hstack(self, other: "Matrix") -> "Matrix":
        assert self.rows == other.rows
        return Matrix(self.rows, self.cols + other.cols,
                      [self.data[i] + other.data[i] for i in range(self.rows)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.data})"


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = [row[:] for row in m.data]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [a[i][j] - f * a[r][j] for j in range(cols)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return Matrix(rows, cols, a), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


class Subspace:
    """Subspace of Q^n with a canonical basis.

    Basis columns are in reduced column echelon form: each column has a
    pivot (its lowest-index nonzero row entry is 1) and pivot rows are
    cleared in the other columns; columns sorted by pivot row.  Two
    subspaces are equal iff their representations are equal.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence]):
        self.ambient_dim = ambient_dim
        vecs = [list(v) for v in vectors]
        for v in vecs:
            assert len(v) == ambient_dim
        if not vecs:
            self.basis = Matrix.zero(ambient_dim, 0)
            return
        reduced, pivots = rref(Matrix(len(vecs), ambient_dim, vecs))
        rows = [reduced.data[i] for i in range(len(pivots))]
        self.basis = Matrix.from_columns(ambient_dim, rows)

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace(n, Matrix.identity(n).columns())

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, [])

    @property
    def dim(self) -> int:
        return self.basis.cols

    def contains(self, vec: Sequence) -> bool:
        return in_span(self.basis, [Q(x) for x in vec]) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(c) for c in other.basis.columns())

    def sum(self, other: "Subspace") -> "Subspace":
        assert self.ambient_dim == other.ambient_dim
        return Subspace(self.ambient_dim,
                        self.basis.columns() + other.basis.columns())

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus-free route: v in both spans iff v = A a = B b;
        # kernel of [A | -B] gives the coefficients.
        assert self.ambient_dim == other.ambient_dim
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        combined = self.basis.hstack(other.basis.scale(-1))
        ker = kernel(combined)
        vecs = [self.basis.apply(col[: self.dim]) for col in ker.basis.columns()]
        return Subspace(self.ambient_dim, vecs)

    def image_under(self, m: Matrix) -> "Subspace":
        assert m.cols == self.ambient_dim
        return Subspace(m.rows, [m.apply(c) for c in self.basis.columns()])

    def preimage_under(self, m: Matrix) -> "Subspace":
        """{v : m v in self} as a subspace of the domain of m."""
        assert m.rows == self.ambient_dim
        proj = quotient_projection(Subspace.full(self.ambient_dim), self)
        return kernel(proj * m)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


def in_span(basis: Matrix, vec: list[Q]) -> list[Q] | None:
    """If vec = basis @ c, return c, else None."""
    if basis.cols == 0:
        return [] if all(x == 0 for x in vec) else None
    aug = basis.hstack(Matrix.from_columns(basis.rows, [vec]))
    reduced, pivots = rref(aug)
    if basis.cols in pivots:
        return None
    coeffs = [Q(0)] * basis.cols
    for r, c in enumerate(pivots):
        coeffs[c] = reduced.data[r][basis.cols]
    return coeffs


def kernel(m: Matrix) -> Subspace:
    """Canonical basis of the null space of m."""
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    vecs = []
    for fc in free:
        v = [Q(0)] * m.cols
        v[fc] = Q(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced.data[r][fc]
        vecs.append(v)
    return Subspace(m.cols, vecs)


def image(m: Matrix) -> Subspace:
    """Canonical basis of the column space of m."""
    return Subspace(m.rows, m.columns())


class QuotientPresentation:
    """ambient/sub with a deterministic complement (section) basis.

    The section basis is chosen greedily from the ambient basis columns:
    the canonical-order columns that stay independent modulo sub.
    """

    __slots__ = ("ambient", "sub", "section_basis")

    def __init__(self, ambient: Subspace, sub: Subspace):
        assert ambient.ambient_dim == sub.ambient_dim
        if not ambient.contains_subspace(sub):
            raise ValueError("sub is not contained in ambient")
        self.ambient = ambient
        self.sub = sub
        section = []
        span = sub
        for col in ambient.basis.columns():
            if not span.contains(col):
                section.append(col)
                span = span.sum(Subspace(ambient.ambient_dim, [col]))
        self.section_basis = Matrix.from_columns(ambient.ambient_dim, section)
        assert self.section_basis.cols == ambient.dim - sub.dim

    @property
    def dim(self) -> int:
        return self.section_basis.cols

    def project(self, vec: Sequence) -> list[Q]:
        """Coordinates of [vec] in the section basis."""
        vec = [Q(x) for x in vec]
        full = self.sub.basis.hstack(self.section_basis)
        coeffs = in_span(full, vec)
        if coeffs is None:
            raise ValueError("vector not in ambient space of quotient")
        return coeffs[self.sub.dim:]

    def lift(self, coeffs: Sequence) -> list[Q]:
        return self.section_basis.apply(list(coeffs))

    def __repr__(self):
        return f"QuotientPresentation(dim {self.dim})"


def quotient_projection(ambient: Subspace, sub: Subspace) -> Matrix:
    """Matrix of the projection ambient -> ambient/sub in section coords.

    Acts on full ambient-space coordinates (columns = ambient_dim).
    """
    q = QuotientPresentation(ambient, sub)
    n = ambient.ambient_dim
    if ambient.dim != n:
        raise ValueError("quotient_projection requires full ambient")
    cols = []
    for j in range(n):
        e = [Q(0)] * n
        e[j] = Q(1)
        cols.append(q.project(e))
    return Matrix.from_columns(q.dim, cols)


def induced_map(m: Matrix, src: QuotientPresentation, dst: QuotientPresentation) -> Matrix:
    """Matrix of the map induced by m on src -> dst quotients.

    Requires m(src.ambient) <= dst.ambient and m(src.sub) <= dst.sub;
    otherwise the quotient map is ill-defined.
    """
    for col in src.ambient.basis.columns():
        if not dst.ambient.contains(m.apply(col)):
            raise ValueError("map does not preserve filtration")
    for col in src.sub.basis.columns():
        if not dst.sub.contains(m.apply(col)):
            raise ValueError("map does not preserve filtration")
    cols = [dst.project(m.apply(v)) for v in src.section_basis.columns()]
    return Matrix.from_columns(dst.dim, cols) if cols else Matrix.zero(dst.dim, 0)
