"""Finitely presented bigraded modules over A = Q[x,y]/(xy).

Two representations coexist:

* graded components (small dense spaces per bidegree, used when the
  defining relation is bidegree-homogeneous, e.g. the monomial-basis
  Koszul calculations), and
* windowed filtration dims computed by rank arithmetic on sparse
  integer rows (used for the route cross-checks where a nonzero
  endomorphism breaks the bigrading and only the double filtration
  survives).

Monomial conventions: an A-monomial is x^a or y^b (xy = 0 in every
normal form); monomial order is degree-lexicographic with x > y > u > v.
Windows are explicit everywhere; comparisons exclude the outermost
layer, where generation may be clipped.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .linalg import Matrix, QuotientPresentation, Subspace, induced_map

# cyclic A-module types: annihilator of the generator
ANN = {"A": frozenset(), "Ax": frozenset("x"), "Ay": frozenset("y"),
       "k": frozenset("xy")}

# variable codes inside monomial keys, chosen so that x > y in the
# degree-lex order realized by tuple comparison with min() pivoting
VAR_ONE, VAR_X, VAR_Y = 0, 1, 2


class SparseEchelon:
    """Incremental echelon form over Z with sparse dict rows.

    Rows are normalized (gcd 1, positive leading coefficient) and never
    mutated after insertion, so copies can share row storage.
    """

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: dict = {}

    def copy(self) -> "SparseEchelon":
        e = SparseEchelon()
        e.rows = dict(self.rows)
        return e

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, vec: dict) -> bool:
        """Insert a vector; return True if the rank increased."""
        row = {k: int(v) for k, v in vec.items() if v}
        while row:
            lead = min(row)
            piv = self.rows.get(lead)
            if piv is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if row[lead] < 0:
                    g = -g
                self.rows[lead] = {k: v // g for k, v in row.items()}
                return True
            a, b = row[lead], piv[lead]
            g = gcd(a, b)
            ca, cb = b // g, a // g
            new = {}
            for k, v in row.items():
                new[k] = v * ca
            for k, v in piv.items():
                w = new.get(k, 0) - v * cb
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = new
        return False

    def add_all(self, vecs) -> int:
        return sum(self.add(v) for v in vecs)

    def contains(self, vec: dict) -> bool:
        return not self.copy().add(vec)


class PsiModule:
    """Direct sum of cyclic A-modules with a constant endomorphism.

    ``types[i]`` is the type of the i-th cyclic summand; ``phi`` is a
    constant square matrix acting A-linearly.  A constant entry
    phi[i][j] is only well defined when Ann(types[j]) <= Ann(types[i]).
    """

    def __init__(self, types: list[str], phi=None):
        for t in types:
            if t not in ANN:
                raise ValueError(f"unknown module type {t!r}")
        self.types = list(types)
        self.rank = len(types)
        if phi is None:
            phi = [[0] * self.rank for _ in range(self.rank)]
        self.phi = [[Fraction(x) for x in row] for row in phi]
        for i in range(self.rank):
            for j in range(self.rank):
                if self.phi[i][j] and not ANN[types[j]] <= ANN[types[i]]:
                    raise ValueError(
                        f"phi entry ({i},{j}) not A-linear for types "
                        f"{types[j]} -> {types[i]}")

    def phi_is_zero(self) -> bool:
        return all(x == 0 for row in self.phi for x in row)

    def has_type_k(self) -> bool:
        return "k" in self.types

    def monomials(self, d: int) -> list[tuple]:
        """A-monomials of degree exactly d: keys (i, var, exp)."""
        out = []
        for i, t in enumerate(self.types):
            if d == 0:
                out.append((i, VAR_ONE, 0))
                continue
            if t == "k":
                continue
            if "x" not in ANN[t]:
                out.append((i, VAR_X, d))
            if "y" not in ANN[t]:
                out.append((i, VAR_Y, d))
        return out

    def monomials_upto(self, d: int) -> list[tuple]:
        out = []
        for e in range(d + 1):
            out.extend(self.monomials(e))
        return out

    def dim(self, d: int) -> int:
        return len(self.monomials(d))

    def dim_upto(self, d: int) -> int:
        return sum(self.dim(e) for e in range(d + 1))

    def mul(self, var: str, mono: tuple):
        """Multiply a monomial by x or y; None if it dies (xy = 0 or ann)."""
        i, v, e = mono
        t = self.types[i]
        if var in ANN[t]:
            return None
        code = VAR_X if var == "x" else VAR_Y
        if v == VAR_ONE:
            return (i, code, 1)
        if v == code:
            return (i, code, e + 1)
        return None  # xy = 0

    def phi_image(self, mono: tuple) -> dict:
        """phi applied to a monomial, as {monomial: coefficient}."""
        j, v, e = mono
        out = {}
        for i in range((self.rank)):
            c = self.phi[i][j]
            if not c:
                continue
            # the monomial survives in piece i iff its variable is not
            # annihilated there (quotient map kills it otherwise)
            if v == VAR_X and "x" in ANN[self.types[i]]:
                continue
            if v == VAR_Y and "y" in ANN[self.types[i]]:
                continue
            out[(i, v, e)] = out.get((i, v, e), 0) + c
        return {k: c for k, c in out.items() if c}

    def mul_matrix(self, var: str, d: int) -> Matrix:
        """Matrix of multiplication by var: degree d -> d+1 components."""
        src = self.monomials(d)
        dst = self.monomials(d + 1)
        idx = {m: i for i, m in enumerate(dst)}
        cols = []
        for m in src:
            col = [Fraction(0)] * len(dst)
            out = self.mul(var, m)
            if out is not None:
                col[idx[out]] = Fraction(1)
            cols.append(col)
        return Matrix.from_columns(len(dst), cols)

    def phi_matrix(self, d: int) -> Matrix:
        mons = self.monomials(d)
        idx = {m: i for i, m in enumerate(mons)}
        cols = []
        for m in mons:
            col = [Fraction(0)] * len(mons)
            for mm, c in self.phi_image(m).items():
                col[idx[mm]] += c
            cols.append(col)
        return Matrix.from_columns(len(mons), cols)

    def coannihilated(self, dmax: int) -> bool:
        """True if some element of degree <= dmax is killed by x and y.

        This is the hypothesis gate for the Koszul quasiisomorphism:
        with constant phi it suffices to test monomial components, and
        the only witnesses are generators of type k.
        """
        from .linalg import kernel
        for d in range(dmax + 1):
            if not self.monomials(d):
                continue
            mx = self.mul_matrix("x", d)
            my = self.mul_matrix("y", d)
            stacked = Matrix(mx.rows + my.rows, mx.cols, mx.data + my.data)
            if kernel(stacked).dim:
                return True
        return False


def uv_monomials(deg: int) -> list[tuple]:
    """(k, l) with k + l = deg."""
    return [(deg - l, l) for l in range(deg + 1)]


def uv_monomials_upto(deg: int) -> list[tuple]:
    out = []
    for d in range(deg + 1):
        out.extend(uv_monomials(d))
    return out


def relation_row(psi: PsiModule, b: tuple, k: int, l: int) -> dict:
    """(xu - yv - phi)(b (x) u^k v^l) as a sparse row.

    Keys are (i, var, exp, k, l); Fraction coefficients are cleared to
    integers by the caller's echelon (phi entries are integral in all
    shipped fixtures; fractional entries are scaled here).
    """
    row = {}
    bx = psi.mul("x", b)
    if bx is not None:
        row[bx + (k + 1, l)] = row.get(bx + (k + 1, l), 0) + 1
    by = psi.mul("y", b)
    if by is not None:
        row[by + (k, l + 1)] = row.get(by + (k, l + 1), 0) - 1
    for m, c in psi.phi_image(b).items():
        key = m + (k, l)
        row[key] = row.get(key, 0) - c
    return _clear_denominators(row)


def _clear_denominators(row: dict) -> dict:
    denom = 1
    for v in row.values():
        if isinstance(v, Fraction):
            denom = denom * v.denominator // gcd(denom, v.denominator)
    return {k: int(v * denom) for k, v in row.items() if v}


class PresentedModule:
    """N = psi[u,v]/(xu - yv - phi) represented on a finite window.

    ``dims(d1, d2)`` are cumulative double-filtration dimensions: the
    image of psi-degree <= d1, (u,v)-degree <= d2.  Exact on the window
    interior; the outermost layer may be clipped.
    """

    def __init__(self, psi: PsiModule, window: tuple[int, int]):
        self.psi = psi
        self.window = window
        d1, d2 = window

    def relation_rows(self, d1: int, d2: int) -> list[dict]:
        rows = []
        for b in self.psi.monomials_upto(d1 - 1):
            for k, l in uv_monomials_upto(d2 - 1):
                rows.append(relation_row(self.psi, b, k, l))
        return rows

    def monomial_keys(self, d1: int, d2: int) -> list[tuple]:
        return [b + (k, l) for b in self.psi.monomials_upto(d1)
                for (k, l) in uv_monomials_upto(d2)]

    def dims(self) -> dict:
        """Cumulative dims table over the whole window."""
        out = {}
        d1max, d2max = self.window
        for d1 in range(d1max + 1):
            for d2 in range(d2max + 1):
                ech = SparseEchelon()
                ech.add_all(self.relation_rows(d1, d2))
                nmono = len(self.monomial_keys(d1, d2))
                out[(d1, d2)] = nmono - ech.rank
        return out

    def interior_dims(self) -> dict:
        full = self.dims()
        d1max, d2max = self.window
        return {k: v for k, v in full.items()
                if k[0] < d1max and k[1] < d2max}

    # ----- graded components (bidegree-homogeneous relation only) -----

    def graded_component(self, d: int, i: int) -> QuotientPresentation:
        """Component of bidegree ((x,y)-degree d, (u,v)-degree i).

        Requires phi = 0 (otherwise the relation is not bihomogeneous
        and only the filtration above is meaningful).
        """
        if not self.psi.phi_is_zero():
            raise ValueError("graded components require phi = 0")
        basis = self._component_basis(d, i)
        n = len(basis)
        rel_vecs = []
        if d >= 1 and i >= 1:
            idx = {m: t for t, m in enumerate(basis)}
            for b in self.psi.monomials(d - 1):
                for (k, l) in uv_monomials(i - 1):
                    row = relation_row(self.psi, b, k, l)
                    vec = [Fraction(0)] * n
                    for key, c in row.items():
                        vec[idx[key]] = Fraction(c)
                    rel_vecs.append(vec)
        return QuotientPresentation(Subspace.full(n), Subspace(n, rel_vecs))

    def _component_basis(self, d: int, i: int) -> list[tuple]:
        return [b + (k, l) for b in self.psi.monomials(d)
                for (k, l) in uv_monomials(i)]

    def graded_dim(self, d: int, i: int) -> int:
        return self.graded_component(d, i).dim

    def mul_matrix(self, var: str, d: int, i: int) -> Matrix:
        """Induced multiplication by u or v between graded components."""
        src = self.graded_component(d, i)
        dst = self.graded_component(d, i + 1)
        sb = self._component_basis(d, i)
        db = self._component_basis(d, i + 1)
        didx = {m: t for t, m in enumerate(db)}
        cols = []
        for (j, var_, exp, k, l) in sb:
            key = (j, var_, exp, k + 1, l) if var == "u" else (j, var_, exp, k, l + 1)
            col = [Fraction(0)] * len(db)
            col[didx[key]] = Fraction(1)
            cols.append(col)
        amb = Matrix.from_columns(len(db), cols)
        return induced_map(amb, src, dst)


def tensor_formula_module(psi: PsiModule, window: tuple[int, int]) -> PresentedModule:
    """Psi_{b-1} as psi[u,v]/(xu - yv - phi_log), truncated to a window."""
    return PresentedModule(psi, window)


def truncate(module: PresentedModule, window: tuple[int, int]) -> PresentedModule:
    d1, d2 = window
    if d1 < 0 or d2 < 0:
        raise ValueError("window must be nonempty")
    w1 = min(d1, module.window[0])
    w2 = min(d2, module.window[1])
    return PresentedModule(module.psi, (w1, w2))


def quotient_dims(big: dict, small: dict) -> dict:
    """Componentwise dims of a quotient given cumulative dims tables."""
    out = {}
    for key, v in big.items():
        s = small.get(key, 0)
        if s > v:
            raise ValueError("small module not contained in big module")
        out[key] = v - s
    return out
