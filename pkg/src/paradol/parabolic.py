"""Parabolic bundle charts: levels, graded pieces, weight filtrations.

Charts are locally abelian: the frame e_1 .. e_r diagonalizes the
parabolic structure, each basis vector carrying one weight in [0,1)
per local divisor component.  The level lattice E_beta is then a sum
of monomial twists, periodic under integer shifts of beta (a shift by
the k-th unit vector twists by the k-th divisor component).

Conventions: E_beta increases in beta; the jump of basis vector i
along component k happens as beta_k passes w[k][i] mod 1, and
Gr_{k,b} = E_{..,b} / E_{..,b-eps}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Matrix, Q, QuotientPresentation, Subspace
from .weights import NilpotentEndo, rank_sequence, weight_filtration


@dataclass(frozen=True)
class MonodromyDatum:
    """Unit-circle monodromy eigenvalue stored by its angle in [0,1)."""
    angle: Fraction
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "angle", Fraction(self.angle) % 1)
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")


def weight_from_monodromy(m: MonodromyDatum) -> Fraction:
    return m.angle


def monodromy_from_weight(beta) -> MonodromyDatum:
    return MonodromyDatum(Fraction(beta) % 1)


@dataclass(frozen=True)
class DivisorComponent:
    cid: str
    kind: str  # "horizontal" | "vertical"

    def __post_init__(self):
        if self.kind not in ("horizontal", "vertical"):
            raise ValueError(f"unknown divisor kind {self.kind!r}")


@dataclass
class DivisorModel:
    """Local divisor data: components and which pairs cross."""
    components: list
    crossings: list = field(default_factory=list)

    def __post_init__(self):
        kinds = {c.cid: c.kind for c in self.components}
        for pair in self.crossings:
            a, b = tuple(pair)
            if kinds[a] == "horizontal" and kinds[b] == "horizontal":
                raise ValueError("horizontal components do not cross")

    def kind(self, cid: str) -> str:
        for c in self.components:
            if c.cid == cid:
                return c.kind
        raise KeyError(cid)

    def ids(self, kind=None) -> list:
        return [c.cid for c in self.components
                if kind is None or c.kind == kind]


@dataclass
class GradedPiece:
    divisor_component: str
    level: Fraction
    space: QuotientPresentation
    residue: NilpotentEndo
    residual_parabolic: list  # weights along the other component, if any
    indices: list             # frame indices spanning the piece


class ParabolicChart:
    """Locally abelian chart: per-component weights per frame vector.

    weights[cid][i] in [0,1) is the weight of e_i along component cid;
    higgs[cid] is the constant matrix R with phi_cid = R dz/z along
    that component.  Logarithmicity for a constant R in a diagonal
    frame requires R[i][j] = 0 whenever w[i] < w[j] would make z^{-1}
    terms appear; equivalently R must be weight-nonincreasing, which is
    checked per component.
    """

    def __init__(self, rank: int, divisor: DivisorModel,
                 weights: dict, higgs: dict = None):
        self.rank = rank
        self.divisor = divisor
        if len(divisor.components) > 2:
            raise ValueError("charts carry at most two local components")
        self.weights = {cid: [Fraction(w) % 1 for w in ws]
                        for cid, ws in weights.items()}
        for cid in divisor.ids():
            if cid not in self.weights or len(self.weights[cid]) != rank:
                raise ValueError(f"weights along {cid!r} must list "
                                 f"all {rank} frame vectors")
        higgs = higgs or {}
        self.higgs = {cid: Matrix(rank, rank,
                                  higgs.get(cid, [[0] * rank] * rank))
                      for cid in divisor.ids()}
        for cid in divisor.ids():
            self._check_logarithmic(cid)

    def _check_logarithmic(self, cid: str):
        # z^m e_j maps to R[i][j] z^m e_i; membership of the image in
        # every E_beta forces R[i][j] = 0 unless w[i] <= w[j] would
        # keep twists intact, i.e. unless the jump of i is not later
        # than the jump of j in the period
        w = self.weights[cid]
        R = self.higgs[cid]
        for i in range(self.rank):
            for j in range(self.rank):
                if R.data[i][j] and w[i] > w[j]:
                    raise ValueError(
                        f"higgs matrix along {cid!r} does not preserve "
                        f"the parabolic levels at entry ({i},{j})")

    def alpha(self, a) -> dict:
        """The level vector alpha(a): a on vertical, 0 on horizontal."""
        a = Fraction(a)
        return {cid: (a if self.divisor.kind(cid) == "vertical"
                      else Fraction(0))
                for cid in self.divisor.ids()}

    def level_representative(self, beta: dict) -> dict:
        """Twist exponents of E_beta per component and frame vector."""
        out = {}
        for cid in self.divisor.ids():
            b = Fraction(beta[cid])
            out[cid] = tuple(-math.floor(b - w)
                             for w in self.weights[cid])
        return out

    def jumps(self, cid: str) -> list:
        """Sorted distinct jump levels in [0,1) along a component."""
        return sorted(set(self.weights[cid]))

    def jump_indices(self, cid: str, b) -> list:
        b = Fraction(b) % 1
        return [i for i, w in enumerate(self.weights[cid]) if w == b]

    def graded_piece(self, cid: str, b) -> GradedPiece:
        """Gr_{cid,b} with its induced residue endomorphism."""
        idx = self.jump_indices(cid, b)
        n = len(idx)
        R = self.higgs[cid]
        sub = Matrix(n, n, [[R.data[i][j] for j in idx] for i in idx])
        if n and not _is_nilpotent(sub):
            raise ValueError("Nilpotence Hypothesis violated")
        other = [c for c in self.divisor.ids() if c != cid]
        residual = [self.weights[other[0]][i] for i in idx] if other else []
        return GradedPiece(cid, Fraction(b) % 1,
                           QuotientPresentation(Subspace.full(n),
                                                Subspace.zero(n)),
                           NilpotentEndo(sub), residual, idx)

    def horizontal_weight_filtration(self, a) -> "HorizontalFiltration":
        """W_l(H, E_alpha(a)) along the horizontal component."""
        horiz = self.divisor.ids("horizontal")
        if not horiz:
            return HorizontalFiltration(self, None, {}, [])
        (h,) = horiz
        piece = self.graded_piece(h, 0)
        if not piece.indices:
            return HorizontalFiltration(self, h, None, [])
        return HorizontalFiltration(self, h, weight_filtration(piece.residue),
                                    piece.indices)


def _is_nilpotent(m: Matrix) -> bool:
    p = m
    for _ in range(m.rows):
        p = p * m
    return p.is_zero()


@dataclass
class HorizontalFiltration:
    """Lattices W_l = preimage of the residue weight filtration.

    The graded part of W_l is level l+1 of the centered monodromy
    filtration of the residue (weight-one centering: a full jump space
    with residue zero sits in level 0, the image of a two-step
    nilpotent in level -2).  Presented as an adapted basis: twist-0
    columns lift the graded level, twist-1 columns are z_h times a
    complement; frame vectors not jumping at 0 carry twist 0.
    """
    chart: ParabolicChart
    component: str
    filtration: object  # WeightFiltration of the level-0 residue, or None
    indices: list

    def graded_level(self, l: int) -> Subspace:
        if self.filtration is None:
            return Subspace.zero(len(self.indices))
        return self.filtration.level(l + 1)

    def lattice(self, l: int) -> list:
        """Adapted basis: list of (vector over the full frame, twist)."""
        r = self.chart.rank
        out = []
        sub = self.graded_level(l)
        section = QuotientPresentation(Subspace.full(len(self.indices)), sub)
        for col in sub.basis.columns():
            out.append((_embed(col, self.indices, r), 0))
        for col in section.section_basis.columns():
            out.append((_embed(col, self.indices, r), 1))
        for i in range(r):
            if i not in self.indices:
                vec = [Q(0)] * r
                vec[i] = Q(1)
                out.append((vec, 0))
        return out

    def twist_multiset(self, l: int) -> tuple:
        return tuple(sorted(t for _, t in self.lattice(l)))


def _embed(col, indices, r):
    vec = [Q(0)] * r
    for c, i in zip(col, indices):
        vec[i] = c
    return vec


def constancy_audit(samples: list) -> dict:
    """Compare residue isomorphism types along one component and level.

    Each sample is a GradedPiece from a chart at a point of the
    component (crossing points included: the induced residue on the
    graded piece is what the chart provides).  Pass iff all rank
    sequences coincide.
    """
    if not samples:
        return {"status": "pass", "rank_sequences": []}
    comps = {s.divisor_component for s in samples}
    lvls = {s.level for s in samples}
    if len(comps) > 1 or len(lvls) > 1:
        raise ValueError("samples must share component and level")
    seqs = [rank_sequence(s.residue) for s in samples]
    ok = all(s == seqs[0] for s in seqs)
    return {"status": "pass" if ok else "fail", "rank_sequences": seqs}
