"""Fiberwise cohomology, direct image audits, and the Gauss-Manin residue.

Fibers are at worst nodal curves whose components are rational; a
sheaf is described per component by twist degrees, glued at nodes.
Cohomology comes from the normalization sequence

  0 -> F -> (+)_c F_c -> (+)_nodes k^r -> 0,

where the second map extracts either value differences (function-type
sheaves, "eval") or residue sums (relative-form-type sheaves,
"residue": sections are g(z) dz/z on each component with branch
points at z = 0 and z = infinity, so res_0 = g(0) and
res_infinity = -g(0) per line after the leading twist bookkeeping).

On a component, a line of degree d contributes polynomials of degree
at most d to H^0 and a Cech space of dimension max(0, -d-1) to H^1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .linalg import (Matrix, Q, QuotientPresentation, Subspace, image,
                     kernel)
from .weights import NilpotentEndo, jordan_type, rank_sequence


@dataclass(frozen=True)
class Node:
    node_id: str
    branch_a: tuple  # (component id, position '0' | 'inf' | rational)
    branch_b: tuple


@dataclass
class NodalCurve:
    components: list            # component ids
    nodes: list                 # Node records
    markings: dict = field(default_factory=dict)  # comp -> list of data

    def __post_init__(self):
        if not self._connected():
            raise ValueError("dual graph must be connected")
        for n in self.nodes:
            for cid, _ in (n.branch_a, n.branch_b):
                if cid not in self.components:
                    raise ValueError(f"node on unknown component {cid!r}")

    def _connected(self) -> bool:
        if len(self.components) <= 1:
            return True
        seen = {self.components[0]}
        changed = True
        while changed:
            changed = False
            for n in self.nodes:
                a, b = n.branch_a[0], n.branch_b[0]
                if (a in seen) != (b in seen):
                    seen |= {a, b}
                    changed = True
        return seen == set(self.components)


@dataclass
class SheafOnNodalCurve:
    curve: NodalCurve
    rank: int
    degrees: dict               # comp -> list of per-line degrees
    kind: str = "eval"          # "eval" | "residue"
    gluings: dict = field(default_factory=dict)  # node_id -> Matrix

    def __post_init__(self):
        if self.kind not in ("eval", "residue"):
            raise ValueError(f"unknown sheaf kind {self.kind!r}")
        for cid in self.curve.components:
            if len(self.degrees.get(cid, ())) != self.rank:
                raise ValueError(f"need {self.rank} degrees on {cid!r}")
        for nid, g in self.gluings.items():
            if kernel(g).dim:
                raise ValueError(f"gluing at {nid!r} not invertible")

    def gluing(self, node: Node) -> Matrix:
        return self.gluings.get(node.node_id, Matrix.identity(self.rank))


@dataclass
class CurveCohomology:
    h0: int
    h1: int
    sections: Subspace          # kernel of node conditions, H^0 coordinates
    node_quotient: QuotientPresentation  # node space modulo section image
    comp_h1: int                # summed Cech contributions
    section_coords: list        # (comp, line, monomial exponent) per axis
    node_coords: list           # (node_id, line) per axis


def _h0_dim(d: int) -> int:
    return max(0, d + 1)


def _h1_dim(d: int) -> int:
    return max(0, -d - 1)


def _extract(kind: str, pos, d: int) -> list:
    """Functional on polynomial coefficients (degree <= d) at a branch."""
    if kind == "eval":
        if pos == "inf":
            return [Q(1) if k == d else Q(0) for k in range(d + 1)]
        p = Q(pos)
        return [p ** k for k in range(d + 1)]
    # residue of g(z) dz/z: g(0) at z = 0, -g(0) at z = infinity
    if pos == "inf":
        return [Q(-1) if k == 0 else Q(0) for k in range(d + 1)]
    if pos != "0" and Q(pos) != 0:
        raise ValueError("residue branches sit at 0 or inf")
    return [Q(1) if k == 0 else Q(0) for k in range(d + 1)]


def curve_cohomology(s: SheafOnNodalCurve) -> CurveCohomology:
    coords = []
    offset = {}
    for cid in s.curve.components:
        for line in range(s.rank):
            offset[(cid, line)] = len(coords)
            coords.extend((cid, line, k)
                          for k in range(_h0_dim(s.degrees[cid][line])))
    ncoords = [(n.node_id, line) for n in s.curve.nodes
               for line in range(s.rank)]
    rows = []
    for n in s.curve.nodes:
        g = s.gluing(n)
        block = []
        for line in range(s.rank):
            row = [Q(0)] * len(coords)
            ca, pa = n.branch_a
            da = s.degrees[ca][line]
            fa = _extract(s.kind, pa, da)
            for k, c in enumerate(fa):
                row[offset[(ca, line)] + k] += c
            cb, pb = n.branch_b
            sign = Q(1) if s.kind == "residue" else Q(-1)
            for src in range(s.rank):
                db = s.degrees[cb][src]
                fb = _extract(s.kind, pb, db)
                coeff = sign * g.data[line][src]
                for k, c in enumerate(fb):
                    row[offset[(cb, src)] + k] += coeff * c
            block.append(row)
        rows.extend(block)
    t = Matrix(len(ncoords), len(coords), rows) if ncoords else \
        Matrix.zero(0, len(coords))
    sections = kernel(t)
    node_quot = QuotientPresentation(Subspace.full(len(ncoords)), image(t))
    comp_h1 = sum(_h1_dim(d) for cid in s.curve.components
                  for d in s.degrees[cid])
    h0 = sections.dim
    h1 = node_quot.dim + comp_h1
    return CurveCohomology(h0, h1, sections, node_quot, comp_h1,
                           coords, ncoords)


@dataclass
class FiberComplex:
    """Restriction of the two-term complex to one fiber."""
    s0: SheafOnNodalCurve
    s1: SheafOnNodalCurve
    # optional differential on H^0 and H^1 coordinates (default zero)
    d_h0: Matrix = None
    d_h1: Matrix = None


def fiber_hypercohomology(fc: FiberComplex) -> tuple:
    c0 = curve_cohomology(fc.s0)
    c1 = curve_cohomology(fc.s1)
    d0 = fc.d_h0 if fc.d_h0 is not None else Matrix.zero(c1.h0, c0.h0)
    d1 = fc.d_h1 if fc.d_h1 is not None else Matrix.zero(c1.h1, c0.h1)
    if d0.rows != c1.h0 or d0.cols != c0.h0:
        raise ValueError("H^0 differential has wrong shape")
    if d1.rows != c1.h1 or d1.cols != c0.h1:
        raise ValueError("H^1 differential has wrong shape")
    r0 = image(d0).dim
    r1 = image(d1).dim
    hh0 = c0.h0 - r0
    hh1 = (c1.h0 - r0) + (c0.h1 - r1)
    hh2 = c1.h1 - r1
    return (hh0, hh1, hh2)


@dataclass
class SamplePoint:
    label: str
    declared: tuple = None        # dims given by the fixture
    fiber: FiberComplex = None    # or computed from a fiber description
    # degree of O(fiber)|component per (sheaf, comp, line); zero for a
    # fiber class of self-intersection zero
    fiber_class_degrees: dict = field(default_factory=dict)


@dataclass
class FamilyFixture:
    label: str
    samples: list
    vertical_weight: Fraction = Fraction(0)
    special: str = None           # label of the nodal sample, if any


@dataclass
class PushforwardReport:
    level: Fraction
    dims: dict                   # sample label -> (h0, h1, h2)
    local_freeness_pass: bool
    base_change_pass: bool
    euler_constant: bool


def _twisted_fiber(fc: FiberComplex, shifts: dict, m: int) -> FiberComplex:
    def tw(sheaf, tag):
        degs = {c: [d + m * shifts.get((tag, c, i), 0)
                    for i, d in enumerate(ds)]
                for c, ds in sheaf.degrees.items()}
        return SheafOnNodalCurve(sheaf.curve, sheaf.rank, degs,
                                 sheaf.kind, sheaf.gluings)
    return FiberComplex(tw(fc.s0, "s0"), tw(fc.s1, "s1"),
                        fc.d_h0, fc.d_h1)


def direct_image_table(family: FamilyFixture, a) -> PushforwardReport:
    """Per-sample fiber dims of the pushed-forward complex at level a.

    The level enters through the vertical twist exponent
    m(a) = -floor(a - w); fibers have self-intersection zero, so the
    shipped fixtures carry zero fiber-class degrees and the table is
    periodic in a, which is the point of the periodicity audit.
    """
    a = Fraction(a)
    m = -floor(a - family.vertical_weight)
    dims = {}
    for sp in family.samples:
        if sp.declared is not None and sp.fiber is None:
            dims[sp.label] = tuple(sp.declared)
            continue
        fc = _twisted_fiber(sp.fiber, sp.fiber_class_degrees, m)
        computed = fiber_hypercohomology(fc)
        if sp.declared is not None:
            chi_d = sp.declared[0] - sp.declared[1] + sp.declared[2]
            chi_c = computed[0] - computed[1] + computed[2]
            if chi_d != chi_c:
                raise ValueError(
                    f"fiber Euler data at {sp.label!r} incompatible "
                    f"with declared dims")
        dims[sp.label] = computed
    rows = list(dims.values())
    constant = all(r == rows[0] for r in rows)
    chis = [r[0] - r[1] + r[2] for r in rows]
    return PushforwardReport(a, dims, constant, constant,
                             all(c == chis[0] for c in chis))


@dataclass
class GaussManinDatum:
    theta: Matrix                # residue of theta at q on H^1(fiber)
    residue: NilpotentEndo
    jordan: tuple
    basis_labels: list
    local_nearby_dims: dict      # node id -> local vanishing dim


def gauss_manin_theta(family: FamilyFixture, a, i: int = 1) -> GaussManinDatum:
    """Residue at q of the connecting Higgs field on H^i of the fiber.

    Computed on the nodal sample: H^1 of the fiber complex splits as
    H^1(S^0) (+) H^0(S^1); the connecting map sends the class of a
    relative form to its node residues, read in the presentation of
    the node-quotient part of H^1(S^0), and kills H^1(S^0).  A product
    family (no nodal sample or no nodes) has theta = 0.
    """
    if i != 1:
        raise ValueError("only the middle direct image carries theta here")
    sp = next((s for s in family.samples if s.label == family.special), None)
    if sp is None or sp.fiber is None:
        z = Matrix.zero(0, 0)
        return GaussManinDatum(z, NilpotentEndo(z), (), [], {})
    fc = sp.fiber
    c0 = curve_cohomology(fc.s0)
    c1 = curve_cohomology(fc.s1)
    if fc.s1.kind != "residue":
        raise ValueError("degree-1 term must be of relative-form type")
    n = c0.h1 + c1.h0
    labels = ([("h1s0", k) for k in range(c0.h1)] +
              [("h0s1", k) for k in range(c1.h0)])
    theta = [[Q(0)] * n for _ in range(n)]
    # residues of a section of S^1 at the nodes, as a vector in the
    # node coordinate space of S^0 (same nodes, same lines)
    nodes = fc.s0.curve.nodes
    for j, sec in enumerate(c1.sections.basis.columns()):
        res = [Q(0)] * len(c0.node_coords)
        for t, (nid, line) in enumerate(c1.node_coords):
            node = next(nd for nd in nodes if nd.node_id == nid)
            cid, pos = node.branch_a
            d = fc.s1.degrees[cid][line]
            if d < 0:
                continue
            f = _extract("residue", pos, d)
            base = c1.section_coords.index((cid, line, 0))
            val = sum(f[k] * sec[base + k] for k in range(d + 1))
            res[t] = val
        cls = c0.node_quotient.project(res)
        for r in range(c0.node_quotient.dim):
            theta[r][c0.h1 + j] = cls[r]
    m = Matrix(n, n, theta)
    endo = NilpotentEndo(m)
    local = {}
    if nodes:
        from .modules import PsiModule, tensor_formula_module
        from .vnearby import koszul_strand
        ref = tensor_formula_module(PsiModule(["A"]), (2, 2))
        for nd in nodes:
            local[nd.node_id] = koszul_strand(ref, 0, 1).h[1]
    return GaussManinDatum(m, endo, jordan_type(endo), labels, local)
