"""Acceptance gate: one test per published criterion, exact arithmetic.

Each test prints a single pass/fail line (run pytest with -s or -v to
see them) and enforces its runtime budget.
"""

import json
import pathlib
import random
import time
from fractions import Fraction

from _fixtures import graph_from_payload, psi_from_payload, qis_payloads
from paradol.cli import run_scenario
from paradol.linalg import Matrix, Subspace, rank
from paradol.modules import PsiModule, tensor_formula_module
from paradol.pushforward import direct_image_table, gauss_manin_theta
from paradol.vnearby import (koszul_middle_kernel, koszul_strand,
                             nearby_cycles, verify_qis)
from paradol.weights import NilpotentEndo, rank_sequence, weight_filtration

SCENARIOS = pathlib.Path(__file__).resolve().parent.parent / "scenarios"


def report(name, ok, started, budget):
    elapsed = time.monotonic() - started
    print(f"[{'PASS' if ok else 'FAIL'}] {name} ({elapsed:.2f}s)")
    assert ok, name
    assert elapsed < budget, f"{name} exceeded {budget}s ({elapsed:.2f}s)"


def test_criterion_1_koszul_ledger_type_a():
    t0 = time.monotonic()
    N = tensor_formula_module(PsiModule(["A"]), (4, 6))
    ok = all(koszul_strand(N, i, d).h == (0, 0, 0)
             for i in range(1, 6) for d in range(5))
    mids = [koszul_strand(N, 0, d).h[1] for d in range(5)]
    ok = ok and mids == [0, 1, 2, 2, 2]
    rights = [koszul_strand(N, -1, d).h[2] for d in range(5)]
    ok = ok and rights == [1, 2, 2, 2, 2]
    report("criterion 1: Koszul ledger for A", ok, t0, 10)


def test_criterion_2_koszul_ledger_type_ax():
    t0 = time.monotonic()
    N = tensor_formula_module(PsiModule(["Ax"]), (4, 6))
    ok = True
    for d in range(1, 5):
        n = N.graded_dim(d, 0)
        want = [0] * (2 * n)
        want[n] = 1  # y^d in the second middle copy
        ok = ok and koszul_middle_kernel(N, d) == Subspace(2 * n, [want])
    ok = ok and koszul_middle_kernel(N, 0).dim == 0
    mids = [koszul_strand(N, 0, d).h[1] for d in range(5)]
    ok = ok and mids == [0, 1, 1, 1, 1]  # shifted dims of A/(x)
    report("criterion 2: Koszul kernel for A/(x)", ok, t0, 5)


def test_criterion_3_tensor_product_formula():
    t0 = time.monotonic()
    payloads = qis_payloads(20)
    ok = True
    for payload in payloads:
        cmp = nearby_cycles(graph_from_payload(payload), (3, 3))
        ok = ok and cmp.passed
    report("criterion 3: tensor product formula on 20 fixtures", ok, t0, 60)


def test_criterion_4_koszul_quasiisomorphism():
    t0 = time.monotonic()
    ok = True
    for payload in qis_payloads(20):
        rep = verify_qis(psi_from_payload(payload))
        ok = ok and rep.status == "pass"
        ok = ok and all(v == 0 for v in rep.h0_lower.values())
    ok = ok and verify_qis(PsiModule(["k"])).status == "hypothesis_failed"
    report("criterion 4: Koszul quasiisomorphism on 20 fixtures",
           ok, t0, 120)


def test_criterion_5_weight_filtration_axioms():
    t0 = time.monotonic()
    rng = random.Random(2026)
    ok = True

    def rand_nilpotent(n):
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                m[i][j] = rng.randint(-3, 3)
        return NilpotentEndo(Matrix(n, n, m))

    endos = [rand_nilpotent(rng.randint(1, 8)) for _ in range(200)]
    for endo in endos:
        w = weight_filtration(endo)
        nmat = endo.matrix
        for l in range(-w.m - 1, w.m + 2):
            if not w.level(l - 2).contains_subspace(
                    w.level(l).image_under(nmat)):
                ok = False
        for l in range(1, w.m + 1):
            if (w.level(l).dim - w.level(l - 1).dim !=
                    w.level(-l).dim - w.level(-l - 1).dim):
                ok = False
            pushed = w.level(l).image_under(nmat.power(l))
            if pushed.sum(w.level(-l - 1)) != w.level(-l):
                ok = False
    # conjugation equivariance on 50 random conjugations
    for _ in range(50):
        endo = endos[rng.randrange(len(endos))]
        n = endo.dim
        while True:
            p = Matrix(n, n, [[rng.randint(-2, 2) for _ in range(n)]
                              for _ in range(n)])
            if rank(p) == n:
                break
        w = weight_filtration(endo)
        pend = p * endo.matrix
        # solve P N = N' P instead of forming P^{-1}
        wc = weight_filtration(NilpotentEndo(_conjugate(p, endo.matrix)))
        for l in range(-w.m - 1, w.m + 1):
            if wc.level(l) != w.level(l).image_under(p):
                ok = False
    report("criterion 5: weight filtration axioms, 200 samples", ok, t0, 30)


def _conjugate(p: Matrix, m: Matrix) -> Matrix:
    n = p.rows
    from paradol.linalg import rref
    aug = Matrix(n, 2 * n, [p.data[i] + Matrix.identity(n).data[i]
                            for i in range(n)])
    red, pivots = rref(aug)
    pinv = Matrix(n, n, [red.data[i][n:] for i in range(n)])
    return p * m * pinv


def _family(path):
    from paradol.cli import _family_from_payload, load_scenario
    return _family_from_payload(load_scenario(str(path))["payload"])


def test_criterion_6_i2_pushforward_audit():
    t0 = time.monotonic()
    rep = direct_image_table(_family(SCENARIOS / "pushforward_i2.json"), 0)
    ok = rep.dims["t0"] == (1, 2, 1)
    ok = ok and all(d == (1, 2, 1) for d in rep.dims.values())
    ok = ok and rep.local_freeness_pass and rep.base_change_pass
    ok = ok and rep.euler_constant
    report("criterion 6: degenerate-elliptic pushforward audit", ok, t0, 10)


def test_criterion_7_four_marked_family():
    t0 = time.monotonic()
    rep = direct_image_table(
        _family(SCENARIOS / "pushforward_marked.json"), 0)
    ok = all(d == (0, 2, 0) for d in rep.dims.values())
    ok = ok and rep.local_freeness_pass
    report("criterion 7: four-marked family audit", ok, t0, 10)


def test_criterion_8_gauss_manin_residue():
    t0 = time.monotonic()
    gm = gauss_manin_theta(_family(SCENARIOS / "gauss_manin_i2.json"), 0)
    ok = gm.theta.rows == 2  # middle hypercohomology is 2-dimensional
    ok = ok and gm.jordan == (2,)
    ok = ok and rank_sequence(gm.residue)[1] == 1
    # cross-check: one local vanishing direction per node from the
    # nearby-cycles Koszul strand, bounding the global residue rank
    ok = ok and gm.local_nearby_dims == {"n1": 1, "n2": 1}
    ok = ok and rank_sequence(gm.residue)[1] <= sum(
        gm.local_nearby_dims.values())
    report("criterion 8: Gauss-Manin residue on the cycle fiber",
           ok, t0, 20)


def test_criterion_9_parabolic_periodicity():
    t0 = time.monotonic()
    ok = True
    for path in sorted(SCENARIOS.glob("pushforward_*.json")):
        if path.stem == "pushforward_broken":
            continue
        fam = _family(path)
        for a in (Fraction(0), Fraction(1, 2), Fraction(-1, 3)):
            if direct_image_table(fam, a - 1).dims != \
                    direct_image_table(fam, a).dims:
                ok = False
    report("criterion 9: level periodicity of direct image tables",
           ok, t0, 10)
