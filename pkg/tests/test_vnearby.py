import pytest

from _fixtures import graph_from_payload, psi_from_payload, qis_payloads
from paradol.linalg import Subspace
from paradol.modules import PsiModule, tensor_formula_module
from paradol.vnearby import (GraphModule, build_comparison_map,
                             koszul_middle_kernel, koszul_strand,
                             nearby_cycles, u_graded_reduction_check,
                             verify_qis)


def test_koszul_strands_type_a():
    N = tensor_formula_module(PsiModule(["A"]), (4, 6))
    for i in range(1, 4):
        for d in range(4):
            assert koszul_strand(N, i, d).h == (0, 0, 0)
    # middle cohomology at i = 0 is A shifted by one degree
    assert [koszul_strand(N, 0, d).h[1] for d in range(4)] == [0, 1, 2, 2]
    # right cohomology at i = -1 is A on the nose
    assert [koszul_strand(N, -1, d).h[2] for d in range(4)] == [1, 2, 2, 2]


def test_koszul_kernel_type_ax():
    N = tensor_formula_module(PsiModule(["Ax"]), (4, 6))
    for d in range(1, 4):
        ker = koszul_middle_kernel(N, d)
        n = N.graded_dim(d, 0)
        want = [0] * (2 * n)
        want[n] = 1  # y^d times the second unit vector
        assert ker == Subspace(2 * n, [want])
    assert koszul_middle_kernel(N, 0).dim == 0
    assert [koszul_strand(N, 0, d).h[1] for d in range(4)] == [0, 1, 1, 1]


def test_routes_agree_without_phi():
    gm = GraphModule(["xy", "x", "y"])
    cmp = nearby_cycles(gm, (3, 3))
    assert cmp.passed, cmp.mismatches


def test_routes_agree_with_nilpotent_phi():
    for payload in qis_payloads(8):
        gm = graph_from_payload(payload)
        cmp = nearby_cycles(gm, (3, 3))
        assert cmp.passed, (payload, cmp.mismatches)


def test_graph_module_requires_commuting_operators():
    with pytest.raises(ValueError):
        GraphModule(["xy", "xy"], [[0, 1], [0, 0]], [[0, 0], [1, 0]])


def test_comparison_map_squares_commute():
    for payload in qis_payloads(6):
        psi = psi_from_payload(payload)
        assert build_comparison_map(psi, (3, 4)).squares_commute


def test_u_graded_reduction():
    for types in (["A"], ["Ax", "Ay"], ["A", "Ax"]):
        assert u_graded_reduction_check(PsiModule(types), (3, 4))


def test_verify_qis_passes_on_fixtures():
    for payload in qis_payloads(6):
        rep = verify_qis(psi_from_payload(payload))
        assert rep.status == "pass", (payload, rep.failures)
        assert all(v == 0 for v in rep.h0_lower.values())


def test_verify_qis_hypothesis_gate():
    rep = verify_qis(PsiModule(["k"]))
    assert rep.status == "hypothesis_failed"
    rep2 = verify_qis(PsiModule(["A", "k"]))
    assert rep2.status == "hypothesis_failed"


def test_verify_qis_window_validation():
    with pytest.raises(ValueError):
        verify_qis(PsiModule(["A"]), (3, 1))
