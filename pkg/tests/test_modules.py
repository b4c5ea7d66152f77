import pytest

from paradol.modules import (PresentedModule, PsiModule, SparseEchelon,
                             tensor_formula_module)


def test_sparse_echelon_rank_and_membership():
    e = SparseEchelon()
    assert e.add({("a",): 1, ("b",): 2})
    assert e.add({("b",): 1})
    assert not e.add({("a",): 2, ("b",): 5})
    assert e.rank == 2
    assert e.contains({("a",): 7})
    assert not e.contains({("c",): 1})


def test_sparse_echelon_copy_is_independent():
    e = SparseEchelon()
    e.add({("a",): 1})
    c = e.copy()
    c.add({("b",): 1})
    assert e.rank == 1 and c.rank == 2


def test_psi_module_dims():
    assert [PsiModule(["A"]).dim(d) for d in range(4)] == [1, 2, 2, 2]
    assert [PsiModule(["Ax"]).dim(d) for d in range(4)] == [1, 1, 1, 1]
    assert [PsiModule(["k"]).dim(d) for d in range(3)] == [1, 0, 0]
    assert PsiModule(["A", "Ay"]).dim(2) == 3


def test_psi_rejects_incompatible_phi():
    # constant map A -> A/(x) sending 1 to 1 is fine; the reverse is not
    PsiModule(["Ax", "A"], [[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        PsiModule(["A", "Ax"], [[0, 1], [0, 0]])


def test_tensor_module_bigraded_dims_type_a():
    N = tensor_formula_module(PsiModule(["A"]), (4, 4))
    expect = {0: lambda i: i + 1, 1: lambda i: i + 2}
    for d in range(4):
        for i in range(4):
            want = expect[d](i) if d in expect else 2
            assert N.graded_dim(d, i) == want, (d, i)


def test_tensor_module_bigraded_dims_type_ax():
    N = tensor_formula_module(PsiModule(["Ax"]), (4, 4))
    for i in range(4):
        assert N.graded_dim(0, i) == i + 1
        for d in range(1, 4):
            assert N.graded_dim(d, i) == 1


def test_graded_components_require_zero_phi():
    psi = PsiModule(["A", "A"], [[0, 1], [0, 0]])
    N = tensor_formula_module(psi, (3, 3))
    with pytest.raises(ValueError):
        N.graded_component(1, 1)
    # the cumulative filtration table is still available
    assert N.dims()[(1, 1)] > 0


def test_mul_matrices_commute_on_graded_components():
    N = tensor_formula_module(PsiModule(["A", "Ay"]), (3, 3))
    for d in range(3):
        for i in range(2):
            uv = N.mul_matrix("v", d, i + 1) * N.mul_matrix("u", d, i)
            vu = N.mul_matrix("u", d, i + 1) * N.mul_matrix("v", d, i)
            assert uv == vu


def test_coannihilated_detects_type_k():
    assert PsiModule(["k"]).coannihilated(2)
    assert not PsiModule(["A", "Ax", "Ay"]).coannihilated(3)


def test_interior_dims_subset_of_dims():
    N = tensor_formula_module(PsiModule(["Ay"]), (3, 3))
    full = N.dims()
    inside = N.interior_dims()
    assert set(inside) < set(full)
    assert all(full[k] == v for k, v in inside.items())
