"""Integer matrix routines, checked against sympy and by hand."""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st
import sympy

from divide_forge import linalg


small_matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
)


def is_unimodular(u):
    return abs(sympy.Matrix(u).det()) == 1


@given(small_matrices)
@settings(max_examples=60, deadline=None)
def test_row_hnf_transform(mat):
    h, u = linalg.row_hnf(mat)
    assert is_unimodular(u)
    assert linalg.mat_mul(u, mat) == h
    # Echelon: pivot columns strictly increase, zero rows trail.
    pivots = []
    seen_zero = False
    for row in h:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        assert not seen_zero
        assert row[nz[0]] > 0
        pivots.append(nz[0])
    assert pivots == sorted(set(pivots))


@given(small_matrices)
@settings(max_examples=60, deadline=None)
def test_snf_matches_sympy(mat):
    d, u, v = linalg.snf(mat)
    assert is_unimodular(u)
    assert is_unimodular(v)
    assert linalg.mat_mul(linalg.mat_mul(u, mat), v) == d
    m, n = linalg.shape(mat)
    diag = [d[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert d[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    from sympy.matrices.normalforms import smith_normal_form

    sm = smith_normal_form(sympy.Matrix(mat), domain=sympy.ZZ)
    expected = [int(sm[i, i]) for i in range(min(m, n)) if sm[i, i] != 0]
    # sympy may emit negative entries; compare magnitudes of the chains
    assert [x for x in diag if x] == [abs(x) for x in expected]


@given(small_matrices)
@settings(max_examples=60, deadline=None)
def test_kernel_basis(mat):
    basis = linalg.kernel_basis(mat)
    for vec in basis:
        assert all(x == 0 for x in linalg.mat_vec(mat, vec))
    rank = sympy.Matrix(mat).rank()
    assert len(basis) == linalg.shape(mat)[1] - rank
    if basis:
        assert sympy.Matrix(basis).rank() == len(basis)


@given(small_matrices, st.lists(st.integers(-4, 4), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_solve_roundtrip(mat, coeffs):
    n = linalg.shape(mat)[1]
    x = (coeffs * n)[:n]
    rhs = linalg.mat_vec(mat, x)
    sol = linalg.solve(mat, rhs)
    assert sol is not None
    assert linalg.mat_vec(mat, sol) == rhs


def test_solve_detects_insolubility():
    assert linalg.solve([[2]], [1]) is None
    assert linalg.solve([[2, 0], [0, 3]], [1, 1]) is None
    assert linalg.solve([[1, 1], [1, 1]], [0, 1]) is None


def test_unimodular_inverse():
    u = [[2, 1], [1, 1]]
    w = linalg.unimodular_inverse(u)
    assert linalg.mat_mul(u, w) == linalg.identity(2)


def test_cokernel_examples():
    assert linalg.cokernel([[1]]) == ([], 0)
    assert linalg.cokernel([[2]]) == ([2], 0)
    assert linalg.cokernel([[0]]) == ([], 1)
    assert linalg.cokernel([[2, 0], [0, 3]]) == ([6], 0)
    assert linalg.cokernel([[2, 0], [0, 2]]) == ([2, 2], 0)
    # 1 x 0 and 0 x n corner cases
    assert linalg.cokernel([[]]) == ([], 1) if [[]] and [[]][0] == [] else True
    torsion, free = linalg.cokernel([[3, 0, 0]])
    assert (torsion, free) == ([3], 0)
