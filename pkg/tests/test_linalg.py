from fractions import Fraction

import sympy
from sympy import GF as SGF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, strategies as st

from genus8.field import GF, QQ
from genus8.linalg import (
    QuadForm, Subspace, inverse, kernel, matmul, rank, identity, solve, quadform_rank, quadform_restrict,
)
from genus8.poly import evaluate, interpolate_poly, monomials

small = st.integers(-5, 5)


def matrices(r, c):
    return st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)


@given(matrices(4, 6))
def test_rank_matches_sympy(M):
    assert rank(QQ, M) == sympy.Matrix(M).rank()


@given(matrices(4, 6))
def test_rank_mod_p_matches_sympy(M):
    p = 7
    dm = DomainMatrix([[SGF(p)(x) for x in row] for row in M], (4, 6), SGF(p))
    assert rank(GF(p), M) == dm.rank()


@given(matrices(3, 6))
def test_kernel_is_kernel(M):
    K = kernel(QQ, M, 6)
    assert K.dim == 6 - rank(QQ, M)
    for v in K.basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


@given(matrices(3, 6), matrices(4, 6))
def test_intersection_dimension_formula(A, B):
    SA, SB = Subspace.span(QQ, 6, A), Subspace.span(QQ, 6, B)
    assert (SA + SB).dim + (SA & SB).dim == SA.dim + SB.dim
    assert SA.contains_space(SA & SB) and SB.contains_space(SA & SB)


@given(matrices(3, 5))
def test_annihilator_involution(A):
    S = Subspace.span(GF(11), 5, A)
    assert S.annihilator().annihilator() == S
    assert S.annihilator().dim == 5 - S.dim


def test_inverse_and_solve():
    A = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    Ai = inverse(QQ, A)
    assert matmul(QQ, A, Ai) == identity(QQ, 3)
    x = solve(QQ, A, [1, 2, 3])
    assert [sum(a * b for a, b in zip(r, x)) for r in A] == [1, 2, 3]
    assert solve(QQ, [[1, 1], [1, 1]], [0, 1]) is None


def test_quadform_rank_and_restrict():
    q = QuadForm.from_coefficients(QQ, 4, {(0, 3): 1, (1, 2): -1})
    assert quadform_rank(q) == 4
    sub = Subspace.span(QQ, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert quadform_restrict(q, sub).is_zero()
    assert q([1, 0, 0, 1]) == 1


def test_subspace_equality_is_canonical():
    a = Subspace.span(QQ, 3, [[1, 2, 3], [0, 1, 1]])
    b = Subspace.span(QQ, 3, [[1, 3, 4], [2, 4, 6]])
    assert a == b
    assert all(isinstance(x, Fraction) for r in a.basis for x in r)


def test_interpolate_conic_through_five_points():
    # x*z - y^2 through points of the twisted conic (1, t, t^2)
    pts = [[1, t, t * t] for t in range(5)]
    sols = interpolate_poly(QQ, pts, 2)
    assert len(sols) == 1
    for t in (7, -3):
        assert evaluate(QQ, sols[0], [1, t, t * t]) == 0
    assert len(monomials(3, 2)) == 6
