import sympy
from hypothesis import given, strategies as st

from genus8.exterior import (
    PAIRS, TwoTensor, act_subspace, act_tensor, classify_plane_section, decompose, double_line_normal_form,
    form_kernel, form_rank, is_decomposable, pfaffian, random_invertible, tangent_space, triple_wedge,
    wedge2, wedge22,
)
from genus8.field import GF, QQ
from genus8.linalg import Subspace
from genus8.rng import SplitMix64

coords = st.lists(st.integers(-4, 4), min_size=15, max_size=15)


def sympy_pfaffian_squared(c):
    M = sympy.zeros(6, 6)
    for (i, j), x in zip(PAIRS, c):
        M[i, j] = x
        M[j, i] = -x
    return M.det(), M.rank()


@given(coords)
def test_pfaffian_squared_is_determinant(c):
    w = TwoTensor.make(QQ, c)
    det, rk = sympy_pfaffian_squared(c)
    assert pfaffian(w) ** 2 == det
    assert form_rank(w) == rk


def test_triple_wedge_of_symplectic_form():
    w = TwoTensor.from_terms(QQ, [(1, 0, 1), (1, 2, 3), (1, 4, 5)])
    assert triple_wedge(w) == 6
    assert form_rank(w) == 6


def test_form_kernel_example():
    w = TwoTensor.from_terms(QQ, [(1, 0, 2), (1, 1, 3)], side="V*")
    assert form_kernel(w) == Subspace.span(QQ, 6, [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])


@given(st.lists(st.integers(-5, 5), min_size=6, max_size=6), st.lists(st.integers(-5, 5), min_size=6, max_size=6))
def test_wedge_of_vectors_is_decomposable(x, y):
    w = wedge2(QQ, x, y)
    assert is_decomposable(w)
    if not w.is_zero():
        P = decompose(w).plane
        assert P == Subspace.span(QQ, 6, [x, y])
        assert tangent_space(decompose(w)).dim == 9


def test_decompose_rejects_nondecomposable():
    import pytest
    with pytest.raises(ValueError):
        decompose(TwoTensor.from_terms(QQ, [(1, 0, 1), (1, 2, 3)]))
    with pytest.raises(ValueError):
        decompose(TwoTensor.make(QQ, [0] * 15))


def test_decompose_example():
    p = decompose(TwoTensor.from_terms(QQ, [(1, 0, 1), (1, 0, 3)]))
    assert p.plane == Subspace.span(QQ, 6, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 1, 0, 0]])


def test_wedge22_symmetric():
    a = TwoTensor.from_terms(QQ, [(1, 0, 1), (2, 2, 4)])
    b = TwoTensor.from_terms(QQ, [(3, 1, 5), (1, 2, 3)])
    assert wedge22(a, b) == wedge22(b, a)


def _plane(F, tensors):
    return Subspace.span(F, 15, [TwoTensor.from_terms(F, t).coords for t in tensors])


def test_plane_section_tags():
    F = QQ
    assert classify_plane_section(_plane(F, [[(1, 0, 1)], [(1, 0, 2)], [(1, 1, 2)]])).tag == "contained_in_G"
    dl = _plane(F, [[(1, 0, 1)], [(1, 0, 2)], [(1, 0, 3), (1, 1, 2)]])
    assert classify_plane_section(dl).tag == "double_line"
    lp = _plane(F, [[(1, 0, 1)], [(1, 0, 2)], [(1, 1, 3)]])
    assert classify_plane_section(lp).tag == "line_pair"
    sm = _plane(F, [[(1, 2, 3)], [(1, 2, 5), (-1, 3, 4)], [(1, 4, 5)]])
    assert classify_plane_section(sm).tag == "smooth_conic"


def test_double_line_normal_form_conjugates(field):
    F = field
    plane = _plane(F, [[(1, 0, 1)], [(1, 0, 2)], [(1, 0, 3), (1, 1, 2)]])
    rng = SplitMix64(12)
    for _ in range(5):
        g = random_invertible(F, rng)
        P = act_subspace(g, plane, "V")
        assert classify_plane_section(P).tag == "double_line"
        e0, e1, e2, e3, _ = double_line_normal_form(P)
        rebuilt = Subspace.span(F, 15, [wedge2(F, e0, e1).coords, wedge2(F, e0, e2).coords,
                                        (wedge2(F, e0, e3) + wedge2(F, e1, e2)).coords])
        assert rebuilt == P


def test_action_preserves_pairing(field):
    from genus8.exterior import pairing
    F = field
    rng = SplitMix64(4)
    g = random_invertible(F, rng)
    w = TwoTensor.make(F, rng.vector(F, 15), "V")
    s = TwoTensor.make(F, rng.vector(F, 15), "V*")
    assert pairing(act_tensor(g, w), act_tensor(g, s)) == pairing(w, s)


def test_json_round_trip():
    w = TwoTensor.make(GF(11), range(15), "V*")
    assert TwoTensor.from_json(GF(11), w.to_json()) == w
