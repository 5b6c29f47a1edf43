import sympy
import pytest

from genus8.exterior import TwoTensor, act_tensor, classify_plane_section, decompose, random_invertible
from genus8.field import GF, QQ
from genus8.linalg import Subspace
from genus8.pencils import Pencil, PencilError, make_a_line, make_b_line
from genus8.projection import (
    CenterError, G25Point, bundle_fiber, chart_tensor, chart_tuple, consistent_residuals, displayed_delta_relations,
    equation_residuals, five_equations_residual, g25_member, make_context, plucker_relations, project,
    restrict_to_x, segre_context, singular_point_check, standard_center, standard_conic, to_plucker,
)
from genus8.rng import SplitMix64


def test_standard_context(field):
    F = field
    ctx = make_context(make_a_line(F))
    assert ctx.center == standard_center(F)
    assert classify_plane_section(ctx.center).tag == "smooth_conic"
    assert ctx.conic(1, 2).tensor == standard_conic(F, 1, 2)
    for s, t in [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (3, -1)]:
        assert singular_point_check(ctx, s, t)


def test_b_line_rejected():
    with pytest.raises(PencilError):
        make_context(make_b_line(QQ))


def test_chart_matches_tuple(field):
    F = field
    ctx = make_context(make_a_line(F))
    rng = SplitMix64(31)
    for _ in range(50):
        a = [rng.element(F) for _ in range(6)]
        pt = project(ctx, chart_tensor(F, *a))
        assert pt.coords == chart_tuple(F, *a)
        assert not any(consistent_residuals(pt))
        assert g25_member(pt)


def test_center_and_orthogonality_errors():
    F = QQ
    ctx = make_context(make_a_line(F))
    with pytest.raises(CenterError):
        project(ctx, TwoTensor.from_terms(F, [(1, 2, 3)]))
    with pytest.raises(ValueError):
        project(ctx, TwoTensor.from_terms(F, [(1, 0, 2)]))


def test_projection_is_linear():
    F = GF(11)
    ctx = make_context(make_a_line(F))
    a = chart_tensor(F, 1, 2, 3, 4, 5, 6)
    b = chart_tensor(F, 2, 0, 1, 7, 3, 3)
    s = project(ctx, a + b).coords
    assert s == tuple(F(x + y) for x, y in zip(project(ctx, a).coords, project(ctx, b).coords))


def test_printed_equations_fail_on_chart_images():
    F = QQ
    ctx = make_context(make_a_line(F))
    rng = SplitMix64(2)
    pts = [project(ctx, chart_tensor(F, *[rng.element(F) for _ in range(6)])) for _ in range(50)]
    assert any(equation_residuals(p)["5_printed"] for p in pts)
    assert any(equation_residuals(p)["3_printed"] for p in pts)
    assert all(equation_residuals(p)["5_corrected"] == 0 for p in pts)


def test_symbolic_chart_identities():
    a1, a3, a5, b1, b3, b5 = sympy.symbols("a1 a3 a5 b1 b3 b5")
    d13 = a1 * b3 - a3 * b1
    d15 = a1 * b5 - a5 * b1
    a = {0: -d15, 1: a1, 3: a3, 5: a5}
    b = {0: d13, 1: b1, 3: b3, 5: b5}
    d = lambda i, j: a[i] * b[j] - a[j] * b[i]  # noqa: E731
    X, Y, Z, T = 1, a1, b1, a3 + b5
    U01, U03, U05, U13, U15, U35 = d(0, 1), d(0, 3), d(0, 5), d(1, 3), d(1, 5), d(3, 5)
    zero = [
        X * U01 + Y * U13 + Z * U15,
        X * U03 + Z * U35 + T * U13,
        X * U05 - Y * U35 + T * U15,
        Y * U03 + Z * U05 - T * U01,
        U01 * U35 - U03 * U15 + U05 * U13,
    ]
    assert all(sympy.expand(e) == 0 for e in zero)
    printed3 = sympy.expand(X * U05 + Y * U35 - T * U15)
    assert printed3 != 0
    assert sympy.expand(U01 * U35 - U01 * U15 + U05 * U13) != 0


def test_plucker_of_decomposable_5_vectors():
    F = QQ
    rng = SplitMix64(6)
    for _ in range(20):
        x, y = rng.vector(F, 5), rng.vector(F, 5)
        delta = {(i, j): F(x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]) for i in range(1, 6) for j in range(i + 1, 6)}
        from genus8.projection import DELTA_INDEX
        assert not any(plucker_relations(F, [delta[k] for k in DELTA_INDEX]))


def test_displayed_fourth_identity_is_not_plucker():
    F = QQ
    x, y = [1, 2, 0, 1, 3], [0, 1, 1, 2, 1]
    from genus8.projection import DELTA_INDEX
    delta = [F(x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]) for i, j in DELTA_INDEX]
    shown = displayed_delta_relations(F, delta)
    assert shown[3] != 0 and all(r == 0 for k, r in enumerate(shown) if k != 3)


def test_random_point_not_member():
    F = QQ
    assert not g25_member(G25Point(F, tuple(F(x) for x in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10))))


def test_conjugated_context(field):
    F = field
    rng = SplitMix64(44)
    g = random_invertible(F, rng)
    ell = Pencil.of(*[act_tensor(g, w) for w in make_a_line(F).gens])
    ctx = make_context(ell)
    params = [(0, 1), (1, 0), (2, 5)]
    for s, t in params:
        assert singular_point_check(ctx, s, t)
    # normal form fixes the pencil only up to reparametrization, so compare spans
    mine = Subspace.span(F, 15, [ctx.conic(s, t).tensor.coords for s, t in params])
    moved = Subspace.span(F, 15, [act_tensor(g, standard_conic(F, s, t)).coords for s, t in params])
    assert mine.dim == 3 and mine == moved
    A, B = segre_context(ctx)
    assert (A + B).dim == 6


def test_restrict_to_x_and_fibers(seed1):
    pair = seed1["pair"]
    F = pair.field
    line = next(l for l in seed1["y_lines"] if l.tag == "A")
    ctx = make_context(line.pencil)
    images = set()
    pts = seed1["scan"].wx.x.inventory
    for t in pts[::7]:
        x = decompose(TwoTensor(F, tuple(F(c) for c in t)))
        pt = restrict_to_x(ctx, pair, x)
        assert g25_member(pt)
        assert bundle_fiber(ctx, pair, x).dim == 2
        images.add(tuple(int(c) for c in pt.coords))
    assert len(images) == len(pts[::7])
