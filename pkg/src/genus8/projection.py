"""Projection of G(2,6) meet l-perp from the plane of the singular conic,
for an A-line l of forms, and the identification of the image with G(2,5).

Everything is computed in the basis that puts l in normal form
<f0^f2 + f1^f3, f0^f4 + f1^f5>; results are transported back through g^-1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exterior import (
    PAIR_INDEX,
    PAIRS,
    GrassPoint,
    TwoTensor,
    act_tensor,
    classify_plane_section,
    decompose,
    pairing,
    tangent_space,
    wedge2,
    wedge_power_space,
)
from .fano import ThreefoldPair
from .field import Field
from .linalg import Subspace, inverse, matvec, rank, transpose
from .pencils import Pencil, PencilError, a_line_normal_form, classify_pencil, make_a_line

COORD_NAMES = ("X", "Y", "Z", "T", "U01", "U03", "U05", "U13", "U15", "U35")

# (sign, pairs) per coordinate in the normalized Plücker coordinates
_FUNCTIONALS = (
    ((1, (2, 4)),),
    ((1, (1, 4)),),
    ((-1, (1, 2)),),
    ((1, (2, 5)), (1, (3, 4))),
    ((1, (0, 1)),),
    ((1, (0, 3)),),
    ((1, (0, 5)),),
    ((1, (1, 3)),),
    ((1, (1, 5)),),
    ((1, (3, 5)),),
)

DELTA_INDEX = ((1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5))


class CenterError(ValueError):
    """The point lies on the center plane, where the projection is undefined."""


def _e(F, i):
    return [F(int(k == i)) for k in range(6)]


def standard_conic(F: Field, s, t) -> TwoTensor:
    """t^2 e2^e3 - st (e2^e5 - e3^e4) + s^2 e4^e5, the kernel of s w0 + t w1."""
    x = [F(0), F(0), F(t), F(0), F(-s), F(0)]
    y = [F(0), F(0), F(0), F(t), F(0), F(-s)]
    return wedge2(F, x, y)


def standard_center(F: Field) -> Subspace:
    e23 = TwoTensor.from_terms(F, [(1, 2, 3)])
    mid = TwoTensor.from_terms(F, [(1, 2, 5), (-1, 3, 4)])
    e45 = TwoTensor.from_terms(F, [(1, 4, 5)])
    return Subspace.span(F, 15, [e23.coords, mid.coords, e45.coords])


@dataclass(frozen=True)
class ProjectionContext:
    line: Pencil
    g: tuple
    g_inv: tuple
    center: Subspace
    functionals: tuple  # 10 x 15 rows acting on original coordinates

    @property
    def field(self) -> Field:
        return self.line.field

    def normalize(self, w: TwoTensor) -> TwoTensor:
        return act_tensor([list(r) for r in self.g], w)

    def denormalize(self, w: TwoTensor) -> TwoTensor:
        return act_tensor([list(r) for r in self.g_inv], w)

    def conic(self, s, t) -> GrassPoint:
        """q^l(s, t) in original coordinates."""
        return decompose(self.denormalize(standard_conic(self.field, s, t)))

    def section_form(self, s, t) -> TwoTensor:
        """The member of l whose kernel plane is q^l(s, t)."""
        F = self.field
        std = make_a_line(F)
        return act_tensor([list(r) for r in self.g_inv], std.member(s, t))

    def to_json(self):
        F = self.field
        return {
            "line": self.line.to_json(),
            "g": [[F.to_json(x) for x in r] for r in self.g],
            "center": self.center.to_json(),
            "functionals": [[F.to_json(x) for x in r] for r in self.functionals],
        }


def make_context(ell: Pencil) -> ProjectionContext:
    F = ell.field
    cls = classify_pencil(ell)
    if cls.tag != "A":
        raise PencilError(f"projection needs an A-line, got {cls.tag}")
    g = a_line_normal_form(ell)
    g_inv = inverse(F, g)
    center = Subspace.span(F, 15, [act_tensor(g_inv, TwoTensor(F, tuple(b))).coords
                                   for b in standard_center(F).basis])
    # functional rows: coordinate k of the normalized tensor is linear in the original
    images = [act_tensor(g, TwoTensor(F, tuple(F(int(i == k)) for i in range(15)))).coords for k in range(15)]
    rows = []
    for terms in _FUNCTIONALS:
        row = [F(0)] * 15
        for sign, pair in terms:
            c = PAIR_INDEX[pair]
            for k in range(15):
                row[k] = F(row[k] + sign * images[k][c])
        rows.append(tuple(row))
    ctx = ProjectionContext(ell, tuple(tuple(r) for r in g), tuple(tuple(r) for r in g_inv),
                            center, tuple(rows))
    if classify_plane_section(center).tag == "contained_in_G":
        raise AssertionError("center plane lies in G(2,6)")
    if any(matvec(F, [list(r) for r in rows], b) != [F(0)] * 10 for b in center.basis):
        raise AssertionError("projection does not vanish on the center")
    perp = Subspace.span(F, 15, [w.coords for w in ell.gens]).annihilator()
    if rank(F, [matvec(F, [list(r) for r in rows], b) for b in perp.basis]) != 10:
        raise AssertionError("projection is not onto P^9 on l-perp")
    return ctx


# ------------------------------------------------------------- G(2,5)


@dataclass(frozen=True)
class G25Point:
    field: Field
    coords: tuple

    def __getitem__(self, name):
        return self.coords[COORD_NAMES.index(name)]

    @property
    def delta(self):
        return to_plucker(self)

    def to_json(self):
        F = self.field
        return {
            "coords": [F.to_json(x) for x in self.coords],
            "delta": [F.to_json(x) for x in self.delta],
            "residuals": [F.to_json(x) for x in five_equations_residual(self)],
            "residuals_consistent": [F.to_json(x) for x in consistent_residuals(self)],
        }


def project(ctx: ProjectionContext, w: TwoTensor) -> G25Point:
    F = ctx.field
    if w.side != "V":
        raise ValueError("project expects a 2-vector")
    for gen in ctx.line.gens:
        if pairing(w, gen) != 0:
            raise ValueError("tensor is not orthogonal to the line")
    c = tuple(F(sum(a * b for a, b in zip(row, w.coords))) for row in ctx.functionals)
    if not any(c):
        raise CenterError("tensor lies on the center plane")
    return G25Point(F, c)


def _named(pt: G25Point):
    return dict(zip(COORD_NAMES, pt.coords))


def equation_residuals(pt: G25Point) -> dict:
    """Every quadric in play, printed and substitution-consistent variants."""
    F = pt.field
    c = _named(pt)
    X, Y, Z, T = c["X"], c["Y"], c["Z"], c["T"]
    U01, U03, U05, U13, U15, U35 = c["U01"], c["U03"], c["U05"], c["U13"], c["U15"], c["U35"]
    return {
        "1": F(X * U01 + Y * U13 + Z * U15),
        "2": F(X * U03 + Z * U35 + T * U13),
        "3_printed": F(X * U05 + Y * U35 - T * U15),
        "3_consistent": F(X * U05 - Y * U35 + T * U15),
        "4": F(Y * U03 + Z * U05 - T * U01),
        "5_printed": F(U01 * U35 - U01 * U15 + U05 * U13),
        "5_corrected": F(U01 * U35 - U03 * U15 + U05 * U13),
    }


def five_equations_residual(pt: G25Point):
    """Residuals of (1)-(4) as printed and the corrected (5)."""
    r = equation_residuals(pt)
    return [r["1"], r["2"], r["3_printed"], r["4"], r["5_corrected"]]


def consistent_residuals(pt: G25Point):
    """The five quadrics that the Delta substitution turns into Plücker relations."""
    r = equation_residuals(pt)
    return [r["1"], r["2"], r["3_consistent"], r["4"], r["5_corrected"]]


def to_plucker(pt: G25Point):
    """Delta_12, Delta_13, Delta_14, Delta_15, Delta_23, Delta_24, Delta_25, Delta_34, Delta_35, Delta_45."""
    F = pt.field
    c = _named(pt)
    d = {
        (1, 2): c["U01"], (1, 3): c["U03"], (2, 3): c["U05"],
        (1, 4): c["U13"], (2, 4): c["U15"], (3, 4): c["U35"],
        (4, 5): c["X"], (2, 5): F(-c["Y"]), (1, 5): c["Z"], (3, 5): F(-c["T"]),
    }
    return tuple(d[k] for k in DELTA_INDEX)


def _delta_map(delta):
    return dict(zip(DELTA_INDEX, delta))


def plucker_relations(F: Field, delta):
    """The five three-term relations of G(2,5), one per 4-subset of {1..5}."""
    d = _delta_map(delta)
    out = []
    for a, b, c, e in ((1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5), (2, 3, 4, 5)):
        out.append(F(d[(a, b)] * d[(c, e)] - d[(a, c)] * d[(b, e)] + d[(a, e)] * d[(b, c)]))
    return out


def displayed_delta_relations(F: Field, delta):
    """The five Delta identities in the printed order and signs."""
    d = _delta_map(delta)
    D = lambda i, j: d[(i, j)]  # noqa: E731
    return [
        F(D(1, 2) * D(4, 5) - D(1, 4) * D(2, 5) + D(1, 5) * D(2, 4)),
        F(D(1, 3) * D(4, 5) + D(1, 5) * D(3, 4) - D(1, 4) * D(3, 5)),
        F(D(2, 3) * D(4, 5) + D(2, 5) * D(3, 4) - D(2, 4) * D(3, 5)),
        F(D(1, 3) * D(2, 5) + D(1, 5) * D(2, 3) - D(1, 2) * D(3, 5)),
        F(D(1, 2) * D(3, 4) - D(1, 3) * D(2, 4) + D(1, 4) * D(2, 3)),
    ]


def g25_member(pt: G25Point) -> bool:
    if not any(pt.coords):
        raise ValueError("projective point needs a nonzero representative")
    return not any(plucker_relations(pt.field, to_plucker(pt)))


def delta_matrix(F: Field, delta):
    """Skew 5x5 matrix with entries Delta_ij (indices shifted to 0..4)."""
    M = [[F(0)] * 5 for _ in range(5)]
    for (i, j), x in zip(DELTA_INDEX, delta):
        M[i - 1][j - 1] = x
        M[j - 1][i - 1] = F(-x)
    return M


# ------------------------------------------------------------- chart


def chart_tensor(F: Field, a1, a3, a5, b1, b3, b5) -> TwoTensor:
    """(e2 + a0 e0 + a1 e1 + a3 e3 + a5 e5) ^ (e4 + b0 e0 + b1 e1 + b3 e3 + b5 e5)
    with b0 = d13 and a0 = -d15, so that the point lies in l-perp."""
    d13 = F(a1 * b3 - a3 * b1)
    d15 = F(a1 * b5 - a5 * b1)
    a0, b0 = F(-d15), d13
    u = [a0, F(a1), F(1), F(a3), F(0), F(a5)]
    w = [b0, F(b1), F(0), F(b3), F(1), F(b5)]
    return wedge2(F, u, w)


def chart_tuple(F: Field, a1, a3, a5, b1, b3, b5):
    """[1, a1, b1, a3 + b5, d01, d03, d05, d13, d15, d35] on the chart."""
    d13 = F(a1 * b3 - a3 * b1)
    d15 = F(a1 * b5 - a5 * b1)
    a = {0: F(-d15), 1: F(a1), 3: F(a3), 5: F(a5)}
    b = {0: d13, 1: F(b1), 3: F(b3), 5: F(b5)}
    d = lambda i, j: F(a[i] * b[j] - a[j] * b[i])  # noqa: E731
    return (F(1), F(a1), F(b1), F(a3 + b5), d(0, 1), d(0, 3), d(0, 5), d(1, 3), d(1, 5), d(3, 5))


# ---------------------------------------------------------- on X


def _check_line_in_u5(ctx: ProjectionContext, pair: ThreefoldPair):
    if not pair.u5.contains_space(ctx.line.subspace):
        raise ValueError("the line is not inside U5")


def restrict_to_x(ctx: ProjectionContext, pair: ThreefoldPair, x: GrassPoint) -> G25Point:
    _check_line_in_u5(ctx, pair)
    if not pair.x_member(x.tensor):
        raise ValueError("point is not on X")
    pt = project(ctx, x.tensor)
    if not g25_member(pt):
        raise AssertionError("image of an X point is not on G(2,5)")
    return pt


def bundle_fiber(ctx: ProjectionContext, pair: ThreefoldPair, x: GrassPoint) -> Subspace:
    """The 2-plane of the 5-space whose Plücker vector is the image of x."""
    pt = restrict_to_x(ctx, pair, x)
    F = pt.field
    S = Subspace.span(F, 5, transpose(delta_matrix(F, pt.delta)))
    if S.dim != 2:
        raise AssertionError(f"fiber of dimension {S.dim}")
    return S


# ----------------------------------------------------------- Segre


def segre_context(ctx: ProjectionContext):
    """A = g^-1 <e0, e2, e4>, B = g^-1 <e1, e3, e5>, with l in Lambda^2 A-perp + Lambda^2 B-perp."""
    F = ctx.field
    gi = [list(r) for r in ctx.g_inv]
    A = Subspace.span(F, 6, [matvec(F, gi, _e(F, i)) for i in (0, 2, 4)])
    B = Subspace.span(F, 6, [matvec(F, gi, _e(F, i)) for i in (1, 3, 5)])
    split = wedge_power_space(A.annihilator()) + wedge_power_space(B.annihilator())
    if not split.contains_space(ctx.line.subspace):
        raise AssertionError("line is not adapted to the splitting A + B")
    return A, B


def sextic_points(pair: ThreefoldPair, A: Subspace, B: Subspace):
    from .scan import scan_sextic
    return scan_sextic(pair, A, B).inventory


def singular_point_check(ctx: ProjectionContext, s, t) -> bool:
    """The member s w0 + t w1 kills the whole tangent space at q^l(s, t)."""
    x = ctx.conic(s, t)
    form = ctx.section_form(s, t)
    T = tangent_space(x)
    return all(pairing(TwoTensor(ctx.field, tuple(b)), form) == 0 for b in T.basis)
