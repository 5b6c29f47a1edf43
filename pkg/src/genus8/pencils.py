"""Pencils of skew forms of constant rank four: A-lines and B-lines."""

from __future__ import annotations

from dataclasses import dataclass

from .exterior import (
    TwoTensor,
    act_tensor,
    form_kernel,
    is_decomposable,
    plane_of,
    triple_wedge,
    wedge2,
    wedge22_coords,
)
from .field import Field
from .linalg import QuadForm, Subspace, inverse, kernel, matmul, rank, rref, transpose
from .poly import binary_form_coefficients, interpolate_poly


class PencilError(ValueError):
    pass


@dataclass(frozen=True)
class Pencil:
    """Line in P(Lambda^2) spanned by two stored generators."""

    gens: tuple

    def __post_init__(self):
        w0, w1 = self.gens
        if w0.side != w1.side:
            raise ValueError("generators on different sides")
        if rank(w0.field, [list(w0.coords), list(w1.coords)]) != 2:
            raise PencilError("pencil generators are dependent")

    @classmethod
    def of(cls, w0: TwoTensor, w1: TwoTensor) -> "Pencil":
        return cls((w0, w1))

    @classmethod
    def from_subspace(cls, S: Subspace, side: str = "V*") -> "Pencil":
        if S.dim != 2 or S.ambient != 15:
            raise PencilError(f"a pencil needs a 2-dim subspace of the 15-space, got dim {S.dim}")
        F = S.field
        return cls((TwoTensor(F, tuple(S.basis[0]), side), TwoTensor(F, tuple(S.basis[1]), side)))

    @property
    def field(self) -> Field:
        return self.gens[0].field

    @property
    def side(self) -> str:
        return self.gens[0].side

    @property
    def subspace(self) -> Subspace:
        return Subspace.span(self.field, 15, [w.coords for w in self.gens])

    def member(self, s, t) -> TwoTensor:
        w0, w1 = self.gens
        return w0.scale(s) + w1.scale(t)

    def canonical(self) -> "Pencil":
        return Pencil.from_subspace(self.subspace, self.side)

    def to_json(self):
        return {"side": self.side, "gens": [w.to_json() for w in self.gens],
                "subspace": self.subspace.to_json()}

    @classmethod
    def from_json(cls, F: Field, d) -> "Pencil":
        side = d.get("side", "V*")
        if "gens" in d:
            g = [TwoTensor.from_json(F, x) for x in d["gens"]]
            return cls((g[0], g[1]))
        return cls.from_subspace(Subspace.from_json(F, d["subspace"]), side)


def _normal_pair(F, vecs, pattern, side):
    def tensor(terms):
        out = None
        for a, b in terms:
            t = wedge2(F, vecs[a], vecs[b], side)
            out = t if out is None else out + t
        return out

    return Pencil((tensor(pattern[0]), tensor(pattern[1])))


A_PATTERN = (((0, 2), (1, 3)), ((0, 4), (1, 5)))
B_PATTERN = (((0, 2), (1, 3)), ((0, 3), (1, 4)))


def make_a_line(F: Field, basis=None, side: str = "V*") -> Pencil:
    """<b0^b2 + b1^b3, b0^b4 + b1^b5> for a basis of the side's space."""
    if basis is None:
        basis = [[F(int(i == j)) for j in range(6)] for i in range(6)]
    if len(basis) != 6 or rank(F, basis) != 6:
        raise PencilError("A-line needs 6 independent vectors")
    return _normal_pair(F, basis, A_PATTERN, side)


def make_b_line(F: Field, basis=None, side: str = "V*") -> Pencil:
    """<b0^b2 + b1^b3, b0^b3 + b1^b4> for 5 independent vectors."""
    if basis is None:
        basis = [[F(int(i == j)) for j in range(6)] for i in range(5)]
    if len(basis) != 5 or rank(F, basis) != 5:
        raise PencilError("B-line needs 5 independent vectors")
    return _normal_pair(F, basis, B_PATTERN, side)


# ------------------------------------------------------------ rank checks


def pencil_cubic(ell: Pencil):
    """Coefficients of (s, t) -> w0^w0^w0 coefficient on the pencil, degree 3."""
    return binary_form_coefficients(ell.field, lambda s, t: triple_wedge(ell.member(s, t)), 3)


def _square_quadrics(ell: Pencil):
    F = ell.field
    a, b = ell.gens[0].coords, ell.gens[1].coords
    A = wedge22_coords(F, a, a)
    B = wedge22_coords(F, a, b)
    C = wedge22_coords(F, b, b)
    return [[A[k], F(2 * B[k]), C[k]] for k in range(15)]


def meets_grassmannian(ell: Pencil) -> bool:
    """Whether some member over the algebraic closure is decomposable.

    The 15 binary quadrics (s w0 + t w1)^2 have a common root iff the
    linear span of their coefficient vectors is at most 1-dimensional, or
    2-dimensional with vanishing resultant.
    """
    F = ell.field
    R, _ = rref(F, _square_quadrics(ell), 3)
    if len(R) == 3:
        return False
    if len(R) < 2:
        return True
    (a1, b1, c1), (a2, b2, c2) = R
    res = F((a1 * c2 - a2 * c1) ** 2 - (a1 * b2 - a2 * b1) * (b1 * c2 - b2 * c1))
    return res == 0


def constant_rank4(ell: Pencil) -> bool:
    return not any(pencil_cubic(ell)) and not meets_grassmannian(ell)


# ---------------------------------------------------------- kernel quadric


@dataclass(frozen=True)
class KernelQuadric:
    span: Subspace
    form: QuadForm
    rank: int


SAMPLE_PARAMS = (0, 1, 2, 3, 4, None)


def sample_members(ell: Pencil):
    """Members at t = 0, 1, 2, 3, 4 and infinity, dropping collisions mod p."""
    F = ell.field
    seen = set()
    out = []
    for t in SAMPLE_PARAMS:
        if t is None:
            out.append(ell.gens[1])
            continue
        key = F(t)
        if key in seen:
            continue
        seen.add(key)
        out.append(ell.member(1, t))
    return out


def kernel_quadric(ell: Pencil) -> KernelQuadric:
    """Span and equation of the surface swept by the member kernels."""
    F = ell.field
    members = sample_members(ell)
    kernels = [form_kernel(w) for w in members]
    for K in kernels:
        if K.dim != 2:
            raise PencilError(f"member of rank {6 - K.dim}; pencil is not of constant rank 4")
    span = Subspace.span(F, 6, [b for K in kernels for b in K.basis])
    if span.dim != 4:
        raise PencilError(f"kernel lines span a {span.dim}-dim space, expected 4")

    def points(K):
        b0, b1 = K.basis
        return [span.coordinates(b0), span.coordinates(b1),
                span.coordinates([F(x + y) for x, y in zip(b0, b1)])]

    fit = [pt for K in kernels[:5] for pt in points(K)]
    sols = interpolate_poly(F, fit, 2)
    if len(sols) != 1:
        raise PencilError(f"{len(sols)}-dim space of quadrics through the kernel lines")
    coeffs = {}
    for e, c in sols[0].items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        coeffs[tuple(idx)] = c
    q = QuadForm.from_coefficients(F, 4, coeffs)
    for K in kernels[5:]:
        for pt in points(K):
            if q(pt) != 0:
                raise PencilError("verification kernel is off the interpolated quadric")
    return KernelQuadric(span, q, q.rank())


# ---------------------------------------------------------- classification


@dataclass(frozen=True)
class PencilClass:
    tag: str
    quadric_rank: int | None = None
    witness: Subspace | None = None

    def to_json(self):
        F = self.witness.field if self.witness is not None else None
        return {
            "class": self.tag,
            "quadric_rank": self.quadric_rank,
            "witness": [F.to_json(x) for x in self.witness.basis[0]] if self.witness is not None else None,
        }


def common_kernel(ell: Pencil) -> Subspace:
    return form_kernel(ell.gens[0]).intersect(form_kernel(ell.gens[1]))


def classify_pencil(ell: Pencil) -> PencilClass:
    if meets_grassmannian(ell):
        return PencilClass("meets_grassmannian")
    if any(pencil_cubic(ell)):
        return PencilClass("other")
    kq = kernel_quadric(ell)
    witness = common_kernel(ell)
    if kq.rank == 4:
        if witness.dim:
            raise AssertionError("smooth kernel quadric but member kernels meet")
        return PencilClass("A", 4)
    if kq.rank == 3:
        if witness.dim != 1:
            raise AssertionError("kernel cone but generator kernels are disjoint")
        return PencilClass("B", 3, witness)
    raise AssertionError(f"kernel quadric of rank {kq.rank} on a constant rank 4 pencil")


# ------------------------------------------------------- tangent plane M


def tangent_solutions(ell: Pencil) -> Subspace:
    """All sigma with w0 ^ sigma = w1 ^ sigma = 0."""
    F = ell.field
    rows = []
    for w in ell.gens:
        cols = [wedge22_coords(F, w.coords, [F(int(i == k)) for i in range(15)]) for k in range(15)]
        rows += transpose(cols)
    return kernel(F, rows, 15)


def tangent_plane_M(ell: Pencil) -> Subspace:
    """The 2-plane M with the pencil inside M ^ (6-space)."""
    F = ell.field
    K = tangent_solutions(ell)
    decomposable = [b for b in K.basis if is_decomposable(TwoTensor(F, tuple(b), ell.side))]
    if K.dim != 1 or len(decomposable) != 1:
        raise PencilError(
            f"tangent condition has a {K.dim}-dim solution space "
            f"({len(decomposable)} decomposable basis classes); expected exactly one point")
    M = plane_of(TwoTensor(F, tuple(K.basis[0]), ell.side))
    kq_span = kernel_quadric(ell).span
    if M != kq_span.annihilator():
        raise AssertionError("tangent plane disagrees with the annihilator of the kernel span")
    return M


# ------------------------------------------------------------ normal form


def _bilinear(G, x, y):
    return sum(x[i] * G[i][j] * y[j] for i in range(6) for j in range(6))


def _normal_form_basis(F: Field, G0, G1):
    K0 = kernel(F, G0, 6)
    K1 = kernel(F, G1, 6)
    if K0.dim != 2 or K1.dim != 2 or K0.intersect(K1).dim:
        raise PencilError("generator kernels are not complementary 2-planes")
    for G, K in ((G0, K1), (G1, K0)):
        for a in K.basis:
            for b in K.basis:
                if F(_bilinear(G, a, b)):
                    raise PencilError("generator does not vanish on the other kernel")
    S = K0 + K1
    units = [[F(int(i == j)) for j in range(6)] for i in range(6)]
    e0 = next(u for u in units if not S.contains(u))
    row0 = [F(sum(e0[i] * G0[i][j] for i in range(6))) for j in range(6)]
    row1 = [F(sum(e0[i] * G1[i][j] for i in range(6))) for j in range(6)]
    T = kernel(F, [row0, row1], 6)
    base = S + Subspace.span(F, 6, [e0])
    e1 = next((list(b) for b in T.basis if not base.contains(b)), None)
    if e1 is None:
        raise PencilError("no admissible second vector")

    def contraction(G, v):
        return [F(sum(v[i] * G[i][j] for i in range(6))) for j in range(6)]

    f2, f3 = contraction(G0, e0), contraction(G0, e1)
    f4, f5 = contraction(G1, e0), contraction(G1, e1)

    def dual_pair(K, fa, fb):
        k0, k1 = K.basis
        m = [[F(sum(x * y for x, y in zip(fa, k))) for k in (k0, k1)],
             [F(sum(x * y for x, y in zip(fb, k))) for k in (k0, k1)]]
        mi = inverse(F, m)
        # columns of mi give the combinations dual to (fa, fb)
        return [[F(mi[0][c] * a + mi[1][c] * b) for a, b in zip(k0, k1)] for c in range(2)]

    e2, e3 = dual_pair(K1, f2, f3)
    e4, e5 = dual_pair(K0, f4, f5)
    return [e0, e1, e2, e3, e4, e5]


def a_line_normal_form(ell: Pencil, retries: int = 4):
    """Matrix g (6x6) with g . ell equal to the standard A-line, exactly."""
    F = ell.field
    cls = classify_pencil(ell)
    if cls.tag != "A":
        raise PencilError(f"pencil is of class {cls.tag}, not A")
    std = make_a_line(F, side=ell.side)
    w0, w1 = ell.gens
    candidates = [(w0, w1)] + [(w0 + w1.scale(k), w1) for k in range(1, retries)]
    for a, b in candidates:
        try:
            P = _normal_form_basis(F, a.gram(), b.gram())
        except (PencilError, ZeroDivisionError):
            continue
        C = transpose(P)  # new basis vectors as columns
        ok = all(
            matmul(F, matmul(F, P, w.gram()), C) == s.gram()
            for w, s in ((a, std.gens[0]), (b, std.gens[1]))
        )
        if not ok:
            continue
        g = P if ell.side == "V" else inverse(F, C)
        image = Subspace.span(F, 15, [act_tensor(g, w).coords for w in ell.gens])
        if image != std.subspace:
            raise AssertionError("normal form round trip failed")
        return g
    raise PencilError("normal form failed for every generator choice")
