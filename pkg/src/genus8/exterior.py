"""Second exterior power of a 6-space and the Plucker geometry of G(2,6).

A 2-tensor is stored by its 15 coordinates on e_i^e_j, i < j, in the order
of :data:`PAIRS`.  The same coordinates describe skew forms when the tensor
lives on the dual side; the pairing between the two sides is the coordinate
dot product.

Four-tensors are stored by their pairing with the complementary 2-tensors:
coordinate (m, n) of a 4-tensor phi is the coefficient of e_0^...^e_5 in
phi ^ e_m ^ e_n.  With this convention ``triple_wedge(w)`` is the dot product
of ``wedge22(w, w)`` with ``w`` and equals 6 * Pf(w).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .field import Field
from .linalg import QuadForm, Subspace, identity, inverse, kernel, matmul, rank, rref, solve, transpose

PAIRS = [(i, j) for i in range(6) for j in range(i + 1, 6)]
PAIR_INDEX = {p: k for k, p in enumerate(PAIRS)}
SIDES = ("V", "V*")


def _perm_sign(seq) -> int:
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def _wedge_table():
    table = []
    for m, n in PAIRS:
        rest = [k for k in range(6) if k not in (m, n)]
        terms = []
        for a, b, c, d in permutations(rest):
            if a < b and c < d:
                terms.append((PAIR_INDEX[(a, b)], PAIR_INDEX[(c, d)], _perm_sign((a, b, c, d, m, n))))
        table.append(terms)
    return table


WEDGE_TABLE = _wedge_table()


@dataclass(frozen=True)
class TwoTensor:
    field: Field
    coords: tuple
    side: str = "V"

    def __post_init__(self):
        if len(self.coords) != 15:
            raise ValueError("a 2-tensor has 15 coordinates")
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")

    @classmethod
    def make(cls, F: Field, coords, side: str = "V") -> "TwoTensor":
        return cls(F, tuple(F(c) for c in coords), side)

    @classmethod
    def from_terms(cls, F: Field, terms, side: str = "V") -> "TwoTensor":
        """From ``[(coef, i, j), ...]`` meaning sum of coef * e_i ^ e_j."""
        c = [0] * 15
        for coef, i, j in terms:
            if i == j:
                continue
            if i > j:
                i, j, coef = j, i, -coef
            c[PAIR_INDEX[(i, j)]] += coef
        return cls.make(F, c, side)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "TwoTensor") -> "TwoTensor":
        _same_side(self, other)
        F = self.field
        return TwoTensor(F, tuple(F(a + b) for a, b in zip(self.coords, other.coords)), self.side)

    def __sub__(self, other: "TwoTensor") -> "TwoTensor":
        return self + other.scale(-1)

    def scale(self, s) -> "TwoTensor":
        F = self.field
        return TwoTensor(F, tuple(F(s * a) for a in self.coords), self.side)

    def gram(self):
        """Skew 6x6 matrix G with G[i][j] = coefficient of e_i ^ e_j."""
        F = self.field
        G = [[F(0)] * 6 for _ in range(6)]
        for (i, j), c in zip(PAIRS, self.coords):
            G[i][j] = c
            G[j][i] = F(-c)
        return G

    def to_json(self):
        return {"side": self.side, "coords": [self.field.to_json(c) for c in self.coords]}

    @classmethod
    def from_json(cls, F: Field, d) -> "TwoTensor":
        coords = d["coords"]
        if len(coords) != 15:
            raise ValueError("TwoTensor JSON needs 15 coords")
        return cls(F, tuple(F.from_json(c) for c in coords), d.get("side", "V"))


def _same_side(a: TwoTensor, b: TwoTensor):
    if a.side != b.side:
        raise ValueError(f"side mismatch: {a.side} vs {b.side}")


def dual_side(side: str) -> str:
    return "V*" if side == "V" else "V"


def wedge2(F: Field, x, y, side: str = "V") -> TwoTensor:
    return TwoTensor(F, tuple(F(x[i] * y[j] - x[j] * y[i]) for i, j in PAIRS), side)


def wedge2_coords(F: Field, x, y):
    return [F(x[i] * y[j] - x[j] * y[i]) for i, j in PAIRS]


def wedge22_coords(F: Field, a, b):
    """4-tensor a ^ b from raw coordinate sequences."""
    return [F(sum(s * a[P] * b[Q] for P, Q, s in terms)) for terms in WEDGE_TABLE]


def wedge22(w: TwoTensor, s: TwoTensor):
    """The 4-tensor w ^ s, as 15 coordinates (see module docstring)."""
    _same_side(w, s)
    return wedge22_coords(w.field, w.coords, s.coords)


def top_pairing(F: Field, four, two) -> object:
    """Coefficient of the volume form in four ^ two."""
    return F(sum(a * b for a, b in zip(four, two)))


def triple_wedge(w: TwoTensor):
    """Coefficient of e_0^...^e_5 in w ^ w ^ w; equals 6 * Pf(w)."""
    F = w.field
    return top_pairing(F, wedge22(w, w), w.coords)


def triple_wedge_coords(F: Field, c):
    return top_pairing(F, wedge22_coords(F, c, c), c)


def trilinear(F: Field, a, b, c):
    """Coefficient of the volume form in a ^ b ^ c (symmetric in a, b, c)."""
    return top_pairing(F, wedge22_coords(F, a, b), c)


def pfaffian(w: TwoTensor):
    return w.field.div(triple_wedge(w), 6)


def pairing(w: TwoTensor, s: TwoTensor):
    """Natural pairing of a 2-vector with a 2-form."""
    if w.side == s.side:
        raise ValueError("pairing needs one tensor from each side")
    F = w.field
    return F(sum(a * b for a, b in zip(w.coords, s.coords)))


def is_decomposable(w: TwoTensor) -> bool:
    return not any(wedge22(w, w))


def form_rank(w: TwoTensor) -> int:
    return rank(w.field, w.gram())


def form_kernel(w: TwoTensor) -> Subspace:
    """Kernel of w viewed as a skew form on the opposite side's space."""
    return kernel(w.field, w.gram(), 6)


def contract(F: Field, v, w: TwoTensor):
    """Interior product i_v w: the linear form y -> w(v, y)."""
    G = w.gram()
    return [F(sum(v[i] * G[i][j] for i in range(6))) for j in range(6)]


def wedge_power_space(S: Subspace) -> Subspace:
    """Lambda^2 S inside the 15-dimensional space."""
    F = S.field
    B = S.basis
    vecs = [wedge2_coords(F, B[a], B[b]) for a in range(len(B)) for b in range(a + 1, len(B))]
    return Subspace.span(F, 15, vecs)


def vector_wedge_space(F: Field, v) -> Subspace:
    """v ^ V: all 2-tensors divisible by v."""
    return Subspace.span(F, 15, [wedge2_coords(F, v, e) for e in identity(F, 6)])


def subspace_wedge_space(S: Subspace) -> Subspace:
    """S ^ V (the 2-tensors of the form sum s_k ^ v_k with s_k in S)."""
    F = S.field
    return Subspace.span(F, 15, [wedge2_coords(F, s, e) for s in S.basis for e in identity(F, 6)])


def unit(F: Field, i: int, n: int = 6):
    return [F(1) if k == i else F(0) for k in range(n)]


def span(F: Field, vectors, n: int = 6) -> Subspace:
    return Subspace.span(F, n, vectors)


def tensor_space(F: Field, tensors) -> Subspace:
    return Subspace.span(F, 15, [t.coords if isinstance(t, TwoTensor) else t for t in tensors])


# ----------------------------------------------------------------- G(2, 6)


@dataclass(frozen=True)
class GrassPoint:
    tensor: TwoTensor
    plane: Subspace

    def to_json(self):
        return {"tensor": self.tensor.to_json(), "plane": self.plane.to_json()}


def plane_of(w: TwoTensor) -> Subspace:
    """Column space of the Gram matrix; the 2-plane of a decomposable tensor."""
    return Subspace.span(w.field, 6, transpose(w.gram()))


def decompose(w: TwoTensor) -> GrassPoint:
    if w.is_zero():
        raise ValueError("cannot decompose the zero tensor")
    if not is_decomposable(w):
        raise ValueError("tensor is not decomposable (w ^ w != 0)")
    P = plane_of(w)
    assert P.dim == 2
    return GrassPoint(w, P)


def grass_point(F: Field, x, y, side: str = "V") -> GrassPoint:
    return decompose(wedge2(F, x, y, side))


def normalize_projective(F: Field, v):
    """Scale so that the first nonzero coordinate is 1."""
    v = [F(x) for x in v]
    for x in v:
        if x:
            inv = F.inv(x)
            return tuple(F(y * inv) for y in v)
    raise ValueError("zero vector has no projective class")


def canonical_tensor(w: TwoTensor) -> TwoTensor:
    return TwoTensor(w.field, normalize_projective(w.field, w.coords), w.side)


@dataclass(frozen=True)
class GrassLine:
    """Line P(l1 ^ L) of G(2,6): vertex l1 inside the 3-dim envelope L."""

    vertex: Subspace
    envelope: Subspace

    def __post_init__(self):
        if self.vertex.dim != 1 or self.envelope.dim != 3:
            raise ValueError("a line of G(2,6) needs a 1-dim vertex and a 3-dim envelope")
        if not self.envelope.contains_space(self.vertex):
            raise ValueError("vertex must lie in the envelope")

    @property
    def pencil(self) -> Subspace:
        F = self.vertex.field
        v = self.vertex.basis[0]
        return Subspace.span(F, 15, [wedge2_coords(F, v, u) for u in self.envelope.basis])

    def to_json(self):
        return {"vertex": self.vertex.to_json(), "envelope": self.envelope.to_json(),
                "pencil": self.pencil.to_json()}


def tangent_space(p: GrassPoint) -> Subspace:
    """Affine tangent space x ^ V + y ^ V at the plane <x, y>."""
    return subspace_wedge_space(p.plane)


# ------------------------------------------------------- plane sections


PLANE_TAGS = ("contained_in_G", "smooth_conic", "line_pair", "double_line", "finite_scheme")
CONIC_TAGS = {3: "smooth", 2: "line_pair", 1: "double_line", 0: "degenerate"}


@dataclass(frozen=True)
class ConicData:
    """A conic of G(2,6): its plane, the ternary form cutting it, and its type.

    ``envelope`` is the 4-dimensional L with the conic inside G(2, L) when
    known; ``form`` is written in the coordinates of ``plane.basis``.
    """

    plane: Subspace
    form: QuadForm
    tag: str
    envelope: Subspace | None = None

    def to_json(self):
        F = self.plane.field
        return {
            "envelope": self.envelope.to_json() if self.envelope is not None else None,
            "plane": self.plane.to_json(),
            "form": [[F.to_json(x) for x in row] for row in self.form.gram],
            "tag": self.tag,
        }

    @classmethod
    def from_json(cls, F: Field, d) -> "ConicData":
        env = d.get("envelope")
        return cls(
            Subspace.from_json(F, d["plane"]),
            QuadForm.from_gram(F, [[F.from_json(x) for x in row] for row in d["form"]]),
            d["tag"],
            Subspace.from_json(F, env) if env is not None else None,
        )


@dataclass(frozen=True)
class PlaneSectionClass:
    tag: str
    conic: ConicData | None = None


def section_quadrics(plane: Subspace):
    """The 15 ternary quadrics w ^ w = 0 restricted to the plane.

    Returned as a 15 x 6 matrix over monomials y0^2, y0y1, y0y2, y1^2, y1y2, y2^2.
    """
    F = plane.field
    B = plane.basis
    k = len(B)
    mons = [(a, b) for a in range(k) for b in range(a, k)]
    cols = []
    for a, b in mons:
        v = wedge22_coords(F, B[a], B[b])
        cols.append(v if a == b else [F(2 * x) for x in v])
    return transpose(cols), mons


def classify_plane_section(plane: Subspace) -> PlaneSectionClass:
    if plane.ambient != 15 or plane.dim != 3:
        raise ValueError("need a 3-dimensional subspace of the 15-space")
    F = plane.field
    M, mons = section_quadrics(plane)
    R, _ = rref(F, M, len(mons))
    if not R:
        return PlaneSectionClass("contained_in_G")
    if len(R) > 1:
        return PlaneSectionClass("finite_scheme")
    q = QuadForm.from_coefficients(F, 3, {m: c for m, c in zip(mons, R[0]) if c})
    r = q.rank()
    tag = {3: "smooth_conic", 2: "line_pair", 1: "double_line"}[r]
    return PlaneSectionClass(tag, ConicData(plane, q, CONIC_TAGS[r]))


def double_line_normal_form(plane: Subspace):
    """Vectors (e0, e1, e2, e3, u) with plane = <e0^e1, e0^e2, e0^e3 + e1^e2>.

    ``e3`` is reduced modulo <e0, e1, e2>; ``u`` repeats it as the component
    outside that span.
    """
    F = plane.field
    cls = classify_plane_section(plane)
    if cls.tag != "double_line":
        raise ValueError(f"plane section is {cls.tag}, not a double line")
    q = cls.conic.form
    # the supporting line: kernel of the rank-one ternary form
    line_coords = kernel(F, [list(r) for r in q.gram], 3)
    tau = [plane.combine(c) for c in line_coords.basis]
    P1 = plane_of(TwoTensor.make(F, tau[0]))
    P2 = plane_of(TwoTensor.make(F, tau[1]))
    e0 = list(P1.intersect(P2).basis[0])
    E0 = Subspace.span(F, 6, [e0])

    def cofactor(t, P):
        # the x in P with t = e0 ^ x
        x = next(list(b) for b in P.basis if not E0.contains(b))
        w = wedge2_coords(F, e0, x)
        k = next(i for i in range(15) if w[i])
        c = F.div(t[k], w[k])
        return [F(c * xi) for xi in x]

    e1 = cofactor(tau[0], P1)
    e2 = cofactor(tau[1], P2)
    t12 = wedge2_coords(F, e1, e2)
    # a point of the plane off the line, written as e0 ^ w + c e1 ^ e2
    omega = next(list(b) for b in plane.basis if not Subspace.span(F, 15, tau).contains(b))
    A = transpose([wedge2_coords(F, e0, unit(F, j)) for j in range(6)] + [t12])
    sol = solve(F, A, omega)
    if sol is None or sol[6] == 0:
        raise ArithmeticError("double line plane does not have the expected normal form")
    c = sol[6]
    w = [F.div(x, c) for x in sol[:6]]
    base = Subspace.span(F, 6, [e0, e1, e2])
    e3 = base.reduce(w)
    if base.contains(e3):
        raise ArithmeticError("plane lies in G(2,6)")
    rebuilt = Subspace.span(F, 15, [wedge2_coords(F, e0, e1), wedge2_coords(F, e0, e2),
                                   [F(a + b) for a, b in zip(wedge2_coords(F, e0, e3), t12)]])
    if rebuilt != plane:
        raise ArithmeticError("double line reconstruction mismatch")
    return [tuple(e0), tuple(e1), tuple(e2), tuple(e3), tuple(e3)]


# ----------------------------------------------------------- GL_6 action


def act_tensor(g, w: TwoTensor) -> TwoTensor:
    """g . w: g G g^T for 2-vectors, g^-T G g^-1 for 2-forms."""
    F = w.field
    m = g if w.side == "V" else transpose(inverse(F, g))
    G = matmul(F, matmul(F, m, w.gram()), transpose(m))
    return TwoTensor(F, tuple(F(G[i][j]) for i, j in PAIRS), w.side)


def act_vector(F: Field, g, v, side: str = "V"):
    m = g if side == "V" else transpose(inverse(F, g))
    return [F(sum(a * x for a, x in zip(row, v))) for row in m]


def act_subspace(g, S: Subspace, side: str = "V") -> Subspace:
    F = S.field
    if S.ambient == 6:
        return Subspace.span(F, 6, [act_vector(F, g, b, side) for b in S.basis])
    return Subspace.span(F, 15, [act_tensor(g, TwoTensor(F, tuple(b), side)).coords for b in S.basis])


def random_invertible(F: Field, rng, n: int = 6, bound: int = 3):
    while True:
        g = rng.matrix(F, n, n, bound)
        if rank(F, g) == n:
            return g
