"""Lines of X <-> B-lines of Y, conics of X <-> lines of Y, and the
splitting of the Palatini quartic over the 3-space of a line of Y.

Every map records its intermediate assertions in an optional ``checks``
list of ``{"check": name, "passed": bool}`` entries and raises
:class:`CorrespondenceError` on the first failure.
"""

from __future__ import annotations

import numpy as np

from . import poly
from .exterior import (
    CONIC_TAGS,
    ConicData,
    GrassLine,
    TwoTensor,
    is_decomposable,
    normalize_projective,
    plane_of,
    tensor_space,
    vector_wedge_space,
    wedge22_coords,
    wedge2_coords,
    wedge_power_space,
)
from .fano import ThreefoldPair
from .linalg import QuadForm, Subspace, rank
from .pencils import Pencil, classify_pencil, common_kernel, kernel_quadric, pencil_cubic, tangent_plane_M
from .projective import iter_points


class CorrespondenceError(ValueError):
    pass


def _check(checks, name, ok, detail=None):
    if checks is not None:
        entry = {"check": name, "passed": bool(ok)}
        if detail is not None:
            entry["detail"] = detail
        checks.append(entry)
    if not ok:
        raise CorrespondenceError(f"{name} failed" + (f": {detail}" if detail is not None else ""))


def _pencil_in_u5(pair: ThreefoldPair, ell: Pencil, checks):
    _check(checks, "pencil side is V*", ell.side == "V*")
    _check(checks, "pencil inside U5", pair.u5.contains_space(ell.subspace))


def _cubic_vanishes(ell: Pencil):
    return not any(pencil_cubic(ell))


# --------------------------------------------------------------- lines


def x_line_to_b_line(pair: ThreefoldPair, line: GrassLine, checks=None) -> Pencil:
    """The B-line Lambda^2(v-perp) meet U5 for the line of X with vertex v."""
    _check(checks, "line pencil inside W10", pair.w10.contains_space(line.pencil))
    H = line.vertex.annihilator()
    S = wedge_power_space(H) & pair.u5
    _check(checks, "Lambda^2 H meets U5 in a line", S.dim == 2, S.dim)
    ell = Pencil.from_subspace(S, "V*")
    _check(checks, "cubic vanishes on the pencil", _cubic_vanishes(ell))
    cls = classify_pencil(ell)
    _check(checks, "class is B", cls.tag == "B", cls.tag)
    _check(checks, "kernel witness is the vertex", cls.witness == line.vertex)
    return ell


def b_line_to_x_line(pair: ThreefoldPair, ell: Pencil, checks=None) -> GrassLine:
    """The line of X inside v ^ V, v the common kernel of the B-line."""
    _pencil_in_u5(pair, ell, checks)
    cls = classify_pencil(ell)
    _check(checks, "class is B", cls.tag == "B", cls.tag)
    F = pair.field
    v = list(cls.witness.basis[0])
    S = vector_wedge_space(F, v) & pair.w10
    _check(checks, "v ^ V meets W10 in a line", S.dim == 2, S.dim)
    env = Subspace.span(F, 6, [b for t in S.basis for b in plane_of(TwoTensor(F, tuple(t))).basis])
    _check(checks, "envelope is 3-dim", env.dim == 3, env.dim)
    line = GrassLine(cls.witness, env)
    _check(checks, "members decomposable", all(is_decomposable(TwoTensor(F, tuple(t))) for t in S.basis))
    _check(checks, "pencil recovered", line.pencil == S)
    return line


# -------------------------------------------------------------- conics


def _conic_form(F, plane: Subspace, L: Subspace) -> QuadForm:
    """Restriction to the plane of w -> w ^ w / (l0 ^ l1 ^ l2 ^ l3)."""
    l0, l1, l2, l3 = [list(b) for b in L.basis]
    vol = wedge22_coords(F, wedge2_coords(F, l0, l1), wedge2_coords(F, l2, l3))
    k = next(i for i, x in enumerate(vol) if x)
    B = plane.basis
    G = [[F.div(wedge22_coords(F, a, b)[k], vol[k]) for b in B] for a in B]
    return QuadForm.from_gram(F, G)


def conic_points(conic: ConicData):
    """Projective points of the conic over the prime field (coordinates in the 15-space)."""
    F = conic.plane.field
    p = F.char
    if not p:
        raise ValueError("point enumeration needs a prime field")
    out = []
    for c in iter_points(p, 3):
        if conic.form([F(x) for x in c]) == 0:
            out.append(conic.plane.combine([F(x) for x in c]))
    return out


def _envelope_from_points(conic: ConicData):
    F = conic.plane.field
    if not F.char:
        return None
    pts = conic_points(conic)
    indep = []
    for pt in pts:
        if rank(F, indep + [pt]) > len(indep):
            indep.append(pt)
        if len(indep) == 3:
            break
    if len(indep) < 3:
        return None
    return Subspace.span(F, 6, [b for t in indep for b in plane_of(TwoTensor(F, tuple(t))).basis])


def y_line_to_x_conic(pair: ThreefoldPair, ell: Pencil, checks=None) -> ConicData:
    """The conic G(2, M-perp) meet P(W10) for a line of Y."""
    _pencil_in_u5(pair, ell, checks)
    cls = classify_pencil(ell)
    _check(checks, "class is A or B", cls.tag in ("A", "B"), cls.tag)
    M = tangent_plane_M(ell)
    L = M.annihilator()
    _check(checks, "envelope is 4-dim", L.dim == 4, L.dim)
    plane = wedge_power_space(L) & pair.w10
    _check(checks, "Lambda^2 L meets W10 in a plane", plane.dim == 3, plane.dim)
    F = pair.field
    q = _conic_form(F, plane, L)
    r = q.rank()
    _check(checks, "conic form nonzero", r > 0, r)
    return ConicData(plane, q, CONIC_TAGS[r], L)


def x_conic_to_y_line(pair: ThreefoldPair, conic: ConicData, checks=None) -> Pencil:
    """The line (L-perp ^ V*) meet U5 of Y for a conic of X."""
    F = pair.field
    _check(checks, "plane inside W10", pair.w10.contains_space(conic.plane))
    L = _envelope_from_points(conic)
    if L is None:
        L = conic.envelope
    elif conic.envelope is not None:
        _check(checks, "envelope agrees with the point planes", L == conic.envelope)
    if L is None:
        raise CorrespondenceError("no envelope available for the conic")
    _check(checks, "envelope is 4-dim", L.dim == 4, L.dim)
    _check(checks, "plane inside Lambda^2 L", wedge_power_space(L).contains_space(conic.plane))
    S = wedge_power_space(L).annihilator() & pair.u5
    _check(checks, "L-perp ^ V* meets U5 in a line", S.dim == 2, S.dim)
    ell = Pencil.from_subspace(S, "V*")
    _check(checks, "cubic vanishes on the pencil", _cubic_vanishes(ell))
    cls = classify_pencil(ell)
    _check(checks, "class is A or B", cls.tag in ("A", "B"), cls.tag)
    return ell


# ---------------------------------------------------- quartic splitting


def _quadform_poly(q: QuadForm) -> dict:
    n = q.dim
    return {poly.index_to_exponent(ij, n): c for ij, c in q.coefficients().items()}


def quartic_splitting_check(pair: ThreefoldPair, ell: Pencil, quartic: dict, w_points=None) -> dict:
    """Check W restricted to the 3-space of the line is q^l * Q_l up to scale."""
    F = pair.field
    p = F.char
    if not p:
        raise ValueError("the sweep needs a prime field")
    checks = []
    kq = kernel_quadric(ell)
    span4 = kq.span
    conic = y_line_to_x_conic(pair, ell, checks)
    _check(checks, "kernel span equals the conic envelope", span4 == conic.envelope)
    pts = conic_points(conic)
    _check(checks, "enough conic points", 2 * len(pts) >= p, len(pts))
    sweep = []
    for t in pts:
        P = plane_of(TwoTensor(F, tuple(t)))
        _check(checks, "line of the conic point inside the 3-space", span4.contains_space(P))
        b0, b1 = P.basis
        for v in (b0, b1, [F(x + y) for x, y in zip(b0, b1)]):
            sweep.append(span4.coordinates(v))
    sols = poly.interpolate_poly(F, sweep, 2)
    _check(checks, "one quadric through the sweep", len(sols) == 1, len(sols))
    Q_sweep = sols[0]
    q_kernel = _quadform_poly(kq.form)
    restricted = poly.substitute_linear(F, quartic, [list(b) for b in span4.basis], 4)
    product = poly.mul(F, q_kernel, Q_sweep)
    lam = poly.proportional(F, restricted, product)
    _check(checks, "restricted quartic is a multiple of the product", lam is not None and lam != 0,
           None if lam is None else F.to_json(lam))
    distinct = poly.proportional(F, Q_sweep, q_kernel) is None
    _check(checks, "sweep quadric differs from the kernel quadric", distinct)
    Q_form = QuadForm.from_coefficients(F, 4, {tuple(i for i, k in enumerate(e) for _ in range(k)): c
                                                for e, c in Q_sweep.items()})
    report = {
        "class": classify_pencil(ell).tag,
        "conic_tag": conic.tag,
        "conic_points": len(pts),
        "lambda": F.to_json(lam),
        "kernel_quadric_rank": kq.rank,
        "sweep_quadric_rank": Q_form.rank(),
    }
    if conic.tag == "line_pair":
        _check(checks, "line-pair conic gives a rank <= 2 sweep quadric", Q_form.rank() <= 2, Q_form.rank())
    if w_points is not None:
        ann = np.array([[int(x) for x in r] for r in span4.annihilator().basis], dtype=np.int64)
        wp = np.array(w_points, dtype=np.int64).reshape(-1, 6)
        inside = wp[~((wp @ ann.T) % p).any(axis=1)]
        zeros = set()
        for c in iter_points(p, 4):
            cF = [F(x) for x in c]
            if poly.evaluate(F, product, cF) == 0:
                zeros.add(tuple(int(x) for x in normalize_projective(F, span4.combine(cF))))
        w_in = {tuple(int(x) for x in normalize_projective(F, list(r))) for r in inside}
        _check(checks, "W points of the 3-space are exactly the zeros of the product", w_in == zeros,
               {"w_points": len(w_in), "product_zeros": len(zeros)})
        report["w_points_in_span"] = len(w_in)
    report["checks"] = checks
    return report
