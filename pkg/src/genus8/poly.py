"""Homogeneous polynomials as ``{exponent tuple: coefficient}`` dictionaries."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Sequence

from .field import Field
from .linalg import kernel_basis, rref


def monomial_indices(n: int, d: int):
    """Degree-d monomials in n variables as sorted index tuples, lexicographic."""
    return list(combinations_with_replacement(range(n), d))


def index_to_exponent(idx, n: int):
    e = [0] * n
    for i in idx:
        e[i] += 1
    return tuple(e)


def monomials(n: int, d: int):
    return [index_to_exponent(idx, n) for idx in monomial_indices(n, d)]


def monomial_value(F: Field, exp, x):
    v = 1
    for xi, k in zip(x, exp):
        if k:
            v *= xi ** k
    return F(v)


def evaluate(F: Field, poly: dict, x) -> object:
    return F(sum(c * monomial_value(F, e, x) for e, c in poly.items()))


def degree(poly: dict) -> int:
    return max((sum(e) for e in poly), default=-1)


def clean(F: Field, poly: dict) -> dict:
    return {e: F(c) for e, c in poly.items() if F(c) != 0}


def add(F: Field, a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = F(out.get(e, 0) + c)
    return clean(F, out)


def scale(F: Field, a: dict, s) -> dict:
    return clean(F, {e: F(c * s) for e, c in a.items()})


def mul(F: Field, a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return clean(F, out)


def derivative(F: Field, poly: dict, i: int) -> dict:
    out: dict = {}
    for e, c in poly.items():
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = out.get(tuple(e2), 0) + c * e[i]
    return clean(F, out)


def gradient(F: Field, poly: dict, n: int):
    return [derivative(F, poly, i) for i in range(n)]


def linear_form(F: Field, coeffs) -> dict:
    n = len(coeffs)
    return clean(F, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)})


def substitute_linear(F: Field, poly: dict, columns: Sequence[Sequence], m: int) -> dict:
    """Pull back along x = sum_k y_k * columns[k]; the result lives in m variables.

    ``columns[k]`` is the image of the k-th new variable in the old coordinates.
    """
    n = len(columns[0]) if columns else 0
    lin = [linear_form(F, [columns[k][i] for k in range(m)]) for i in range(n)]
    one = {tuple([0] * m): F(1)}
    powers: dict = {}

    def power(i, k):
        if (i, k) not in powers:
            powers[(i, k)] = one if k == 0 else mul(F, power(i, k - 1), lin[i])
        return powers[(i, k)]

    out: dict = {}
    for e, c in poly.items():
        term = one
        for i, k in enumerate(e):
            if k:
                term = mul(F, term, power(i, k))
        for te, tc in term.items():
            out[te] = out.get(te, 0) + c * tc
    return clean(F, out)


def proportional(F: Field, a: dict, b: dict):
    """Scalar lam with a == lam * b, or None.  Both zero gives 1."""
    if not b:
        return F(1) if not a else None
    if set(a) != set(b):
        return None
    e0 = next(iter(b))
    lam = F.div(a[e0], b[e0])
    for e in b:
        if F(a[e] - lam * b[e]) != 0:
            return None
    return lam


def interpolate_poly(F: Field, points, d: int):
    """Canonical basis of the degree-d forms vanishing at every point.

    The basis is the reduced echelon basis of the solution space in the
    monomial coefficient coordinates (monomials in :func:`monomials` order).
    """
    pts = [list(p) for p in points]
    if not pts:
        raise ValueError("need at least one point to fix the number of variables")
    n = len(pts[0])
    mons = monomials(n, d)
    rows = [[monomial_value(F, e, x) for e in mons] for x in pts]
    sol = kernel_basis(F, rows, len(mons))
    if not sol:
        return []
    R, _ = rref(F, sol, len(mons))
    return [clean(F, dict(zip(mons, row))) for row in R]


def binary_form_coefficients(F: Field, f, d: int):
    """Coefficients c_0..c_d of f(s, t) = sum c_k s^(d-k) t^k, from d + 1 values.

    ``f`` is called as ``f(s, t)``; evaluation uses s = 1 and t = 0..d, which
    needs d + 1 distinct field elements (always true for p >= 5 and d <= 4).
    """
    if F.char and d + 1 > F.char:
        raise ValueError("not enough field elements to interpolate")
    rows = []
    for t in range(d + 1):
        rows.append([F(t ** k) for k in range(d + 1)] + [F(f(F(1), F(t)))])
    R, piv = rref(F, rows, d + 2)
    return [F(row[d + 1]) for row in R]


def to_json(F: Field, poly: dict, n: int):
    """Keys are comma-joined sorted variable indices, e.g. ``"0,0,3"``."""
    items = []
    for e, c in poly.items():
        idx = []
        for i, k in enumerate(e):
            idx += [i] * k
        items.append((tuple(idx), c))
    items.sort()
    return {",".join(str(i) for i in idx): F.to_json(c) for idx, c in items}


def from_json(F: Field, d: dict, n: int) -> dict:
    out = {}
    for key, c in d.items():
        idx = [int(s) for s in key.split(",")] if key else []
        out[index_to_exponent(idx, n)] = F.from_json(c)
    return clean(F, out)
