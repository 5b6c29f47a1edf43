"""Dense exact linear algebra over Q and F_p.

Matrices are plain lists of rows.  Over Q elimination is fraction free
(Bareiss style Gauss-Jordan on integer rows) so intermediate entries stay
integral minors of the input; over F_p it is ordinary modular elimination.
Subspaces carry their reduced row echelon basis, which makes equality of
subspaces literal equality of the stored bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .field import Field


# ---------------------------------------------------------------- elimination


def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def _rref_integer(M, ncols):
    """Fraction-free Gauss-Jordan; returns (rows, pivots) with all pivots equal."""
    nrows = len(M)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
        rowr = M[r]
        p = rowr[c]
        for i in range(nrows):
            if i == r:
                continue
            row = M[i]
            f = row[c]
            if f == 0:
                if p != prev:
                    M[i] = [(p * x) // prev for x in row]
                continue
            M[i] = [(p * x - f * y) // prev for x, y in zip(row, rowr)]
        prev = p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def _rref_mod(M, ncols, p):
    nrows = len(M)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        rowr = [(x * inv) % p for x in M[r]]
        M[r] = rowr
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f:
                    M[i] = [(x - f * y) % p for x, y in zip(M[i], rowr)]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rref(F: Field, rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form: ``(nonzero rows, pivot columns)``."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [], []
    if F.char:
        p = F.char
        R, piv = _rref_mod([[int(x) % p for x in r] for r in rows], ncols, p)
        return R, piv
    R, piv = _rref_integer(_integer_rows(rows), ncols)
    out = []
    for row, c in zip(R, piv):
        d = row[c]
        out.append([Fraction(x, d) for x in row])
    return out, piv


def rank(F: Field, M: Sequence[Sequence]) -> int:
    """Exact rank."""
    if not M:
        return 0
    return len(rref(F, M)[1])


def kernel_basis(F: Field, M: Sequence[Sequence], ncols: int | None = None):
    """Basis of the right kernel ``{x : M x = 0}`` (not yet echelonized)."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, piv = rref(F, M, ncols) if M else ([], [])
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for fc in free:
        v = [F(0)] * ncols
        v[fc] = F(1)
        for row, pc in zip(R, piv):
            v[pc] = F(-row[fc])
        basis.append(v)
    return basis


def kernel(F: Field, M: Sequence[Sequence], ncols: int | None = None) -> "Subspace":
    if ncols is None:
        ncols = len(M[0])
    return Subspace.span(F, ncols, kernel_basis(F, M, ncols))


def solve(F: Field, A: Sequence[Sequence], b: Sequence):
    """One solution x of ``A x = b`` or ``None`` when inconsistent."""
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(F, aug, n + 1)
    if piv and piv[-1] == n:
        return None
    x = [F(0)] * n
    for row, pc in zip(R, piv):
        x[pc] = F(row[n])
    return x


def matmul(F: Field, A, B):
    Bt = list(zip(*B))
    return [[F(sum(a * b for a, b in zip(row, col))) for col in Bt] for row in A]


def matvec(F: Field, A, v):
    return [F(sum(a * x for a, x in zip(row, v))) for row in A]


def transpose(A):
    return [list(c) for c in zip(*A)]


def identity(F: Field, n: int):
    return [[F(1) if i == j else F(0) for j in range(n)] for i in range(n)]


def inverse(F: Field, A):
    n = len(A)
    aug = [list(row) + e for row, e in zip(A, identity(F, n))]
    R, piv = rref(F, aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [[F(x) for x in row[n:]] for row in R[:n]]


def is_invertible(F: Field, A) -> bool:
    return rank(F, A) == len(A)


# ------------------------------------------------------------------ subspaces


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of F^n stored by its reduced row echelon basis."""

    field: Field
    ambient: int
    basis: tuple

    @classmethod
    def span(cls, F: Field, n: int, vectors) -> "Subspace":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {n}")
        if not vectors:
            return cls(F, n, ())
        R, _ = rref(F, vectors, n)
        return cls(F, n, tuple(tuple(F(x) for x in row) for row in R))

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, ())

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls.span(F, n, identity(F, n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self):
        out = []
        for row in self.basis:
            out.append(next(i for i, x in enumerate(row) if x != 0))
        return out

    def _check(self, other):
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient, list(self.basis) + list(other.basis))

    def sum(self, other: "Subspace") -> "Subspace":
        return self + other

    def annihilator(self) -> "Subspace":
        """Orthogonal complement under the coordinate pairing (dual space)."""
        if not self.basis:
            return Subspace.full(self.field, self.ambient)
        return kernel(self.field, [list(r) for r in self.basis], self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    def __and__(self, other):
        return self.intersect(other)

    def reduce(self, v):
        """Canonical representative of v modulo the subspace."""
        F = self.field
        v = [F(x) for x in v]
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c:
                v = [F(x - c * y) for x, y in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v):
        return self.contains(v)

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v):
        """Coordinates of v in the stored basis; ValueError if v is outside."""
        F = self.field
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return [F(v[pc]) for pc in self.pivots]

    def combine(self, coords):
        F = self.field
        out = [F(0)] * self.ambient
        for c, row in zip(coords, self.basis):
            if c:
                out = [F(x + c * y) for x, y in zip(out, row)]
        return out

    def to_json(self):
        F = self.field
        return {"ambient": self.ambient, "basis": [[F.to_json(x) for x in row] for row in self.basis]}

    @classmethod
    def from_json(cls, F: Field, d) -> "Subspace":
        n = d["ambient"]
        return cls.span(F, n, [[F.from_json(x) for x in row] for row in d["basis"]])


# ------------------------------------------------------------ quadratic forms


@dataclass(frozen=True)
class QuadForm:
    """Quadratic form x -> x^T G x with a symmetric Gram matrix G."""

    field: Field
    gram: tuple

    def __post_init__(self):
        n = len(self.gram)
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix is not symmetric")

    @classmethod
    def from_gram(cls, F: Field, G) -> "QuadForm":
        return cls(F, tuple(tuple(F(x) for x in row) for row in G))

    @classmethod
    def from_coefficients(cls, F: Field, n: int, coeffs: dict) -> "QuadForm":
        """From ``{(i, j): c}`` meaning sum of c * x_i * x_j (i <= j)."""
        G = [[F(0)] * n for _ in range(n)]
        half = F.inv(2)
        for (i, j), c in coeffs.items():
            if i > j:
                i, j = j, i
            if i == j:
                G[i][i] = F(G[i][i] + c)
            else:
                h = F(c * half)
                G[i][j] = F(G[i][j] + h)
                G[j][i] = F(G[j][i] + h)
        return cls.from_gram(F, G)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def __call__(self, x):
        F = self.field
        return F(sum(x[i] * self.gram[i][j] * x[j] for i in range(self.dim) for j in range(self.dim)))

    def rank(self) -> int:
        return rank(self.field, [list(r) for r in self.gram])

    def coefficients(self) -> dict:
        F = self.field
        out = {}
        for i in range(self.dim):
            for j in range(i, self.dim):
                c = self.gram[i][i] if i == j else F(2 * self.gram[i][j])
                if c:
                    out[(i, j)] = c
        return out

    def restrict(self, basis) -> "QuadForm":
        """Gram B^T G B for the columns B given as a list of vectors."""
        F = self.field
        if isinstance(basis, Subspace):
            basis = basis.basis
        B = [list(b) for b in basis]
        GB = [matvec(F, self.gram, b) for b in B]
        return QuadForm.from_gram(F, [[F(sum(x * y for x, y in zip(bi, gbj))) for gbj in GB] for bi in B])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.gram for x in row)

    def proportional_to(self, other: "QuadForm") -> bool:
        a = [x for row in self.gram for x in row]
        b = [x for row in other.gram for x in row]
        return rank(self.field, [a, b]) <= 1


def quadform_rank(q: QuadForm) -> int:
    return q.rank()


def quadform_restrict(q: QuadForm, s) -> QuadForm:
    if isinstance(s, Subspace) and s.ambient != q.dim:
        raise ValueError("subspace is not in the form's ambient space")
    return q.restrict(s)
