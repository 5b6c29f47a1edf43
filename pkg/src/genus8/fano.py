"""The pair (X, Y): a 10-dimensional section of the Plücker cone and its
orthogonal 5-dimensional space of forms, whose Pfaffian cubic cuts out Y.

X lives in Lambda^2 V (side "V"), Y in P(U5) with U5 in Lambda^2 V* (side "V*").
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from fractions import Fraction
from math import lcm

import numpy as np

from . import poly
from .exterior import (
    PAIR_INDEX,
    GrassLine,
    GrassPoint,
    TwoTensor,
    contract,
    decompose,
    form_kernel,
    is_decomposable,
    tangent_space,
    trilinear,
    triple_wedge,
    wedge2,
    wedge22_coords,
)
from .field import Field, parse_field
from .linalg import Subspace, kernel, rank, transpose
from .rng import SplitMix64

MAX_RESEEDS = 64
QQ_SAMPLES = 10_000


class CertificateError(RuntimeError):
    pass


def _require_nonzero(v):
    if not any(v):
        raise ValueError("projective point needs a nonzero representative")


def cubic_from_basis(F: Field, basis):
    """Coefficients of u -> triple_wedge(sum u_i sigma_i) / 6 in 5 variables."""
    n = len(basis)
    out = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                distinct = len({i, j, k})
                mult = {1: 1, 2: 3, 3: 6}[distinct]
                t = trilinear(F, basis[i], basis[j], basis[k])
                c = F.div(F(mult * t), 6)
                if c:
                    out[poly.index_to_exponent((i, j, k), n)] = c
    return out


def _integer_rows(F: Field, rows):
    if F.char:
        return [[int(x) for x in r] for r in rows]
    out = []
    for r in rows:
        den = lcm(*[Fraction(x).denominator for x in r])
        out.append([int(Fraction(x) * den) for x in r])
    return out


@dataclass(frozen=True)
class ThreefoldPair:
    seed: int
    field: Field
    w10: Subspace
    u5: Subspace
    cubic: dict
    requested_seed: int | None = None
    reseeds: int = 0
    certificate: dict = dc_field(default_factory=dict, compare=False)

    # ---- basic data

    @cached_property
    def sigma(self):
        """Stored basis of U5 as forms."""
        return [TwoTensor(self.field, tuple(b), "V*") for b in self.u5.basis]

    def form(self, u) -> TwoTensor:
        F = self.field
        coords = [F(sum(c * b[k] for c, b in zip(u, self.u5.basis))) for k in range(15)]
        return TwoTensor(F, tuple(coords), "V*")

    @cached_property
    def _gradient(self):
        return poly.gradient(self.field, self.cubic, 5)

    def cubic_value(self, u):
        return poly.evaluate(self.field, self.cubic, u)

    # ---- membership

    def x_member(self, w: TwoTensor) -> bool:
        if w.is_zero():
            raise ValueError("projective point needs a nonzero representative")
        return self.w10.contains(w.coords) and is_decomposable(w)

    def y_member(self, u) -> bool:
        _require_nonzero(u)
        return self.cubic_value(u) == 0

    # ---- Palatini maps

    def palatini_map_y(self, v):
        """5x6 matrix whose rows are the contractions i_v sigma_i."""
        _require_nonzero(v)
        return [contract(self.field, v, s) for s in self.sigma]

    def palatini_rank(self, v) -> int:
        return rank(self.field, self.palatini_map_y(v))

    def w_member(self, v) -> bool:
        return self.palatini_rank(v) <= 4

    @cached_property
    def _residual_table(self):
        # Q[a][j] = e_a ^ e_j reduced modulo W10, read at the 5 non-pivot slots
        F = self.field
        free = [c for c in range(15) if c not in set(self.w10.pivots)]
        table = []
        for a in range(6):
            row = []
            for j in range(6):
                e = [F(0)] * 15
                if a < j:
                    e[PAIR_INDEX[(a, j)]] = F(1)
                elif a > j:
                    e[PAIR_INDEX[(j, a)]] = F(-1)
                r = self.w10.reduce(e)
                row.append([r[c] for c in free])
            table.append(row)
        return table

    def palatini_map_x(self, v):
        """5x6 matrix of y -> v ^ y modulo W10."""
        _require_nonzero(v)
        F = self.field
        Q = self._residual_table
        return [[F(sum(v[a] * Q[a][j][r] for a in range(6))) for j in range(6)] for r in range(5)]

    def x_kernel(self, v) -> Subspace:
        return kernel(self.field, self.palatini_map_x(v), 6)

    def x_lines_through(self, v):
        """Points or lines of X swept out by v (empty when v is off W)."""
        F = self.field
        K = self.x_kernel(v)
        if not K.contains(v):
            raise AssertionError("v is not in the kernel of its own wedge map")
        if K.dim == 1:
            return []
        if K.dim == 2:
            other = next(b for b in K.basis if rank(F, [list(v), list(b)]) == 2)
            return [decompose(wedge2(F, v, other))]
        if K.dim == 3:
            return [GrassLine(Subspace.span(F, 6, [v]), K)]
        raise ValueError(f"v ^ K with dim K = {K.dim} would put a plane in X")

    # ---- kernel lines and smoothness

    def kernel_line(self, u) -> Subspace:
        if not self.y_member(u):
            raise ValueError("point is not on Y")
        K = form_kernel(self.form(u))
        if K.dim != 2:
            raise CertificateError(f"form of rank {6 - K.dim} in U5")
        return K

    def x_smooth_at(self, p: GrassPoint) -> bool:
        return (tangent_space(p) & self.w10).dim == 4

    def y_smooth_at(self, u) -> bool:
        F = self.field
        return any(poly.evaluate(F, d, u) for d in self._gradient)

    # ---- numeric views for the scan kernels

    def palatini_tensors(self):
        """(Ty, Tx) int64 arrays of shape (6, 5, 6): map_y(v) = sum_a v_a Ty[a]."""
        if not self.field.char:
            raise ValueError("numeric tensors need a prime field")
        ty = np.zeros((6, 5, 6), dtype=np.int64)
        for i, s in enumerate(self.sigma):
            G = s.gram()
            for a in range(6):
                for j in range(6):
                    ty[a, i, j] = int(G[a][j])
        Q = self._residual_table
        tx = np.zeros((6, 5, 6), dtype=np.int64)
        for a in range(6):
            for j in range(6):
                for r in range(5):
                    tx[a, r, j] = int(Q[a][j][r])
        return ty, tx

    def u5_grams(self):
        return np.ascontiguousarray(
            np.array(_integer_rows(self.field, [sum(s.gram(), []) for s in self.sigma]),
                     dtype=np.int64).reshape(5, 6, 6))

    # ---- serialization

    def to_json(self):
        F = self.field
        return {
            "seed": self.seed,
            "requested_seed": self.requested_seed if self.requested_seed is not None else self.seed,
            "reseeds": self.reseeds,
            "field": F.spec(),
            "w10": self.w10.to_json(),
            "u5": self.u5.to_json(),
            "cubic": poly.to_json(F, self.cubic, 5),
            "certificate": self.certificate,
        }

    @classmethod
    def from_json(cls, d) -> "ThreefoldPair":
        F = parse_field(d["field"])
        w10 = Subspace.from_json(F, d["w10"])
        u5 = Subspace.from_json(F, d["u5"])
        pair = cls(d["seed"], F, w10, u5, poly.from_json(F, d["cubic"], 5),
                   d.get("requested_seed"), d.get("reseeds", 0), d.get("certificate", {}))
        if u5 != w10.annihilator():
            raise ValueError("u5 is not the annihilator of w10")
        return pair


# ----------------------------------------------------------------- building


def from_w10(F: Field, w10: Subspace, seed: int = -1) -> ThreefoldPair:
    """Derived data for an arbitrary 10-dim W10; no genericity certificate."""
    if w10.dim != 10 or w10.ambient != 15:
        raise ValueError(f"W10 must be 10-dim in the 15-space, got {w10.dim}")
    u5 = w10.annihilator()
    cubic = cubic_from_basis(F, [list(b) for b in u5.basis])
    return ThreefoldPair(seed, F, w10, u5, cubic, seed, 0, {})


def spot_check_cubic(pair: ThreefoldPair, rng: SplitMix64, count: int = 20) -> bool:
    F = pair.field
    for _ in range(count):
        u = rng.vector(F, 5)
        if F(6 * pair.cubic_value(u)) != triple_wedge(pair.form(u)):
            return False
    return True


def genericity_certificate(pair: ThreefoldPair, samples: int = QQ_SAMPLES, seed: int = 0) -> dict:
    """No nonzero member of U5 is decomposable (rank 2)."""
    F = pair.field
    if F.char:
        from . import kernels
        from .projective import count
        p = F.char
        ranks = kernels.form_ranks(p, pair.u5_grams(), 0, count(p, 5))
        bad = int(np.count_nonzero(ranks <= 2))
        return {"method": "exhaustive", "checked": int(len(ranks)), "decomposable": bad,
                "rank_histogram": {str(r): int(c) for r, c in enumerate(np.bincount(ranks, minlength=7)) if c},
                "passed": bad == 0}
    rows = _integer_rows(F, [list(b) for b in pair.u5.basis])
    rng = SplitMix64(seed)
    bad = 0
    for _ in range(samples):
        u = [rng.integer(-50, 50) for _ in range(5)]
        if not any(u):
            continue
        c = [sum(ui * r[k] for ui, r in zip(u, rows)) for k in range(15)]
        if not any(wedge22_coords(F, c, c)):
            bad += 1
    return {"method": "sampled", "checked": samples, "decomposable": bad, "passed": bad == 0}


def random_w10(F: Field, seed: int) -> Subspace:
    rng = SplitMix64(seed)
    return Subspace.span(F, 15, rng.matrix(F, 10, 15))


def build_threefold(seed: int, F: Field, max_reseeds: int = MAX_RESEEDS,
                    samples: int = QQ_SAMPLES, accept=None) -> ThreefoldPair:
    """Seeded pair; failing seeds are incremented until every check passes.

    ``accept`` is an optional extra predicate (e.g. the scan-level checks).
    """
    if isinstance(F, str):
        F = parse_field(F)
    reasons = []
    for k in range(max_reseeds + 1):
        s = seed + k
        w10 = random_w10(F, s)
        if w10.dim != 10:
            reasons.append((s, "rank"))
            continue
        pair = from_w10(F, w10, s)
        if not pair.cubic:
            reasons.append((s, "zero cubic"))
            continue
        if not spot_check_cubic(pair, SplitMix64(s ^ 0x5EED)):
            raise AssertionError("cubic disagrees with the triple wedge")
        cert = genericity_certificate(pair, samples, s)
        if not cert["passed"]:
            reasons.append((s, "decomposable member"))
            continue
        pair = ThreefoldPair(s, F, w10, pair.u5, pair.cubic, seed, k, cert)
        if accept is not None and not accept(pair):
            reasons.append((s, "rejected"))
            continue
        return pair
    raise CertificateError(f"no acceptable seed in [{seed}, {seed + max_reseeds}]: {reasons}")
