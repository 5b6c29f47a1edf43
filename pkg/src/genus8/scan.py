"""Exhaustive scans over P^4(F_p) and P^5(F_p).

Every count here is a brute-force oracle: Y as cubic zeros, W as the
Palatini degeneracy locus computed twice (forms side and tensors side),
X harvested from the kernels of the wedge map, and the Segre sextics.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels, poly
from ._kernels_py import batched_rank
from .exterior import PAIRS, GrassLine
from .fano import ThreefoldPair
from .linalg import Subspace
from .pencils import Pencil, classify_pencil
from .projective import chunks, count, normalize, points_array
from .rng import SplitMix64


class ScanCrossCheckError(AssertionError):
    def __init__(self, msg, witness):
        super().__init__(f"{msg}: {witness}")
        self.witness = witness


@dataclass
class ScanReport:
    p: int
    target: str
    count: int
    inventory: list | None = None
    timing: float = 0.0
    workers: int = 1
    extra: dict = field(default_factory=dict)
    phases: dict = field(default_factory=dict)

    def to_json(self, timing: bool = True, inventory: bool = True):
        d = {"p": self.p, "target": self.target, "count": self.count, "workers": self.workers}
        if timing:
            d["timing"] = round(self.timing, 4)
            d.update({k: round(v, 4) for k, v in self.phases.items()})
        if inventory and self.inventory is not None:
            d["inventory"] = [list(x) if isinstance(x, tuple) else x for x in self.inventory]
        d.update(self.extra)
        return d


def _prime(pair: ThreefoldPair, p=None) -> int:
    q = pair.field.char
    if not q:
        raise ValueError("scans need a pair over a prime field")
    if p is not None and p != q:
        raise ValueError(f"pair is defined over F_{q}, not F_{p}")
    return q


def _map_chunks(fn, args, total, workers):
    """Run fn(*args, start, stop) over contiguous chunks and concatenate in order."""
    parts = chunks(total, workers)
    if workers <= 1 or len(parts) == 1:
        return [fn(*args, s, e) for s, e in parts]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futs = [ex.submit(fn, *args, s, e) for s, e in parts]
        return [f.result() for f in futs]


# ------------------------------------------------------------ polynomials


def _exponent_matrix(d: int, n: int):
    return np.array(poly.monomials(n, d), dtype=np.int64)


def eval_monomials(pts: np.ndarray, exps: np.ndarray, p: int) -> np.ndarray:
    """Matrix of monomial values mod p, shape (len(pts), len(exps))."""
    dmax = int(exps.max()) if exps.size else 0
    pw = [np.ones_like(pts)]
    for _ in range(dmax):
        pw.append((pw[-1] * pts) % p)
    pw = np.stack(pw)  # (d+1, N, n)
    out = np.ones((pts.shape[0], exps.shape[0]), dtype=np.int64)
    for i in range(exps.shape[1]):
        out = (out * pw[exps[:, i], :, i].T) % p
    return out


def poly_arrays(F, f: dict, n: int):
    d = poly.degree(f)
    exps = _exponent_matrix(d, n)
    coeffs = np.array([int(f.get(tuple(e), 0)) for e in exps.tolist()], dtype=np.int64)
    return exps, coeffs


def eval_poly(pts, exps, coeffs, p):
    return (eval_monomials(pts, exps, p) @ coeffs) % p


def _gradient_arrays(F, f, n):
    return [poly_arrays(F, g, n) if g else None for g in poly.gradient(F, f, n)]


def eval_gradient(F, f, n, pts, p):
    out = np.zeros((len(pts), n), dtype=np.int64)
    for i, ga in enumerate(_gradient_arrays(F, f, n)):
        if ga is not None:
            out[:, i] = eval_poly(pts, ga[0], ga[1], p)
    return out


def _zeros_chunk(p, m, exps, coeffs, start, stop):
    pts = points_array(p, m, start, stop)
    return np.nonzero(eval_poly(pts, exps, coeffs, p) == 0)[0] + start


def zero_indices(F, f, n, workers=1):
    p = F.char
    exps, coeffs = poly_arrays(F, f, n)
    parts = _map_chunks(_zeros_chunk, (p, n, exps, coeffs), count(p, n), workers)
    return np.concatenate(parts)


# --------------------------------------------------------------------- Y


def scan_y(pair: ThreefoldPair, p=None, workers: int = 1) -> ScanReport:
    p = _prime(pair, p)
    t0 = time.perf_counter()
    total = count(p, 5)
    if not pair.cubic:
        return ScanReport(p, "Y", total, None, time.perf_counter() - t0, workers,
                          {"certificate_breach": True})
    idx = zero_indices(pair.field, pair.cubic, 5, workers)
    pts = points_array(p, 5)[idx]
    grad = eval_gradient(pair.field, pair.cubic, 5, pts, p)
    singular = int(np.count_nonzero(~grad.any(axis=1)))
    inv = [tuple(int(x) for x in row) for row in pts]
    return ScanReport(p, "Y", len(inv), inv, time.perf_counter() - t0, workers,
                      {"singular_points": singular, "certificate_breach": False})


# ------------------------------------------------------------- W and X


def _palatini_chunk(p, ty, tx, start, stop):
    return kernels.palatini_ranks(p, ty, tx, start, stop)


def palatini_rank_arrays(pair: ThreefoldPair, workers: int = 1):
    p = _prime(pair)
    ty, tx = pair.palatini_tensors()
    parts = _map_chunks(_palatini_chunk, (p, ty, tx), count(p, 6), workers)
    ry = np.concatenate([a for a, _ in parts])
    rx = np.concatenate([b for _, b in parts])
    return ry, rx


def kernel_mod_p(M, p):
    """Basis of the right kernel of an integer matrix mod p (rows of an array)."""
    M = np.ascontiguousarray(np.asarray(M, dtype=np.int64) % p)
    R, piv = kernels.rref_mod_p(M, p)
    n = M.shape[1]
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        for row, pc in zip(R, piv):
            out[k, pc] = (-row[fc]) % p
    return out


def canonical_vec(v, p):
    return normalize(p, [int(x) for x in v])


def wedge_np(a, b, p):
    return tuple(int((a[i] * b[j] - a[j] * b[i]) % p) for i, j in PAIRS)


def canonical_subspace(rows, p):
    R, _ = kernels.rref_mod_p(np.ascontiguousarray(np.asarray(rows, dtype=np.int64) % p), p)
    return tuple(tuple(int(x) for x in r) for r in R)


@dataclass
class WXScan:
    w: ScanReport
    x: ScanReport
    gamma: ScanReport
    lines: list          # GrassLine objects, sorted canonically
    ranks: tuple = None  # (ry, rx) arrays over P^5


def scan_w_and_x(pair: ThreefoldPair, p=None, workers: int = 1) -> WXScan:
    p = _prime(pair, p)
    F = pair.field
    t0 = time.perf_counter()
    ry, rx = palatini_rank_arrays(pair, workers)
    bad = np.nonzero((ry <= 4) != (rx <= 4))[0]
    if len(bad):
        i = int(bad[0])
        raise ScanCrossCheckError("W cross-check failed", {"index": i, "point": points_array(p, 6, i, i + 1)[0].tolist(),
                                                           "rank_y": int(ry[i]), "rank_x": int(rx[i])})
    t_rank = time.perf_counter() - t0
    w_idx = np.nonzero(ry <= 4)[0]
    g_idx = np.nonzero(rx <= 3)[0]
    if np.any(rx < 3):
        i = int(np.nonzero(rx < 3)[0][0])
        raise ScanCrossCheckError("kernel of dimension >= 4 (a plane in X)", points_array(p, 6, i, i + 1)[0].tolist())
    ty, tx = pair.palatini_tensors()

    xs = set()
    covered = set()
    w_pts = points_array(p, 6)[w_idx]
    for i, v in zip(w_idx.tolist(), w_pts):
        if rx[i] != 4 or i in covered:
            continue
        K = kernel_mod_p(np.einsum("a,aij->ij", v, tx), p)
        xs.add(_canonical_tensor(wedge_np(K[0], K[1], p), p))
        for s in range(p + 1):
            u = K[0] if s == p else (K[1] + s * K[0]) % p
            covered.add(_index(p, u))
    lines = []
    g_pts = points_array(p, 6)[g_idx]
    for v in g_pts:
        K = kernel_mod_p(np.einsum("a,aij->ij", v, tx), p)
        vertex = Subspace.span(F, 6, [v.tolist()])
        env = Subspace.span(F, 6, K.tolist())
        lines.append(GrassLine(vertex, env))
        # the X points on this line, in case none of them was reached from a rank-4 point
        a, b = _complement_pair(v, K, p)
        for s in range(p + 1):
            u = a if s == p else (b + s * a) % p
            xs.add(_canonical_tensor(wedge_np(v, u, p), p))
    lines.sort(key=line_key)
    x_inv = sorted(xs)
    x_arr = np.array(x_inv, dtype=np.int64).reshape(-1, 15)
    u5 = np.array([[int(c) for c in b] for b in pair.u5.basis], dtype=np.int64)
    if x_arr.size and np.any((x_arr @ u5.T) % p):
        raise ScanCrossCheckError("harvested X point outside W10", "")
    singular_x = int(np.count_nonzero(_x_tangent_ranks(pair, x_arr, p) != 5))
    elapsed = time.perf_counter() - t0
    w_inv = [tuple(int(x) for x in r) for r in w_pts]
    g_inv = [tuple(int(x) for x in r) for r in g_pts]
    rep_w = ScanReport(p, "W", len(w_inv), w_inv, elapsed, workers,
                       {"cross_check": "passed", "points_checked": int(len(ry)),
                        "backend": kernels.BACKEND}, {"rank_pass_seconds": t_rank})
    rep_x = ScanReport(p, "X", len(x_inv), x_inv, elapsed, workers, {"singular_points": singular_x})
    rep_g = ScanReport(p, "gammaW", len(g_inv), g_inv, elapsed, workers, {"lines_of_X": len(lines)})
    return WXScan(rep_w, rep_x, rep_g, lines, (ry, rx))


def _index(p, v):
    from .projective import index
    return index(p, v)


def _canonical_tensor(c, p):
    return normalize(p, list(c))


def _complement_pair(v, K, p):
    """Two rows of K that together with v span K."""
    for i in range(len(K)):
        for j in range(i + 1, len(K)):
            if len(canonical_subspace([v, K[i], K[j]], p)) == 3:
                return K[i], K[j]
    raise AssertionError("kernel rows do not complete the vertex")


def line_key(line: GrassLine):
    return (tuple(int(x) for x in line.vertex.basis[0]), tuple(tuple(int(x) for x in b) for b in line.envelope.basis))


def _x_tangent_ranks(pair: ThreefoldPair, x_arr, p):
    """Rank of U5 on the tangent space at each X point; 5 means smooth."""
    if not len(x_arr):
        return np.zeros(0, dtype=np.int64)
    grams = pair.u5_grams()  # (5, 6, 6)
    mats = []
    for c in x_arr:
        G = np.zeros((6, 6), dtype=np.int64)
        for (i, j), x in zip(PAIRS, c):
            G[i, j] = x
            G[j, i] = -x
        plane, _ = kernels.rref_mod_p(np.ascontiguousarray(G % p), p)
        ma = np.einsum("a,iaj->ij", plane[0], grams)
        mb = np.einsum("a,iaj->ij", plane[1], grams)
        mats.append(np.concatenate([ma, mb], axis=1) % p)
    return batched_rank(np.array(mats), p)


# ------------------------------------------------------------ quartic W


@dataclass
class QuarticFit:
    quartic: dict
    report: dict


def interpolate_w(pair: ThreefoldPair, wx: WXScan, samples: int | None = None, seed: int = 0,
                  workers: int = 1) -> QuarticFit:
    """The unique quartic through the scanned W points, with its checks."""
    p = _prime(pair)
    F = pair.field
    exps = _exponent_matrix(4, 6)
    nm = len(exps)
    w = np.array(wx.w.inventory, dtype=np.int64)
    rng = SplitMix64(seed)
    order = list(range(len(w)))
    for i in range(len(order) - 1, 0, -1):
        j = rng.below(i + 1)
        order[i], order[j] = order[j], order[i]
    if samples is not None:
        order = order[:samples]
    R = np.zeros((0, nm), dtype=np.int64)
    used = 0
    for s in range(0, len(order), 200):
        batch = w[order[s:s + 200]]
        used += len(batch)
        R, piv = kernels.rref_mod_p(np.ascontiguousarray(np.vstack([R, eval_monomials(batch, exps, p)])), p)
        if len(piv) >= nm - 1:
            break
    sol = kernel_mod_p(R, p) if len(R) else np.eye(nm, dtype=np.int64)
    if len(sol) != 1:
        raise ValueError(f"{len(sol)}-dim space of quartics through the W sample")
    coeffs = sol[0]
    coeffs = (coeffs * pow(int(coeffs[np.nonzero(coeffs)[0][0]]), -1, p)) % p
    quartic = {tuple(int(x) for x in e): F(int(c)) for e, c in zip(exps.tolist(), coeffs) if c}
    zeros = zero_indices(F, quartic, 6, workers)
    w_idx = np.nonzero(wx.ranks[0] <= 4)[0]
    same = np.array_equal(zeros, w_idx)
    gpts = np.array(wx.gamma.inventory, dtype=np.int64).reshape(-1, 6)
    grad_g = eval_gradient(F, quartic, 6, gpts, p)
    grad_w = eval_gradient(F, quartic, 6, w, p)
    report = {
        "solution_dim": 1,
        "sample_points": used,
        "vanishes_on_W": bool(not eval_poly(w, exps, coeffs, p).any()),
        "zero_set_equals_W": bool(same),
        "quartic_zero_count": int(len(zeros)),
        "gradient_zero_on_gammaW": bool(not grad_g.any()),
        "gradient_nonzero_points": int(np.count_nonzero(grad_w.any(axis=1))),
    }
    return QuarticFit(quartic, report)


# -------------------------------------------------------------- sextic


def scan_sextic(pair: ThreefoldPair, A: Subspace, B: Subspace, p=None) -> ScanReport:
    """Pairs ([a], [b]) in P(A) x P(B) with a ^ b in W10."""
    p = _prime(pair, p)
    if A.dim != 3 or B.dim != 3 or (A + B).dim != 6:
        raise ValueError("A and B must be complementary 3-dim subspaces")
    t0 = time.perf_counter()
    Ab = np.array([[int(x) for x in r] for r in A.basis], dtype=np.int64)
    Bb = np.array([[int(x) for x in r] for r in B.basis], dtype=np.int64)
    P2 = points_array(p, 3)
    av = (P2 @ Ab) % p
    bv = (P2 @ Bb) % p
    grams = pair.u5_grams()
    # vals[n, m, i] = sigma_i(a_n, b_m)
    vals = np.einsum("na,iab,mb->nmi", av, grams, bv) % p
    hits = np.argwhere(~vals.any(axis=2))
    inv = []
    for n, m in hits:
        a = tuple(int(x) for x in av[n])
        b = tuple(int(x) for x in bv[m])
        inv.append((a, b, _canonical_tensor(wedge_np(a, b, p), p)))
    inv.sort()
    return ScanReport(p, "sextic", len(inv), inv, time.perf_counter() - t0, 1,
                      {"pairs_checked": int(len(P2) ** 2)})


# ------------------------------------------------------------- Y lines


@dataclass
class YLine:
    points: tuple          # canonical basis (2 rows) of the line in F_p^5
    pencil: Pencil
    tag: str


def y_lines(pair: ThreefoldPair, yrep: ScanReport, classify: bool = True):
    """All lines on Y through pairs of scanned points, deduplicated canonically."""
    p = _prime(pair)
    F = pair.field
    pts = np.array(yrep.inventory, dtype=np.int64).reshape(-1, 5)
    grad = eval_gradient(F, pair.cubic, 5, pts, p)
    D = (pts @ grad.T) % p  # D[i, j] = grad c(u_j) . u_i
    ok = (D == 0) & (D.T == 0)
    np.fill_diagonal(ok, False)
    found = {}
    on_line = {}
    for i, j in zip(*np.nonzero(np.triu(ok))):
        if (i, j) in on_line:
            continue
        key = canonical_subspace([pts[i], pts[j]], p)
        if key in found:
            continue
        found[key] = None
        a, b = np.array(key[0]), np.array(key[1])
        members = [b] + [(a + s * b) % p for s in range(p)]
        idxs = []
        for u in members:
            idxs.append(_y_index(yrep, u, p))
        for x in idxs:
            for y in idxs:
                on_line[(min(x, y), max(x, y))] = key
    out = []
    for key in sorted(found):
        pen = Pencil.of(pair.form(list(key[0])), pair.form(list(key[1])))
        tag = classify_pencil(pen).tag if classify else "?"
        out.append(YLine(key, pen, tag))
    return out


_Y_INDEX_CACHE: dict = {}


def _y_index(yrep, u, p):
    cache = _Y_INDEX_CACHE.get(id(yrep))
    if cache is None or cache[0] is not yrep:
        cache = (yrep, {pt: k for k, pt in enumerate(yrep.inventory)})
        _Y_INDEX_CACHE[id(yrep)] = cache
    return cache[1].get(canonical_vec(u, p), -1)


# ------------------------------------------------------------ acceptance


@dataclass
class SeedScan:
    pair: ThreefoldPair
    y: ScanReport
    wx: WXScan
    checks: dict

    @property
    def accepted(self):
        return all(self.checks.values())


def run_scans(pair: ThreefoldPair, workers: int = 1) -> SeedScan:
    y = scan_y(pair, workers=workers)
    wx = scan_w_and_x(pair, workers=workers)
    checks = {
        "y_smooth": y.extra["singular_points"] == 0,
        "x_smooth": wx.x.extra["singular_points"] == 0,
        "x_lines_found": len(wx.lines) > 0,
        "cubic_nonzero": not y.extra["certificate_breach"],
    }
    return SeedScan(pair, y, wx, checks)


def accepted_pair(seed: int, F, workers: int = 1, max_reseeds: int = 64):
    """Smallest seed >= the given one passing the certificate and scan checks."""
    from .fano import build_threefold
    holder = {}

    def accept(pair):
        s = run_scans(pair, workers)
        holder["scan"] = s
        return s.accepted

    pair = build_threefold(seed, F, max_reseeds=max_reseeds, accept=accept)
    scan = holder["scan"]
    return pair, SeedScan(pair, scan.y, scan.wx, scan.checks)
