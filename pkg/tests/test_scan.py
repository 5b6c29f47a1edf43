from itertools import combinations

import numpy as np
import pytest

from genus8 import kernels, projective
from genus8.exterior import PAIRS, TwoTensor, decompose
from genus8.fano import build_threefold
from genus8.field import GF
from genus8.linalg import Subspace
from genus8.scan import ScanCrossCheckError, scan_sextic, scan_w_and_x, scan_y
from genus8.projection import make_context, segre_context


def grassmannian_points(p):
    """All 2-planes of F_p^6 as Plücker vectors, one per reduced echelon 2x6 matrix."""
    out = []
    for i, j in combinations(range(6), 2):
        free0 = [c for c in range(i + 1, 6) if c != j]
        free1 = list(range(j + 1, 6))
        n0, n1 = len(free0), len(free1)
        grid = np.indices((p,) * (n0 + n1)).reshape(n0 + n1, -1).T if n0 + n1 else np.zeros((1, 0), dtype=np.int64)
        a = np.zeros((len(grid), 6), dtype=np.int64)
        b = np.zeros((len(grid), 6), dtype=np.int64)
        a[:, i] = 1
        b[:, j] = 1
        for k, c in enumerate(free0):
            a[:, c] = grid[:, k]
        for k, c in enumerate(free1):
            b[:, c] = grid[:, n0 + k]
        out.append(np.stack([(a[:, x] * b[:, y] - a[:, y] * b[:, x]) % p for x, y in PAIRS], axis=1))
    return np.concatenate(out)


@pytest.fixture(scope="module")
def pair5():
    return build_threefold(2, GF(5))


def test_x_count_matches_grassmannian_enumeration(pair5):
    p = 5
    G = grassmannian_points(p)
    assert len(G) == (p ** 6 - 1) * (p ** 5 - 1) // ((p ** 2 - 1) * (p - 1))
    u5 = np.array([[int(c) for c in b] for b in pair5.u5.basis], dtype=np.int64)
    on_x = ~((G @ u5.T) % p).any(axis=1)
    wx = scan_w_and_x(pair5)
    assert wx.x.count == int(on_x.sum())
    oracle = sorted(projective.normalize(p, r.tolist()) for r in G[on_x])
    assert wx.x.inventory == oracle


def test_y_count_matches_form_ranks(pair5):
    p = 5
    ranks = kernels.form_ranks(p, pair5.u5_grams(), 0, projective.count(p, 5))
    assert scan_y(pair5).count == int(np.count_nonzero(ranks == 4))


def test_worker_count_independence(pair5):
    a = scan_w_and_x(pair5, workers=1)
    b = scan_w_and_x(pair5, workers=3)
    for ra, rb in ((a.w, b.w), (a.x, b.x), (a.gamma, b.gamma)):
        assert ra.to_json(timing=False, inventory=True) | {"workers": 0} == \
            rb.to_json(timing=False, inventory=True) | {"workers": 0}
    assert a.lines == b.lines
    assert scan_y(pair5, workers=1).inventory == scan_y(pair5, workers=2).inventory


def test_cross_check_and_counts(seed1):
    ss = seed1["scan"]
    assert ss.wx.w.extra["cross_check"] == "passed"
    assert ss.wx.w.extra["points_checked"] == projective.count(11, 6)
    assert ss.y.extra["singular_points"] == 0 and ss.wx.x.extra["singular_points"] == 0
    pair = seed1["pair"]
    F = pair.field
    for t in ss.wx.x.inventory[::50]:
        assert pair.x_member(TwoTensor(F, tuple(F(c) for c in t)))
    for u in ss.y.inventory[::50]:
        assert pair.y_member(list(u))


def test_gamma_vertices_have_three_dim_kernels(seed1):
    pair = seed1["pair"]
    for v in seed1["scan"].wx.gamma.inventory:
        assert pair.x_kernel(list(v)).dim == 3


def test_quartic_report(seed1):
    r = seed1["quartic"].report
    assert r["solution_dim"] == 1
    assert r["zero_set_equals_W"] and r["gradient_zero_on_gammaW"] and r["gradient_nonzero_points"] > 0


def test_zero_cubic_flags_breach():
    F = GF(7)
    from genus8.fano import ThreefoldPair
    pair = build_threefold(1, F)
    broken = ThreefoldPair(pair.seed, F, pair.w10, pair.u5, {})
    rep = scan_y(broken)
    assert rep.count == projective.count(7, 5) and rep.extra["certificate_breach"]


def test_sextic_symmetry_and_precondition(seed1):
    pair = seed1["pair"]
    line = next(l for l in seed1["y_lines"] if l.tag == "A")
    A, B = segre_context(make_context(line.pencil))
    assert scan_sextic(pair, A, B).count == scan_sextic(pair, B, A).count
    for a, b, t in scan_sextic(pair, A, B).inventory:
        assert pair.x_member(TwoTensor(pair.field, tuple(pair.field(c) for c in t)))
    with pytest.raises(ValueError):
        scan_sextic(pair, A, A)


def test_cross_check_failure_is_reported(monkeypatch, pair5):
    import genus8.scan as scan

    def broken(pair, workers=1):
        n = projective.count(5, 6)
        ry = np.full(n, 5, dtype=np.uint8)
        rx = np.full(n, 5, dtype=np.uint8)
        ry[7] = 4
        return ry, rx

    monkeypatch.setattr(scan, "palatini_rank_arrays", broken)
    with pytest.raises(ScanCrossCheckError) as e:
        scan.scan_w_and_x(pair5)
    assert e.value.witness["index"] == 7
