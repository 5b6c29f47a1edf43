import numpy as np
import pytest
from hypothesis import given, strategies as st

from genus8 import _kernels_py, kernels, projective
from genus8.field import GF
from genus8.linalg import rank, rref

BACKENDS = kernels.available()


@pytest.mark.parametrize("p,m", [(5, 3), (7, 4), (11, 2)])
def test_projective_indexing_round_trip(p, m):
    n = projective.count(p, m)
    pts = projective.points_array(p, m)
    assert len(pts) == n
    assert [tuple(r) for r in pts.tolist()] == sorted(tuple(r) for r in pts.tolist())
    for i in range(0, n, max(1, n // 50)):
        assert projective.index(p, projective.point(p, m, i)) == i
        assert tuple(pts[i]) == projective.point(p, m, i)
    assert projective.index(p, [0] * (m - 1) + [3]) == 0


def test_chunks_cover_range():
    parts = projective.chunks(103, 4)
    assert parts[0][0] == 0 and parts[-1][1] == 103
    assert all(a[1] == b[0] for a, b in zip(parts, parts[1:]))


@given(st.lists(st.integers(0, 10), min_size=30, max_size=30))
def test_batched_rank_matches_exact(entries):
    p = 11
    M = np.array(entries, dtype=np.int64).reshape(5, 6)
    assert int(_kernels_py.batched_rank(M[None], p)[0]) == rank(GF(p), M.tolist())


@pytest.mark.parametrize("backend", BACKENDS)
@given(st.lists(st.integers(0, 6), min_size=20, max_size=20))
def test_rref_mod_p_matches_exact(backend, entries):
    p = 7
    M = np.ascontiguousarray(np.array(entries, dtype=np.int64).reshape(4, 5))
    R, piv = kernels.get_backend(backend).rref_mod_p(M, p)
    R2, piv2 = rref(GF(p), M.tolist(), 5)
    assert list(piv) == piv2
    assert R.tolist() == R2


def _random_skew(seed, k, p):
    rng = np.random.default_rng(seed)
    G = rng.integers(0, p, (k, 6, 6))
    return np.ascontiguousarray((G - G.transpose(0, 2, 1)) % p, dtype=np.int64)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
def test_backend_parity_form_ranks():
    p = 7
    G = _random_skew(1, 5, p)
    n = projective.count(p, 5)
    a = kernels.get_backend("cython").form_ranks(p, G, 0, n)
    b = kernels.get_backend("python").form_ranks(p, G, 0, n)
    assert np.array_equal(a, b)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
def test_backend_parity_palatini(seed1):
    pair = seed1["pair"]
    ty, tx = pair.palatini_tensors()
    c, py = kernels.get_backend("cython"), kernels.get_backend("python")
    for s, e in [(0, 3000), (150000, 161051)]:
        a = c.palatini_ranks(11, ty, tx, s, e)
        b = py.palatini_ranks(11, ty, tx, s, e)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_form_ranks_match_exact_rank():
    p = 7
    G = _random_skew(2, 5, p)
    r = kernels.form_ranks(p, G, 0, 40)
    for i in range(40):
        u = projective.point(p, 5, i)
        M = sum(int(c) * G[k] for k, c in enumerate(u)) % p
        assert int(r[i]) == rank(GF(p), M.tolist())


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")
